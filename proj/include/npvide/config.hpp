#pragma once

// Flat key = value problem descriptions.  Numbers are bare, expressions and
// free text are double-quoted, # starts a comment.  Example:
//
//   description = "linear kernel, solution x*t"
//   alpha = 0
//   beta = 1
//   T = 1
//   M = 1
//   N = 0.84147098480789651
//   a = "t*sin(x)"
//   g = "x - t^3*x^3/9 - t^2*x*sin(x)"
//   K = "y*s*u"
//   u0 = "0"
//   exact = "x*t"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "exprlang.hpp"
#include "volterra.hpp"

namespace npvide {

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what_happened)
        : std::runtime_error("config error: " + what_happened) {}
};

struct ProblemConfig {
    std::string description;
    double alpha = 0.0;
    double beta = 1.0;
    double T = 1.0;
    double M = 0.0;
    std::optional<double> N;  // defaulted from a sampled sup of |a| when absent
    Expr a, g, K, u0;
    std::optional<Expr> exact;
};

namespace detail {

struct RawConfigValue {
    std::string text;
    bool quoted = false;
    std::size_t line = 0;
};

inline std::map<std::string, RawConfigValue> read_key_values(std::string_view text) {
    std::map<std::string, RawConfigValue> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        ++line_no;
        pos = eol + 1;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        const auto trim = [](std::string_view v) {
            while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
            while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
            return v;
        };
        line = trim(line);
        if (line.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        if (out.count(key))
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        RawConfigValue raw;
        raw.line = line_no;
        if (!value.empty() && value.front() == '"') {
            if (value.size() < 2 || value.back() != '"')
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated string for '" +
                                  key + "'");
            raw.text = std::string(value.substr(1, value.size() - 2));
            raw.quoted = true;
        } else {
            if (value.empty())
                throw ConfigError("line " + std::to_string(line_no) + ": missing value for '" + key +
                                  "'");
            raw.text = std::string(value);
        }
        out.emplace(key, std::move(raw));
        if (eol == text.size()) break;
    }
    return out;
}

inline double parse_config_number(const std::string& key, const RawConfigValue& raw) {
    if (raw.quoted) throw ConfigError("field '" + key + "' must be a bare number, not a string");
    char* end = nullptr;
    const double v = std::strtod(raw.text.c_str(), &end);
    if (end != raw.text.c_str() + raw.text.size())
        throw ConfigError("field '" + key + "' is not a valid number: '" + raw.text + "'");
    return v;
}

inline Expr parse_config_expression(const std::string& key, const RawConfigValue& raw) {
    if (!raw.quoted) throw ConfigError("field '" + key + "' must be a quoted expression");
    try {
        return parse_expression(raw.text);
    } catch (const ParseError& err) {
        throw ConfigError("field '" + key + "': " + err.what());
    }
}

}  // namespace detail

inline ProblemConfig parse_problem_config(std::string_view text) {
    auto raw = detail::read_key_values(text);
    ProblemConfig cfg;
    const auto take = [&raw](const std::string& key) -> std::optional<detail::RawConfigValue> {
        const auto it = raw.find(key);
        if (it == raw.end()) return std::nullopt;
        auto v = std::move(it->second);
        raw.erase(it);
        return v;
    };
    const auto require = [&take](const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError("missing required field '" + key + "'");
        return *v;
    };
    if (auto v = take("description")) {
        if (!v->quoted) throw ConfigError("field 'description' must be a quoted string");
        cfg.description = v->text;
    }
    if (auto v = take("alpha")) cfg.alpha = detail::parse_config_number("alpha", *v);
    cfg.beta = detail::parse_config_number("beta", require("beta"));
    cfg.T = detail::parse_config_number("T", require("T"));
    cfg.M = detail::parse_config_number("M", require("M"));
    if (auto v = take("N")) cfg.N = detail::parse_config_number("N", *v);
    cfg.a = detail::parse_config_expression("a", require("a"));
    cfg.g = detail::parse_config_expression("g", require("g"));
    cfg.K = detail::parse_config_expression("K", require("K"));
    cfg.u0 = detail::parse_config_expression("u0", require("u0"));
    if (auto v = take("exact")) cfg.exact = detail::parse_config_expression("exact", *v);
    if (!raw.empty())
        throw ConfigError("unknown field '" + raw.begin()->first + "' on line " +
                          std::to_string(raw.begin()->second.line));
    return cfg;
}

// Builds the runnable problem.  When N is not given it is taken as 1.05
// times the largest |a| seen on a 51 x 51 sample grid, so the constructor's
// own domination check passes with margin.
inline std::shared_ptr<const Problem> make_problem(const ProblemConfig& cfg) {
    const auto a_expr = std::make_shared<const Expr>(cfg.a);
    const auto g_expr = std::make_shared<const Expr>(cfg.g);
    const auto k_expr = std::make_shared<const Expr>(cfg.K);
    const auto u0_expr = std::make_shared<const Expr>(cfg.u0);
    Real2Fn a = [a_expr](double x, double t) { return eval_expression(*a_expr, bind_xt(x, t)); };
    Real2Fn g = [g_expr](double x, double t) { return eval_expression(*g_expr, bind_xt(x, t)); };
    KernelFn K = [k_expr](double x, double t, double y, double s, double u) {
        return eval_expression(*k_expr, bind_all(x, t, y, s, u));
    };
    Real1Fn u0 = [u0_expr](double x) { return eval_expression(*u0_expr, bind_x(x)); };
    double N;
    if (cfg.N) {
        N = *cfg.N;
    } else {
        double sup = 0.0;
        constexpr int density = 51;
        for (int i = 0; i < density; ++i)
            for (int j = 0; j < density; ++j)
                sup = std::max(sup, std::abs(a(cfg.alpha + cfg.beta * i / (density - 1),
                                               cfg.T * j / (density - 1))));
        N = 1.05 * sup;
    }
    return std::make_shared<const Problem>(cfg.alpha, cfg.beta, cfg.T, std::move(a), std::move(g),
                                           std::move(K), std::move(u0), cfg.M, N);
}

inline std::optional<Real2Fn> make_exact(const ProblemConfig& cfg) {
    if (!cfg.exact) return std::nullopt;
    const auto expr = std::make_shared<const Expr>(*cfg.exact);
    return Real2Fn([expr](double x, double t) { return eval_expression(*expr, bind_xt(x, t)); });
}

}  // namespace npvide
