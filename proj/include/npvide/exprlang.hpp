#pragma once

// A small arithmetic expression language over the variables x, t, y, s, u:
// recursive-descent parser, evaluator, and a printer whose output reparses
// to the identical tree.  Precedence, tightest first: ^ (right-associative),
// unary minus, * /, + -.  No implicit multiplication.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scalar_ops.hpp"

namespace npvide {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t offset, const std::string& what_happened)
        : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " +
                             what_happened),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

  private:
    std::size_t offset_;
};

class EvalError : public std::runtime_error {
  public:
    explicit EvalError(const std::string& what_happened)
        : std::runtime_error("evaluation error: " + what_happened) {}
};

enum class ExprOp { number, variable, pi, negate, add, subtract, multiply, divide, power, call };
enum class ExprFunc { sin, cos, tan, exp, log, sqrt, abs };

// Variable slots in order x, t, y, s, u.
constexpr std::array<const char*, 5> expr_variable_names = {"x", "t", "y", "s", "u"};

struct Expr {
    ExprOp op = ExprOp::number;
    double number = 0.0;
    int var = 0;
    ExprFunc fn = ExprFunc::sin;
    std::vector<Expr> args;
};

using VarBindings = std::array<std::optional<double>, 5>;

inline VarBindings bind_x(double x) { return {x, {}, {}, {}, {}}; }
inline VarBindings bind_xt(double x, double t) { return {x, t, {}, {}, {}}; }
inline VarBindings bind_all(double x, double t, double y, double s, double u) {
    return {x, t, y, s, u};
}

namespace detail {

constexpr std::array<const char*, 7> func_names = {"sin", "cos", "tan", "exp",
                                                   "log", "sqrt", "abs"};

class ExprParser {
  public:
    explicit ExprParser(std::string_view src) : src_(src) {}

    Expr parse() {
        Expr e = parse_sum();
        skip_space();
        if (pos_ != src_.size()) throw ParseError(pos_, "unexpected trailing input");
        return e;
    }

  private:
    Expr parse_sum() {
        Expr e = parse_term();
        while (true) {
            skip_space();
            if (peek() == '+' || peek() == '-') {
                const char op = src_[pos_++];
                Expr rhs = parse_term();
                Expr parent;
                parent.op = op == '+' ? ExprOp::add : ExprOp::subtract;
                parent.args.push_back(std::move(e));
                parent.args.push_back(std::move(rhs));
                e = std::move(parent);
            } else {
                return e;
            }
        }
    }

    Expr parse_term() {
        Expr e = parse_factor();
        while (true) {
            skip_space();
            if (peek() == '*' || peek() == '/') {
                const char op = src_[pos_++];
                Expr rhs = parse_factor();
                Expr parent;
                parent.op = op == '*' ? ExprOp::multiply : ExprOp::divide;
                parent.args.push_back(std::move(e));
                parent.args.push_back(std::move(rhs));
                e = std::move(parent);
            } else {
                return e;
            }
        }
    }

    Expr parse_factor() {
        skip_space();
        if (peek() == '-') {
            ++pos_;
            Expr parent;
            parent.op = ExprOp::negate;
            parent.args.push_back(parse_factor());
            return parent;
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        skip_space();
        if (peek() == '^') {
            ++pos_;
            Expr parent;
            parent.op = ExprOp::power;
            parent.args.push_back(std::move(base));
            parent.args.push_back(parse_factor());  // right-associative; allows x^-2
            return parent;
        }
        return base;
    }

    Expr parse_atom() {
        skip_space();
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '\0') throw ParseError(pos_, "unexpected end of input");
        if (c == '(') {
            ++pos_;
            Expr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                name.push_back(src_[pos_++]);
            skip_space();
            if (peek() == '(') {
                for (std::size_t f = 0; f < func_names.size(); ++f) {
                    if (name == func_names[f]) {
                        ++pos_;
                        Expr call;
                        call.op = ExprOp::call;
                        call.fn = static_cast<ExprFunc>(f);
                        call.args.push_back(parse_sum());
                        expect(')');
                        return call;
                    }
                }
                throw ParseError(start, "unknown function '" + name + "'");
            }
            if (name == "pi") {
                Expr e;
                e.op = ExprOp::pi;
                return e;
            }
            for (std::size_t v = 0; v < expr_variable_names.size(); ++v) {
                if (name == expr_variable_names[v]) {
                    Expr e;
                    e.op = ExprOp::variable;
                    e.var = static_cast<int>(v);
                    return e;
                }
            }
            throw ParseError(start, "unknown identifier '" + name + "'");
        }
        throw ParseError(pos_, std::string("unexpected character '") + c + "'");
    }

    Expr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
            throw ParseError(start, "malformed number");
        if (peek() == 'e' || peek() == 'E') {
            std::size_t mark = pos_++;
            if (peek() == '+' || peek() == '-') ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) {
                pos_ = mark;  // not an exponent after all; leave it for the caller
            } else {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                    ++pos_;
            }
        }
        Expr e;
        e.op = ExprOp::number;
        e.number = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(), nullptr);
        return e;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_space();
        if (peek() != c)
            throw ParseError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expression(std::string_view src) { return detail::ExprParser(src).parse(); }

inline double eval_expression(const Expr& e, const VarBindings& vars) {
    switch (e.op) {
        case ExprOp::number: return e.number;
        case ExprOp::pi: return 3.141592653589793238462643383279502884;
        case ExprOp::variable: {
            const auto& slot = vars[static_cast<std::size_t>(e.var)];
            if (!slot)
                throw EvalError(std::string("variable '") +
                                expr_variable_names[static_cast<std::size_t>(e.var)] +
                                "' is not bound in this context");
            return *slot;
        }
        case ExprOp::negate: return -eval_expression(e.args[0], vars);
        case ExprOp::add: return eval_expression(e.args[0], vars) + eval_expression(e.args[1], vars);
        case ExprOp::subtract:
            return eval_expression(e.args[0], vars) - eval_expression(e.args[1], vars);
        case ExprOp::multiply:
            return eval_expression(e.args[0], vars) * eval_expression(e.args[1], vars);
        case ExprOp::divide: {
            const double num = eval_expression(e.args[0], vars);
            const double den = eval_expression(e.args[1], vars);
            if (den == 0.0) throw EvalError("division by zero");
            return num / den;
        }
        case ExprOp::power: {
            const double base = eval_expression(e.args[0], vars);
            const double exponent = eval_expression(e.args[1], vars);
            const double r = detail::pow_value(base, exponent);
            if (std::isnan(r)) throw EvalError("power produced an undefined value");
            return r;
        }
        case ExprOp::call: {
            const double arg = eval_expression(e.args[0], vars);
            switch (e.fn) {
                case ExprFunc::sin: return std::sin(arg);
                case ExprFunc::cos: return std::cos(arg);
                case ExprFunc::tan: return std::tan(arg);
                case ExprFunc::exp: return std::exp(arg);
                case ExprFunc::log:
                    if (arg <= 0.0) throw EvalError("log of a non-positive value");
                    return std::log(arg);
                case ExprFunc::sqrt:
                    if (arg < 0.0) throw EvalError("sqrt of a negative value");
                    return std::sqrt(arg);
                case ExprFunc::abs: return std::fabs(arg);
            }
            throw EvalError("unknown function code");
        }
    }
    throw EvalError("unknown operator code");
}

inline bool expr_equal(const Expr& a, const Expr& b) {
    if (a.op != b.op) return false;
    switch (a.op) {
        case ExprOp::number:
            if (a.number != b.number) return false;
            break;
        case ExprOp::variable:
            if (a.var != b.var) return false;
            break;
        case ExprOp::call:
            if (a.fn != b.fn) return false;
            break;
        default: break;
    }
    if (a.args.size() != b.args.size()) return false;
    for (std::size_t k = 0; k < a.args.size(); ++k)
        if (!expr_equal(a.args[k], b.args[k])) return false;
    return true;
}

namespace detail {

inline int expr_precedence(const Expr& e) {
    switch (e.op) {
        case ExprOp::add:
        case ExprOp::subtract: return 1;
        case ExprOp::multiply:
        case ExprOp::divide: return 2;
        case ExprOp::negate: return 3;
        case ExprOp::power: return 4;
        default: return 5;  // atoms
    }
}

inline void print_expr(const Expr& e, std::string& out) {
    const auto child = [&out](const Expr& c, bool needs_parens) {
        if (needs_parens) out.push_back('(');
        print_expr(c, out);
        if (needs_parens) out.push_back(')');
    };
    switch (e.op) {
        case ExprOp::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            out += buf;
            return;
        }
        case ExprOp::pi: out += "pi"; return;
        case ExprOp::variable:
            out += expr_variable_names[static_cast<std::size_t>(e.var)];
            return;
        case ExprOp::negate:
            out.push_back('-');
            child(e.args[0], expr_precedence(e.args[0]) < 3);
            return;
        case ExprOp::add:
        case ExprOp::subtract:
            child(e.args[0], expr_precedence(e.args[0]) < 1);
            out.push_back(e.op == ExprOp::add ? '+' : '-');
            child(e.args[1], expr_precedence(e.args[1]) <= 1);
            return;
        case ExprOp::multiply:
        case ExprOp::divide:
            child(e.args[0], expr_precedence(e.args[0]) < 2);
            out.push_back(e.op == ExprOp::multiply ? '*' : '/');
            child(e.args[1], expr_precedence(e.args[1]) <= 2);
            return;
        case ExprOp::power:
            child(e.args[0], expr_precedence(e.args[0]) < 5);
            out.push_back('^');
            child(e.args[1], expr_precedence(e.args[1]) < 3);
            return;
        case ExprOp::call:
            out += func_names[static_cast<std::size_t>(e.fn)];
            out.push_back('(');
            print_expr(e.args[0], out);
            out.push_back(')');
            return;
    }
}

}  // namespace detail

// Prints the tree so that parse_expression(print_expression(e)) is
// structurally identical to e.
inline std::string print_expression(const Expr& e) {
    std::string out;
    detail::print_expr(e, out);
    return out;
}

}  // namespace npvide
