#pragma once

// Assembles evaluation reports (per-point errors for every stage depth,
// plus the two bounds) and serializes them as CSV or JSON.  All numeric
// columns are written with the same fixed formatting so identical inputs
// produce identical bytes.

#include <cstdio>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "volterra.hpp"

namespace npvide {

struct ReportRow {
    double x = 0.0;
    double t = 0.0;
    std::vector<double> values;  // per-depth |u_p - exact|; empty without an exact solution
};

struct Report {
    std::size_t m = 0;
    std::vector<std::size_t> n_list;
    bool has_exact = false;
    std::vector<ReportRow> rows;
    double apriori = 0.0;
    double aposteriori = 0.0;
};

// Evaluates the full stage chain at the given points.  With an exact
// solution every row carries the absolute errors e_1 .. e_m; without one
// the error columns are omitted and only the bounds say anything.
inline Report make_report(const Problem& problem, std::shared_ptr<const Iterate> final_stage,
                          const Real2Fn& guess, const std::optional<Real2Fn>& exact,
                          const std::vector<std::pair<double, double>>& points,
                          int bound_density = 21, const QuadratureRule& residual_rule = {4, 4}) {
    Report report;
    const auto chain = stage_chain(final_stage);
    report.m = chain.size();
    for (const auto& stage : chain) report.n_list.push_back(stage->n());
    report.has_exact = exact.has_value();
    for (const auto& [x, t] : points) {
        ReportRow row{x, t, {}};
        if (exact)
            for (const auto& stage : chain)
                row.values.push_back(std::abs(stage->eval(x, t) - (*exact)(x, t)));
        report.rows.push_back(std::move(row));
    }
    const double residual = estimate_residual_norm(problem, guess, residual_rule, bound_density);
    report.apriori = apriori_bound(report.m, residual, ContractionParams::of(problem));
    report.aposteriori = aposteriori_bound(problem, final_stage, guess, bound_density);
    return report;
}

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5e", v);
    return buf;
}

}  // namespace detail

// CSV schema: header x,t,e_1,...,e_m, one row per point, every column in
// scientific notation with six significant digits.  Without an exact
// solution the e_p columns are dropped and only the points remain.
inline void write_csv(const Report& report, std::ostream& out) {
    out << "x,t";
    if (report.has_exact)
        for (std::size_t p = 1; p <= report.m; ++p) out << ",e_" << p;
    out << "\n";
    for (const auto& row : report.rows) {
        out << detail::sci(row.x) << "," << detail::sci(row.t);
        for (const double v : row.values) out << "," << detail::sci(v);
        out << "\n";
    }
}

inline void write_json(const Report& report, std::ostream& out) {
    out << "{\n  \"m\": " << report.m << ",\n  \"n_list\": [";
    for (std::size_t k = 0; k < report.n_list.size(); ++k)
        out << (k ? ", " : "") << report.n_list[k];
    out << "],\n  \"apriori_bound\": " << detail::sci(report.apriori)
        << ",\n  \"aposteriori_bound\": " << detail::sci(report.aposteriori) << ",\n  \"rows\": [";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const auto& row = report.rows[r];
        out << (r ? "," : "") << "\n    {\"x\": " << detail::sci(row.x)
            << ", \"t\": " << detail::sci(row.t);
        if (report.has_exact) {
            out << ", \"errors\": [";
            for (std::size_t k = 0; k < row.values.size(); ++k)
                out << (k ? ", " : "") << detail::sci(row.values[k]);
            out << "]";
        }
        out << "}";
    }
    out << "\n  ]\n}\n";
}

}  // namespace npvide
