#pragma once

// Contraction constants of the iteration, the tail sums they generate, and
// the two computable error bounds: an a-priori bound from the residual of
// the initial guess and an a-posteriori bound from the projection defects
// of the composed stages.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "quadrature.hpp"
#include "volterra.hpp"

namespace npvide {

struct ContractionParams {
    double N = 0.0;     // sup of |a|
    double M = 0.0;     // Lipschitz constant of K in u
    double T = 1.0;     // time horizon
    double beta = 1.0;  // spatial width

    ContractionParams() = default;
    ContractionParams(double N_, double M_, double T_, double beta_)
        : N(N_), M(M_), T(T_), beta(beta_) {
        if (!(N >= 0.0) || !(M >= 0.0) || !(T > 0.0) || !(beta > 0.0))
            throw std::domain_error("ContractionParams: need N, M >= 0 and T, beta > 0");
    }

    static ContractionParams of(const Problem& p) {
        return ContractionParams(p.N(), p.M(), p.T(), p.beta());
    }
};

// The operator applied n times contracts distances by at least
//   mu_n = T^n / n! * (N + T beta M / n)^n,       mu_0 = 1.
// Computed as a running product so large n neither overflows nor loses
// accuracy to a separate factorial.
inline double mu(std::size_t n, const ContractionParams& p) {
    if (n == 0) return 1.0;
    const double base = p.N + p.T * p.beta * p.M / static_cast<double>(n);
    double value = 1.0;
    for (std::size_t k = 1; k <= n; ++k) value *= p.T * base / static_cast<double>(k);
    return value;
}

// Upper bound on sum_{n >= m} mu_n: terms are accumulated until they stop
// mattering at double precision, then the rest is dominated by a geometric
// series.  The ratio mu_{n+1} / mu_n never exceeds T (N + T beta M) / (n+1),
// which eventually drops below 1 and keeps shrinking.
inline double tail_sum(std::size_t m, const ContractionParams& p) {
    if (m < 1) throw std::domain_error("tail_sum: m must be >= 1");
    const double ratio_scale = p.T * (p.N + p.T * p.beta * p.M);
    if (ratio_scale == 0.0) return 0.0;  // every term with n >= 1 vanishes
    double sum = 0.0;
    std::size_t n = m;
    double term = mu(n, p);
    while (true) {
        sum += term;
        const double next_ratio = ratio_scale / static_cast<double>(n + 2);
        const double next = mu(n + 1, p);
        if (next_ratio < 1.0 && next < 1e-16 * sum) {
            // everything past `next` is <= next * next_ratio^k
            return sum + next / (1.0 - next_ratio);
        }
        term = next;
        ++n;
        if (n > m + 100000) throw std::runtime_error("tail_sum: series failed to converge");
    }
}

// Smallest stage count m with tail_sum(m) < eps / (2 * residual_norm): the
// depth at which the scheme's total error estimate drops below eps.
inline std::size_t choose_m(double eps, double residual_norm, const ContractionParams& p) {
    if (!(eps > 0.0)) throw std::domain_error("choose_m: eps must be positive");
    if (!(residual_norm > 0.0)) throw std::domain_error("choose_m: residual norm must be positive");
    const double target = eps / (2.0 * residual_norm);
    for (std::size_t m = 1; m <= 1000; ++m)
        if (tail_sum(m, p) < target) return m;
    throw std::runtime_error("choose_m: no admissible depth below 1000");
}

// Sup of |Fv - v| over a uniform sample grid, where F is the exact integral
// operator: the residual of v as a candidate fixed point.
inline double estimate_residual_norm(const Problem& p, const Real2Fn& v,
                                     const QuadratureRule& rule = {4, 4}, int density = 21) {
    if (density < 2) throw std::domain_error("estimate_residual_norm: density must be >= 2");
    double sup = 0.0;
    for (int i = 0; i < density; ++i) {
        for (int j = 0; j < density; ++j) {
            const double x = p.alpha() + p.beta() * i / (density - 1);
            const double t = p.T() * j / (density - 1);
            sup = std::max(sup, std::abs(apply_picard(p, v, x, t, rule) - v(x, t)));
        }
    }
    return sup;
}

// A-priori bound on the distance between the depth-m output and the true
// solution: tail_sum(m) times the residual of the initial guess.
inline double apriori_bound(std::size_t m, double residual_norm, const ContractionParams& p) {
    return tail_sum(m, p) * residual_norm;
}

// A-posteriori bound: each stage contributes its two projection defects
// (linear term and kernel term, measured as sups over a fine sample grid),
// scaled by how much the remaining stages contract them.
inline double aposteriori_bound(const Problem& p, std::shared_ptr<const Iterate> final_stage,
                                const Real2Fn& guess, int density = 21) {
    if (!final_stage) throw std::domain_error("aposteriori_bound: empty iterate");
    if (density < 2) throw std::domain_error("aposteriori_bound: density must be >= 2");
    const auto chain = stage_chain(std::move(final_stage));
    const std::size_t m = chain.size();
    const ContractionParams cp = ContractionParams::of(p);
    std::vector<double> xs(density), ts(density);
    for (int i = 0; i < density; ++i) {
        xs[i] = p.alpha() + p.beta() * i / (density - 1);
        ts[i] = p.T() * static_cast<double>(i) / (density - 1);
    }
    double bound = 0.0;
    for (std::size_t stage_idx = 0; stage_idx < m; ++stage_idx) {
        const Iterate& stage = *chain[stage_idx];
        const auto prev = stage.parent();
        const Real2Fn v = prev ? Real2Fn([&prev](double x, double t) { return prev->eval(x, t); })
                               : guess;
        // defect of the projected linear integrand a * v
        double linear_defect = 0.0;
        for (int i = 0; i < density; ++i)
            for (int j = 0; j < density; ++j)
                linear_defect = std::max(
                    linear_defect, std::abs(p.a(xs[i], ts[j]) * v(xs[i], ts[j]) -
                                            stage.linear_grid().eval(xs[i], ts[j])));
        // defect of the projected kernel integrand; v only enters through
        // (y, s), so cache it on that slice
        std::vector<double> vys(static_cast<std::size_t>(density) * density);
        for (int k = 0; k < density; ++k)
            for (int l = 0; l < density; ++l)
                vys[static_cast<std::size_t>(k) * density + l] = v(xs[k], ts[l]);
        double kernel_defect = 0.0;
        for (int i = 0; i < density; ++i)
            for (int j = 0; j < density; ++j)
                for (int k = 0; k < density; ++k)
                    for (int l = 0; l < density; ++l) {
                        const double exact_val =
                            p.K(xs[i], ts[j], xs[k], ts[l],
                                vys[static_cast<std::size_t>(k) * density + l]);
                        const double proj_val = stage.kernel_grid().eval(xs[i], ts[j], xs[k], ts[l]);
                        kernel_defect = std::max(kernel_defect, std::abs(exact_val - proj_val));
                    }
        const double stage_defect =
            linear_defect * p.T() + kernel_defect * p.beta() * p.T() * p.T();
        bound += mu(m - 1 - stage_idx, cp) * stage_defect;
    }
    return bound;
}

}  // namespace npvide
