#pragma once

// Problem definition and the solver core: the exact integral operator whose
// fixed point is the solution, the projected one-stage operator that
// approximates it in closed form, and composition of stages.

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "basis.hpp"
#include "interp.hpp"
#include "quadrature.hpp"

namespace npvide {

using Real1Fn = std::function<double(double)>;
using Real2Fn = std::function<double(double, double)>;
// kernel arguments: (x, t, y, s, u)
using KernelFn = std::function<double(double, double, double, double, double)>;

// An initial-value problem
//   du/dt = a(x,t) u + g(x,t) + integral_0^t integral_alpha^x K(x,t,y,s,u(y,s)) dy ds,
//   u(x, 0) = u0(x)
// on [alpha, alpha+beta] x [0, T], together with the constants of its
// contraction estimate: N >= sup|a| and M, a Lipschitz bound of K in u.
class Problem {
  public:
    Problem(double alpha, double beta, double T, Real2Fn a, Real2Fn g, KernelFn K, Real1Fn u0,
            double M, double N)
        : alpha_(alpha), beta_(beta), T_(T), a_(std::move(a)), g_(std::move(g)), K_(std::move(K)),
          u0_(std::move(u0)), M_(M), N_(N) {
        if (!(beta_ > 0.0)) throw std::domain_error("Problem: beta must be positive");
        if (!(T_ > 0.0)) throw std::domain_error("Problem: T must be positive");
        if (!(M_ >= 0.0)) throw std::domain_error("Problem: M must be non-negative");
        if (!(N_ >= 0.0)) throw std::domain_error("Problem: N must be non-negative");
        if (!a_ || !g_ || !K_ || !u0_) throw std::domain_error("Problem: missing coefficient function");
        // N must dominate |a| wherever we can cheaply see it.
        constexpr int density = 51;
        for (int i = 0; i < density; ++i) {
            for (int j = 0; j < density; ++j) {
                const double x = alpha_ + beta_ * i / (density - 1);
                const double t = T_ * j / (density - 1);
                const double av = std::abs(a_(x, t));
                if (!(av <= N_))
                    throw std::domain_error("Problem: |a(" + std::to_string(x) + ", " +
                                            std::to_string(t) + ")| = " + std::to_string(av) +
                                            " exceeds the stated bound N = " + std::to_string(N_));
            }
        }
    }

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double x_hi() const { return alpha_ + beta_; }
    double T() const { return T_; }
    double M() const { return M_; }
    double N() const { return N_; }
    double a(double x, double t) const { return a_(x, t); }
    double g(double x, double t) const { return g_(x, t); }
    double K(double x, double t, double y, double s, double u) const { return K_(x, t, y, s, u); }
    double u0(double x) const { return u0_(x); }

    void check_domain(double x, double t) const {
        if (!(x >= alpha_ && x <= x_hi() && t >= 0.0 && t <= T_))
            throw std::domain_error("Problem: point (" + std::to_string(x) + ", " +
                                    std::to_string(t) + ") outside the domain");
    }

  private:
    double alpha_, beta_, T_;
    Real2Fn a_, g_;
    KernelFn K_;
    Real1Fn u0_;
    double M_, N_;
};

// K with its state argument filled in from v: (x,t,y,s) -> K(x,t,y,s,v(y,s)).
inline double kernel_apply(const Problem& p, const Real2Fn& v, double x, double t, double y,
                           double s) {
    return p.K(x, t, y, s, v(y, s));
}

// One application of the exact integral operator to v at (x, t), evaluated
// by brute-force quadrature.  Serves as the reference the projected stages
// are checked against.
inline double apply_picard(const Problem& p, const Real2Fn& v, double x, double t,
                           const QuadratureRule& rule = {4, 4}) {
    p.check_domain(x, t);
    const double linear = integrate([&](double r) { return p.a(x, r) * v(x, r); }, 0.0, t, rule);
    const double forcing = integrate([&](double r) { return p.g(x, r); }, 0.0, t, rule);
    const double nonlinear = volterra_triple(
        [&](double r, double s, double y) { return kernel_apply(p, v, x, r, y, s); }, t, x,
        p.alpha(), rule);
    return p.u0(x) + linear + forcing + nonlinear;
}

// One stage of the scheme: the integral operator with both integrands
// replaced by their hat-basis projections, which collapses every integral
// to closed form.  Holds the projection data of its own stage plus a link
// to the stage it was built on, so a depth-m iterate is a chain of m
// stages.
class Iterate {
  public:
    Iterate(std::shared_ptr<const Problem> problem, std::shared_ptr<const HatBasis> xbasis,
            std::shared_ptr<const HatBasis> tbasis, std::size_t n, GridFunction2 linear_part,
            GridFunction4 kernel_part, QuadratureRule g_rule,
            std::shared_ptr<const Iterate> parent)
        : problem_(std::move(problem)), xb_(std::move(xbasis)), tb_(std::move(tbasis)), n_(n),
          linear_grid_(std::move(linear_part)), kernel_grid_(std::move(kernel_part)),
          linear_coeffs_(linear_grid_.expansion_coeffs()),
          kernel_coeffs_(kernel_grid_.expansion_coeffs()), g_rule_(g_rule),
          parent_(std::move(parent)), depth_(parent_ ? parent_->depth() + 1 : 1) {}

    const Problem& problem() const { return *problem_; }
    std::size_t n() const { return n_; }
    std::size_t depth() const { return depth_; }
    const std::shared_ptr<const Iterate>& parent() const { return parent_; }
    const GridFunction2& linear_grid() const { return linear_grid_; }
    const GridFunction4& kernel_grid() const { return kernel_grid_; }

    // Closed-form value of the stage output at (x, t).  At t = 0 every
    // integral term vanishes identically and the result is exactly u0(x).
    double eval(double x, double t) const {
        problem_->check_domain(x, t);
        const std::size_t n = n_;
        std::vector<double> phix(n + 1), xprim(n + 1), tprim(n + 1);
        for (std::size_t i = 1; i <= n; ++i) {
            phix[i] = xb_->eval(i, x);
            xprim[i] = xb_->primitive(i, x);
            tprim[i] = tb_->primitive(i, t);
        }
        // pair_primitive values reused across the quartic sum
        std::vector<double> dpair((n + 1) * (n + 1));
        for (std::size_t j = 1; j <= n; ++j)
            for (std::size_t l = 1; l <= n; ++l)
                dpair[j * (n + 1) + l] = tb_->pair_primitive(j, l, t);

        double linear = 0.0;
        for (std::size_t m = 1; m <= n * n; ++m) {
            const Index2 ij = tau(static_cast<long long>(m));
            linear += linear_coeffs_[m - 1] * phix[static_cast<std::size_t>(ij.i)] *
                      tprim[static_cast<std::size_t>(ij.j)];
        }
        double nonlinear = 0.0;
        for (std::size_t m = 1; m <= n * n * n * n; ++m) {
            const Index4 q = phi4(static_cast<long long>(m));
            nonlinear += kernel_coeffs_[m - 1] * phix[static_cast<std::size_t>(q.i)] *
                         xprim[static_cast<std::size_t>(q.k)] *
                         dpair[static_cast<std::size_t>(q.j) * (n + 1) + static_cast<std::size_t>(q.l)];
        }
        const double forcing = integrate([&](double r) { return problem_->g(x, r); }, 0.0, t, g_rule_);
        return problem_->u0(x) + linear + forcing + nonlinear;
    }

  private:
    std::shared_ptr<const Problem> problem_;
    std::shared_ptr<const HatBasis> xb_, tb_;
    std::size_t n_;
    GridFunction2 linear_grid_;   // samples of a * v
    GridFunction4 kernel_grid_;   // samples of K(x,t,y,s,v(y,s))
    std::vector<double> linear_coeffs_;
    std::vector<double> kernel_coeffs_;
    QuadratureRule g_rule_;
    std::shared_ptr<const Iterate> parent_;
    std::size_t depth_;
};

// Builds one projected stage on top of input v using the first n nodes of
// each axis.  `parent` records where v came from when v is itself a stage.
inline std::shared_ptr<const Iterate> build_stage(std::shared_ptr<const Problem> problem,
                                                  const Real2Fn& v, std::size_t n,
                                                  std::shared_ptr<const HatBasis> xbasis,
                                                  std::shared_ptr<const HatBasis> tbasis,
                                                  const QuadratureRule& g_rule = {},
                                                  std::shared_ptr<const Iterate> parent = nullptr) {
    if (!v) throw std::domain_error("build_stage: input function is empty");
    if (n < 2 || n > xbasis->size() || n > tbasis->size())
        throw std::domain_error("build_stage: node count out of range");
    const Problem& p = *problem;
    GridFunction2 linear_part =
        project2([&](double x, double t) { return p.a(x, t) * v(x, t); }, n, xbasis, tbasis);
    // cache v on the (y, s) sub-grid: the kernel sees v only there
    std::vector<double> vcache(n * n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
            vcache[k * n + l] = v(xbasis->nodes()[k], tbasis->nodes()[l]);
    std::vector<double> kvalues(n * n * n * n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    kvalues[pos++] = p.K(xbasis->nodes()[i], tbasis->nodes()[j],
                                         xbasis->nodes()[k], tbasis->nodes()[l], vcache[k * n + l]);
    GridFunction4 kernel_part(xbasis, tbasis, n, std::move(kvalues));
    return std::make_shared<Iterate>(std::move(problem), xbasis, tbasis, n, std::move(linear_part),
                                     std::move(kernel_part), g_rule, std::move(parent));
}

// Composes m stages starting from the initial guess, stage p using
// n_list[p-1] nodes per axis.  Returns the final stage; earlier stages stay
// reachable through parent() so one composition yields the whole error
// column e_1 .. e_m.
inline std::shared_ptr<const Iterate> compose(std::shared_ptr<const Problem> problem,
                                              const Real2Fn& guess, std::size_t m,
                                              const std::vector<std::size_t>& n_list,
                                              std::shared_ptr<const HatBasis> xbasis,
                                              std::shared_ptr<const HatBasis> tbasis,
                                              const QuadratureRule& g_rule = {}) {
    if (m < 1) throw std::domain_error("compose: need at least one stage");
    if (n_list.size() != m) throw std::domain_error("compose: n_list length must equal m");
    std::shared_ptr<const Iterate> stage;
    Real2Fn v = guess;
    for (std::size_t p = 0; p < m; ++p) {
        stage = build_stage(problem, v, n_list[p], xbasis, tbasis, g_rule, stage);
        v = [stage](double x, double t) { return stage->eval(x, t); };
    }
    return stage;
}

// Stages of a composed iterate in build order (depth 1 first).
inline std::vector<std::shared_ptr<const Iterate>> stage_chain(
    std::shared_ptr<const Iterate> final_stage) {
    std::vector<std::shared_ptr<const Iterate>> chain;
    for (auto s = std::move(final_stage); s; s = s->parent()) chain.push_back(s);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace npvide
