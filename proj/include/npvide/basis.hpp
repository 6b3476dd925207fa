#pragma once

// One-dimensional piecewise-linear (hat) bases over dense node sequences,
// their exact integrals, and the index bijections that order tensor-product
// bases built from them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace npvide {

struct Index2 {
    int i = 1;
    int j = 1;
    friend bool operator==(const Index2&, const Index2&) = default;
};

struct Index4 {
    int i = 1;
    int j = 1;
    int k = 1;
    int l = 1;
    friend bool operator==(const Index4&, const Index4&) = default;
};

// Pairing bijection: restricted to {1..n^2} it enumerates {1..n}^2 so that
// every prefix {1..m^2} covers exactly the square {1..m}^2.
inline Index2 tau(long long n) {
    if (n < 1) throw std::domain_error("tau: index must be >= 1");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r == n) return {static_cast<int>(r), static_cast<int>(r)};
    long long d = n - r * r;
    if (d <= r) return {static_cast<int>(d), static_cast<int>(r + 1)};
    return {static_cast<int>(r + 1), static_cast<int>(d - r)};
}

inline long long tau_inverse(long long i, long long j) {
    if (i < 1 || j < 1) throw std::domain_error("tau_inverse: components must be >= 1");
    if (i == j) return i * i;
    if (i < j) return (j - 1) * (j - 1) + i;
    return i * i - i + j;
}

// Four-component analogue, defined by nesting the pairing bijection.
inline Index4 phi4(long long n) {
    const Index2 outer = tau(n);
    const Index2 a = tau(outer.i);
    const Index2 b = tau(outer.j);
    return {a.i, a.j, b.i, b.j};
}

inline long long phi4_inverse(long long i, long long j, long long k, long long l) {
    return tau_inverse(tau_inverse(i, j), tau_inverse(k, l));
}

// Ordered list of distinct interpolation nodes on [lo, hi].  The first two
// nodes are pinned to the endpoints so that every prefix of length n >= 2
// partitions the interval into n - 1 cells.
struct NodeSequence {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> nodes;

    NodeSequence(double lo_, double hi_, std::vector<double> nodes_)
        : lo(lo_), hi(hi_), nodes(std::move(nodes_)) {
        if (!(lo < hi)) throw std::domain_error("NodeSequence: lo must be < hi");
        if (nodes.size() < 2) throw std::domain_error("NodeSequence: need at least 2 nodes");
        if (nodes[0] != lo || nodes[1] != hi)
            throw std::domain_error("NodeSequence: first two nodes must be lo, hi");
        std::vector<double> sorted = nodes;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t p = 0; p < sorted.size(); ++p) {
            if (sorted[p] < lo || sorted[p] > hi)
                throw std::domain_error("NodeSequence: node outside [lo, hi]");
            if (p > 0 && sorted[p] == sorted[p - 1])
                throw std::domain_error("NodeSequence: duplicate node");
        }
    }
};

// Endpoints first, then midpoints in breadth-first dyadic order
// (1/2, then 1/4, 3/4, then 1/8, 3/8, ...), mapped affinely onto [lo, hi].
inline NodeSequence dyadic_nodes(double lo, double hi, std::size_t count) {
    if (count < 2) throw std::domain_error("dyadic_nodes: count must be >= 2");
    std::vector<double> nodes{lo, hi};
    nodes.reserve(count);
    for (long long denom = 2; nodes.size() < count; denom *= 2)
        for (long long num = 1; num < denom && nodes.size() < count; num += 2)
            nodes.push_back(lo + (hi - lo) * (static_cast<double>(num) / static_cast<double>(denom)));
    return NodeSequence(lo, hi, std::move(nodes));
}

// Hat-function family over a node sequence.  Element 1 is the constant one;
// element n (n >= 2) is the unique piecewise-linear function on the first n
// sorted nodes that is 1 at node n and 0 at nodes 1..n-1.  Each element is
// supported between its node's nearest earlier neighbours, so evaluation is
// O(1) once those neighbours are precomputed.
class HatBasis {
  public:
    explicit HatBasis(NodeSequence seq) : seq_(std::move(seq)) {
        const auto& xs = seq_.nodes;
        left_.assign(xs.size(), 0.0);
        right_.assign(xs.size(), 0.0);
        has_right_.assign(xs.size(), false);
        for (std::size_t n = 1; n < xs.size(); ++n) {
            double lf = seq_.lo, rt = seq_.hi;
            bool any_right = false;
            for (std::size_t k = 0; k < n; ++k) {
                if (xs[k] < xs[n]) lf = std::max(lf, xs[k]);
                if (xs[k] > xs[n]) {
                    rt = any_right ? std::min(rt, xs[k]) : xs[k];
                    any_right = true;
                }
            }
            left_[n] = lf;
            right_[n] = rt;
            has_right_[n] = any_right;
        }
    }

    double lo() const { return seq_.lo; }
    double hi() const { return seq_.hi; }
    std::size_t size() const { return seq_.nodes.size(); }
    const std::vector<double>& nodes() const { return seq_.nodes; }
    double node(std::size_t n) const { return seq_.nodes.at(n - 1); }  // 1-based

    // Value of element n at x.
    double eval(std::size_t n, double x) const {
        check_point(x);
        check_element(n);
        if (n == 1) return 1.0;
        const double peak = seq_.nodes[n - 1];
        const double lf = left_[n - 1];
        if (x == peak) return 1.0;
        if (x < peak) {
            if (x <= lf) return 0.0;
            return (x - lf) / (peak - lf);
        }
        if (!has_right_[n - 1]) return (x - lf) / (peak - lf);  // element 2 keeps rising
        const double rt = right_[n - 1];
        if (x >= rt) return 0.0;
        return (rt - x) / (rt - peak);
    }

    // Exact integral of element n over [lo, x]; piecewise quadratic.
    double primitive(std::size_t n, double x) const {
        check_point(x);
        check_element(n);
        if (n == 1) return x - seq_.lo;
        const double peak = seq_.nodes[n - 1];
        const double lf = left_[n - 1];
        const double h1 = peak - lf;
        if (!has_right_[n - 1]) {
            const double z = std::max(x - lf, 0.0);
            return z * z / (2.0 * h1);
        }
        const double rt = right_[n - 1];
        const double h2 = rt - peak;
        if (x <= lf) return 0.0;
        if (x <= peak) {
            const double z = x - lf;
            return z * z / (2.0 * h1);
        }
        if (x < rt) {
            const double z = rt - x;
            return h1 / 2.0 + (h2 * h2 - z * z) / (2.0 * h2);
        }
        return h1 / 2.0 + h2 / 2.0;
    }

    // Exact value of the iterated integral
    //   D_{jl}(t) = integral_{lo}^{t} elem_j(r) * (integral_{lo}^{r} elem_l) dr.
    // The integrand is cubic on every cell of the sorted prefix covering
    // elements j and l, so per-cell two-point Gauss is exact.
    double pair_primitive(std::size_t j, std::size_t l, double t) const {
        check_point(t);
        check_element(j);
        check_element(l);
        const std::size_t prefix = std::max<std::size_t>(2, std::max(j, l));
        std::vector<double> cuts(seq_.nodes.begin(), seq_.nodes.begin() + prefix);
        std::sort(cuts.begin(), cuts.end());
        // one-point offsets of the 2-point Gauss rule on [0, 1]
        constexpr double ga = 0.21132486540518711774542560974902;
        constexpr double gb = 0.78867513459481288225457439025098;
        double total = 0.0;
        double prev = seq_.lo;
        for (std::size_t c = 1; c < cuts.size() && prev < t; ++c) {
            const double end = std::min(cuts[c], t);
            if (end <= prev) continue;
            const double h = end - prev;
            const double r1 = prev + ga * h;
            const double r2 = prev + gb * h;
            total += 0.5 * h * (eval(j, r1) * primitive(l, r1) + eval(j, r2) * primitive(l, r2));
            prev = end;
        }
        if (prev < t) {  // tail beyond the last cut (possible only when t == hi exactly)
            const double h = t - prev;
            const double r1 = prev + ga * h;
            const double r2 = prev + gb * h;
            total += 0.5 * h * (eval(j, r1) * primitive(l, r1) + eval(j, r2) * primitive(l, r2));
        }
        return total;
    }

  private:
    void check_point(double x) const {
        if (!(x >= seq_.lo && x <= seq_.hi))
            throw std::domain_error("HatBasis: point " + std::to_string(x) + " outside [" +
                                    std::to_string(seq_.lo) + ", " + std::to_string(seq_.hi) + "]");
    }
    void check_element(std::size_t n) const {
        if (n < 1 || n > seq_.nodes.size())
            throw std::domain_error("HatBasis: element index out of range");
    }

    NodeSequence seq_;
    std::vector<double> left_;   // nearest earlier node below the peak
    std::vector<double> right_;  // nearest earlier node above the peak
    std::vector<bool> has_right_;
};

}  // namespace npvide
