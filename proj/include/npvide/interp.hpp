#pragma once

// Grid samples of a function over tensor products of basis nodes, with two
// equivalent views: multilinear interpolation between grid cells, and the
// coefficients of the truncated hat-basis expansion that reproduces the
// same interpolant.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "basis.hpp"

namespace npvide {

namespace detail {

// Maps a coordinate to the sorted-cell index holding it.  A point on an
// interior cell boundary resolves to the cell ending there (the left cell);
// the left domain edge belongs to the first cell.
inline std::size_t locate_cell(const std::vector<double>& sorted, double x) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - sorted.begin());
    if (idx > 0) --idx;
    if (idx > sorted.size() - 2) idx = sorted.size() - 2;
    return idx;
}

// Sorted copies of the first n nodes along one axis together with the map
// from sorted slots back to original (insertion-order) node indices.
struct AxisView {
    std::vector<double> sorted;
    std::vector<std::size_t> original;  // original[k] = insertion index of sorted[k]

    AxisView(const HatBasis& basis, std::size_t n) {
        if (n < 2 || n > basis.size())
            throw std::domain_error("AxisView: prefix length out of range");
        std::vector<std::size_t> order(n);
        for (std::size_t k = 0; k < n; ++k) order[k] = k;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return basis.nodes()[a] < basis.nodes()[b]; });
        sorted.resize(n);
        original.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            sorted[k] = basis.nodes()[order[k]];
            original[k] = order[k];
        }
    }
};

// In-place hierarchical-surplus transform of one line of samples ordered by
// node insertion index: coefficient m is the sample at node m minus the
// partial expansion over elements 1..m-1 evaluated there.  This is the
// sequential interpolation process along one axis.
inline void surplus_line(const HatBasis& basis, double* line, std::size_t n, std::ptrdiff_t stride) {
    for (std::size_t m = 2; m <= n; ++m) {
        const double xm = basis.nodes()[m - 1];
        double partial = 0.0;
        for (std::size_t k = 1; k < m; ++k)
            partial += line[static_cast<std::ptrdiff_t>(k - 1) * stride] * basis.eval(k, xm);
        line[static_cast<std::ptrdiff_t>(m - 1) * stride] -= partial;
    }
}

}  // namespace detail

// Samples of f(x, t) on the n x n grid of the first n nodes of each axis.
class GridFunction2 {
  public:
    GridFunction2(std::shared_ptr<const HatBasis> xbasis, std::shared_ptr<const HatBasis> tbasis,
                  std::size_t n, std::vector<double> values)
        : xb_(std::move(xbasis)), tb_(std::move(tbasis)), n_(n), values_(std::move(values)),
          xview_(*xb_, n), tview_(*tb_, n) {
        if (values_.size() != n_ * n_)
            throw std::domain_error("GridFunction2: value count does not match grid");
    }

    std::size_t n() const { return n_; }
    const HatBasis& xbasis() const { return *xb_; }
    const HatBasis& tbasis() const { return *tb_; }

    // Sample at (node i, node j), 1-based insertion indices.
    double value(std::size_t i, std::size_t j) const { return values_[(i - 1) * n_ + (j - 1)]; }

    // Multilinear interpolation between the four corners of the cell
    // containing (x, t).
    double eval(double x, double t) const {
        const std::size_t cx = detail::locate_cell(xview_.sorted, x);
        const std::size_t ct = detail::locate_cell(tview_.sorted, t);
        const double wx = (x - xview_.sorted[cx]) / (xview_.sorted[cx + 1] - xview_.sorted[cx]);
        const double wt = (t - tview_.sorted[ct]) / (tview_.sorted[ct + 1] - tview_.sorted[ct]);
        const double v00 = at_sorted(cx, ct), v01 = at_sorted(cx, ct + 1);
        const double v10 = at_sorted(cx + 1, ct), v11 = at_sorted(cx + 1, ct + 1);
        return (1.0 - wx) * ((1.0 - wt) * v00 + wt * v01) + wx * ((1.0 - wt) * v10 + wt * v11);
    }

    // Coefficients of the order-n^2 hat expansion equal to the interpolant,
    // listed in pairing-bijection order: coeffs[m-1] multiplies
    // elem_i(x) * elem_j(t) with (i, j) = tau(m).
    std::vector<double> expansion_coeffs() const {
        std::vector<double> work = values_;
        const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(n_);
        for (std::size_t j = 0; j < n_; ++j)  // transform along x for each fixed t-node
            detail::surplus_line(*xb_, work.data() + j, n_, n);
        for (std::size_t i = 0; i < n_; ++i)  // then along t
            detail::surplus_line(*tb_, work.data() + i * n_, n_, 1);
        std::vector<double> coeffs(n_ * n_);
        for (std::size_t m = 1; m <= n_ * n_; ++m) {
            const Index2 ij = tau(static_cast<long long>(m));
            coeffs[m - 1] = work[(ij.i - 1) * n + (ij.j - 1)];
        }
        return coeffs;
    }

  private:
    double at_sorted(std::size_t sx, std::size_t st) const {
        return values_[xview_.original[sx] * n_ + tview_.original[st]];
    }

    std::shared_ptr<const HatBasis> xb_, tb_;
    std::size_t n_;
    std::vector<double> values_;  // insertion-order layout, x-major
    detail::AxisView xview_, tview_;
};

// Samples of f(x, t, y, s) on the n^4 tensor grid; axes x and y share the
// spatial basis, t and s the temporal one.
class GridFunction4 {
  public:
    GridFunction4(std::shared_ptr<const HatBasis> xbasis, std::shared_ptr<const HatBasis> tbasis,
                  std::size_t n, std::vector<double> values)
        : xb_(std::move(xbasis)), tb_(std::move(tbasis)), n_(n), values_(std::move(values)),
          xview_(*xb_, n), tview_(*tb_, n) {
        if (values_.size() != n_ * n_ * n_ * n_)
            throw std::domain_error("GridFunction4: value count does not match grid");
    }

    std::size_t n() const { return n_; }

    double value(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return values_[flat(i - 1, j - 1, k - 1, l - 1)];
    }

    // Multilinear interpolation over the 16 corners of the containing cell.
    double eval(double x, double t, double y, double s) const {
        const std::size_t c[4] = {detail::locate_cell(xview_.sorted, x),
                                  detail::locate_cell(tview_.sorted, t),
                                  detail::locate_cell(xview_.sorted, y),
                                  detail::locate_cell(tview_.sorted, s)};
        const detail::AxisView* views[4] = {&xview_, &tview_, &xview_, &tview_};
        const double pos[4] = {x, t, y, s};
        double w[4];
        for (int d = 0; d < 4; ++d) {
            const auto& sorted = views[d]->sorted;
            w[d] = (pos[d] - sorted[c[d]]) / (sorted[c[d] + 1] - sorted[c[d]]);
        }
        double acc = 0.0;
        for (int corner = 0; corner < 16; ++corner) {
            double weight = 1.0;
            std::size_t idx[4];
            for (int d = 0; d < 4; ++d) {
                const bool high = (corner >> d) & 1;
                weight *= high ? w[d] : 1.0 - w[d];
                idx[d] = views[d]->original[c[d] + (high ? 1 : 0)];
            }
            acc += weight * values_[flat(idx[0], idx[1], idx[2], idx[3])];
        }
        return acc;
    }

    // Coefficients of the order-n^4 expansion, listed so coeffs[m-1]
    // multiplies elem_i(x) elem_j(t) elem_k(y) elem_l(s) with
    // (i, j, k, l) = phi4(m).
    std::vector<double> expansion_coeffs() const {
        std::vector<double> work = values_;
        const std::size_t n = n_;
        const std::size_t strides[4] = {n * n * n, n * n, n, 1};
        const HatBasis* bases[4] = {xb_.get(), tb_.get(), xb_.get(), tb_.get()};
        for (int d = 0; d < 4; ++d) {
            // iterate over all lines along axis d
            for (std::size_t outer = 0; outer < n * n * n; ++outer) {
                std::size_t rem = outer, base = 0;
                for (int e = 3; e >= 0; --e) {
                    if (e == d) continue;
                    base += (rem % n) * strides[e];
                    rem /= n;
                }
                detail::surplus_line(*bases[d], work.data() + base, n,
                                     static_cast<std::ptrdiff_t>(strides[d]));
            }
        }
        std::vector<double> coeffs(n * n * n * n);
        for (std::size_t m = 1; m <= coeffs.size(); ++m) {
            const Index4 q = phi4(static_cast<long long>(m));
            coeffs[m - 1] = work[flat(static_cast<std::size_t>(q.i - 1), static_cast<std::size_t>(q.j - 1),
                                      static_cast<std::size_t>(q.k - 1), static_cast<std::size_t>(q.l - 1))];
        }
        return coeffs;
    }

  private:
    std::size_t flat(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return ((i * n_ + j) * n_ + k) * n_ + l;
    }

    std::shared_ptr<const HatBasis> xb_, tb_;
    std::size_t n_;
    std::vector<double> values_;  // insertion-order layout, axes x, t, y, s
    detail::AxisView xview_, tview_;
};

// Samples f on the n x n node grid.
template <typename F>
GridFunction2 project2(F&& f, std::size_t n, std::shared_ptr<const HatBasis> xbasis,
                       std::shared_ptr<const HatBasis> tbasis) {
    if (n < 2 || n > xbasis->size() || n > tbasis->size())
        throw std::domain_error("project2: prefix length out of range");
    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            values[i * n + j] = f(xbasis->nodes()[i], tbasis->nodes()[j]);
    return GridFunction2(std::move(xbasis), std::move(tbasis), n, std::move(values));
}

// Samples f on the n^4 node grid (axes x, t, y, s).
template <typename F>
GridFunction4 project4(F&& f, std::size_t n, std::shared_ptr<const HatBasis> xbasis,
                       std::shared_ptr<const HatBasis> tbasis) {
    if (n < 2 || n > xbasis->size() || n > tbasis->size())
        throw std::domain_error("project4: prefix length out of range");
    std::vector<double> values(n * n * n * n);
    std::size_t pos = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    values[pos++] = f(xbasis->nodes()[i], tbasis->nodes()[j], xbasis->nodes()[k],
                                      tbasis->nodes()[l]);
    return GridFunction4(std::move(xbasis), std::move(tbasis), n, std::move(values));
}

}  // namespace npvide
