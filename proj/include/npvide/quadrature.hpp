#pragma once

// Composite Gauss-Legendre quadrature on an interval, plus the nested
// triple integral used by the integral operator of the solver.

#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace npvide {

namespace detail {

struct GaussPoint {
    double node;    // abscissa on [-1, 1]
    double weight;  // weight on [-1, 1]
};

// Nodes and weights of the n-point Gauss-Legendre rules, n = 1..8,
// accurate to the last bit of a double.
inline const std::vector<GaussPoint>& gauss_points(int order) {
    static const std::array<std::vector<GaussPoint>, 8> tables = {{
        {{0.0, 2.0}},
        {{-0.5773502691896257645091487805019575, 1.0},
         {0.5773502691896257645091487805019575, 1.0}},
        {{-0.7745966692414833770358530799564799, 0.5555555555555555555555555555555556},
         {0.0, 0.8888888888888888888888888888888889},
         {0.7745966692414833770358530799564799, 0.5555555555555555555555555555555556}},
        {{-0.8611363115940525752239464888928095, 0.3478548451374538573730639492219994},
         {-0.3399810435848562648026657591032447, 0.6521451548625461426269360507780006},
         {0.3399810435848562648026657591032447, 0.6521451548625461426269360507780006},
         {0.8611363115940525752239464888928095, 0.3478548451374538573730639492219994}},
        {{-0.9061798459386639927976268782993930, 0.2369268850561890875142640407199174},
         {-0.5384693101056830910363144207002088, 0.4786286704993664680412915148356382},
         {0.0, 0.5688888888888888888888888888888889},
         {0.5384693101056830910363144207002088, 0.4786286704993664680412915148356382},
         {0.9061798459386639927976268782993930, 0.2369268850561890875142640407199174}},
        {{-0.9324695142031520278123015544939946, 0.1713244923791703450402961421727329},
         {-0.6612093864662645136613995950199053, 0.3607615730481386075698335138377161},
         {-0.2386191860831969086305017216807119, 0.4679139345726910473898703439895510},
         {0.2386191860831969086305017216807119, 0.4679139345726910473898703439895510},
         {0.6612093864662645136613995950199053, 0.3607615730481386075698335138377161},
         {0.9324695142031520278123015544939946, 0.1713244923791703450402961421727329}},
        {{-0.9491079123427585245261896840478513, 0.1294849661688696932706114326790820},
         {-0.7415311855993944398638647732807884, 0.2797053914892766679014677714237796},
         {-0.4058451513773971669066064120769615, 0.3818300505051189449503697754889751},
         {0.0, 0.4179591836734693877551020408163265},
         {0.4058451513773971669066064120769615, 0.3818300505051189449503697754889751},
         {0.7415311855993944398638647732807884, 0.2797053914892766679014677714237796},
         {0.9491079123427585245261896840478513, 0.1294849661688696932706114326790820}},
        {{-0.9602898564975362316835608685694730, 0.1012285362903762591525313543099622},
         {-0.7966664774136267395915539364758304, 0.2223810344533744705443559944262409},
         {-0.5255324099163289858177390491892463, 0.3137066458778872873379622019866013},
         {-0.1834346424956498049394761423601840, 0.3626837833783619829651504492771956},
         {0.1834346424956498049394761423601840, 0.3626837833783619829651504492771956},
         {0.5255324099163289858177390491892463, 0.3137066458778872873379622019866013},
         {0.7966664774136267395915539364758304, 0.2223810344533744705443559944262409},
         {0.9602898564975362316835608685694730, 0.1012285362903762591525313543099622}},
    }};
    if (order < 1 || order > 8) throw std::domain_error("gauss_points: order must be in 1..8");
    return tables[static_cast<std::size_t>(order - 1)];
}

}  // namespace detail

// A composite rule: `order`-point Gauss-Legendre on each of `panels`
// equal subintervals.
struct QuadratureRule {
    int order = 5;
    int panels = 8;

    QuadratureRule(int order_ = 5, int panels_ = 8) : order(order_), panels(panels_) {
        detail::gauss_points(order);  // validates the order
        if (panels < 1) throw std::domain_error("QuadratureRule: panels must be >= 1");
    }
};

// Integral of f over [a, b].  Degenerate intervals integrate to exactly
// zero; a reversed interval is rejected rather than silently negated.
template <typename F>
double integrate(F&& f, double a, double b, const QuadratureRule& rule = {}) {
    if (a > b) throw std::domain_error("integrate: interval is reversed (a > b)");
    if (a == b) return 0.0;
    const auto& pts = detail::gauss_points(rule.order);
    const double h = (b - a) / rule.panels;
    double total = 0.0;
    for (int p = 0; p < rule.panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        double panel = 0.0;
        for (const auto& gp : pts) panel += gp.weight * f(mid + 0.5 * h * gp.node);
        total += 0.5 * h * panel;
    }
    return total;
}

// The iterated integral
//   integral_0^t integral_0^r integral_alpha^x f(r, s, y) dy ds dr
// evaluated by nesting the composite rule once per axis.
template <typename F>
double volterra_triple(F&& f, double t, double x, double alpha, const QuadratureRule& rule = {}) {
    return integrate(
        [&](double r) {
            return integrate(
                [&](double s) {
                    return integrate([&](double y) { return f(r, s, y); }, alpha, x, rule);
                },
                0.0, r, rule);
        },
        0.0, t, rule);
}

}  // namespace npvide
