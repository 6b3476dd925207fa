#pragma once

// Bundled benchmark problems with known closed-form solutions.  Every
// arithmetic expression here is written in exactly the shape the expression
// language produces, so a config file carrying the same formula text
// evaluates bit-for-bit identically to the native registry functions.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "scalar_ops.hpp"
#include "volterra.hpp"

namespace npvide {

struct NamedExample {
    int id = 0;
    std::string description;
    std::shared_ptr<const Problem> problem;
    Real2Fn exact;
};

// The four bundled problems, all on [0,1] x [0,1].
inline NamedExample example(int id) {
    switch (id) {
        case 1: {
            auto problem = std::make_shared<const Problem>(
                0.0, 1.0, 1.0,
                [](double x, double t) { return t * std::sin(x); },
                [](double x, double t) {
                    return x - detail::pow_value(t, 3.0) * detail::pow_value(x, 3.0) / 9.0 -
                           detail::pow_value(t, 2.0) * x * std::sin(x);
                },
                [](double, double, double y, double s, double u) { return y * s * u; },
                [](double) { return 0.0; }, 1.0, std::sin(1.0));
            return {1, "linear kernel, solution x*t", problem,
                    [](double x, double t) { return x * t; }};
        }
        case 2: {
            auto problem = std::make_shared<const Problem>(
                0.0, 1.0, 1.0,
                [](double, double) { return 0.0; },
                [](double x, double t) {
                    return x * std::cos(t) -
                           detail::pow_value(t, 2.0) * detail::pow_value(x, 2.0) *
                               detail::pow_value(std::sin(t / 2.0), 2.0);
                },
                [](double, double t, double, double, double u) { return u * detail::pow_value(t, 2.0); },
                [](double) { return 0.0; }, 1.0, 0.0);
            return {2, "no linear term, solution x*sin(t)", problem,
                    [](double x, double t) { return x * std::sin(t); }};
        }
        case 3: {
            auto problem = std::make_shared<const Problem>(
                0.0, 1.0, 1.0,
                [](double x, double t) { return x * std::sin(t); },
                [](double x, double t) {
                    return -detail::pow_value(t, 4.0) * x / 2.0 +
                           detail::pow_value(t, 4.0) * x * std::cos(x) / 2.0 + std::sin(x) -
                           t * x * std::sin(t) * std::sin(x);
                },
                [](double x, double t, double, double, double u) {
                    return x * detail::pow_value(t, 2.0) * u;
                },
                [](double) { return 0.0; }, 1.0, std::sin(1.0));
            return {3, "linear kernel, solution t*sin(x)", problem,
                    [](double x, double t) { return t * std::sin(x); }};
        }
        case 4: {
            auto problem = std::make_shared<const Problem>(
                0.0, 1.0, 1.0,
                [](double x, double) { return detail::pow_value(x, 2.0); },
                [](double x, double t) {
                    return 2.0 - detail::pow_value(x, 2.0) * (2.0 * t + x) -
                           t * std::sin(t) * (std::cos(t) - std::cos(t + x));
                },
                [](double, double t, double, double, double u) { return t * std::sin(u); },
                [](double x) { return x; }, 1.0, 1.0);
            return {4, "nonlinear kernel, solution x + 2*t", problem,
                    [](double x, double t) { return x + 2.0 * t; }};
        }
        default:
            throw std::domain_error("example: unknown id " + std::to_string(id) +
                                    " (known ids are 1..4)");
    }
}

// The evaluation points used throughout the bundled reports.
inline std::vector<std::pair<double, double>> standard_points() {
    return {{0.0, 0.0}, {0.1, 0.1}, {0.2, 0.2}, {0.4, 0.4},
            {0.6, 0.6}, {0.8, 0.8}, {0.9, 0.9}, {1.0, 1.0}};
}

}  // namespace npvide
