#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include <npvide/basis.hpp>

#include "oracles.hpp"

using namespace npvide;

TEST_CASE("pairing bijection enumerates squares in prefix order") {
    CHECK(tau(1) == Index2{1, 1});
    CHECK(tau(2) == Index2{1, 2});
    CHECK(tau(3) == Index2{2, 1});
    CHECK(tau(4) == Index2{2, 2});
    CHECK(tau(5) == Index2{1, 3});
    CHECK(tau(7) == Index2{3, 1});
    CHECK(tau(9) == Index2{3, 3});

    CHECK(tau_inverse(1, 3) == 5);
    CHECK(tau_inverse(3, 1) == 7);
    CHECK(tau_inverse(2, 2) == 4);

    SECTION("round trip") {
        for (long long n = 1; n <= 5000; ++n) {
            const Index2 ij = tau(n);
            CHECK(tau_inverse(ij.i, ij.j) == n);
        }
    }
    SECTION("prefix m^2 covers exactly {1..m}^2") {
        for (int m = 1; m <= 30; ++m) {
            std::set<std::pair<int, int>> seen;
            for (long long n = 1; n <= static_cast<long long>(m) * m; ++n) {
                const Index2 ij = tau(n);
                CHECK(ij.i >= 1);
                CHECK(ij.i <= m);
                CHECK(ij.j >= 1);
                CHECK(ij.j <= m);
                seen.insert({ij.i, ij.j});
            }
            CHECK(seen.size() == static_cast<std::size_t>(m) * m);
        }
    }
    CHECK_THROWS_AS(tau(0), std::domain_error);
    CHECK_THROWS_AS(tau_inverse(0, 1), std::domain_error);
}

TEST_CASE("four-component bijection") {
    CHECK(phi4_inverse(2, 2, 2, 2) == 16);
    CHECK(phi4(1) == Index4{1, 1, 1, 1});
    for (long long n = 1; n <= 2000; ++n) {
        const Index4 q = phi4(n);
        CHECK(phi4_inverse(q.i, q.j, q.k, q.l) == n);
    }
    SECTION("prefix m^4 covers exactly {1..m}^4") {
        for (int m = 1; m <= 5; ++m) {
            std::set<std::tuple<int, int, int, int>> seen;
            for (long long n = 1; n <= static_cast<long long>(m) * m * m * m; ++n) {
                const Index4 q = phi4(n);
                CHECK(q.i <= m);
                CHECK(q.j <= m);
                CHECK(q.k <= m);
                CHECK(q.l <= m);
                seen.insert({q.i, q.j, q.k, q.l});
            }
            CHECK(seen.size() == static_cast<std::size_t>(m * m * m * m));
        }
    }
}

TEST_CASE("dyadic node sequences") {
    const NodeSequence unit = dyadic_nodes(0.0, 1.0, 5);
    CHECK(unit.nodes == std::vector<double>{0.0, 1.0, 0.5, 0.25, 0.75});
    const NodeSequence shifted = dyadic_nodes(2.0, 4.0, 3);
    CHECK(shifted.nodes == std::vector<double>{2.0, 4.0, 3.0});
    const NodeSequence nine = dyadic_nodes(0.0, 1.0, 9);
    CHECK(nine.nodes[5] == 0.125);
    CHECK(nine.nodes[8] == 0.875);

    CHECK_THROWS_AS(dyadic_nodes(0.0, 1.0, 1), std::domain_error);
    CHECK_THROWS_AS(NodeSequence(0.0, 1.0, {0.0, 0.5}), std::domain_error);   // hi not second
    CHECK_THROWS_AS(NodeSequence(0.0, 1.0, {0.0, 1.0, 1.0}), std::domain_error);  // duplicate
    CHECK_THROWS_AS(NodeSequence(0.0, 1.0, {0.0, 1.0, 1.5}), std::domain_error);  // outside
    CHECK_THROWS_AS(NodeSequence(1.0, 0.0, {1.0, 0.0}), std::domain_error);   // reversed
}

TEST_CASE("hat elements interpolate the node ladder") {
    const HatBasis basis(dyadic_nodes(0.0, 1.0, 9));

    SECTION("element 1 is the constant one") {
        CHECK(basis.eval(1, 0.0) == 1.0);
        CHECK(basis.eval(1, 0.37) == 1.0);
        CHECK(basis.eval(1, 1.0) == 1.0);
    }
    SECTION("element n is 1 at its node, 0 at all earlier nodes") {
        for (std::size_t n = 2; n <= basis.size(); ++n) {
            CHECK(basis.eval(n, basis.node(n)) == 1.0);
            for (std::size_t k = 1; k < n; ++k) CHECK(basis.eval(n, basis.node(k)) == 0.0);
        }
    }
    SECTION("frozen point values") {
        const HatBasis small(dyadic_nodes(0.0, 1.0, 3));  // nodes 0, 1, 1/2
        CHECK(small.eval(2, 0.25) == 0.25);               // ramp from 0 to 1
        CHECK(small.eval(3, 0.25) == 0.5);                // peak at 1/2
        CHECK(small.eval(3, 0.75) == 0.5);
        CHECK(small.eval(3, 1.0) == 0.0);
    }
    SECTION("support is the gap between nearest earlier nodes") {
        // element 4 of the dyadic family peaks at 1/4 between 0 and 1/2
        CHECK(basis.eval(4, 0.6) == 0.0);
        CHECK(basis.eval(4, 0.5) == 0.0);
        CHECK(basis.eval(4, 0.125) == 0.5);
    }
    CHECK_THROWS_AS(basis.eval(2, -0.1), std::domain_error);
    CHECK_THROWS_AS(basis.eval(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(basis.eval(10, 0.5), std::domain_error);
}

TEST_CASE("hat primitives are exact integrals") {
    const HatBasis basis(dyadic_nodes(0.0, 1.0, 9));

    SECTION("frozen values on the 3-node family") {
        const HatBasis small(dyadic_nodes(0.0, 1.0, 3));
        CHECK(small.primitive(3, 1.0) == 0.5);   // full triangle, base 1, height 1
        CHECK(small.primitive(3, 0.5) == 0.25);  // rising half
        CHECK(small.primitive(1, 0.7) == Catch::Approx(0.7).margin(1e-15));
        CHECK(small.primitive(2, 1.0) == 0.5);   // ramp integrates to 1/2
    }
    SECTION("matches an independent quadrature") {
        for (std::size_t n = 1; n <= basis.size(); ++n) {
            for (const double x : {0.1, 0.3, 0.55, 0.8, 1.0}) {
                const double ref =
                    oracles::integrate([&](double r) { return basis.eval(n, r); }, 0.0, x, 1e-13);
                CHECK(basis.primitive(n, x) == Catch::Approx(ref).margin(1e-10));
            }
        }
    }
    SECTION("monotone in x and flat outside the support") {
        CHECK(basis.primitive(4, 0.5) == basis.primitive(4, 1.0));
        CHECK(basis.primitive(4, 0.0) == 0.0);
    }
}

TEST_CASE("iterated pair primitives") {
    const HatBasis basis(dyadic_nodes(0.0, 1.0, 5));

    SECTION("frozen closed forms on the 2-node family") {
        const HatBasis segment(dyadic_nodes(0.0, 1.0, 2));
        // elem_1 = 1, elem_2 = r on [0,1]
        CHECK(segment.pair_primitive(1, 1, 1.0) == Catch::Approx(0.5).margin(1e-15));
        CHECK(segment.pair_primitive(2, 1, 1.0) == Catch::Approx(1.0 / 3.0).margin(1e-15));
        CHECK(segment.pair_primitive(1, 2, 1.0) == Catch::Approx(1.0 / 6.0).margin(1e-15));
        CHECK(segment.pair_primitive(1, 1, 0.5) == Catch::Approx(0.125).margin(1e-15));
    }
    SECTION("matches an independent nested quadrature") {
        for (std::size_t j = 1; j <= basis.size(); ++j) {
            for (std::size_t l = 1; l <= basis.size(); ++l) {
                for (const double t : {0.3, 0.7, 1.0}) {
                    const double ref = oracles::integrate(
                        [&](double r) { return basis.eval(j, r) * basis.primitive(l, r); }, 0.0, t,
                        1e-13);
                    CHECK(basis.pair_primitive(j, l, t) == Catch::Approx(ref).margin(1e-10));
                }
            }
        }
    }
    SECTION("vanishes at t = 0") {
        CHECK(basis.pair_primitive(3, 4, 0.0) == 0.0);
    }
}
