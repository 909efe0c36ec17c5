// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selmer/curve.hpp"
#include "selmer/isogeny.hpp"
#include "selmer/poly_factor.hpp"

using namespace selmer;

namespace {
Poly from_longs(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return Poly(std::move(v));
}
}  // namespace

TEST_CASE("rational roots of x^2 - 1") {
    Poly f = from_longs({-1, 0, 1});
    auto roots = rational_roots(f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0] == -1);
    CHECK(roots[1] == 1);
}

TEST_CASE("3x^4 + 6x^2 - 1 has no rational roots") {
    // psi_3 of y^2 = x^3 + x
    Poly f = from_longs({-1, 0, 6, 0, 3});
    CHECK(rational_roots(f).empty());
}

TEST_CASE("multiplicity and denominators") {
    // (3x+1)^2 (x-2)
    Poly f = from_longs({1, 3}) * from_longs({1, 3}) * from_longs({-2, 1});
    auto roots = rational_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == make_rational(-1, 3));
    CHECK(roots[1] == make_rational(-1, 3));
    CHECK(roots[2] == 2);
}

TEST_CASE("quadratic target separates factors") {
    // (x^2-1)(x^2+1): target 2 -> {x^2+1}; target 1 -> the two linears
    Poly f = from_longs({-1, 0, 1}) * from_longs({1, 0, 1});
    auto quads = factor_poly_small(f, 2);
    REQUIRE(quads.size() == 1);
    CHECK(quads[0] == from_longs({1, 0, 1}));
    auto lins = factor_poly_small(f, 1);
    REQUIRE(lins.size() == 2);
}

TEST_CASE("deg-3 factors") {
    // (x^3 - 2)(x^2 + x + 1)(x - 4)
    Poly f = from_longs({-2, 0, 0, 1}) * from_longs({1, 1, 1}) * from_longs({-4, 1});
    auto cubics = factor_poly_small(f, 3);
    REQUIRE(cubics.size() == 1);
    CHECK(cubics[0] == from_longs({-2, 0, 0, 1}));
    auto quads = factor_poly_small(f, 2);
    REQUIRE(quads.size() == 1);
    CHECK(quads[0] == from_longs({1, 1, 1}));
}

TEST_CASE("psi_5 of 50b3 has exactly one rational quadratic factor") {
    WeierstrassCurve E = parse_curve("1,1,1,-13,-219");
    Poly psi5 = division_polynomial(E, 5);
    CHECK(psi5.degree() == 12);
    auto quads = factor_poly_small(psi5, 2);
    CHECK(quads.size() == 1);
}

TEST_CASE("psi_5 of y^2 = x^3 + 1 has no rational quadratic factor") {
    WeierstrassCurve E = parse_curve("0,0,0,0,1");
    Poly psi5 = division_polynomial(E, 5);
    CHECK(factor_poly_small(psi5, 2).empty());
}

TEST_CASE("rational factors of a dense degree-12 polynomial with scaled roots") {
    // (2x-1)(2x+1)(x^2+2)(x^2-3x+5)(x^3+x+7)(x^3-x^2+1), made non-monic.
    Poly f = from_longs({-1, 2}) * from_longs({1, 2}) * from_longs({2, 0, 1}) *
             from_longs({5, -3, 1}) * from_longs({7, 1, 0, 1}) * from_longs({1, 0, -1, 1});
    auto lins = factor_poly_small(f, 1);
    REQUIRE(lins.size() == 2);
    auto quads = factor_poly_small(f, 2);
    REQUIRE(quads.size() == 2);
    auto cubics = factor_poly_small(f, 3);
    REQUIRE(cubics.size() == 2);
    for (const Poly& q : quads) CHECK(q.divides(f));
    for (const Poly& c : cubics) CHECK(c.divides(f));
}

TEST_CASE("mod-p degree multisets refine the rational factorization") {
    // A fixed sanity case: irreducible quartic x^4 + 1 has no factors of
    // degree 1..3 even though it splits into quadratics mod every prime.
    Poly f = from_longs({1, 0, 0, 0, 1});
    CHECK(factor_poly_small(f, 1).empty());
    CHECK(factor_poly_small(f, 2).empty());
    CHECK(factor_poly_small(f, 3).empty());
}

TEST_CASE("factor_poly_small preconditions") {
    Poly f = from_longs({-1, 0, 1});
    CHECK_THROWS_AS(factor_poly_small(f, 4), input_error);
    CHECK_THROWS_AS(factor_poly_small(f, 0), input_error);
    CHECK_THROWS_AS(factor_poly_small(Poly(), 2), input_error);
    CHECK_THROWS_AS(rational_roots(Poly()), input_error);
}
