// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selmer/factor.hpp"

using namespace selmer;

TEST_CASE("small factorizations") {
    Factorization f = factor(Integer(14));
    CHECK(f.sign == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 2);
    CHECK(f.factors[0].second == 1);
    CHECK(f.factors[1].first == 7);
    CHECK(f.factors[1].second == 1);
}

TEST_CASE("minimal discriminant of 14a1") {
    // -21952 = -1 * 2^6 * 7^3
    Factorization f = factor(Integer(-21952));
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == 2);
    CHECK(f.factors[0].second == 6);
    CHECK(f.factors[1].first == 7);
    CHECK(f.factors[1].second == 3);
    CHECK(f.value() == -21952);
}

TEST_CASE("units and errors") {
    Factorization one = factor(Integer(1));
    CHECK(one.sign == 1);
    CHECK(one.factors.empty());
    Factorization mone = factor(Integer(-1));
    CHECK(mone.sign == -1);
    CHECK(mone.factors.empty());
    CHECK_THROWS_AS(factor(Integer(0)), input_error);
}

TEST_CASE("factorization reconstructs and certifies primality") {
    for (long n : {360L, -99991L, 1000003L * 17L, 104729L * 104729L, 2L * 3L * 5L * 7L * 11L}) {
        Factorization f = factor(Integer(n));
        CHECK(f.value() == n);
        for (const auto& [p, e] : f.factors) {
            CHECK(is_prime(p));
            CHECK(e >= 1);
        }
        for (size_t i = 1; i < f.factors.size(); ++i)
            CHECK(f.factors[i - 1].first < f.factors[i].first);
    }
}

TEST_CASE("rho handles a semiprime beyond the trial bound") {
    Integer p("10000000019");
    Integer q("10000000033");
    Factorization f = factor(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].first == p);
    CHECK(f.factors[1].first == q);
}

TEST_CASE("hints shortcut the same answer") {
    Integer n = Integer(-21952) * 101;
    Factorization f = factor_with_hints(n, {Integer(2), Integer(7), Integer(101)});
    CHECK(f.value() == n);
}

TEST_CASE("legendre and least nonresidue") {
    CHECK(legendre(Integer(2), Integer(7)) == 1);
    CHECK(legendre(Integer(3), Integer(7)) == -1);
    CHECK(least_nonresidue(Integer(7)) == 3);
    CHECK(least_nonresidue(Integer(3)) == 2);
    CHECK(least_nonresidue(Integer(5)) == 2);
    CHECK(least_nonresidue(Integer(71)) == 7);
}
