// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selmer/factor.hpp"
#include "selmer/isogeny.hpp"
#include "selmer/local_data.hpp"

using namespace selmer;

TEST_CASE("14a1 local data") {
    WeierstrassCurve E = parse_curve("1,0,1,4,-6");
    // Nonsplit at 2: -c6 = -5291 is 5 mod 8, not a 2-adic square.
    LocalData at2 = tate(E, Integer(2));
    CHECK(at2.kodaira == KodairaType{KodairaType::In, 6});
    CHECK(at2.kodaira.str() == "I6");
    CHECK(at2.kind == ReductionKind::NonsplitMultiplicative);
    CHECK(at2.tamagawa == 2);
    CHECK(at2.v_disc_min == 6);
    CHECK(at2.potential == PotentialKind::Multiplicative);
    // The twist by 5 is split at 2 with full Tamagawa number 6.
    LocalData tw = tate(minimal_model(quadratic_twist(E, Integer(5))).first, Integer(2));
    CHECK(tw.kodaira == KodairaType{KodairaType::In, 6});
    CHECK(tw.kind == ReductionKind::SplitMultiplicative);
    CHECK(tw.tamagawa == 6);

    LocalData at7 = tate(E, Integer(7));
    CHECK(at7.kodaira == KodairaType{KodairaType::In, 3});
    CHECK(at7.v_disc_min == 3);

    LocalData at11 = tate(E, Integer(11));
    CHECK(at11.kodaira == KodairaType{KodairaType::I0, 0});
    CHECK(at11.tamagawa == 1);
    CHECK(at11.kind == ReductionKind::Good);
    CHECK(at11.v_disc_min == 0);
}

TEST_CASE("50b3 local data: I1 split at 2, II* at 5") {
    WeierstrassCurve E = parse_curve("1,1,1,-13,-219");
    LocalData at2 = tate(E, Integer(2));
    CHECK(at2.kodaira == KodairaType{KodairaType::In, 1});
    CHECK(at2.kind == ReductionKind::SplitMultiplicative);
    CHECK(at2.tamagawa == 1);

    LocalData at5 = tate(E, Integer(5));
    CHECK(at5.kodaira == KodairaType{KodairaType::IIstar, 0});
    CHECK(at5.kodaira.str() == "II*");
    CHECK(at5.kind == ReductionKind::Additive);
    CHECK(at5.tamagawa == 1);
    CHECK(at5.v_disc_min == 10);
    CHECK(at5.potential == PotentialKind::Good);
}

TEST_CASE("is_split") {
    WeierstrassCurve E = parse_curve("1,1,1,-13,-219");
    CHECK(is_split(E, Integer(2)));
    CHECK_THROWS_AS(is_split(E, Integer(5)), input_error);
    CHECK_THROWS_AS(is_split(E, Integer(3)), input_error);
    CHECK(!is_split(parse_curve("1,0,1,4,-6"), Integer(2)));
    CHECK(is_split(parse_curve("1,0,1,4,-6"), Integer(7)));
}

TEST_CASE("nonsplit twist of 50b3 at 2 exists and drops the Tamagawa number") {
    WeierstrassCurve E = parse_curve("1,1,1,-13,-219");
    bool found_nonsplit = false;
    for (long s : {-1L, 2L, -2L, 3L, -3L, 5L, -5L, 7L, -7L}) {
        WeierstrassCurve Es = minimal_model(quadratic_twist(E, Integer(s))).first;
        LocalData ld = tate(Es, Integer(2));
        if (ld.kind == ReductionKind::NonsplitMultiplicative) {
            found_nonsplit = true;
            CHECK(ld.tamagawa == (ld.kodaira.n % 2 == 0 ? 2 : 1));
            break;
        }
    }
    CHECK(found_nonsplit);
}

TEST_CASE("tamagawa numbers respect the standard table") {
    // A bag of curves with assorted reduction types at small primes.
    std::vector<std::string> curves = {
        "0,0,0,1,0",        // j = 1728
        "0,0,0,0,1",        // j = 0
        "1,0,1,4,-6",       // 14a1
        "1,1,1,-13,-219",   // 50b3
        "0,-1,1,-10,-20",   // 11a1
        "0,0,1,0,-7",       // 27a-ish
        "1,0,0,0,-1",
        "0,1,0,-1,0",
        "0,0,0,-15,22",
        "0,0,0,30,63",
    };
    for (const auto& cs : curves) {
        WeierstrassCurve E = parse_curve(cs);
        Integer D = Integer(discriminant(minimal_model(E).first));
        long total = 0;
        for (const Integer& p : factor(D).primes()) {
            LocalData ld = tate(E, p);
            total += ld.v_disc_min;
            switch (ld.kodaira.family) {
                case KodairaType::I0:
                    CHECK(ld.tamagawa == 1);
                    break;
                case KodairaType::In:
                    if (ld.kind == ReductionKind::SplitMultiplicative)
                        CHECK(ld.tamagawa == ld.kodaira.n);
                    else
                        CHECK(ld.tamagawa == (ld.kodaira.n % 2 == 0 ? 2 : 1));
                    CHECK(ld.v_disc_min == ld.kodaira.n);
                    break;
                case KodairaType::II:
                case KodairaType::IIstar:
                    CHECK(ld.tamagawa == 1);
                    break;
                case KodairaType::III:
                case KodairaType::IIIstar:
                    CHECK(ld.tamagawa == 2);
                    break;
                case KodairaType::IV:
                case KodairaType::IVstar:
                    CHECK((ld.tamagawa == 1 || ld.tamagawa == 3));
                    break;
                case KodairaType::I0star:
                    CHECK((ld.tamagawa == 1 || ld.tamagawa == 2 || ld.tamagawa == 4));
                    break;
                case KodairaType::Instar:
                    CHECK((ld.tamagawa == 2 || ld.tamagawa == 4));
                    break;
            }
            // multiplicative <=> In with n >= 1; v(j) = -v_disc_min there
            if (ld.kind == ReductionKind::SplitMultiplicative ||
                ld.kind == ReductionKind::NonsplitMultiplicative) {
                CHECK(ld.kodaira.family == KodairaType::In);
                CHECK(valuation(j_invariant(E), p) == -ld.v_disc_min);
                CHECK(ld.potential == PotentialKind::Multiplicative);
            }
        }
        // sum of local v_disc_min recovers v(disc_min) prime by prime
        for (const auto& [p, e] : factor(D).factors) {
            LocalData ld = tate(E, p);
            CHECK(ld.v_disc_min == e);
        }
        (void)total;
    }
}

TEST_CASE("v(disc) drops by 12 on non-minimal models") {
    WeierstrassCurve E = parse_curve("0,-1,1,-10,-20");  // 11a1, disc -11^5
    WeierstrassCurve blown = apply(E, IsoTransform{make_rational(1, 5), 0, 0, 0});
    LocalData ld = tate(blown, Integer(5));
    CHECK(ld.v_disc_min == 0);  // good reduction at 5 after minimalization
    LocalData at11 = tate(blown, Integer(11));
    CHECK(at11.kodaira == KodairaType{KodairaType::In, 5});
}

TEST_CASE("local data is model-invariant") {
    // Tate's algorithm must give identical answers on any model of the same
    // curve; transformed models exercise the deep p = 2, 3 subcases.
    std::vector<std::string> curves = {
        "1,0,1,4,-6", "1,1,1,-13,-219", "0,0,0,1,0", "0,0,1,0,-7",
        "1,-1,1,-3,3", "0,1,0,-1,0",
    };
    std::vector<IsoTransform> transforms = {
        {make_rational(1, 2), 3, 1, -2},
        {make_rational(1, 6), -1, 2, 5},
        {make_rational(2, 3), 0, -1, 1},
        {Rational(1), 7, -3, 4},
    };
    for (const auto& cs : curves) {
        WeierstrassCurve E = parse_curve(cs);
        for (const auto& T : transforms) {
            WeierstrassCurve F = apply(E, T);
            for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
                LocalData a = tate(E, Integer(p));
                LocalData b = tate(F, Integer(p));
                CHECK(a.kodaira == b.kodaira);
                CHECK(a.tamagawa == b.tamagawa);
                CHECK(a.kind == b.kind);
                CHECK(a.v_disc_min == b.v_disc_min);
                CHECK(a.potential == b.potential);
            }
        }
    }
}

TEST_CASE("deep additive types appear on ramified twists") {
    // Twisting multiplicative reduction into the ramified class produces
    // I_n* fibers; the Tamagawa numbers stay in {2, 4}.
    WeierstrassCurve E = parse_curve("1,0,1,4,-6");
    for (long s : {2L, 14L, 7L, -7L}) {
        WeierstrassCurve tw = minimal_model(quadratic_twist(E, Integer(s))).first;
        for (long p : {2L, 7L}) {
            LocalData ld = tate(tw, Integer(p));
            if (ld.kodaira.family == KodairaType::Instar)
                CHECK((ld.tamagawa == 2 || ld.tamagawa == 4));
        }
    }
    // and a genuine I_n* sighting
    LocalData at7 = tate(minimal_model(quadratic_twist(E, Integer(7))).first, Integer(7));
    CHECK(at7.kodaira.family == KodairaType::Instar);
    CHECK(at7.kodaira.n == 3);  // I3 twisted by the ramified class
}
