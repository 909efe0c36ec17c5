// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.  Every tolerance is pinned here, in code.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "selmer/factor.hpp"
#include "selmer/families.hpp"
#include "selmer/twist_analysis.hpp"

using namespace selmer;

namespace {

struct Checker {
    int failures = 0;
    std::ostringstream log;

    void check(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            log << "\n    failed: " << what;
        }
    }
};

DensityPolynomial poly1(std::initializer_list<std::pair<long, Rational>> terms) {
    DensityPolynomial p(1);
    for (const auto& [e, c] : terms) p.add_term({e}, c);
    return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Pair14a {
    Isogeny phi1, phi2;  // phi1 = the (35/192)x^-2 marginal
};

Pair14a curve14a() {
    WeierstrassCurve E = parse_curve("1,0,1,4,-6");
    auto kernels = rational_kernels(E, 3);
    if (kernels.size() != 2) throw invariant_violation("14a1 must have two 3-kernels");
    return {velu(E, kernels[0], 3), velu(E, kernels[1], 3)};
}

// --------------------------------------------------------------------------

void criterion1(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    Pair14a C = curve14a();
    DensityPolynomial m1 = generating_polynomial(C.phi1);
    DensityPolynomial m2 = generating_polynomial(C.phi2);
    DensityPolynomial joint = joint_generating_polynomial(C.phi1, C.phi2);
    double dt = seconds_since(t0);

    DensityPolynomial e1 = poly1({{-2, make_rational(35, 192)},
                                  {-1, make_rational(29, 64)},
                                  {0, make_rational(61, 192)},
                                  {1, make_rational(3, 64)}});
    DensityPolynomial e2 = poly1({{-2, make_rational(7, 192)},
                                  {-1, make_rational(17, 64)},
                                  {0, make_rational(89, 192)},
                                  {1, make_rational(15, 64)}});
    c.check((m1 == e1 && m2 == e2) || (m1 == e2 && m2 == e1),
            "marginal polynomials equal the two published expansions");
    c.check(m1 == e1, "deterministic kernel order aligns phi1 with the x-polynomial");

    DensityPolynomial ej(2);
    ej.add_term({1, -1}, make_rational(3, 64));
    ej.add_term({-1, 1}, make_rational(15, 64));
    ej.add_term({-2, 0}, make_rational(35, 192));
    ej.add_term({0, -2}, make_rational(7, 192));
    ej.add_term({-1, -1}, make_rational(7, 32));
    ej.add_term({0, 0}, make_rational(9, 32));
    c.check(joint == ej, "joint polynomial equals the six-term expression");
    c.check(dt < 5.0, "runtime under 5 seconds");
}

void criterion2(Checker& c) {
    Pair14a C = curve14a();
    RankReport rr = rank_report(C.phi1, C.phi2);
    c.check(rr.rank0_density_lb == make_rational(1, 4), "rank-0 density bound = 1/4");
    c.check(rr.avg_rank_bound == make_rational(7, 6), "average-rank bound = 7/6");

    // Independent route to the codomain j-invariants: the Hesse parameters
    // of the 14a twist class, located by matching the j formula.
    Rational j14 = j_invariant(C.phi1.domain);
    Integer hu = 0, hv = 0;
    for (long u = -20; u <= 20 && hu == 0; ++u)
        for (long v = -20; v <= 20; ++v) {
            if (u == 0 || v == 0 || u == v) continue;
            Integer g;
            mpz_gcd(g.get_mpz_t(), Integer(u).get_mpz_t(), Integer(v).get_mpz_t());
            if (g != 1) continue;
            if (hesse_j(u, v) == j14) {
                hu = u;
                hv = v;
                break;
            }
        }
    c.check(hu != 0, "14a Hesse parameters located");
    Rational j_prime = hesse_j_prime(hu, hv);
    Rational j_dprime = hesse_j_double_prime(hu, hv);
    c.check(j_invariant(C.phi1.codomain) == j_prime,
            "phi1 codomain j matches the Hesse j(E') formula");
    c.check(j_invariant(C.phi2.codomain) == j_dprime,
            "phi2 codomain j matches the Hesse j(E'') formula");

    auto s1 = sha_report(C.phi1, C.phi2);
    c.check(s1.size() == 1 && s1[0].density == make_rational(35, 384) &&
                s1[0].min_order_exponent == 2 && s1[0].ell == 3 &&
                j_invariant(s1[0].curve) == j_prime,
            "|Sha[3]| >= 9 at density 35/384 on the curve with j = j(14a3)");
    auto s2 = sha_report(C.phi2, C.phi1);
    c.check(s2.size() == 1 && s2[0].density == make_rational(7, 384) &&
                s2[0].min_order_exponent == 2 && s2[0].ell == 3 &&
                j_invariant(s2[0].curve) == j_dprime,
            "|Sha[3]| >= 9 at density 7/384 on the curve with j = j(14a4)");
}

void run_cor16_pipeline(Checker& c, const WeierstrassCurve& E, const std::string& tag) {
    Isogeny phi = velu(E, rational_kernels(E, 3).at(0), 3);
    auto k5 = rational_kernels(E, 5);
    c.check(k5.size() == 1, tag + ": one rational 5-isogeny");
    Isogeny psi = velu(E, k5.at(0), 5);

    ClassRestriction R;
    R[Place::at(Integer(2))] = Integer(1);
    R[Place::inf()] = Integer(1);
    R[Place::at(Integer(5))] = Integer(1);

    DensityPolynomial mp = generating_polynomial(phi, R);
    DensityPolynomial ms = generating_polynomial(psi, R);
    c.check(mp == poly1({{0, Rational(1)}}), tag + ": c(phi_s) = 1 on the class");
    c.check(ms == poly1({{2, Rational(1)}}), tag + ": c(psi_s) = 25 on the class");
    c.check(alpha(psi, Integer(5)) == 5, tag + ": alpha_5(psi) = 5");

    RankReport rr = rank_report(phi, R);
    c.check(rr.rank0_density_lb == make_rational(1, 2), tag + ": rank-0 on >= 1/2 of the class");
    auto sts = sha_report(psi, phi, R);
    c.check(sts.size() == 1 && sts[0].ell == 5 && sts[0].min_order_exponent == 2 &&
                sts[0].density == make_rational(1, 2) && sts[0].curve == psi.domain,
            tag + ": |Sha[5]| >= 25 on >= 1/2 of the class");
}

void criterion3(Checker& c) {
    WeierstrassCurve E = parse_curve("1,1,1,-13,-219");
    LocalData at2 = tate(E, Integer(2));
    c.check(at2.kodaira == KodairaType{KodairaType::In, 1} &&
                at2.kind == ReductionKind::SplitMultiplicative,
            "Kodaira I1 split at 2");
    LocalData at5 = tate(E, Integer(5));
    c.check(at5.kodaira == KodairaType{KodairaType::IIstar, 0}, "Kodaira II* at 5");

    run_cor16_pipeline(c, minimal_model(E).first, "50b3");

    // Same pipeline on the 3-isogenous curve, reconstructed as the codomain.
    Isogeny phi = velu(E, rational_kernels(E, 3).at(0), 3);
    run_cor16_pipeline(c, phi.codomain, "50b4");
}

void criterion4(Checker& c) {
    int tested = 0;
    for (long u = -20; u <= 20 && tested < 50; ++u) {
        for (long v = -20; v <= 20 && tested < 50; ++v) {
            if (u == 0 || v == 0 || u == v) continue;
            Integer g;
            mpz_gcd(g.get_mpz_t(), Integer(u).get_mpz_t(), Integer(v).get_mpz_t());
            if (g != 1) continue;
            HesseCurve H = hesse(Integer(u), Integer(v));
            bool jE = j_invariant(H.curve) == hesse_j(u, v);
            bool jP = j_invariant(H.phi1.codomain) == hesse_j_prime(u, v);
            bool jPP = j_invariant(H.phi2.codomain) == hesse_j_double_prime(u, v);
            if (!(jE && jP && jPP)) {
                c.check(false, "j formulas at (u,v)=(" + std::to_string(u) + "," +
                                   std::to_string(v) + ")");
                continue;
            }
            // classify_mult_primes enforces the trichotomy internally.
            MultPrimeClassification cls = classify_mult_primes(H.phi1, H.phi2, Integer(1));
            for (const Integer& p : cls.p2)
                c.check(p == 3 || p % 3 == 1,
                        "pattern (ii) only at p = 3 or p = 1 (mod 3), p = " + p.get_str());
            ++tested;
        }
    }
    c.check(tested == 50, "50 members tested");
}

void criterion5(Checker& c) {
    std::vector<std::pair<Isogeny, Isogeny>> corpus;
    {
        Pair14a C = curve14a();
        corpus.emplace_back(C.phi1, C.phi2);
        for (auto [u, v] : std::vector<std::pair<long, long>>{{3, 1}, {5, 2}, {7, -2}, {-5, 4}}) {
            HesseCurve H = hesse(Integer(u), Integer(v));
            corpus.emplace_back(H.phi1, H.phi2);
        }
        Family18Member mem = family18(Integer(1), Integer(3));
        corpus.emplace_back(mem.phi1, mem.phi2);
    }
    for (const auto& [f1, f2] : corpus) {
        DensityPolynomial joint = joint_generating_polynomial(f1, f2);
        for (const auto& [e, mu] : joint.terms())
            c.check((e[0] - e[1]) % 2 == 0, "joint support satisfies m = n (mod 2)");
        for (const Place& v : {Place::at(Integer(3)), Place::inf()}) {
            auto prof = local_joint_profile(f1, f2, v);
            for (const auto& [rep, ts] : prof)
                c.check((ts.first - ts.second) % 2 != 0,
                        "per-place parity differs at " + v.str());
        }
    }
}

void criterion6(Checker& c) {
    std::vector<Isogeny> corpus;
    {
        Pair14a C = curve14a();
        corpus.push_back(C.phi1);
        corpus.push_back(C.phi2);
        corpus.push_back(twist_isogeny(C.phi1, Integer(5)));
        corpus.push_back(twist_isogeny(C.phi2, Integer(-7)));
        WeierstrassCurve F = parse_curve("1,1,1,-13,-219");
        corpus.push_back(velu(F, rational_kernels(F, 3).at(0), 3));
        corpus.push_back(velu(F, rational_kernels(F, 5).at(0), 5));
        HesseCurve H = hesse(Integer(3), Integer(1));
        corpus.push_back(H.phi1);
        corpus.push_back(H.phi2);
    }
    for (const Isogeny& phi : corpus) {
        Isogeny hat = dual(phi);
        Integer ell(phi.ell);
        c.check(alpha(phi, ell) * alpha(hat, ell) == phi.ell, "alpha reciprocity at ell");
        for (const Place& v : relevant_places(phi)) {
            if (v.infinite) continue;
            Rational prod = local_selmer_ratio(phi, v) * local_selmer_ratio(hat, v);
            if (v.p == ell)
                c.check(prod == phi.ell, "c_p(phi) c_p(phihat) = ell at p = ell");
            else
                c.check(prod == 1, "c_p(phi) c_p(phihat) = 1 at p = " + v.p.get_str());
            // j-valuation formula against the Tamagawa computation
            Rational jd = j_invariant(phi.domain);
            if (!(v.p == ell) && jd != 0 && valuation(jd, v.p) < 0)
                c.check(split_mult_ratio_check(phi, v.p) == local_selmer_ratio(phi, v),
                        "j-valuation formula agrees at p = " + v.p.get_str());
        }
    }
}

void criterion7(Checker& c) {
    // u^2 + uv + v^2 in {1, 3} up to the admissibility constraints.
    std::vector<std::pair<long, long>> params = {{1, -1}, {1, -2}, {-1, 2}, {2, -1}, {-2, 1}};
    for (auto [u, v] : params) {
        long q = u * u + u * v + v * v;
        c.check(q == 1 || q == 3, "parameter check");
        HesseCurve H = hesse(Integer(u), Integer(v));
        DensityPolynomial joint = joint_generating_polynomial(H.phi1, H.phi2);
        c.check(joint.coefficient({-2, 0}) > 0,
                "T_{-2}(phi1) cap T_0(phi2) nonempty for (u,v)=(" + std::to_string(u) + "," +
                    std::to_string(v) + ")");
    }
}

// Deterministic xorshift for the random member draws.
struct Rng {
    unsigned long state = 0x243f6a8885a308d3UL;
    unsigned long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(next() % static_cast<unsigned long>(hi - lo + 1));
    }
};

void criterion8(Checker& c) {
    Rng rng;
    std::vector<std::pair<Integer, Integer>> members;
    while (members.size() < 30) {
        Integer m(rng.range(-9, 9)), n(rng.range(-9, 9));
        if (m == 0 || n == 0) continue;
        Integer g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
        if (g != 1) continue;
        if (m == n || m == -2 * n || 2 * n + m == 0) continue;  // singular
        bool dup = false;
        for (auto& [a, b] : members)
            if (a == m && b == n) dup = true;
        if (dup) continue;
        Family18Member probe = family18(m, n);
        if (probe.is_14a_exception) continue;
        members.emplace_back(m, n);
    }

    bool v2_clause_as_stated = true;
    bool v2_corrected_rule = true;
    int with_t3_class = 0;
    for (const auto& [m, n] : members) {
        Family18Member mem = family18(m, n);
        // discriminant ratio identity
        Rational ratio = discriminant(mem.model_prime) / discriminant(mem.model_double_prime);
        Rational expect = Rational(pow_integer(m, 8) * pow_integer(n, 16)) /
                          Rational(pow_integer(m - n, 16) * pow_integer(m + 2 * n, 8));
        c.check(ratio == expect, "discriminant ratio identity");

        long d2 = valuation(discriminant(mem.model_prime), Integer(2)) -
                  valuation(discriminant(mem.e_prime), Integer(2));
        long d3 = valuation(discriminant(mem.model_double_prime), Integer(3)) -
                  valuation(discriminant(mem.e_double_prime), Integer(3));
        bool mn_mod2 = (m - n) % 2 == 0;
        bool mn_mod3 = (m - n) % 3 == 0;
        if ((d2 == 12) != mn_mod2) v2_clause_as_stated = false;
        if ((d2 == 12) != (m % 2 == 0)) v2_corrected_rule = false;
        c.check((d3 == 24) == mn_mod3, "v3 drop 24 iff m = n (mod 3)");

        auto [c2, c3] = family18_special_primes(mem);
        c.check(c2.size() >= 2, "at least two case-ii primes");
        c.check(c3.size() >= 1, "at least one case-iii prime");

        DensityPolynomial joint = joint_generating_polynomial(mem.phi1, mem.phi2);
        if (joint.coefficient({-3, -1}) > 0) ++with_t3_class;
    }
    c.check(with_t3_class == 30, "T_{-3}(phi1) cap T_{-1}(phi2) has positive density");
    c.check(v2_corrected_rule, "v2 drop 12 iff m is even (corrected rule)");
    // Known defect: for coprime pairs, m = n (mod 2) means both odd, which
    // forces odd a1 = -m^3 and a 2-adic unit c4, so the model is 2-minimal
    // and the stated congruence cannot hold.  Kept as stated; expected red.
    c.check(v2_clause_as_stated,
            "v2 drop 12 iff m = n (mod 2) [as stated; contradicted by the family models"
            " -- see the corrected rule above]");
}

void criterion9(Checker& c) {
    Rng rng;
    int tested = 0;
    while (tested < 30) {
        Integer m(rng.range(-9, 9)), n(rng.range(-9, 9));
        if (m == 0 || n == 0) continue;
        Integer g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
        if (g != 1) continue;
        if (m == n || m == -2 * n || 2 * n + m == 0) continue;
        Family18Member mem = family18(m, n);
        if (mem.is_14a_exception) continue;
        c.check(!delta_square_test(mem.e_prime),
                "disc(E') disc(E'/<2>) is not a square for (m,n)=(" + m.get_str() + "," +
                    n.get_str() + ")");
        ++tested;
    }
}

void criterion10(Checker& c) {
    auto t0 = std::chrono::steady_clock::now();
    Pair14a C = curve14a();
    EmpiricalResult r = empirical_verify({C.phi1, C.phi2}, 100000);
    double dt = seconds_since(t0);

    Rational tol = make_rational(15, 1000);
    c.check(r.max_abs_deviation < tol, "joint coefficients within 0.015");
    // marginals, from the joint counts
    for (int axis = 0; axis < 2; ++axis) {
        std::map<long, long> mcounts;
        for (const auto& [e, cnt] : r.counts) mcounts[e[static_cast<size_t>(axis)]] += cnt;
        DensityPolynomial expect = r.expected.marginal(axis);
        for (const auto& [e, mu] : expect.terms()) {
            Rational f = make_rational(mcounts.count(e[0]) ? mcounts[e[0]] : 0, r.total);
            c.check(abs(f - mu) < tol, "marginal coefficient within 0.015");
        }
    }
    c.check(r.locality_ok, "exponents constant on local class vectors");
    c.check(dt < 300.0, "runtime under 5 minutes");
    c.log << "\n    note: N=100000, twists=" << r.total
          << ", max|dev|=" << r.max_abs_deviation.get_d() << ", time=" << dt << "s";
}

}  // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        std::function<void(Checker&)> run;
    };
    std::vector<Row> rows = {
        {1, "worked-example generating polynomials (exact)", criterion1},
        {2, "worked-example rank and Sha reports (exact)", criterion2},
        {3, "5-isogeny rank-0 and Sha[5] computation on 50b3/50b4 (exact)", criterion3},
        {4, "Hesse identity suite (50 members)", criterion4},
        {5, "parity invariants", criterion5},
        {6, "reciprocity invariants", criterion6},
        {7, "u^2+uv+v^2 in {1,3} twist classes", criterion7},
        {8, "18-isogeny family suite (30 members)", criterion8},
        {9, "discriminant square test (30 members)", criterion9},
        {10, "empirical convergence at N = 10^5", criterion10},
    };

    int failed = 0;
    for (auto& row : rows) {
        Checker c;
        try {
            row.run(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        bool ok = c.failures == 0;
        if (!ok) ++failed;
        std::cout << "criterion " << row.id << ": " << (ok ? "PASS" : "FAIL") << " - "
                  << row.name << c.log.str() << std::endl;
    }
    if (failed) std::cout << failed << " criterion(s) failed" << std::endl;
    return failed;
}
