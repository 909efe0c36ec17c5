// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/families.hpp"

#include <algorithm>

#include "selmer/factor.hpp"
#include "selmer/poly_factor.hpp"

namespace selmer {

namespace {

Rational rq(const Integer& n) { return Rational(n); }

Integer gcd_int(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

}  // namespace

Rational hesse_j(const Integer& u, const Integer& v) {
    Rational num = 27 * rq(u * u * u) * pow_rational(rq(u + 2 * v), 3) *
                   pow_rational(rq(u * u - 2 * u * v + 4 * v * v), 3);
    Rational den = pow_rational(rq(v), 3) * pow_rational(rq(u - v), 3) *
                   pow_rational(rq(u * u + u * v + v * v), 3);
    return num / den;
}

Rational hesse_j_prime(const Integer& u, const Integer& v) {
    Integer uc = u * u * u, vc = v * v * v;
    Rational num = 27 * rq(uc) * pow_rational(rq(9 * uc - 8 * vc), 3);
    Rational den = pow_rational(rq(v), 9) * rq(u - v) * rq(u * u + u * v + v * v);
    return num / den;
}

Rational hesse_j_double_prime(const Integer& u, const Integer& v) {
    Integer poly = u * u * u + 78 * u * u * v + 84 * u * v * v + 80 * v * v * v;
    Rational num = 3 * pow_rational(rq(u + 2 * v), 3) * pow_rational(rq(poly), 3);
    Rational den = rq(v) * pow_rational(rq(u - v), 9) * rq(u * u + u * v + v * v);
    return num / den;
}

HesseCurve hesse(const Integer& u, const Integer& v) {
    if (u == 0 || v == 0 || u == v) throw input_error("degenerate Hesse parameters");
    if (gcd_int(u, v) != 1) throw input_error("Hesse parameters must be coprime");

    // Flex-point model: the plane cubic with the rational flex moved to
    // infinity becomes y^2 - xy = x^3 - B x^2 - CA x - DA^2 with
    // A = v(u^3-v^3)/(3u^3), B = v^3/u^3, C = v^2/u^3, D = v/(3u^3).
    Rational u3 = rq(u * u * u);
    Rational A = rq(v) * (u3 - rq(v * v * v)) / (3 * u3);
    Rational B = rq(v * v * v) / u3;
    Rational C = rq(v * v) / u3;
    Rational D = rq(v) / (3 * u3);

    WeierstrassCurve raw{Rational(-1), -B, Rational(0), -C * A, -D * A * A};
    if (discriminant(raw) == 0) throw input_error("degenerate Hesse parameters");

    HesseCurve H;
    H.u = u;
    H.v = v;
    H.curve = minimal_model(raw).first;
    if (!(j_invariant(H.curve) == hesse_j(u, v)))
        throw invariant_violation("Hesse model does not satisfy the j formula");

    Rational jp = hesse_j_prime(u, v);
    Rational jpp = hesse_j_double_prime(u, v);
    bool found1 = false, found2 = false;
    for (const Poly& k : rational_kernels(H.curve, 3)) {
        Isogeny phi = velu(H.curve, k, 3);
        Rational jc = j_invariant(phi.codomain);
        if (!found1 && jc == jp) {
            H.phi1 = phi;
            found1 = true;
        } else if (!found2 && jc == jpp) {
            H.phi2 = phi;
            found2 = true;
        }
    }
    if (!found1 || !found2)
        throw invariant_violation("Hesse 3-isogenies do not match the codomain j formulas");
    return H;
}

MultPrimeClassification classify_mult_primes(const Isogeny& phi1, const Isogeny& phi2,
                                             const Integer& s0) {
    if (!(phi1.domain == phi2.domain)) throw input_error("isogenies must share a domain");
    if (phi1.ell != 3 || phi2.ell != 3) throw input_error("two 3-isogenies required");

    MultPrimeClassification cls;
    cls.s0 = s0;
    Rational j = j_invariant(phi1.domain);
    Rational j1 = j_invariant(phi1.codomain);
    Rational j2 = j_invariant(phi2.codomain);
    if (j == 0) return cls;  // no multiplicative primes

    WeierstrassCurve twisted = minimal_model(quadratic_twist(phi1.domain, s0)).first;

    for (const Integer& p : factor(j.get_den()).primes()) {
        long vj = valuation(j, p);
        if (vj >= 0) continue;
        long v1 = (j1 == 0) ? 0 : valuation(j1, p);
        long v2 = (j2 == 0) ? 0 : valuation(j2, p);
        bool pat1 = (vj == 3 * v1) && (3 * vj == v2);
        bool pat2 = (vj == 3 * v1) && (vj == 3 * v2);
        bool pat3 = (3 * vj == v1) && (vj == 3 * v2);
        int hits = int(pat1) + int(pat2) + int(pat3);
        if (hits != 1)
            throw invariant_violation("valuation trichotomy failed at p = " + p.get_str());
        LocalData ld = tate(twisted, p);
        bool split = ld.kind == ReductionKind::SplitMultiplicative;
        cls.split_at[p] = split;
        if (pat1) {
            cls.p1.push_back(p);
            if (split) ++cls.omega1_split;
        } else if (pat2) {
            cls.p2.push_back(p);
            if (split) ++cls.omega2_split;
        } else {
            cls.p3.push_back(p);
        }
    }
    return cls;
}

long split_prime_sha_bound(const MultPrimeClassification& cls) {
    for (const Integer& p : cls.p3)
        if (cls.split_at.at(p))
            throw input_error("twist class is split at a pattern-iii prime");
    long bound = std::min(2 * cls.omega1_split, 2 * cls.omega2_split - 1);
    return std::max(bound, 0L);
}

namespace {

Integer family18_disc_prime(const Integer& m, const Integer& n) {
    return pow_integer(m, 9) * pow_integer(n, 18) * pow_integer(n - m, 2) * (2 * n + m) *
           pow_integer(n * n + n * m + m * m, 2) * (4 * n * n - 2 * n * m + m * m);
}

Integer family18_disc_double_prime(const Integer& m, const Integer& n) {
    return m * pow_integer(n, 2) * pow_integer(n - m, 18) * pow_integer(2 * n + m, 9) *
           pow_integer(n * n + n * m + m * m, 2) * (4 * n * n - 2 * n * m + m * m);
}

bool is_exception_pair(const Integer& m, const Integer& n) {
    // (n, m) in +-{(1,-1), (1,2), (2,-1), (1,4)}
    auto matches = [&](long nn, long mm) {
        return (n == nn && m == mm) || (n == -nn && m == -mm);
    };
    return matches(1, -1) || matches(1, 2) || matches(2, -1) || matches(1, 4);
}

}  // namespace

Family18Member family18(const Integer& m, const Integer& n) {
    if (gcd_int(m, n) != 1) throw input_error("family parameters must be coprime");

    Family18Member mem;
    mem.m = m;
    mem.n = n;

    Integer m3 = m * m * m;
    Integer n3 = n * n * n;
    mem.model_prime = WeierstrassCurve{rq(-m3), rq(-2 * n3 * n3 + n3 * m3), Rational(0),
                                       rq(pow_integer(n, 12) - pow_integer(n, 9) * m3),
                                       Rational(0)};
    mem.model_double_prime = WeierstrassCurve{
        rq(-m3),
        rq(-6 * pow_integer(m, 5) * n + 6 * pow_integer(m, 4) * n * n - 23 * m3 * n3 -
           12 * m * m * pow_integer(n, 4) - 24 * m * pow_integer(n, 5) - 2 * n3 * n3),
        Rational(0), rq(-n * pow_integer(m - n, 9) * (m * m + m * n + n * n)), Rational(0)};

    if (discriminant(mem.model_prime) == 0 || discriminant(mem.model_double_prime) == 0)
        throw input_error("singular family parameters");
    if (!(discriminant(mem.model_prime) == rq(family18_disc_prime(m, n))) ||
        !(discriminant(mem.model_double_prime) == rq(family18_disc_double_prime(m, n))))
        throw invariant_violation("family discriminant identities failed");

    mem.is_14a_exception = is_exception_pair(m, n);
    mem.e_prime = minimal_model(mem.model_prime).first;
    mem.e_double_prime = minimal_model(mem.model_double_prime).first;

    // Walk the chain E' -> E -> E''.
    Rational jpp = j_invariant(mem.e_double_prime);
    bool found = false;
    for (const Poly& k : rational_kernels(mem.e_prime, 3)) {
        Isogeny up = velu(mem.e_prime, k, 3);  // E' -> E candidate
        for (const Poly& k2 : rational_kernels(up.codomain, 3)) {
            Isogeny down = velu(up.codomain, k2, 3);
            if (!(j_invariant(down.codomain) == jpp)) continue;
            if (!(down.codomain == mem.e_double_prime)) continue;
            Isogeny back = dual(up);  // E -> E'
            if (back.kernel == down.kernel) continue;  // need the independent one
            mem.e = up.codomain;
            mem.phi1 = back;
            mem.phi2 = down;
            found = true;
            break;
        }
        if (found) break;
    }
    if (!found) throw invariant_violation("3-isogeny chain not found for family member");
    return mem;
}

std::pair<std::vector<Integer>, std::vector<Integer>> family18_special_primes(
    const Family18Member& mem) {
    if (mem.is_14a_exception) throw input_error("member is a 14a exception");
    const Integer &m = mem.m, &n = mem.n;

    Rational j = j_invariant(mem.e);
    Rational jp = j_invariant(mem.e_prime);
    Rational jpp = j_invariant(mem.e_double_prime);

    std::vector<Integer> case_ii;
    Integer q2 = (n * n + n * m + m * m) * (4 * n * n - 2 * n * m + m * m);
    for (const Integer& p : factor(q2).primes()) {
        if (p < 5) continue;
        // Pattern (ii) of the valuation trichotomy: the two codomain
        // j-valuations agree and are one third of the middle one.
        long vj = valuation(j, p), v1 = valuation(jp, p), v2 = valuation(jpp, p);
        if (!(3 * v1 == vj && 3 * v2 == vj && vj < 0))
            throw invariant_violation("case-ii valuation pattern failed at " + p.get_str());
        case_ii.push_back(p);
    }

    std::vector<Integer> case_iii;
    Rational ratio = discriminant(mem.model_prime) / discriminant(mem.model_double_prime);
    Integer den = ratio.get_den();
    for (const auto& [p, e] : factor(den).factors) {
        if (p == 3 && e <= 24) continue;
        long vj = valuation(j, p), v1 = valuation(jp, p), v2 = valuation(jpp, p);
        if (!(9 * v1 == 3 * vj && 3 * vj == v2 && vj < 0))
            throw invariant_violation("case-iii valuation pattern failed at " + p.get_str());
        case_iii.push_back(p);
    }
    std::sort(case_ii.begin(), case_ii.end());
    std::sort(case_iii.begin(), case_iii.end());
    return {case_ii, case_iii};
}

namespace {

long omega(const Integer& n) {
    if (n == 1 || n == -1) return 0;
    return static_cast<long>(factor(n).factors.size());
}

bool rigged_ok(const Integer& u, long m) {
    long w1 = omega(u - 1);
    if (w1 < m || w1 > m + 9) return false;
    long w2 = omega(u * u + u + 1);
    return w2 >= m && w2 <= m + 9;
}

}  // namespace

std::vector<Integer> search_rigged(long target_m, const Integer& bound) {
    if (target_m < 1) throw input_error("target must be at least 1");
    std::vector<Integer> out;

    Integer direct_cap = bound < 50000 ? bound : Integer(50000);
    for (Integer u = 2; u <= direct_cap; ++u)
        if (rigged_ok(u, target_m)) out.push_back(u);

    if (bound > direct_cap) {
        // Congruence seeding: primes q = 1 mod 3 carry roots of x^2+x+1, so
        // u = alpha (mod prod q) forces many factors of u^2+u+1; u = 1 (mod
        // prod p) forces factors of u - 1.
        std::vector<Integer> qs;
        for (Integer q = 7; static_cast<long>(qs.size()) < target_m; q += 1) {
            if (!is_prime(q) || q % 3 != 1) continue;
            qs.push_back(q);
        }
        std::vector<Integer> alphas;  // one root per q
        Integer Q = 1;
        for (const Integer& q : qs) {
            Integer root = -1;
            for (Integer t = 0; t < q; ++t)
                if ((t * t + t + 1) % q == 0) {
                    root = t;
                    break;
                }
            if (root < 0) throw invariant_violation("no root of x^2+x+1 mod q");
            alphas.push_back(root);
            Q *= q;
        }
        Integer P = 1;
        std::vector<Integer> ps;
        for (Integer p = 2; static_cast<long>(ps.size()) < target_m; ++p) {
            if (!is_prime(p)) continue;
            if (std::find(qs.begin(), qs.end(), p) != qs.end()) continue;
            ps.push_back(p);
            P *= p;
        }
        // CRT: u = alpha (mod Q), u = 1 (mod P)
        Integer u0 = 0, M = Q * P;
        {
            Integer aQ = 0;
            for (size_t i = 0; i < qs.size(); ++i) {
                // build alpha mod Q by CRT over the q_i
                Integer rest = Q / qs[i];
                Integer inv;
                mpz_invert(inv.get_mpz_t(), rest.get_mpz_t(), qs[i].get_mpz_t());
                aQ += alphas[i] * rest * inv;
            }
            aQ %= Q;
            if (aQ < 0) aQ += Q;
            Integer invQ, invP;
            mpz_invert(invQ.get_mpz_t(), Q.get_mpz_t(), P.get_mpz_t());
            mpz_invert(invP.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t());
            u0 = (aQ * P * invP + Integer(1) * Q * invQ) % M;
            if (u0 < 0) u0 += M;
        }
        for (Integer u = u0; u <= bound; u += M) {
            if (u <= direct_cap) continue;
            if (rigged_ok(u, target_m)) out.push_back(u);
        }
        std::sort(out.begin(), out.end());
    }
    return out;
}

bool delta_square_test(const WeierstrassCurve& E) {
    WeierstrassCurve Em = minimal_model(E).first;
    std::vector<Poly> twok = rational_kernels(Em, 2);
    if (twok.size() != 1)
        throw input_error("curve must have exactly one rational 2-torsion x-coordinate");
    if (rational_kernels(Em, 3).empty())
        throw input_error("curve must admit a rational 3-isogeny");
    Isogeny phi = velu(Em, twok[0], 2);
    Rational prod = discriminant(Em) * discriminant(phi.codomain);
    return is_square(prod);
}

Rational x06_j(const Rational& t) {
    if (t == 0 || t == -8 || t == -9) throw input_error("degenerate parameter");
    Rational num = pow_rational(t + 6, 3) *
                   pow_rational(((t + 18) * t + 84) * t + 24, 3);
    Rational den = t * pow_rational(t + 8, 3) * pow_rational(t + 9, 2);
    return num / den;
}

std::optional<Rational> x06_parameter(const Rational& j) {
    // (t+6)^3 (t^3+18t^2+84t+24)^3 - j t (t+8)^3 (t+9)^2 = 0
    Poly tp({Rational(6), Rational(1)});
    Poly cubic({Rational(24), Rational(84), Rational(18), Rational(1)});
    Poly lhs = tp.pow(3) * cubic.pow(3);
    Poly t8({Rational(8), Rational(1)});
    Poly t9({Rational(9), Rational(1)});
    Poly rhs = Poly::x() * t8.pow(3) * t9.pow(2) * j;
    Poly f = lhs - rhs;
    for (const Rational& t : rational_roots(f)) {
        if (t == 0 || t == -8 || t == -9) continue;
        if (x06_j(t) == j) return t;
    }
    return std::nullopt;
}

}  // namespace selmer
