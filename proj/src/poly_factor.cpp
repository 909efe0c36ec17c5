// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/poly_factor.hpp"

#include <algorithm>
#include <functional>

#include "modp.hpp"
#include "selmer/factor.hpp"

namespace selmer {

namespace {

std::vector<Integer> positive_divisors(const Integer& n) {
    Factorization f = factor(n);
    std::vector<Integer> divs{Integer(1)};
    for (const auto& [p, e] : f.factors) {
        size_t base = divs.size();
        Integer pk = 1;
        for (long k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

}  // namespace

std::vector<Rational> rational_roots(const Poly& f) {
    if (f.is_zero()) throw input_error("rational_roots(0)");
    std::vector<Rational> roots;

    // Strip roots at zero, then clear denominators and content.
    Poly g = f;
    while (g.coeff(0) == 0 && g.degree() > 0) {
        g = g / Poly::x();
        roots.push_back(Rational(0));
    }
    if (g.degree() == 0) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }

    Integer den_lcm = 1;
    for (const Rational& c : g.coeffs()) {
        Integer d = c.get_den();
        Integer gg;
        mpz_lcm(gg.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = gg;
    }
    std::vector<Integer> ic;
    ic.reserve(g.coeffs().size());
    Integer content = 0;
    for (const Rational& c : g.coeffs()) {
        Integer v = Integer(c * den_lcm);
        ic.push_back(v);
        Integer gg;
        mpz_gcd(gg.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        content = gg;
    }
    if (content > 1)
        for (Integer& v : ic) v /= content;

    const Integer& a0 = ic.front();
    const Integer& an = ic.back();
    std::vector<Integer> ps = positive_divisors(abs(a0));
    std::vector<Integer> qs = positive_divisors(abs(an));

    std::vector<Rational> candidates;
    for (const Integer& p : ps)
        for (const Integer& q : qs) {
            Integer gg;
            mpz_gcd(gg.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
            if (gg != 1) continue;
            candidates.push_back(make_rational(p, q));
            candidates.push_back(make_rational(-p, q));
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (const Rational& r : candidates) {
        if (g.eval(r) != 0) continue;
        Poly lin({-r, Rational(1)});
        Poly h = g;
        while (h.degree() > 0 && h.eval(r) == 0) {
            roots.push_back(r);
            h = h / lin;
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// ---------------------------------------------------------------------------
// Targeted Zassenhaus machinery: Cantor-Zassenhaus mod a small prime, linear
// Hensel lifting, and subset recombination limited to the requested degree.
// ---------------------------------------------------------------------------

namespace {

using namespace selmer::modp;

// Simple deterministic PRNG for equal-degree splitting.
struct SplitRng {
    unsigned long state = 0x9e3779b97f4a7c15UL;
    unsigned long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
};

// Cantor-Zassenhaus over F_p, p odd.  f monic squarefree.  Appends monic
// irreducible factors to out.
void cz_factor(const ZPoly& f, const Integer& p, std::vector<ZPoly>& out, SplitRng& rng) {
    ZPoly x{Integer(0), Integer(1)};
    ZPoly rest = f;
    ZPoly h = zp_divmod(x, rest, p).second;
    int d = 0;
    while (zp_deg(rest) > 0) {
        ++d;
        if (2 * d > zp_deg(rest)) {
            out.push_back(rest);
            break;
        }
        h = zp_powmod(h, p, rest, p);  // x^(p^d) mod rest
        ZPoly g = zp_gcd(zp_sub(h, x, p), rest, p);
        if (zp_deg(g) <= 0) continue;
        // Equal-degree split of g into irreducibles of degree d.
        std::function<void(const ZPoly&)> split = [&](const ZPoly& poly) {
            if (zp_deg(poly) == d) {
                out.push_back(poly);
                return;
            }
            Integer exp = (pow_integer(p, static_cast<unsigned long>(d)) - 1) / 2;
            for (;;) {
                ZPoly a(static_cast<size_t>(zp_deg(poly)), Integer(0));
                for (Integer& v : a) v = Integer(static_cast<unsigned long>(rng.next())) % p;
                zp_trim(a);
                if (a.empty()) continue;
                ZPoly b = zp_powmod(a, exp, poly, p);
                if (b.empty()) continue;
                b[0] = (b[0] - 1) % p;
                if (b[0] < 0) b[0] += p;
                zp_trim(b);
                ZPoly g2 = zp_gcd(b, poly, p);
                if (zp_deg(g2) > 0 && zp_deg(g2) < zp_deg(poly)) {
                    split(g2);
                    split(zp_divmod(poly, g2, p).first);
                    return;
                }
            }
        };
        split(g);
        rest = zp_divmod(rest, g, p).first;
        h = zp_divmod(h, rest, p).second;
    }
}

// One linear Hensel step for a bifactorization: F = G*H (mod mk*p) given
// F = G*H (mod mk) and Bezout sigma*G + tau*H = 1 (mod p).
void hensel_step(const ZPoly& F, ZPoly& G, ZPoly& H, const ZPoly& sigma, const ZPoly& tau,
                 const Integer& mk, const Integer& p) {
    Integer m_next = mk * p;
    ZPoly prod = zp_mul(G, H, m_next);
    ZPoly diff(std::max(F.size(), prod.size()), Integer(0));
    for (size_t i = 0; i < F.size(); ++i) diff[i] += F[i];
    for (size_t i = 0; i < prod.size(); ++i) diff[i] -= prod[i];
    for (Integer& v : diff) {
        v %= m_next;
        if (v < 0) v += m_next;
        v /= mk;  // exact by the induction hypothesis
    }
    zp_trim(diff);
    ZPoly e = zp_mod(diff, p);
    ZPoly dG = zp_divmod(zp_mul(tau, e, p), G, p).second;
    ZPoly dH = zp_divmod(zp_mul(sigma, e, p), H, p).second;
    ZPoly Gn(std::max(G.size(), dG.size()), Integer(0));
    for (size_t i = 0; i < G.size(); ++i) Gn[i] += G[i];
    for (size_t i = 0; i < dG.size(); ++i) Gn[i] += dG[i] * mk;
    ZPoly Hn(std::max(H.size(), dH.size()), Integer(0));
    for (size_t i = 0; i < H.size(); ++i) Hn[i] += H[i];
    for (size_t i = 0; i < dH.size(); ++i) Hn[i] += dH[i] * mk;
    G = zp_mod(Gn, m_next);
    H = zp_mod(Hn, m_next);
}

// Extended Euclid mod p for coprime G, H: sigma*G + tau*H = 1.
void bezout(const ZPoly& G, const ZPoly& H, const Integer& p, ZPoly& sigma, ZPoly& tau) {
    ZPoly r0 = zp_mod(G, p), r1 = zp_mod(H, p);
    ZPoly s0{Integer(1)}, s1{}, t0{}, t1{Integer(1)};
    while (!r1.empty()) {
        auto [q, r2] = zp_divmod(r0, r1, p);
        ZPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
        ZPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (zp_deg(r0) != 0) throw invariant_violation("factors not coprime in Hensel setup");
    Integer inv;
    mpz_invert(inv.get_mpz_t(), r0[0].get_mpz_t(), p.get_mpz_t());
    for (Integer& v : s0) v = (v * inv) % p;
    for (Integer& v : t0) v = (v * inv) % p;
    sigma = s0;
    tau = t0;
}

// Lift the modular factorization F = prod(parts) from mod p to mod p^K.
void hensel_lift_tree(const ZPoly& F, std::vector<ZPoly>& parts, const Integer& p, int K) {
    if (parts.size() <= 1) {
        if (!parts.empty()) {
            Integer pk = pow_integer(p, static_cast<unsigned long>(K));
            parts[0] = zp_mod(F, pk);
        }
        return;
    }
    size_t half = parts.size() / 2;
    ZPoly G{Integer(1)}, H{Integer(1)};
    for (size_t i = 0; i < half; ++i) G = zp_mul(G, parts[i], p);
    for (size_t i = half; i < parts.size(); ++i) H = zp_mul(H, parts[i], p);
    ZPoly sigma, tau;
    bezout(G, H, p, sigma, tau);
    Integer mk = p;
    for (int k = 1; k < K; ++k) {
        hensel_step(F, G, H, sigma, tau, mk, p);
        mk *= p;
    }
    std::vector<ZPoly> left(parts.begin(), parts.begin() + static_cast<long>(half));
    std::vector<ZPoly> right(parts.begin() + static_cast<long>(half), parts.end());
    hensel_lift_tree(G, left, p, K);
    hensel_lift_tree(H, right, p, K);
    parts.clear();
    parts.insert(parts.end(), left.begin(), left.end());
    parts.insert(parts.end(), right.begin(), right.end());
}

bool zpoly_divides(const ZPoly& g, const ZPoly& F) {
    // Exact division test over Z for monic g.
    ZPoly rem = F;
    int dg = zp_deg(g);
    if (zp_deg(rem) < dg) return false;
    for (int i = zp_deg(rem); i >= dg; --i) {
        Integer f = rem[static_cast<size_t>(i)];
        if (f == 0) continue;
        for (int j = 0; j <= dg; ++j) rem[static_cast<size_t>(i - dg + j)] -= f * g[static_cast<size_t>(j)];
    }
    for (int i = 0; i < dg; ++i)
        if (rem[static_cast<size_t>(i)] != 0) return false;
    return true;
}

ZPoly zpoly_exact_div(const ZPoly& F, const ZPoly& g) {
    ZPoly rem = F;
    int dg = zp_deg(g);
    ZPoly quot(static_cast<size_t>(zp_deg(F) - dg) + 1, Integer(0));
    for (int i = zp_deg(rem); i >= dg; --i) {
        Integer f = rem[static_cast<size_t>(i)];
        if (f == 0) continue;
        quot[static_cast<size_t>(i - dg)] = f;
        for (int j = 0; j <= dg; ++j) rem[static_cast<size_t>(i - dg + j)] -= f * g[static_cast<size_t>(j)];
    }
    return quot;
}

Poly zpoly_to_poly(const ZPoly& a) {
    std::vector<Rational> c;
    c.reserve(a.size());
    for (const Integer& v : a) c.emplace_back(v);
    return Poly(std::move(c));
}

}  // namespace

std::vector<Poly> factor_poly_small(const Poly& f, int target_degree) {
    if (f.is_zero()) throw input_error("factor_poly_small(0)");
    if (target_degree < 1 || target_degree > 3)
        throw input_error("target degree must be 1, 2 or 3");
    if (f.degree() > 24) throw input_error("factor_poly_small caps the degree at 24");

    if (target_degree == 1) {
        std::vector<Rational> roots = rational_roots(f);
        std::vector<Poly> out;
        for (const Rational& r : roots) {
            Poly lin({-r, Rational(1)});
            if (out.empty() || !(out.back() == lin)) out.push_back(lin);
        }
        return out;
    }

    // Squarefree part, as a monic integer polynomial via root scaling.
    Poly sf = (f / gcd(f, f.derivative())).monic();
    if (sf.degree() < target_degree) return {};
    Integer D = 1;
    for (const Rational& c : sf.coeffs()) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), D.get_mpz_t(), c.get_den().get_mpz_t());
        D = l;
    }
    Poly scaled = sf.scale_roots(Rational(D));  // monic, integer coefficients
    ZPoly F;
    for (const Rational& c : scaled.coeffs()) {
        if (!is_integer(c)) throw invariant_violation("scaled polynomial not integral");
        F.push_back(c.get_num());
    }

    // Pick an odd prime where F stays squarefree.
    static const unsigned long primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                           43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    Integer p = 0;
    for (unsigned long q : primes) {
        Integer qq(q);
        if (F.back() % qq == 0) continue;
        ZPoly Fq = zp_mod(F, qq);
        if (zp_deg(Fq) != zp_deg(F)) continue;
        if (zp_deg(zp_gcd(Fq, zp_derivative(Fq, qq), qq)) == 0) {
            p = qq;
            break;
        }
    }
    if (p == 0) throw invariant_violation("no good prime for modular factorization");

    // Factor mod p; make each factor monic.
    std::vector<ZPoly> parts;
    {
        SplitRng rng;
        ZPoly Fq = zp_mod(F, p);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), Fq.back().get_mpz_t(), p.get_mpz_t());
        for (Integer& v : Fq) v = (v * inv) % p;
        cz_factor(Fq, p, parts, rng);
        std::sort(parts.begin(), parts.end());
    }

    // Coefficient bound for monic degree-d factors, then lift.
    Integer norm = 0;
    for (const Integer& v : F) norm += v * v;
    Integer bound = (Integer(1) << (target_degree + 1)) * (Integer(sqrt(norm)) + 1);
    int K = 1;
    Integer pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++K;
    }
    hensel_lift_tree(zp_mod(F, pk), parts, p, K);

    // Recombine subsets whose degrees sum to the target.
    std::vector<Poly> out;
    ZPoly remaining = F;
    std::vector<char> used(parts.size(), 0);
    bool progress = true;
    while (progress) {
        progress = false;
        size_t n = parts.size();
        std::vector<size_t> idx;
        std::function<bool(size_t, int)> search = [&](size_t start, int deg_left) -> bool {
            if (deg_left == 0) {
                ZPoly cand{Integer(1)};
                for (size_t i : idx) cand = zp_mul(cand, parts[i], pk);
                for (Integer& v : cand) v = mod_sym(v, pk);
                if (zp_deg(remaining) >= zp_deg(cand) && zpoly_divides(cand, remaining)) {
                    remaining = zpoly_exact_div(remaining, cand);
                    for (size_t i : idx) used[i] = 1;
                    Poly g = zpoly_to_poly(cand).scale_roots(make_rational(1, D));
                    out.push_back(g);
                    return true;
                }
                return false;
            }
            for (size_t i = start; i < n; ++i) {
                if (used[i]) continue;
                int d = zp_deg(parts[i]);
                if (d > deg_left) continue;
                idx.push_back(i);
                if (search(i + 1, deg_left - d)) return true;
                idx.pop_back();
            }
            return false;
        };
        if (zp_deg(remaining) >= target_degree && search(0, target_degree)) progress = true;
    }

    // Keep only irreducibles: degree 2 and 3 are irreducible iff rootless.
    std::vector<Poly> result;
    for (const Poly& g : out) {
        if (g.degree() != target_degree) continue;
        if (!rational_roots(g).empty()) continue;
        result.push_back(g);
    }
    std::sort(result.begin(), result.end(), [](const Poly& a, const Poly& b) {
        return a.coeffs() < b.coeffs();
    });
    return result;
}

}  // namespace selmer
