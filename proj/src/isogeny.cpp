// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/isogeny.hpp"

#include <algorithm>

#include "selmer/factor.hpp"
#include "selmer/poly_factor.hpp"

namespace selmer {

namespace {

struct BInv {
    Rational b2, b4, b6, b8;
};

BInv binv(const WeierstrassCurve& E) {
    Invariants I = invariants(E);
    return {I.b2, I.b4, I.b6, I.b8};
}

// 4x^3 + b2 x^2 + 2 b4 x + b6: the square of the 2-division "polynomial".
Poly two_torsion_cubic(const BInv& b) {
    return Poly({b.b6, 2 * b.b4, b.b2, Rational(4)});
}

Poly psi3_poly(const BInv& b) {
    return Poly({b.b8, 3 * b.b6, 3 * b.b4, b.b2, Rational(3)});
}

Poly psi4_half(const BInv& b) {
    // psi4 / psi2: degree six.
    return Poly({b.b4 * b.b8 - b.b6 * b.b6, b.b2 * b.b8 - b.b4 * b.b6, 10 * b.b8, 10 * b.b6,
                 5 * b.b4, b.b2, Rational(2)});
}

// Elementary symmetric -> power sums for a monic kernel polynomial.
void power_sums(const Poly& h, Rational& p1, Rational& p2, Rational& p3) {
    int d = h.degree();
    Rational e1 = d >= 1 ? -h.coeff(d - 1) : Rational(0);
    Rational e2 = d >= 2 ? h.coeff(d - 2) : Rational(0);
    Rational e3 = d >= 3 ? -h.coeff(d - 3) : Rational(0);
    p1 = e1;
    p2 = e1 * p1 - 2 * e2;
    p3 = e1 * p2 - e2 * p1 + 3 * e3;
}

std::vector<Integer> disc_primes(const WeierstrassCurve& E, const std::vector<Integer>& hints) {
    Rational D = discriminant(E);
    Integer n = D.get_num() * D.get_den();  // support of both
    return factor_with_hints(n, hints).primes();
}

}  // namespace

Rational SelmerRatio::value() const { return pow_rational(Rational(ell), t); }

Rational j_invariant(const WeierstrassCurve& E) { return invariants(E).j; }

Poly division_polynomial(const WeierstrassCurve& E, long ell) {
    BInv b = binv(E);
    switch (ell) {
        case 2:
            return two_torsion_cubic(b);
        case 3:
            return psi3_poly(b);
        case 5: {
            Poly f = two_torsion_cubic(b);
            Poly g4 = psi4_half(b);
            Poly p3 = psi3_poly(b);
            return g4 * f * f - p3 * p3 * p3;
        }
        case 7: {
            Poly f = two_torsion_cubic(b);
            Poly g4 = psi4_half(b);
            Poly p3 = psi3_poly(b);
            Poly p5 = g4 * f * f - p3 * p3 * p3;
            return p5 * p3 * p3 * p3 - f * f * g4 * g4 * g4;
        }
        default:
            throw input_error("division polynomial only for ell in {2,3,5,7}");
    }
}

namespace {

// Stability of the root set of h under the duplication map
// x(2P) = (x^4 - b4 x^2 - 2 b6 x - b8) / (4x^3 + b2 x^2 + 2 b4 x + b6).
bool duplication_stable(const Poly& h, const BInv& b) {
    Poly N({-b.b8, -2 * b.b6, -b.b4, Rational(0), Rational(1)});
    Poly f = two_torsion_cubic(b);
    int d = h.degree();
    Poly acc;  // sum h_i N^i f^{d-i}
    for (int i = 0; i <= d; ++i) {
        if (h.coeff(i) == 0) continue;
        acc = acc + N.pow(static_cast<unsigned long>(i)) *
                        f.pow(static_cast<unsigned long>(d - i)) * h.coeff(i);
    }
    return (acc % h).is_zero();
}

}  // namespace

std::vector<Poly> rational_kernels(const WeierstrassCurve& E, long ell) {
    if (ell != 2 && ell != 3 && ell != 5 && ell != 7)
        throw input_error("rational kernels only for ell in {2,3,5,7}");
    WeierstrassCurve Em = minimal_model(E).first;
    BInv b = binv(Em);
    Poly psi = division_polynomial(Em, ell);

    std::vector<Poly> kernels;
    if (ell == 2) {
        std::vector<Rational> roots = rational_roots(psi);
        for (const Rational& r : roots) {
            Poly lin({-r, Rational(1)});
            if (kernels.empty() || !(kernels.back() == lin)) kernels.push_back(lin);
        }
        return kernels;
    }

    int d = static_cast<int>((ell - 1) / 2);
    std::vector<Rational> roots = rational_roots(psi);
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());

    std::vector<Poly> candidates;
    if (d == 1) {
        for (const Rational& r : roots) candidates.push_back(Poly({-r, Rational(1)}));
    } else if (d == 2) {
        for (const Poly& q : factor_poly_small(psi, 2)) candidates.push_back(q);
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                candidates.push_back(Poly({-roots[i], Rational(1)}) *
                                     Poly({-roots[j], Rational(1)}));
    } else {
        std::vector<Poly> quads = factor_poly_small(psi, 3);
        for (const Poly& q : quads) candidates.push_back(q);
        for (const Poly& q : factor_poly_small(psi, 2))
            for (const Rational& r : roots)
                candidates.push_back(q * Poly({-r, Rational(1)}));
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j)
                for (size_t k = j + 1; k < roots.size(); ++k)
                    candidates.push_back(Poly({-roots[i], Rational(1)}) *
                                         Poly({-roots[j], Rational(1)}) *
                                         Poly({-roots[k], Rational(1)}));
    }

    for (const Poly& h : candidates) {
        if (!h.divides(psi)) continue;
        if (!duplication_stable(h, b)) continue;
        kernels.push_back(h);
    }
    std::sort(kernels.begin(), kernels.end(),
              [](const Poly& a, const Poly& bb) { return a.coeffs() < bb.coeffs(); });
    kernels.erase(std::unique(kernels.begin(), kernels.end()), kernels.end());
    return kernels;
}

Isogeny velu(const WeierstrassCurve& E, const Poly& kernel, long ell,
             const std::vector<Integer>& bad_prime_hints, bool check_kernel) {
    auto [Em, TE] = minimal_model(E, bad_prime_hints);
    (void)TE;
    int d = kernel.degree();
    int expected = (ell == 2) ? 1 : static_cast<int>((ell - 1) / 2);
    if (d != expected) throw input_error("kernel degree does not match the isogeny degree");
    if (check_kernel && !kernel.divides(division_polynomial(Em, ell)))
        throw input_error("kernel does not divide the division polynomial");

    BInv b = binv(Em);
    Rational t, w;
    if (ell == 2) {
        Rational x0 = -kernel.coeff(0);
        t = (6 * x0 * x0 + b.b2 * x0 + b.b4) / 2;
        w = x0 * t;
    } else {
        Rational p1, p2, p3;
        power_sums(kernel, p1, p2, p3);
        t = 6 * p2 + b.b2 * p1 + Rational(d) * b.b4;
        w = 10 * p3 + 2 * b.b2 * p2 + 3 * b.b4 * p1 + Rational(d) * b.b6;
    }

    WeierstrassCurve Craw{Em.a1, Em.a2, Em.a3, Em.a4 - 5 * t,
                          Em.a6 - b.b2 * t - 7 * w};

    std::vector<Integer> hints = bad_prime_hints;
    for (const Integer& p : disc_primes(Em, bad_prime_hints)) hints.push_back(p);
    hints.push_back(Integer(ell));
    auto [Cm, TC] = minimal_model(Craw, hints);

    Isogeny phi;
    phi.domain = Em;
    phi.codomain = Cm;
    phi.ell = ell;
    phi.kernel = kernel;
    phi.lambda = TC.u;
    return phi;
}

std::pair<Poly, Poly> isogeny_x_map(const Isogeny& phi) {
    BInv b = binv(phi.domain);
    const Poly& h = phi.kernel;
    Poly hp = h.derivative();
    Poly T({b.b4, b.b2, Rational(6)});
    Poly U = two_torsion_cubic(b);
    Poly R1 = (T * hp) % h;
    Poly R2 = (U * hp) % h;
    if (phi.ell == 2) {
        R1 = R1 * make_rational(1, 2);
        R2 = Poly();  // u_Q vanishes on 2-torsion
    }
    Poly N = Poly::x() * h * h + R1 * h + (R2 * hp - R2.derivative() * h);
    Poly D = h * h;

    // N/D maps into the raw Velu model; compose with the transform that
    // minimalizes it so the map lands on the stored codomain.
    int d = h.degree();
    Rational t, w;
    if (phi.ell == 2) {
        Rational x0 = -h.coeff(0);
        t = (6 * x0 * x0 + b.b2 * x0 + b.b4) / 2;
        w = x0 * t;
    } else {
        Rational p1, p2, p3;
        power_sums(h, p1, p2, p3);
        t = 6 * p2 + b.b2 * p1 + Rational(d) * b.b4;
        w = 10 * p3 + 2 * b.b2 * p2 + 3 * b.b4 * p1 + Rational(d) * b.b6;
    }
    WeierstrassCurve Craw{phi.domain.a1, phi.domain.a2, phi.domain.a3,
                          phi.domain.a4 - 5 * t, phi.domain.a6 - b.b2 * t - 7 * w};
    auto [Cm, TC] = minimal_model(Craw);
    if (!(Cm == phi.codomain))
        throw invariant_violation("x-map codomain does not match the stored codomain");
    N = (N - D * TC.r) * (1 / (TC.u * TC.u));
    return {N, D};
}

Isogeny dual(const Isogeny& phi) {
    std::vector<Poly> candidates = rational_kernels(phi.codomain, phi.ell);
    Rational jD = j_invariant(phi.domain);
    Poly psiL = division_polynomial(phi.domain, phi.ell).monic();
    auto [N, D] = isogeny_x_map(phi);

    const Isogeny* found = nullptr;
    Isogeny result;
    for (const Poly& k : candidates) {
        Isogeny psi = velu(phi.codomain, k, phi.ell);
        if (!(j_invariant(psi.codomain) == jD)) continue;
        if (!(psi.codomain == phi.domain)) continue;
        // Composition check: pullback of ker(psi) along phi, together with
        // ker(phi), must be exactly the ell-torsion x-coordinates.
        Poly acc;
        int dk = k.degree();
        for (int i = 0; i <= dk; ++i) {
            if (k.coeff(i) == 0) continue;
            acc = acc + N.pow(static_cast<unsigned long>(i)) *
                            D.pow(static_cast<unsigned long>(dk - i)) * k.coeff(i);
        }
        Poly K = (phi.kernel * acc).monic();
        if (!(K == psiL)) continue;
        if (found) throw invariant_violation("dual isogeny is not unique");
        result = psi;
        found = &result;
    }
    if (!found) throw invariant_violation("dual isogeny not found");
    return result;
}

Rational alpha(const Isogeny& phi, const Integer& p) {
    long v = (phi.lambda == 0) ? 0 : valuation(phi.lambda, p);
    return pow_rational(Rational(p), v);
}

bool kernel_points_real(const Isogeny& phi) {
    const Poly& h = phi.kernel;
    int d = h.degree();
    if (count_real_roots(h) < d) return false;
    BInv b = binv(phi.domain);
    Poly g = two_torsion_cubic(b);
    return tarski_query(g, h) == d;
}

Rational local_selmer_ratio(const Isogeny& phi, const Place& v) {
    if (v.infinite) {
        if (phi.ell % 2 == 0) throw input_error("infinite-place ratio needs odd degree");
        return kernel_points_real(phi) ? make_rational(1, phi.ell) : Rational(1);
    }
    LocalData dom = tate(phi.domain, v.p);
    LocalData cod = tate(phi.codomain, v.p);
    return make_rational(cod.tamagawa, dom.tamagawa) * alpha(phi, v.p);
}

std::vector<Place> relevant_places(const Isogeny& phi) {
    Rational D = discriminant(phi.domain);
    std::vector<Integer> primes = factor(D.get_num() * D.get_den()).primes();
    if (std::find(primes.begin(), primes.end(), Integer(phi.ell)) == primes.end())
        primes.push_back(Integer(phi.ell));
    std::sort(primes.begin(), primes.end());
    std::vector<Place> out;
    for (const Integer& p : primes) out.push_back(Place::at(p));
    out.push_back(Place::inf());
    return out;
}

SelmerRatio global_selmer_ratio(const Isogeny& phi) {
    if (phi.ell % 2 == 0) throw input_error("global Selmer ratio needs odd degree");
    SelmerRatio sr;
    sr.ell = phi.ell;
    sr.t = 0;
    for (const Place& v : relevant_places(phi)) {
        Rational r = local_selmer_ratio(phi, v);
        long e = (r == 1) ? 0 : valuation(r, Integer(phi.ell));
        if (!(pow_rational(Rational(phi.ell), e) == r))
            throw invariant_violation("local Selmer ratio is not a power of ell");
        sr.breakdown[v] = e;
        sr.t += e;
    }
    return sr;
}

Rational split_mult_ratio_check(const Isogeny& phi, const Integer& p) {
    if (Integer(phi.ell) == p) throw input_error("split-multiplicative check needs p not dividing ell");
    Rational jd = j_invariant(phi.domain);
    if (jd == 0 || valuation(jd, p) >= 0)
        throw input_error("reduction is potentially good at p");
    LocalData ld = tate(phi.domain, p);
    if (ld.kind != ReductionKind::SplitMultiplicative) return Rational(1);
    Rational jc = j_invariant(phi.codomain);
    return make_rational(valuation(jc, p), valuation(jd, p));
}

Isogeny twist_isogeny(const Isogeny& phi, const Integer& s,
                      const std::vector<Integer>& bad_prime_hints) {
    auto [S, T1] = to_short(phi.domain);
    WeierstrassCurve Ts{Rational(0), Rational(0), Rational(0),
                        S.a4 * Rational(s) * Rational(s),
                        S.a6 * Rational(s) * Rational(s) * Rational(s)};

    std::vector<Integer> hints = bad_prime_hints;
    {
        Integer m = abs(s);
        for (const Integer& p : factor(m == 0 ? Integer(1) : m).primes()) hints.push_back(p);
        for (const Integer& p : disc_primes(phi.domain, bad_prime_hints)) hints.push_back(p);
        hints.push_back(Integer(2));
        hints.push_back(Integer(3));
    }
    auto [Ds, T2] = minimal_model(Ts, hints);

    Poly h = phi.kernel;
    h = h.compose_linear(T1.u * T1.u, T1.r).monic();
    h = h.scale_roots(Rational(s));
    h = h.compose_linear(T2.u * T2.u, T2.r).monic();

    Isogeny phis = velu(Ds, h, phi.ell, hints, false);
    if (!(j_invariant(phis.codomain) == j_invariant(phi.codomain)))
        throw invariant_violation("twisted isogeny has wrong codomain");
    return phis;
}

}  // namespace selmer
