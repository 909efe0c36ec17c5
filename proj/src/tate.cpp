// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Tate's algorithm over Q in full generality, following the classical walk:
// singular-point translation, the multiplicative test, the II/III/IV ladder,
// the I0*/In* cubic analysis, the IV*/III*/II* tail, and the non-minimal
// restart.  Every change of variables is accumulated so the same walk also
// yields the p-minimal transform used by minimal_model().

#include <limits>

#include "modp.hpp"
#include "selmer/factor.hpp"
#include "selmer/local_data.hpp"

namespace selmer {

std::string KodairaType::str() const {
    switch (family) {
        case I0: return "I0";
        case In: return "I" + std::to_string(n);
        case II: return "II";
        case III: return "III";
        case IV: return "IV";
        case I0star: return "I0*";
        case Instar: return "I" + std::to_string(n) + "*";
        case IVstar: return "IV*";
        case IIIstar: return "III*";
        case IIstar: return "II*";
    }
    return "?";
}

namespace {

using modp::ZPoly;

constexpr long kInfiniteValuation = std::numeric_limits<long>::max() / 4;

struct IntModel {
    Integer a1, a2, a3, a4, a6;

    Integer b2() const { return a1 * a1 + 4 * a2; }
    Integer b4() const { return 2 * a4 + a1 * a3; }
    Integer b6() const { return a3 * a3 + 4 * a6; }
    Integer b8() const {
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    }
    Integer disc() const {
        Integer B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }
};

long vI(const Integer& n, const Integer& p) {
    if (n == 0) return kInfiniteValuation;
    return valuation(n, p);
}

// Exact division; a violated divisibility invariant must fail loudly rather
// than truncate.
Integer divex(const Integer& a, const Integer& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t()))
        throw invariant_violation("inexact division in Tate's algorithm");
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_p(const Integer& a, const Integer& p) {
    Integer r = a % p;
    if (r < 0) r += p;
    return r;
}

// Translation (u = 1): x -> x + r, y -> y + s x + t.
IntModel translated(const IntModel& m, const Integer& r, const Integer& s, const Integer& t) {
    IntModel n;
    n.a1 = m.a1 + 2 * s;
    n.a2 = m.a2 - s * m.a1 + 3 * r - s * s;
    n.a3 = m.a3 + r * m.a1 + 2 * t;
    n.a4 = m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t;
    n.a6 = m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1;
    return n;
}

IsoTransform translation(const Integer& r, const Integer& s, const Integer& t) {
    return IsoTransform{Rational(1), Rational(r), Rational(s), Rational(t)};
}

// Roots in F_p of A y^2 + B y + C (A invertible mod p), no multiplicity.
int quad_roots(const Integer& A, const Integer& B, const Integer& C, const Integer& p) {
    if (p == 2) {
        int cnt = 0;
        for (int y = 0; y < 2; ++y)
            if (mod_p(A * y * y + B * y + C, p) == 0) ++cnt;
        return cnt;
    }
    Integer disc = B * B - 4 * A * C;
    if (mod_p(disc, p) == 0) return 1;
    return legendre(disc, p) == 1 ? 2 : 0;
}

// Whether A y^2 + B y + C is squarefree mod p (A invertible mod p).
bool quad_squarefree(const Integer& A, const Integer& B, const Integer& C, const Integer& p) {
    if (p == 2) return mod_p(B, p) != 0;
    return mod_p(B * B - 4 * A * C, p) != 0;
}

// Double root of a non-squarefree quadratic mod p.
Integer quad_double_root(const Integer& A, const Integer& B, const Integer& C, const Integer& p) {
    if (p == 2) {
        for (int y = 0; y < 2; ++y)
            if (mod_p(A * y * y + B * y + C, p) == 0) return Integer(y);
        throw invariant_violation("quadratic without double root mod 2");
    }
    Integer inv2A;
    Integer twoA = mod_p(2 * A, p);
    if (!mpz_invert(inv2A.get_mpz_t(), twoA.get_mpz_t(), p.get_mpz_t()))
        throw invariant_violation("2A not invertible");
    (void)C;
    return mod_p(-B * inv2A, p);
}

// Singular point of the reduction mod p (model assumed singular mod p).
std::pair<Integer, Integer> singular_point(const IntModel& m, const Integer& p) {
    if (p <= 3) {
        for (Integer x = 0; x < p; ++x)
            for (Integer y = 0; y < p; ++y) {
                Integer F = y * y + m.a1 * x * y + m.a3 * y - x * x * x - m.a2 * x * x -
                            m.a4 * x - m.a6;
                Integer Fx = m.a1 * y - 3 * x * x - 2 * m.a2 * x - m.a4;
                Integer Fy = 2 * y + m.a1 * x + m.a3;
                if (mod_p(F, p) == 0 && mod_p(Fx, p) == 0 && mod_p(Fy, p) == 0) return {x, y};
            }
        throw invariant_violation("no singular point found mod p");
    }
    // p >= 5: complete the square; singular x is the multiple root of
    // 4x^3 + b2 x^2 + 2 b4 x + b6.
    ZPoly g{mod_p(m.b6(), p), mod_p(2 * m.b4(), p), mod_p(m.b2(), p), mod_p(Integer(4), p)};
    ZPoly gp = modp::zp_derivative(g, p);
    ZPoly G = modp::zp_gcd(g, gp, p);
    Integer alpha;
    if (modp::zp_deg(G) == 1) {
        alpha = mod_p(-G[0], p);
    } else if (modp::zp_deg(G) == 2) {
        Integer inv2;
        Integer two(2);
        mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
        alpha = mod_p(-G[1] * inv2, p);
    } else {
        throw invariant_violation("unexpected multiple-root structure");
    }
    Integer inv2;
    Integer two(2);
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
    Integer ybar = mod_p(-(m.a1 * alpha + m.a3) * inv2, p);
    return {alpha, ybar};
}

// Root structure of the monic cubic T^3 + c2 T^2 + c1 T + c0 mod p.
struct CubicStructure {
    int kind;       // 0 = squarefree, 1 = double root, 2 = triple root
    Integer root;   // the multiple root when kind > 0
    int root_count; // roots in F_p when squarefree
};

CubicStructure cubic_structure(const Integer& c2, const Integer& c1, const Integer& c0,
                               const Integer& p) {
    ZPoly P{mod_p(c0, p), mod_p(c1, p), mod_p(c2, p), Integer(1)};
    ZPoly Pp = modp::zp_derivative(P, p);
    ZPoly G = modp::zp_gcd(P, Pp, p);
    CubicStructure out{0, Integer(0), 0};
    int dg = modp::zp_deg(G);
    if (dg <= 0) {
        out.root_count = modp::zp_root_count(P, p);
        return out;
    }

    Integer alpha;
    if (dg == 3) {
        // p = 3 and P' = 0: P = (T - alpha)^3 with cubing the identity on F_3.
        alpha = mod_p(-c0, p);
    } else if (dg == 1) {
        alpha = mod_p(-G[0], p);
    } else {  // dg == 2: G = (T - alpha)^2
        if (p == 2) {
            alpha = mod_p(G[0], p);  // (T + a)^2 = T^2 + a^2 over F_2
        } else {
            Integer inv2, two(2);
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            alpha = mod_p(-G[1] * inv2, p);
        }
    }

    // Multiplicity by exact modular division.
    ZPoly lin{mod_p(-alpha, p), Integer(1)};
    auto d1 = modp::zp_divmod(P, lin, p);
    if (!d1.second.empty()) throw invariant_violation("multiple root does not divide cubic");
    auto d2 = modp::zp_divmod(d1.first, lin, p);
    if (!d2.second.empty()) throw invariant_violation("expected at least a double root");
    auto d3 = modp::zp_divmod(d2.first, lin, p);
    out.kind = d3.second.empty() ? 2 : 1;
    out.root = alpha;
    return out;
}

struct TateOutcome {
    LocalData local;
    IsoTransform transform;  // input integral model -> p-minimal model
};

TateOutcome tate_core(IntModel m, const Integer& p, PotentialKind potential) {
    IsoTransform acc = IsoTransform::identity();
    LocalData out;
    out.p = p;
    out.potential = potential;

    auto step = [&](const Integer& r, const Integer& s, const Integer& t) {
        m = translated(m, r, s, t);
        acc = compose(acc, translation(r, s, t));
    };

    for (;;) {
        Integer D = m.disc();
        if (D == 0) throw invariant_violation("singular model in Tate's algorithm");
        long n = vI(D, p);
        if (n == 0) {
            out.kodaira = {KodairaType::I0, 0};
            out.tamagawa = 1;
            out.kind = ReductionKind::Good;
            out.v_disc_min = 0;
            break;
        }

        auto [r0, t0] = singular_point(m, p);
        step(r0, 0, t0);

        if (vI(m.b2(), p) == 0) {
            // Multiplicative: type In with n = v(disc).
            out.kodaira = {KodairaType::In, static_cast<int>(n)};
            out.v_disc_min = n;
            // Tangent directions: T^2 + a1 T - a2.
            bool split = quad_roots(Integer(1), m.a1, -m.a2, p) > 0;
            if (split) {
                out.kind = ReductionKind::SplitMultiplicative;
                out.tamagawa = n;
            } else {
                out.kind = ReductionKind::NonsplitMultiplicative;
                out.tamagawa = (n % 2 == 0) ? 2 : 1;
            }
            break;
        }

        out.kind = ReductionKind::Additive;

        if (vI(m.a6, p) < 2) {
            out.kodaira = {KodairaType::II, 0};
            out.tamagawa = 1;
            out.v_disc_min = n;
            break;
        }
        if (vI(m.b8(), p) < 3) {
            out.kodaira = {KodairaType::III, 0};
            out.tamagawa = 2;
            out.v_disc_min = n;
            break;
        }
        if (vI(m.b6(), p) < 3) {
            Integer a3p = divex(m.a3, p);
            Integer a6p2 = divex(m.a6, p * p);
            out.kodaira = {KodairaType::IV, 0};
            out.tamagawa = quad_roots(Integer(1), a3p, -a6p2, p) == 2 ? 3 : 1;
            out.v_disc_min = n;
            break;
        }

        // Normalize so that p | a1, a2; p^2 | a3, a4; p^3 | a6.
        if (p <= 3) {
            bool done = false;
            for (Integer s = 0; s < p && !done; ++s)
                for (Integer t = 0; t < p * p * p && !done; ++t) {
                    IntModel c = translated(m, 0, s, t);
                    if (vI(c.a1, p) >= 1 && vI(c.a2, p) >= 1 && vI(c.a3, p) >= 2 &&
                        vI(c.a4, p) >= 2 && vI(c.a6, p) >= 3) {
                        step(0, s, t);
                        done = true;
                    }
                }
            if (!done) throw invariant_violation("step-7 normalization failed");
        } else {
            Integer inv2;
            Integer two(2);
            mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
            Integer s = mod_p(-m.a1 * inv2, p);
            step(0, s, 0);
            Integer p2 = p * p;
            Integer t = (-m.a3 * inv2) % p2;
            if (t < 0) t += p2;
            step(0, 0, t);
            if (!(vI(m.a1, p) >= 1 && vI(m.a2, p) >= 1 && vI(m.a3, p) >= 2 && vI(m.a4, p) >= 2 &&
                  vI(m.a6, p) >= 3))
                throw invariant_violation("step-7 normalization failed");
        }

        // P(T) = T^3 + (a2/p) T^2 + (a4/p^2) T + a6/p^3.
        Integer c2 = divex(m.a2, p), c1 = divex(m.a4, p * p), c0 = divex(m.a6, p * p * p);
        CubicStructure cs = cubic_structure(c2, c1, c0, p);

        if (cs.kind == 0) {
            out.kodaira = {KodairaType::I0star, 0};
            out.tamagawa = 1 + cs.root_count;
            out.v_disc_min = n;
            break;
        }

        if (cs.kind == 1) {
            // In* chain.  Move the double root to T = 0.
            step(p * cs.root, 0, 0);
            if (!(vI(m.a2, p) == 1 && vI(m.a3, p) >= 2 && vI(m.a4, p) >= 3 && vI(m.a6, p) >= 4))
                throw invariant_violation("In* entry conditions failed");
            long k = 1;
            Integer pk1 = p * p;  // p^{k+1}
            for (;;) {
                Integer B = divex(m.a3, pk1);
                Integer C = -divex(m.a6, pk1 * pk1);  // a6 / p^{2k+2}
                if (quad_squarefree(Integer(1), B, C, p)) {
                    out.kodaira = {KodairaType::Instar, static_cast<int>(2 * k - 1)};
                    out.tamagawa = quad_roots(Integer(1), B, C, p) == 2 ? 4 : 2;
                    out.v_disc_min = n;
                    break;
                }
                Integer gamma = quad_double_root(Integer(1), B, C, p);
                step(0, 0, gamma * pk1);

                Integer A2 = divex(m.a2, p);
                Integer B2 = divex(m.a4, pk1 * p);        // p^{k+2}
                Integer C2 = divex(m.a6, pk1 * pk1 * p);  // p^{2k+3}
                if (quad_squarefree(A2, B2, C2, p)) {
                    out.kodaira = {KodairaType::Instar, static_cast<int>(2 * k)};
                    out.tamagawa = quad_roots(A2, B2, C2, p) == 2 ? 4 : 2;
                    out.v_disc_min = n;
                    break;
                }
                Integer delta = quad_double_root(A2, B2, C2, p);
                step(delta * pk1, 0, 0);
                ++k;
                pk1 *= p;
            }
            break;
        }

        // Triple root: move it to T = 0.
        step(p * cs.root, 0, 0);
        if (!(vI(m.a2, p) >= 2 && vI(m.a4, p) >= 3 && vI(m.a6, p) >= 4))
            throw invariant_violation("triple-root entry conditions failed");

        {
            Integer B = divex(m.a3, p * p);
            Integer C = -divex(m.a6, p * p * p * p);
            if (quad_squarefree(Integer(1), B, C, p)) {
                out.kodaira = {KodairaType::IVstar, 0};
                out.tamagawa = quad_roots(Integer(1), B, C, p) == 2 ? 3 : 1;
                out.v_disc_min = n;
                break;
            }
            Integer gamma = quad_double_root(Integer(1), B, C, p);
            step(0, 0, gamma * p * p);
        }

        if (vI(m.a4, p) < 4) {
            out.kodaira = {KodairaType::IIIstar, 0};
            out.tamagawa = 2;
            out.v_disc_min = n;
            break;
        }
        if (vI(m.a6, p) < 6) {
            out.kodaira = {KodairaType::IIstar, 0};
            out.tamagawa = 1;
            out.v_disc_min = n;
            break;
        }

        // Non-minimal: scale down and restart.
        Integer p2 = p * p;
        IntModel d;
        d.a1 = divex(m.a1, p);
        d.a2 = divex(m.a2, p2);
        d.a3 = divex(m.a3, p2 * p);
        d.a4 = divex(m.a4, p2 * p2);
        d.a6 = divex(m.a6, p2 * p2 * p2);
        m = d;
        acc = compose(acc, IsoTransform{Rational(p), 0, 0, 0});
    }

    return {out, acc};
}

PotentialKind potential_kind(const WeierstrassCurve& E, const Integer& p) {
    Invariants I = invariants(E);
    if (I.c4 == 0) return PotentialKind::Good;  // j = 0
    long vj = 3 * valuation(I.c4, p) - valuation(I.disc, p);
    return vj < 0 ? PotentialKind::Multiplicative : PotentialKind::Good;
}

IntModel to_int_model(const WeierstrassCurve& E) {
    if (!is_integral(E)) throw input_error("integral model required");
    return IntModel{E.a1.get_num(), E.a2.get_num(), E.a3.get_num(), E.a4.get_num(),
                    E.a6.get_num()};
}

WeierstrassCurve to_curve(const IntModel& m) {
    return WeierstrassCurve{Rational(m.a1), Rational(m.a2), Rational(m.a3), Rational(m.a4),
                            Rational(m.a6)};
}

}  // namespace

LocalData tate(const WeierstrassCurve& E, const Integer& p) {
    if (!is_prime(p)) throw input_error("tate: p must be prime");
    WeierstrassCurve W = is_integral(E) ? E : integralize(E).first;
    return tate_core(to_int_model(W), p, potential_kind(W, p)).local;
}

TateResult tate_with_transform(const WeierstrassCurve& E, const Integer& p) {
    if (!is_prime(p)) throw input_error("tate: p must be prime");
    if (!is_integral(E)) throw input_error("tate_with_transform: integral model required");
    TateOutcome oc = tate_core(to_int_model(E), p, potential_kind(E, p));
    return {oc.local, oc.transform};
}

bool is_split(const WeierstrassCurve& E, const Integer& p) {
    LocalData ld = tate(E, p);
    if (ld.kind == ReductionKind::SplitMultiplicative) return true;
    if (ld.kind == ReductionKind::NonsplitMultiplicative) return false;
    throw input_error("is_split requires multiplicative reduction");
}

std::pair<WeierstrassCurve, IsoTransform> minimal_model(const WeierstrassCurve& E,
                                                        const std::vector<Integer>& hints) {
    auto [W, T0] = integralize(E);
    IsoTransform T = T0;
    IntModel m = to_int_model(W);

    Integer D = m.disc();
    if (D == 0) throw input_error("singular curve");
    Factorization f = factor_with_hints(D, hints);
    for (const auto& [p, e] : f.factors) {
        if (e < 12) continue;
        TateOutcome oc = tate_core(m, p, PotentialKind::Good);
        if (oc.transform.u != 1) {
            WeierstrassCurve cur = apply(to_curve(m), oc.transform);
            m = to_int_model(cur);
            T = compose(T, oc.transform);
        }
    }

    // Reduce to the canonical model: a1, a3 in {0,1}, a2 in {-1,0,1}.
    {
        Integer s = -(m.a1 - mod_p(m.a1, Integer(2))) / 2;
        WeierstrassCurve cur = apply(to_curve(m), translation(0, s, 0));
        T = compose(T, translation(0, s, 0));
        m = to_int_model(cur);

        Integer a2r = mod_p(m.a2, Integer(3));
        Integer target = (a2r == 2) ? Integer(-1) : a2r;
        Integer r = (target - m.a2) / 3;
        cur = apply(to_curve(m), translation(r, 0, 0));
        T = compose(T, translation(r, 0, 0));
        m = to_int_model(cur);

        Integer t = -(m.a3 - mod_p(m.a3, Integer(2))) / 2;
        cur = apply(to_curve(m), translation(0, 0, t));
        T = compose(T, translation(0, 0, t));
        m = to_int_model(cur);
    }

    return {to_curve(m), T};
}

}  // namespace selmer
