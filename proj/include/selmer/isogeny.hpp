// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_ISOGENY_HPP
#define SELMER_ISOGENY_HPP

#include <map>
#include <string>
#include <vector>

#include "selmer/curve.hpp"
#include "selmer/local_data.hpp"
#include "selmer/poly.hpp"

namespace selmer {

/// A place of Q: a finite prime or the real place.
struct Place {
    bool infinite = false;
    Integer p = 0;

    static Place inf() { return Place{true, 0}; }
    static Place at(const Integer& p) { return Place{false, p}; }

    bool operator==(const Place& o) const { return infinite == o.infinite && p == o.p; }
    bool operator<(const Place& o) const {
        if (infinite != o.infinite) return !infinite;  // finite places first
        return p < o.p;
    }
    std::string str() const { return infinite ? "inf" : p.get_str(); }
};

/// Cyclic isogeny of prime degree between global minimal models.  The kernel
/// polynomial lives on the domain model; lambda is the scaling with
/// (pullback of the codomain invariant differential) = lambda * (domain one),
/// both differentials taken on the stored minimal models.
struct Isogeny {
    WeierstrassCurve domain;
    WeierstrassCurve codomain;
    long ell = 0;
    Poly kernel;
    Rational lambda;
};

/// c(phi) = ell^t with the per-place exponent breakdown.
struct SelmerRatio {
    long ell = 0;
    long t = 0;
    std::map<Place, long> breakdown;
    Rational value() const;
};

Rational j_invariant(const WeierstrassCurve& E);

/// ell in {2,3,5,7}.  For ell = 2 returns the 2-division cubic
/// 4x^3 + b2 x^2 + 2 b4 x + b6; otherwise the x-only division polynomial.
Poly division_polynomial(const WeierstrassCurve& E, long ell);

/// Monic kernel polynomials of the rational cyclic ell-subgroups of E
/// (computed on the global minimal model of E), sorted deterministically.
std::vector<Poly> rational_kernels(const WeierstrassCurve& E, long ell);

/// Velu's formulas; kernel must come from rational_kernels of the same E.
/// Both ends are re-minimalized and lambda refers to the minimal models.
Isogeny velu(const WeierstrassCurve& E, const Poly& kernel, long ell,
             const std::vector<Integer>& bad_prime_hints = {}, bool check_kernel = true);

/// The isogeny psi with psi o phi = [ell].
Isogeny dual(const Isogeny& phi);

/// alpha_p(phi) = p^{v_p(lambda)}; equals 1 whenever p != ell.
Rational alpha(const Isogeny& phi, const Integer& p);

/// Local Selmer ratio: at finite p the Tamagawa ratio times alpha; at the
/// real place 1/ell when all kernel points are real, else 1 (ell odd).
Rational local_selmer_ratio(const Isogeny& phi, const Place& v);

/// Product over {inf} and p | ell * disc_min(domain); all other places
/// contribute 1.
SelmerRatio global_selmer_ratio(const Isogeny& phi);

/// At a (potentially) multiplicative prime p not dividing ell: the
/// j-valuation ratio v_p(j(codomain))/v_p(j(domain)) on split reduction,
/// 1 otherwise.  Must agree with local_selmer_ratio.
Rational split_mult_ratio_check(const Isogeny& phi, const Integer& p);

/// Whether every kernel point is real (exact Sturm/Tarski sign analysis).
bool kernel_points_real(const Isogeny& phi);

/// The x-coordinate map of phi as numerator/denominator = (N, kernel^2).
std::pair<Poly, Poly> isogeny_x_map(const Isogeny& phi);

/// The quadratic twist of phi by squarefree s, on minimal models.
Isogeny twist_isogeny(const Isogeny& phi, const Integer& s,
                      const std::vector<Integer>& bad_prime_hints = {});

/// {inf} together with the primes dividing ell * disc_min(domain).
std::vector<Place> relevant_places(const Isogeny& phi);

}  // namespace selmer

#endif
