// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_CURVE_HPP
#define SELMER_CURVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "selmer/rational.hpp"

namespace selmer {

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q.
struct WeierstrassCurve {
    Rational a1, a2, a3, a4, a6;

    bool operator==(const WeierstrassCurve& o) const = default;
    std::string str() const;
};

/// The standard b-, c-invariants, discriminant and j-invariant.
struct Invariants {
    Rational b2, b4, b6, b8, c4, c6, disc, j;
};

/// Invariants of E; throws on a singular model (disc = 0).
Invariants invariants(const WeierstrassCurve& E);

/// Discriminant alone (no singularity check).
Rational discriminant(const WeierstrassCurve& E);

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t, u != 0.
/// Applying it maps a model of E to another model of the same curve, scaling
/// disc by u^-12 and c4 by u^-4.
struct IsoTransform {
    Rational u{1}, r{0}, s{0}, t{0};

    static IsoTransform identity() { return {}; }
    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
};

WeierstrassCurve apply(const WeierstrassCurve& E, const IsoTransform& T);

/// First T1, then T2.
IsoTransform compose(const IsoTransform& T1, const IsoTransform& T2);
IsoTransform inverse(const IsoTransform& T);

/// Maps an x-coordinate of the source model to the target model of apply().
Rational transform_x(const IsoTransform& T, const Rational& x);

bool is_integral(const WeierstrassCurve& E);

/// Integral model via the u = 1/d substitution; returns model and transform.
std::pair<WeierstrassCurve, IsoTransform> integralize(const WeierstrassCurve& E);

/// Short model (0,0,0,-27c4,-54c6) and the transform reaching it.
std::pair<WeierstrassCurve, IsoTransform> to_short(const WeierstrassCurve& E);

/// Quadratic twist by squarefree s != 0: twists the short model
/// y^2 = x^3 + Ax + B to y^2 = x^3 + A s^2 x + B s^3 and returns that model.
WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, const Integer& s);

/// Global minimal model (reduced: a1, a3 in {0,1}, a2 in {-1,0,1}) and the
/// transform from E to it.  `bad_prime_hints` speeds up the discriminant
/// factorization when the prime support is already known.
std::pair<WeierstrassCurve, IsoTransform> minimal_model(
    const WeierstrassCurve& E,
    const std::vector<Integer>& bad_prime_hints = {});

/// Parses "a1,a2,a3,a4,a6" with entries "p/q" or integers.
WeierstrassCurve parse_curve(const std::string& s);

}  // namespace selmer

#endif
