// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_FAMILIES_HPP
#define SELMER_FAMILIES_HPP

#include <optional>
#include <vector>

#include "selmer/isogeny.hpp"

namespace selmer {

/// Plane cubic v(x^3 + y^3 + z^3) = 3u xyz realized as a Weierstrass curve,
/// together with its two independent 3-isogenies.  phi1 is the isogeny whose
/// codomain matches the j(E') formula below, phi2 the j(E'') one.
struct HesseCurve {
    Integer u, v;
    WeierstrassCurve curve;  // global minimal model
    Isogeny phi1, phi2;
};

Rational hesse_j(const Integer& u, const Integer& v);
Rational hesse_j_prime(const Integer& u, const Integer& v);
Rational hesse_j_double_prime(const Integer& u, const Integer& v);

/// Requires gcd(u,v) = 1, u,v nonzero, u != v.
HesseCurve hesse(const Integer& u, const Integer& v);

/// Partition of the (potentially) multiplicative primes of a curve with two
/// independent 3-isogenies by the j-valuation trichotomy, with split flags on
/// the twist by s0.
struct MultPrimeClassification {
    std::vector<Integer> p1, p2, p3;
    std::map<Integer, bool> split_at;  // over p1, p2, p3 members, twist by s0
    long omega1_split = 0;             // split members of p1
    long omega2_split = 0;             // split members of p2
    Integer s0;
};

MultPrimeClassification classify_mult_primes(const Isogeny& phi1, const Isogeny& phi2,
                                             const Integer& s0);

/// min(2*omega1_split, 2*omega2_split - 1) clamped at 0; rejects a twist
/// class that is split at a p3 prime.
long split_prime_sha_bound(const MultPrimeClassification& cls);

/// Member of the 18-isogeny family: curves E' -> E -> E'' with the two
/// 3-isogenies out of the middle curve.
struct Family18Member {
    Integer m, n;
    WeierstrassCurve e_prime, e, e_double_prime;  // minimal models
    WeierstrassCurve model_prime, model_double_prime;  // the raw parametrized models
    Isogeny phi1;  // E -> E'
    Isogeny phi2;  // E -> E''
    bool is_14a_exception = false;
};

/// Requires gcd(m,n) = 1 and nonsingular parameters.
Family18Member family18(const Integer& m, const Integer& n);

/// (case-ii primes >= 5 with v_p(j') = 3v_p(j) = v_p(j''),
///  case-iii primes with 9v_p(j') = 3v_p(j) = v_p(j'')); the member must not
/// be a 14a exception.
std::pair<std::vector<Integer>, std::vector<Integer>> family18_special_primes(
    const Family18Member& mem);

/// Integers u <= bound with at least target_m prime factors in each of u-1
/// and u^2+u+1 (and at most target_m + 9), ascending.  Congruence-seeded
/// beyond the direct-scan range.
std::vector<Integer> search_rigged(long target_m, const Integer& bound);

/// For E with exactly one rational 2-torsion x-coordinate and a rational
/// 3-isogeny: whether disc(E) * disc(E/<2-torsion>) is a rational square.
bool delta_square_test(const WeierstrassCurve& E);

/// j-invariant of the parametrized curves with a rational 2- and 3-isogeny;
/// t must avoid {0, -8, -9}.
Rational x06_j(const Rational& t);

/// Solves x06_j(t) = j when a rational (non-degenerate) solution exists.
std::optional<Rational> x06_parameter(const Rational& j);

}  // namespace selmer

#endif
