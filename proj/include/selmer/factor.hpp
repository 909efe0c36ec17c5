// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_FACTOR_HPP
#define SELMER_FACTOR_HPP

#include <utility>
#include <vector>

#include "selmer/rational.hpp"

namespace selmer {

/// Signed factorization n = sign * prod p_i^{e_i}, primes strictly increasing.
/// The empty factor list with sign +1/-1 represents 1/-1.
struct Factorization {
    int sign = 1;
    std::vector<std::pair<Integer, long>> factors;

    Integer value() const;
    long exponent_of(const Integer& p) const;
    std::vector<Integer> primes() const;
};

bool is_prime(const Integer& n);

/// Exact deterministic factorization of n != 0.
Factorization factor(const Integer& n);

/// Same, but divides out the hinted primes first.  Useful when most of the
/// prime support of n is already known (twisted discriminants).
Factorization factor_with_hints(const Integer& n, const std::vector<Integer>& hints);

/// Legendre symbol (a/p) for odd prime p.
int legendre(const Integer& a, const Integer& p);

/// Least positive quadratic non-residue mod an odd prime (always itself prime).
Integer least_nonresidue(const Integer& p);

}  // namespace selmer

#endif
