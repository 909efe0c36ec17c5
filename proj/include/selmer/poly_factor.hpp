// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_POLY_FACTOR_HPP
#define SELMER_POLY_FACTOR_HPP

#include <vector>

#include "selmer/poly.hpp"

namespace selmer {

/// All rational roots of f != 0, with multiplicity, sorted ascending.
std::vector<Rational> rational_roots(const Poly& f);

/// All monic irreducible factors of f over Q of the given degree (1, 2 or 3),
/// without multiplicity.  deg f <= 24.  Factorization modulo a good prime,
/// Hensel lifting, and bounded-degree recombination.
std::vector<Poly> factor_poly_small(const Poly& f, int target_degree);

}  // namespace selmer

#endif
