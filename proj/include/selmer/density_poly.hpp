// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_DENSITY_POLY_HPP
#define SELMER_DENSITY_POLY_HPP

#include <map>
#include <vector>

#include "selmer/rational.hpp"

namespace selmer {

/// Finitely supported Laurent polynomial in k variables with rational
/// coefficients; used as a generating function of class densities, so the
/// coefficients of a full distribution lie in [0,1] and sum to 1.
class DensityPolynomial {
  public:
    explicit DensityPolynomial(int arity) : arity_(arity) {
        if (arity < 1) throw input_error("density polynomial arity must be positive");
    }

    static DensityPolynomial one(int arity);
    static DensityPolynomial monomial(int arity, const std::vector<long>& exps, const Rational& c);

    int arity() const { return arity_; }
    const std::map<std::vector<long>, Rational>& terms() const { return terms_; }

    void add_term(const std::vector<long>& exps, const Rational& c);
    Rational coefficient(const std::vector<long>& exps) const;

    DensityPolynomial operator*(const DensityPolynomial& o) const;
    DensityPolynomial operator+(const DensityPolynomial& o) const;
    bool operator==(const DensityPolynomial& o) const;

    /// Sum of all coefficients (value at the all-ones point).
    Rational total() const;

    /// Marginal over all variables except `axis` (result has arity 1).
    DensityPolynomial marginal(int axis) const;

  private:
    int arity_;
    std::map<std::vector<long>, Rational> terms_;
};

}  // namespace selmer

#endif
