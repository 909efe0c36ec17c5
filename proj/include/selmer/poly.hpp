// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_POLY_HPP
#define SELMER_POLY_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "selmer/rational.hpp"

namespace selmer {

/// Dense univariate polynomial over Q.  Coefficient i multiplies x^i; the
/// highest stored coefficient is nonzero (empty vector = zero polynomial).
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    Poly(std::initializer_list<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly x();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rational& coeff(int i) const;
    Rational leading() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& k) const;

    /// Exact division with remainder over Q; o must be nonzero.
    std::pair<Poly, Poly> divmod(const Poly& o) const;
    Poly operator/(const Poly& o) const;
    Poly operator%(const Poly& o) const;
    bool divides(const Poly& o) const;  // this | o

    Poly derivative() const;
    Rational eval(const Rational& x) const;
    Poly monic() const;
    Poly pow(unsigned long e) const;

    /// p(u2*x + r): maps the root set by x -> (x - r)/u2.
    Poly compose_linear(const Rational& u2, const Rational& r) const;
    /// Monic polynomial whose roots are s times the roots of *this.
    Poly scale_roots(const Rational& s) const;

    std::string str() const;

  private:
    void trim();
    std::vector<Rational> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd, gcd(0,0) = 0

/// Number of distinct real roots (Sturm; applied to the squarefree part).
int count_real_roots(const Poly& f);

/// Sum over real roots a of f (squarefree) of sign(g(a)).
int tarski_query(const Poly& g, const Poly& f);

}  // namespace selmer

#endif
