// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_RATIONAL_HPP
#define SELMER_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace selmer {

using Integer = mpz_class;
using Rational = mpq_class;

/// Bad user input (malformed coefficients, violated preconditions).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical invariant the library guarantees failed to hold.
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n/d in lowest terms with positive denominator.  d must be nonzero.
Rational make_rational(const Integer& n, const Integer& d);

inline Integer numerator(const Rational& q) { return q.get_num(); }
inline Integer denominator(const Rational& q) { return q.get_den(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// v_p(n) for n != 0.
long valuation(const Integer& n, const Integer& p);

/// v_p(q) = v_p(num) - v_p(den) for q != 0.
long valuation(const Rational& q, const Integer& p);

bool is_perfect_square(const Integer& n);

/// True iff q is the square of a rational (0 counts).
bool is_square(const Rational& q);

Integer pow_integer(const Integer& base, unsigned long e);

/// base^e for possibly negative e; base != 0 when e < 0.
Rational pow_rational(const Rational& base, long e);

/// Exact string form: "p" when the denominator is 1, else "p/q".
std::string rational_str(const Rational& q);

/// Parses "p", "-p", or "p/q".
Rational parse_rational(const std::string& s);

}  // namespace selmer

#endif
