// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/rational.hpp"

namespace selmer {

Rational make_rational(const Integer& n, const Integer& d) {
    if (d == 0) throw input_error("rational with zero denominator");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

long valuation(const Integer& n, const Integer& p) {
    if (n == 0) throw input_error("valuation of zero");
    Integer m = abs(n);
    long v = 0;
    Integer q, r;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0) break;
        m = q;
        ++v;
    }
    return v;
}

long valuation(const Rational& q, const Integer& p) {
    if (q == 0) throw input_error("valuation of zero");
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

bool is_perfect_square(const Integer& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(const Rational& q) {
    if (q < 0) return false;
    // Lowest terms: num and den must both be squares.
    return is_perfect_square(q.get_num()) && is_perfect_square(q.get_den());
}

Integer pow_integer(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0 && e < 0) throw input_error("negative power of zero");
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r = make_rational(pow_integer(base.get_num(), a), pow_integer(base.get_den(), a));
    if (e < 0) r = 1 / r;
    return r;
}

std::string rational_str(const Rational& q) {
    return q.get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw input_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Integer n(s);
            return Rational(n);
        }
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw input_error("zero denominator in \"" + s + "\"");
        return make_rational(n, d);
    } catch (const std::invalid_argument&) {
        throw input_error("malformed rational \"" + s + "\"");
    }
}

}  // namespace selmer
