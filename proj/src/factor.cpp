// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/factor.hpp"

#include <algorithm>
#include <map>

namespace selmer {

Integer Factorization::value() const {
    Integer v = sign;
    for (const auto& [p, e] : factors) v *= pow_integer(p, static_cast<unsigned long>(e));
    return v;
}

long Factorization::exponent_of(const Integer& p) const {
    for (const auto& [q, e] : factors)
        if (q == p) return e;
    return 0;
}

std::vector<Integer> Factorization::primes() const {
    std::vector<Integer> out;
    out.reserve(factors.size());
    for (const auto& [p, e] : factors) out.push_back(p);
    return out;
}

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

namespace {

constexpr unsigned long kTrialBound = 1000000;

// Brent's cycle variant of Pollard rho.  Deterministic: the constant c walks
// 1, 2, 3, ... until a proper factor shows up.
Integer pollard_rho(const Integer& n) {
    for (Integer c = 1;; ++c) {
        Integer x = 2, y = 2, d = 1;
        Integer saved_x;
        unsigned long power = 1, lam = 0;
        while (d == 1) {
            if (lam == power) {
                saved_x = y;
                power *= 2;
                lam = 0;
            }
            y = (y * y + c) % n;
            ++lam;
            Integer diff = saved_x - y;
            if (diff == 0) break;  // cycle without factor; bump c
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != 1 && d != n && d != 0) return d;
    }
}

void factor_into(Integer m, std::map<Integer, long>& out) {
    if (m == 1) return;
    if (is_prime(m)) {
        ++out[m];
        return;
    }
    Integer d = pollard_rho(m);
    factor_into(d, out);
    factor_into(m / d, out);
}

}  // namespace

Factorization factor_with_hints(const Integer& n, const std::vector<Integer>& hints) {
    if (n == 0) throw input_error("factor(0)");
    Factorization f;
    f.sign = (n < 0) ? -1 : 1;
    Integer m = abs(n);
    std::map<Integer, long> found;

    for (const Integer& p : hints) {
        if (p < 2) continue;
        while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
            m /= p;
            ++found[p];
        }
    }

    // Trial division below 10^6, then rho on whatever is left.
    if (m > 1) {
        unsigned long d = 2;
        while (m > 1 && d < kTrialBound) {
            if (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
                Integer p(d);
                do {
                    m /= p;
                    ++found[p];
                } while (mpz_divisible_ui_p(m.get_mpz_t(), d));
            }
            // Once d^2 > m the remainder is prime.
            if (d > 2 && Integer(d) * d > m) break;
            d = (d == 2) ? 3 : d + 2;
        }
        if (m > 1) {
            if (Integer(d) * d > m || is_prime(m)) {
                ++found[m];
            } else {
                factor_into(m, found);
            }
        }
    }

    for (const auto& [p, e] : found) f.factors.emplace_back(p, e);
    return f;
}

Factorization factor(const Integer& n) {
    return factor_with_hints(n, {});
}

int legendre(const Integer& a, const Integer& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

Integer least_nonresidue(const Integer& p) {
    if (p == 2) throw input_error("least_nonresidue needs an odd prime");
    for (Integer a = 2;; ++a) {
        if (legendre(a, p) == -1) return a;
    }
}

}  // namespace selmer
