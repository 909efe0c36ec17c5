// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Internal dense polynomial arithmetic over Z/m with GMP coefficients.
// Shared by the modular factorization and Tate's algorithm; not installed.

#ifndef SELMER_SRC_MODP_HPP
#define SELMER_SRC_MODP_HPP

#include <utility>
#include <vector>

#include "selmer/rational.hpp"

namespace selmer::modp {

using ZPoly = std::vector<Integer>;  // coefficient i multiplies x^i

inline void zp_trim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Integer mod_sym(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

inline ZPoly zp_mod(const ZPoly& a, const Integer& m) {
    ZPoly r = a;
    for (Integer& v : r) {
        v %= m;
        if (v < 0) v += m;
    }
    zp_trim(r);
    return r;
}

inline ZPoly zp_mul(const ZPoly& a, const ZPoly& b, const Integer& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zp_mod(r, m);
}

inline ZPoly zp_sub(const ZPoly& a, const ZPoly& b, const Integer& m) {
    ZPoly r(std::max(a.size(), b.size()), Integer(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return zp_mod(r, m);
}

inline std::pair<ZPoly, ZPoly> zp_divmod(const ZPoly& a, const ZPoly& b, const Integer& m) {
    Integer lead_inv;
    if (!mpz_invert(lead_inv.get_mpz_t(), b.back().get_mpz_t(), m.get_mpz_t()))
        throw invariant_violation("non-invertible leading coefficient in modular division");
    ZPoly rem = zp_mod(a, m);
    int db = zp_deg(b);
    if (zp_deg(rem) < db) return {{}, rem};
    ZPoly quot(static_cast<size_t>(zp_deg(rem) - db) + 1, Integer(0));
    for (int i = zp_deg(rem); i >= db; --i) {
        Integer f = (rem[static_cast<size_t>(i)] * lead_inv) % m;
        if (f == 0) continue;
        quot[static_cast<size_t>(i - db)] = f;
        for (int j = 0; j <= db; ++j) {
            Integer& c = rem[static_cast<size_t>(i - db + j)];
            c = (c - f * b[static_cast<size_t>(j)]) % m;
            if (c < 0) c += m;
        }
    }
    zp_trim(rem);
    zp_trim(quot);
    return {quot, rem};
}

// Monic gcd modulo a prime p.
inline ZPoly zp_gcd(ZPoly a, ZPoly b, const Integer& p) {
    a = zp_mod(a, p);
    b = zp_mod(b, p);
    while (!b.empty()) {
        ZPoly r = zp_divmod(a, b, p).second;
        a = b;
        b = r;
    }
    if (!a.empty()) {
        Integer inv;
        mpz_invert(inv.get_mpz_t(), a.back().get_mpz_t(), p.get_mpz_t());
        for (Integer& v : a) v = (v * inv) % p;
    }
    return a;
}

inline ZPoly zp_powmod(const ZPoly& base, Integer e, const ZPoly& f, const Integer& p) {
    ZPoly r{Integer(1)};
    ZPoly b = zp_divmod(base, f, p).second;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = zp_divmod(zp_mul(r, b, p), f, p).second;
        b = zp_divmod(zp_mul(b, b, p), f, p).second;
        e /= 2;
    }
    return r;
}

inline ZPoly zp_derivative(const ZPoly& a, const Integer& m) {
    if (a.size() <= 1) return {};
    ZPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * static_cast<long>(i)) % m;
    zp_trim(r);
    return r;
}

// Number of roots of f (nonzero mod p) in F_p, counted without multiplicity.
inline int zp_root_count(const ZPoly& f, const Integer& p) {
    ZPoly x{Integer(0), Integer(1)};
    ZPoly xp = zp_powmod(x, p, f, p);
    ZPoly g = zp_gcd(zp_sub(xp, x, p), f, p);
    return zp_deg(g) < 0 ? 0 : zp_deg(g);
}

}  // namespace selmer::modp

#endif
