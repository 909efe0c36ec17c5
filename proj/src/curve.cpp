// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/curve.hpp"

#include <sstream>

#include "selmer/factor.hpp"

namespace selmer {

std::string WeierstrassCurve::str() const {
    std::ostringstream os;
    os << "[" << rational_str(a1) << "," << rational_str(a2) << "," << rational_str(a3) << ","
       << rational_str(a4) << "," << rational_str(a6) << "]";
    return os.str();
}

Rational discriminant(const WeierstrassCurve& E) {
    Rational b2 = E.a1 * E.a1 + 4 * E.a2;
    Rational b4 = 2 * E.a4 + E.a1 * E.a3;
    Rational b6 = E.a3 * E.a3 + 4 * E.a6;
    Rational b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 +
                  E.a2 * E.a3 * E.a3 - E.a4 * E.a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Invariants invariants(const WeierstrassCurve& E) {
    Invariants I;
    I.b2 = E.a1 * E.a1 + 4 * E.a2;
    I.b4 = 2 * E.a4 + E.a1 * E.a3;
    I.b6 = E.a3 * E.a3 + 4 * E.a6;
    I.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 -
           E.a4 * E.a4;
    I.c4 = I.b2 * I.b2 - 24 * I.b4;
    I.c6 = -I.b2 * I.b2 * I.b2 + 36 * I.b2 * I.b4 - 216 * I.b6;
    I.disc = -I.b2 * I.b2 * I.b8 - 8 * I.b4 * I.b4 * I.b4 - 27 * I.b6 * I.b6 + 9 * I.b2 * I.b4 * I.b6;
    if (I.disc == 0) throw input_error("singular model: discriminant is zero");
    I.j = I.c4 * I.c4 * I.c4 / I.disc;
    return I;
}

WeierstrassCurve apply(const WeierstrassCurve& E, const IsoTransform& T) {
    if (T.u == 0) throw input_error("transform with u = 0");
    const Rational &u = T.u, &r = T.r, &s = T.s, &t = T.t;
    Rational u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    WeierstrassCurve F;
    F.a1 = (E.a1 + 2 * s) / u;
    F.a2 = (E.a2 - s * E.a1 + 3 * r - s * s) / u2;
    F.a3 = (E.a3 + r * E.a1 + 2 * t) / u3;
    F.a4 = (E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t) / u4;
    F.a6 = (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / u6;
    return F;
}

IsoTransform compose(const IsoTransform& T1, const IsoTransform& T2) {
    IsoTransform T;
    T.u = T1.u * T2.u;
    T.r = T1.u * T1.u * T2.r + T1.r;
    T.s = T1.u * T2.s + T1.s;
    T.t = T1.u * T1.u * T1.u * T2.t + T1.s * T1.u * T1.u * T2.r + T1.t;
    return T;
}

IsoTransform inverse(const IsoTransform& T) {
    IsoTransform R;
    R.u = 1 / T.u;
    R.r = -T.r / (T.u * T.u);
    R.s = -T.s / T.u;
    R.t = (T.r * T.s - T.t) / (T.u * T.u * T.u);
    return R;
}

Rational transform_x(const IsoTransform& T, const Rational& x) {
    return (x - T.r) / (T.u * T.u);
}

bool is_integral(const WeierstrassCurve& E) {
    return is_integer(E.a1) && is_integer(E.a2) && is_integer(E.a3) && is_integer(E.a4) &&
           is_integer(E.a6);
}

std::pair<WeierstrassCurve, IsoTransform> integralize(const WeierstrassCurve& E) {
    Integer d = 1;
    for (const Rational* a : {&E.a1, &E.a2, &E.a3, &E.a4, &E.a6}) {
        Integer l;
        mpz_lcm(l.get_mpz_t(), d.get_mpz_t(), a->get_den().get_mpz_t());
        d = l;
    }
    IsoTransform T{make_rational(1, d), 0, 0, 0};
    return {apply(E, T), T};
}

std::pair<WeierstrassCurve, IsoTransform> to_short(const WeierstrassCurve& E) {
    Invariants I = invariants(E);
    IsoTransform T;
    T.s = -E.a1 / 2;
    T.r = -I.b2 / 12;
    T.t = -(E.a3 + T.r * E.a1) / 2;
    T.u = make_rational(1, 6);
    WeierstrassCurve S = apply(E, T);
    return {S, T};
}

WeierstrassCurve quadratic_twist(const WeierstrassCurve& E, const Integer& s) {
    if (s == 0) throw input_error("twist by zero");
    Integer m = abs(s);
    if (mpz_perfect_square_p(m.get_mpz_t()) && m != 1)
        throw input_error("twist parameter must be squarefree");
    {
        Factorization f = factor(m);
        for (const auto& [p, e] : f.factors)
            if (e > 1) throw input_error("twist parameter must be squarefree");
    }
    WeierstrassCurve S = to_short(E).first;
    WeierstrassCurve T;
    T.a1 = T.a2 = T.a3 = 0;
    T.a4 = S.a4 * Rational(s) * Rational(s);
    T.a6 = S.a6 * Rational(s) * Rational(s) * Rational(s);
    return T;
}

WeierstrassCurve parse_curve(const std::string& s) {
    std::vector<Rational> a;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) a.push_back(parse_rational(cur));
    if (a.size() != 5) throw input_error("curve needs five coefficients a1,a2,a3,a4,a6");
    WeierstrassCurve E{a[0], a[1], a[2], a[3], a[4]};
    if (discriminant(E) == 0) throw input_error("singular curve");
    return E;
}

}  // namespace selmer
