// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/poly.hpp"

#include <sstream>

namespace selmer {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }

Poly Poly::x() { return Poly({Rational(0), Rational(1)}); }

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& Poly::coeff(int i) const {
    static const Rational zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
}

Rational Poly::leading() const {
    if (is_zero()) return Rational(0);
    return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& k) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= k;
    return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& o) const {
    if (o.is_zero()) throw input_error("polynomial division by zero");
    std::vector<Rational> rem = c_;
    int dq = degree() - o.degree();
    if (dq < 0) return {Poly(), *this};
    std::vector<Rational> quot(static_cast<size_t>(dq) + 1, Rational(0));
    const Rational lead = o.leading();
    for (int i = degree(); i >= o.degree(); --i) {
        Rational& top = rem[static_cast<size_t>(i)];
        if (top == 0) continue;
        Rational f = top / lead;
        quot[static_cast<size_t>(i - o.degree())] = f;
        for (int j = 0; j <= o.degree(); ++j)
            rem[static_cast<size_t>(i - o.degree() + j)] -= f * o.coeff(j);
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly Poly::operator/(const Poly& o) const { return divmod(o).first; }
Poly Poly::operator%(const Poly& o) const { return divmod(o).second; }

bool Poly::divides(const Poly& o) const {
    if (is_zero()) return o.is_zero();
    return o.divmod(*this).second.is_zero();
}

Poly Poly::derivative() const {
    if (degree() < 1) return Poly();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
    Rational r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return *this * (1 / leading());
}

Poly Poly::pow(unsigned long e) const {
    Poly r = Poly::constant(1);
    Poly b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::compose_linear(const Rational& u2, const Rational& r) const {
    // Horner in (u2*x + r).
    Poly lin({r, u2});
    Poly out;
    for (size_t i = c_.size(); i-- > 0;) out = out * lin + Poly::constant(c_[i]);
    return out;
}

Poly Poly::scale_roots(const Rational& s) const {
    // s^d p(x/s) for monic-degree handling; works for any p.
    std::vector<Rational> r = c_;
    int d = degree();
    for (int i = 0; i <= d; ++i) r[static_cast<size_t>(i)] *= pow_rational(s, d - i);
    return Poly(std::move(r));
}

std::string Poly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& v = coeff(i);
        if (v == 0) continue;
        if (!first) os << (v > 0 ? " + " : " - ");
        else if (v < 0) os << "-";
        Rational a = abs(v);
        if (a != 1 || i == 0) os << rational_str(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly f = a, g = b;
    while (!g.is_zero()) {
        Poly r = f % g;
        f = g;
        g = r;
    }
    return f.is_zero() ? f : f.monic();
}

namespace {

int sign_of(const Rational& q) {
    if (q > 0) return 1;
    if (q < 0) return -1;
    return 0;
}

// Sign variation count of the Sturm-like sequence at +/- infinity.
int variations_at_infinity(const std::vector<Poly>& seq, int dir) {
    int var = 0, prev = 0;
    for (const Poly& p : seq) {
        if (p.is_zero()) continue;
        int s = sign_of(p.leading());
        if (dir < 0 && (p.degree() % 2) == 1) s = -s;
        if (prev != 0 && s != 0 && s != prev) ++var;
        if (s != 0) prev = s;
    }
    return var;
}

std::vector<Poly> signed_remainder_sequence(Poly p0, Poly p1) {
    std::vector<Poly> seq;
    seq.push_back(p0);
    seq.push_back(p1);
    while (!seq.back().is_zero()) {
        const Poly& a = seq[seq.size() - 2];
        const Poly& b = seq.back();
        seq.push_back(-(a % b));
    }
    seq.pop_back();
    return seq;
}

}  // namespace

int count_real_roots(const Poly& f) {
    if (f.is_zero()) throw input_error("count_real_roots(0)");
    if (f.degree() == 0) return 0;
    Poly sf = f / gcd(f, f.derivative());
    auto seq = signed_remainder_sequence(sf, sf.derivative());
    return variations_at_infinity(seq, -1) - variations_at_infinity(seq, +1);
}

int tarski_query(const Poly& g, const Poly& f) {
    if (f.is_zero() || f.degree() == 0) throw input_error("tarski_query needs deg f >= 1");
    auto seq = signed_remainder_sequence(f, f.derivative() * g);
    return variations_at_infinity(seq, -1) - variations_at_infinity(seq, +1);
}

}  // namespace selmer
