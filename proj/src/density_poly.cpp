// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/density_poly.hpp"

namespace selmer {

DensityPolynomial DensityPolynomial::one(int arity) {
    DensityPolynomial p(arity);
    p.add_term(std::vector<long>(static_cast<size_t>(arity), 0), Rational(1));
    return p;
}

DensityPolynomial DensityPolynomial::monomial(int arity, const std::vector<long>& exps,
                                              const Rational& c) {
    DensityPolynomial p(arity);
    p.add_term(exps, c);
    return p;
}

void DensityPolynomial::add_term(const std::vector<long>& exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != arity_)
        throw input_error("exponent tuple arity mismatch");
    if (c == 0) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
        terms_.emplace(exps, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational DensityPolynomial::coefficient(const std::vector<long>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
}

DensityPolynomial DensityPolynomial::operator*(const DensityPolynomial& o) const {
    if (arity_ != o.arity_) throw input_error("density polynomial arity mismatch");
    DensityPolynomial r(arity_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            std::vector<long> e(ea);
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

DensityPolynomial DensityPolynomial::operator+(const DensityPolynomial& o) const {
    if (arity_ != o.arity_) throw input_error("density polynomial arity mismatch");
    DensityPolynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

bool DensityPolynomial::operator==(const DensityPolynomial& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
}

Rational DensityPolynomial::total() const {
    Rational t(0);
    for (const auto& [e, c] : terms_) t += c;
    return t;
}

DensityPolynomial DensityPolynomial::marginal(int axis) const {
    if (axis < 0 || axis >= arity_) throw input_error("marginal axis out of range");
    DensityPolynomial r(1);
    for (const auto& [e, c] : terms_) r.add_term({e[static_cast<size_t>(axis)]}, c);
    return r;
}

}  // namespace selmer
