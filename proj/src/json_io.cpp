// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/json_io.hpp"

#include "selmer/factor.hpp"

namespace selmer {

Json to_json(const Rational& q) { return rational_str(q); }

Json to_json(const WeierstrassCurve& E) {
    Json j;
    j["a"] = Json::array({to_json(E.a1), to_json(E.a2), to_json(E.a3), to_json(E.a4),
                          to_json(E.a6)});
    return j;
}

Json curve_info_json(const WeierstrassCurve& E) {
    Invariants I = invariants(E);
    Json j = to_json(E);
    j["b2"] = to_json(I.b2);
    j["b4"] = to_json(I.b4);
    j["b6"] = to_json(I.b6);
    j["b8"] = to_json(I.b8);
    j["c4"] = to_json(I.c4);
    j["c6"] = to_json(I.c6);
    j["disc"] = to_json(I.disc);
    j["j"] = to_json(I.j);
    return j;
}

namespace {
const char* kind_str(ReductionKind k) {
    switch (k) {
        case ReductionKind::Good: return "good";
        case ReductionKind::SplitMultiplicative: return "split-multiplicative";
        case ReductionKind::NonsplitMultiplicative: return "nonsplit-multiplicative";
        case ReductionKind::Additive: return "additive";
    }
    return "?";
}
}  // namespace

Json to_json(const LocalData& ld) {
    Json j;
    j["p"] = ld.p.get_str();
    j["kodaira"] = ld.kodaira.str();
    j["tamagawa"] = ld.tamagawa;
    j["kind"] = kind_str(ld.kind);
    j["potential"] = ld.potential == PotentialKind::Good ? "good" : "multiplicative";
    j["v_disc_min"] = ld.v_disc_min;
    return j;
}

Json to_json(const Isogeny& phi) {
    Json j;
    j["degree"] = phi.ell;
    j["domain"] = to_json(phi.domain);
    j["codomain"] = to_json(phi.codomain);
    Json kc = Json::array();
    for (const Rational& c : phi.kernel.coeffs()) kc.push_back(to_json(c));
    j["kernel"] = kc;
    j["lambda"] = to_json(phi.lambda);
    j["codomain_j"] = to_json(j_invariant(phi.codomain));
    return j;
}

Json to_json(const DensityPolynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exponents"] = e;
        t["density"] = to_json(c);
        t["approx"] = c.get_d();
        terms.push_back(t);
    }
    Json j;
    j["arity"] = p.arity();
    j["terms"] = terms;
    return j;
}

Json to_json(const SelmerRatio& r) {
    Json j;
    j["ell"] = r.ell;
    j["t"] = r.t;
    j["ratio"] = to_json(r.value());
    Json b = Json::array();
    for (const auto& [v, e] : r.breakdown) {
        Json row;
        row["place"] = v.str();
        row["t"] = e;
        b.push_back(row);
    }
    j["local"] = b;
    return j;
}

Json to_json(const RankReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json jr;
        jr["exponents"] = row.exponents;
        jr["density"] = to_json(row.density);
        jr["avg_rank_bound"] = to_json(row.avg_rank_bound);
        jr["rank0_density_lb"] = to_json(row.rank0_lb);
        jr["selmer_trivial_lb"] = to_json(row.selmer_trivial_lb);
        rows.push_back(jr);
    }
    Json j;
    j["classes"] = rows;
    j["avg_rank_bound"] = to_json(r.avg_rank_bound);
    j["avg_rank_bound_approx"] = r.avg_rank_bound.get_d();
    j["rank0_density_lb"] = to_json(r.rank0_density_lb);
    j["rank0_density_lb_approx"] = r.rank0_density_lb.get_d();
    return j;
}

Json to_json(const std::vector<ShaStatement>& sts) {
    Json out = Json::array();
    for (const ShaStatement& st : sts) {
        Json j;
        j["curve"] = to_json(st.curve);
        j["curve_j"] = to_json(j_invariant(st.curve));
        j["ell"] = st.ell;
        j["min_order_exponent"] = st.min_order_exponent;
        j["density"] = to_json(st.density);
        j["approx"] = st.density.get_d();
        out.push_back(j);
    }
    return out;
}

Json to_json(const EmpiricalResult& r) {
    Json j;
    j["bound"] = r.bound;
    j["total"] = r.total;
    Json ex = Json::array();
    for (const Integer& s : r.excluded) ex.push_back(s.get_str());
    j["excluded"] = ex;
    Json counts = Json::array();
    for (const auto& [e, c] : r.counts) {
        Json row;
        row["exponents"] = e;
        row["count"] = c;
        row["frequency"] = to_json(make_rational(c, r.total));
        row["expected"] = to_json(r.expected.coefficient(e));
        counts.push_back(row);
    }
    j["counts"] = counts;
    j["expected"] = to_json(r.expected);
    j["max_abs_deviation"] = to_json(r.max_abs_deviation);
    j["max_abs_deviation_approx"] = r.max_abs_deviation.get_d();
    j["locality_ok"] = r.locality_ok;
    return j;
}

Json to_json(const HesseCurve& H) {
    Json j;
    j["u"] = H.u.get_str();
    j["v"] = H.v.get_str();
    j["curve"] = curve_info_json(H.curve);
    j["phi1"] = to_json(H.phi1);
    j["phi2"] = to_json(H.phi2);
    j["j_formulas"] = Json{{"j", to_json(hesse_j(H.u, H.v))},
                           {"j_prime", to_json(hesse_j_prime(H.u, H.v))},
                           {"j_double_prime", to_json(hesse_j_double_prime(H.u, H.v))}};
    return j;
}

Json to_json(const Family18Member& mem) {
    Json j;
    j["m"] = mem.m.get_str();
    j["n"] = mem.n.get_str();
    j["e_prime"] = to_json(mem.e_prime);
    j["e"] = to_json(mem.e);
    j["e_double_prime"] = to_json(mem.e_double_prime);
    j["model_prime"] = to_json(mem.model_prime);
    j["model_double_prime"] = to_json(mem.model_double_prime);
    j["phi1"] = to_json(mem.phi1);
    j["phi2"] = to_json(mem.phi2);
    j["is_14a_exception"] = mem.is_14a_exception;
    return j;
}

Json to_json(const MultPrimeClassification& cls) {
    auto plist = [](const std::vector<Integer>& ps) {
        Json a = Json::array();
        for (const Integer& p : ps) a.push_back(p.get_str());
        return a;
    };
    Json j;
    j["s0"] = cls.s0.get_str();
    j["p1"] = plist(cls.p1);
    j["p2"] = plist(cls.p2);
    j["p3"] = plist(cls.p3);
    Json split = Json::array();
    for (const auto& [p, s] : cls.split_at) {
        Json row;
        row["p"] = p.get_str();
        row["split"] = s;
        split.push_back(row);
    }
    j["split"] = split;
    j["omega1_split"] = cls.omega1_split;
    j["omega2_split"] = cls.omega2_split;
    return j;
}

}  // namespace selmer
