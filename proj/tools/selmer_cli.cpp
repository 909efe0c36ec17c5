// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Batch front end: every verb is pure input -> JSON report on stdout.
// Exit codes: 0 success, 2 input error, 3 internal invariant violation.

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "selmer/factor.hpp"
#include "selmer/json_io.hpp"

using namespace selmer;

namespace {

struct Options {
    std::string curve;
    std::string degrees;
    std::string restrict_spec;
    long bound = 0;
    std::string u, v, m, n;
    long target_m = 1;
    bool pretty = false;
};

std::vector<long> parse_degrees(const std::string& s) {
    std::vector<long> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) throw input_error("empty degree");
        out.push_back(std::stol(tok));
    }
    if (out.empty() || out.size() > 2) throw input_error("--degrees takes one or two entries");
    return out;
}

ClassRestriction parse_restriction(const std::string& s) {
    ClassRestriction out;
    if (s.empty()) return out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw input_error("--restrict entries are place:rep");
        std::string place = tok.substr(0, colon);
        std::string rep = tok.substr(colon + 1);
        Place v = (place == "inf") ? Place::inf() : Place::at(Integer(place));
        if (!v.infinite && !is_prime(v.p)) throw input_error("restriction place must be prime");
        Integer r;
        if (rep == "+") r = 1;
        else if (rep == "-") r = -1;
        else r = Integer(rep);
        out[v] = r;
    }
    return out;
}

// Picks one isogeny per requested degree, consuming kernels in sorted order
// so that "3,3" yields the two distinct 3-isogenies.
std::vector<Isogeny> pick_isogenies(const WeierstrassCurve& E, const std::vector<long>& degrees) {
    std::map<long, std::vector<Poly>> kernels;
    std::map<long, size_t> used;
    std::vector<Isogeny> out;
    for (long d : degrees) {
        if (d != 2 && d != 3 && d != 5 && d != 7)
            throw input_error("supported isogeny degrees: 2, 3, 5, 7");
        if (!kernels.count(d)) kernels[d] = rational_kernels(E, d);
        size_t& idx = used[d];
        if (idx >= kernels[d].size())
            throw input_error("curve has no further rational " + std::to_string(d) +
                              "-isogeny");
        out.push_back(velu(minimal_model(E).first, kernels[d][idx], d));
        ++idx;
    }
    return out;
}

Json restriction_json(const ClassRestriction& r) {
    Json out = Json::array();
    for (const auto& [v, rep] : r) {
        Json row;
        row["place"] = v.str();
        row["class"] = rep.get_str();
        out.push_back(row);
    }
    return out;
}

Json ratio_if_constant(const DensityPolynomial& p, long ell) {
    if (p.terms().size() != 1) return nullptr;
    long t = p.terms().begin()->first[0];
    Json j;
    j["t"] = t;
    j["ratio"] = rational_str(pow_rational(Rational(ell), t));
    return j;
}

Json cmd_curve_info(const Options& opt) {
    WeierstrassCurve E = parse_curve(opt.curve);
    auto [M, T] = minimal_model(E);
    Json j;
    j["schema"] = 1;
    j["command"] = "curve-info";
    j["curve"] = curve_info_json(E);
    j["minimal_model"] = curve_info_json(M);
    Json local = Json::array();
    Rational D = discriminant(M);
    for (const Integer& p : factor(D.get_num()).primes()) local.push_back(to_json(tate(M, p)));
    j["local"] = local;
    return j;
}

Json cmd_isogenies(const Options& opt) {
    WeierstrassCurve E = minimal_model(parse_curve(opt.curve)).first;
    std::vector<long> degrees =
        opt.degrees.empty() ? std::vector<long>{2, 3, 5, 7} : parse_degrees(opt.degrees);
    Json j;
    j["schema"] = 1;
    j["command"] = "isogenies";
    j["curve"] = to_json(E);
    Json list = Json::array();
    for (long d : degrees) {
        for (const Poly& k : rational_kernels(E, d)) {
            Isogeny phi = velu(E, k, d);
            Json row = to_json(phi);
            if (d % 2 == 1) row["global_ratio"] = to_json(global_selmer_ratio(phi));
            list.push_back(row);
        }
    }
    j["isogenies"] = list;
    return j;
}

Json cmd_twist_report(const Options& opt, bool sha_only) {
    WeierstrassCurve E = parse_curve(opt.curve);
    if (opt.degrees.empty()) throw input_error("--degrees is required");
    std::vector<long> degrees = parse_degrees(opt.degrees);
    for (long d : degrees)
        if (d % 2 == 0) throw input_error("twist reports need odd degrees");
    ClassRestriction R = parse_restriction(opt.restrict_spec);
    std::vector<Isogeny> phis = pick_isogenies(E, degrees);

    Json j;
    j["schema"] = 1;
    j["command"] = sha_only ? "sha-report" : "twist-report";
    j["curve"] = to_json(minimal_model(E).first);
    if (!R.empty()) j["restrict"] = restriction_json(R);
    Json isoj = Json::array();
    for (const Isogeny& f : phis) isoj.push_back(to_json(f));
    j["isogenies"] = isoj;

    if (!sha_only) {
        Json mj = Json::array();
        for (const Isogeny& f : phis) {
            DensityPolynomial marginal = generating_polynomial(f, R);
            Json row;
            row["degree"] = f.ell;
            row["polynomial"] = to_json(marginal);
            Json rc = ratio_if_constant(marginal, f.ell);
            if (!rc.is_null()) row["restricted_ratio"] = rc;
            mj.push_back(row);
        }
        j["marginals"] = mj;
        if (phis.size() == 2)
            j["joint"] = to_json(joint_generating_polynomial(phis[0], phis[1], R));

        // Rank bounds come from the 3-isogenies only.
        std::vector<size_t> threes;
        for (size_t i = 0; i < phis.size(); ++i)
            if (phis[i].ell == 3) threes.push_back(i);
        if (!threes.empty()) {
            RankReport rr = (threes.size() == 2)
                                ? rank_report(phis[threes[0]], phis[threes[1]], R)
                                : rank_report(phis[threes[0]], R);
            j["rank"] = to_json(rr);
        }
    }

    // Sha statements from each ordered independent pair with a 3-isogeny
    // in the controlling slot.
    std::vector<ShaStatement> all;
    if (phis.size() == 2) {
        auto add = [&](const Isogeny& psi, const Isogeny& phi) {
            if (phi.ell != 3) return;
            if (psi.ell == 3 && psi.kernel == phi.kernel) return;
            for (const ShaStatement& st : sha_report(psi, phi, R)) all.push_back(st);
        };
        add(phis[0], phis[1]);
        add(phis[1], phis[0]);
    }
    j["sha"] = to_json(all);
    return j;
}

Json cmd_hesse(const Options& opt) {
    if (opt.u.empty() || opt.v.empty()) throw input_error("--u and --v are required");
    HesseCurve H = hesse(Integer(opt.u), Integer(opt.v));
    Json j;
    j["schema"] = 1;
    j["command"] = "hesse";
    j["member"] = to_json(H);
    j["classification"] = to_json(classify_mult_primes(H.phi1, H.phi2, Integer(1)));
    return j;
}

Json cmd_family18(const Options& opt) {
    if (opt.m.empty() || opt.n.empty()) throw input_error("--m and --n are required");
    Family18Member mem = family18(Integer(opt.m), Integer(opt.n));
    Json j;
    j["schema"] = 1;
    j["command"] = "family18";
    j["member"] = to_json(mem);
    if (!mem.is_14a_exception) {
        auto [c2, c3] = family18_special_primes(mem);
        Json a = Json::array(), b = Json::array();
        for (const Integer& p : c2) a.push_back(p.get_str());
        for (const Integer& p : c3) b.push_back(p.get_str());
        j["case_ii_primes"] = a;
        j["case_iii_primes"] = b;
    }
    return j;
}

Json cmd_search_rigged(const Options& opt) {
    if (opt.bound <= 0) throw input_error("--bound is required");
    std::vector<Integer> us = search_rigged(opt.target_m, Integer(opt.bound));
    Json j;
    j["schema"] = 1;
    j["command"] = "search-rigged";
    j["target_m"] = opt.target_m;
    j["bound"] = opt.bound;
    Json rows = Json::array();
    for (const Integer& u : us) {
        Json row;
        row["u"] = u.get_str();
        Json f1 = Json::array(), f2 = Json::array();
        for (const auto& [p, e] : factor(u - 1).factors) f1.push_back(p.get_str());
        for (const auto& [p, e] : factor(u * u + u + 1).factors) f2.push_back(p.get_str());
        row["primes_u_minus_1"] = f1;
        row["primes_u2_u_1"] = f2;
        rows.push_back(row);
    }
    j["results"] = rows;
    return j;
}

Json cmd_verify_empirical(const Options& opt) {
    WeierstrassCurve E = parse_curve(opt.curve);
    if (opt.degrees.empty()) throw input_error("--degrees is required");
    if (opt.bound < 1000) throw input_error("--bound must be at least 1000");
    std::vector<Isogeny> phis = pick_isogenies(E, parse_degrees(opt.degrees));
    EmpiricalResult r = empirical_verify(phis, opt.bound);
    Json j;
    j["schema"] = 1;
    j["command"] = "verify-empirical";
    j["curve"] = to_json(minimal_model(E).first);
    j["result"] = to_json(r);
    return j;
}

Json cmd_delta_square(const Options& opt) {
    WeierstrassCurve E = minimal_model(parse_curve(opt.curve)).first;
    Json j;
    j["schema"] = 1;
    j["command"] = "delta-square";
    j["curve"] = to_json(E);
    bool sq = delta_square_test(E);
    Poly k2 = rational_kernels(E, 2)[0];
    Isogeny phi = velu(E, k2, 2);
    j["two_isogeny_codomain"] = to_json(phi.codomain);
    j["disc_product"] = to_json(discriminant(E) * discriminant(phi.codomain));
    j["is_square"] = sq;
    auto t = x06_parameter(j_invariant(E));
    if (t) j["x06_t"] = rational_str(*t);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact local/global Selmer ratios of small-degree isogenies over "
                 "quadratic twist families"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_curve) {
        if (needs_curve)
            sub->add_option("-a", opt.curve, "curve coefficients a1,a2,a3,a4,a6")->required();
        sub->add_flag("--pretty", opt.pretty, "indented JSON");
        sub->add_flag("--json", "compact JSON (default)");
    };

    CLI::App* ci = app.add_subcommand("curve-info", "invariants and local reduction data");
    add_common(ci, true);

    CLI::App* iso = app.add_subcommand("isogenies", "rational isogenies of degree 2,3,5,7");
    add_common(iso, true);
    iso->add_option("--degrees", opt.degrees, "degrees to search (default 2,3,5,7)");

    CLI::App* tr = app.add_subcommand("twist-report", "generating polynomials and rank/Sha bounds");
    add_common(tr, true);
    tr->add_option("--degrees", opt.degrees, "isogeny degrees, e.g. 3,3 or 3,5")->required();
    tr->add_option("--restrict", opt.restrict_spec, "class restriction, e.g. \"2:1,inf:+,5:1\"");

    CLI::App* sr = app.add_subcommand("sha-report", "Tate-Shafarevich lower-bound statements");
    add_common(sr, true);
    sr->add_option("--degrees", opt.degrees, "isogeny degrees")->required();
    sr->add_option("--restrict", opt.restrict_spec, "class restriction");

    CLI::App* he = app.add_subcommand("hesse", "Hesse family member with its two 3-isogenies");
    add_common(he, false);
    he->add_option("--u", opt.u, "parameter u")->required();
    he->add_option("--v", opt.v, "parameter v")->required();

    CLI::App* f18 = app.add_subcommand("family18", "18-isogeny family member");
    add_common(f18, false);
    f18->add_option("--m", opt.m, "parameter m")->required();
    f18->add_option("--n", opt.n, "parameter n")->required();

    CLI::App* rig = app.add_subcommand("search-rigged", "parameters with many split primes");
    add_common(rig, false);
    rig->add_option("--target-m", opt.target_m, "required prime count")->required();
    rig->add_option("--bound", opt.bound, "search bound")->required();

    CLI::App* ve = app.add_subcommand("verify-empirical", "enumerate twists and compare densities");
    add_common(ve, true);
    ve->add_option("--degrees", opt.degrees, "isogeny degrees")->required();
    ve->add_option("--bound", opt.bound, "twist bound N")->required();

    CLI::App* ds = app.add_subcommand("delta-square", "discriminant square test via the 2-isogeny");
    add_common(ds, true);

    CLI11_PARSE(app, argc, argv);

    try {
        Json out;
        if (ci->parsed()) out = cmd_curve_info(opt);
        else if (iso->parsed()) out = cmd_isogenies(opt);
        else if (tr->parsed()) out = cmd_twist_report(opt, false);
        else if (sr->parsed()) out = cmd_twist_report(opt, true);
        else if (he->parsed()) out = cmd_hesse(opt);
        else if (f18->parsed()) out = cmd_family18(opt);
        else if (rig->parsed()) out = cmd_search_rigged(opt);
        else if (ve->parsed()) out = cmd_verify_empirical(opt);
        else if (ds->parsed()) out = cmd_delta_square(opt);
        std::cout << (opt.pretty ? out.dump(2) : out.dump()) << "\n";
        return 0;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
