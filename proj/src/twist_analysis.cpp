// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "selmer/twist_analysis.hpp"

#include <algorithm>
#include <thread>

#include "selmer/factor.hpp"
#include "selmer/poly_factor.hpp"

namespace selmer {

std::vector<SquareClass> class_reps(const Place& v) {
    std::vector<SquareClass> out;
    if (v.infinite) {
        out.push_back({v, Integer(1)});
        out.push_back({v, Integer(-1)});
    } else if (v.p == 2) {
        for (long r : {1, 3, 5, 7, 2, 6, 10, 14}) out.push_back({v, Integer(r)});
    } else {
        Integer u = least_nonresidue(v.p);
        out.push_back({v, Integer(1)});
        out.push_back({v, u});
        out.push_back({v, v.p});
        out.push_back({v, u * v.p});
    }
    return out;
}

Rational class_measure(const SquareClass& c) {
    if (c.place.infinite) return make_rational(1, 2);
    if (c.place.p == 2) return mpz_even_p(c.rep.get_mpz_t()) ? make_rational(1, 12)
                                                             : make_rational(1, 6);
    Integer denom = 2 * c.place.p + 2;
    bool unit = c.rep % c.place.p != 0;
    return unit ? make_rational(c.place.p, denom) : make_rational(1, denom);
}

Integer class_of(const Integer& s, const Place& v) {
    if (s == 0) throw input_error("class of zero");
    if (v.infinite) return s > 0 ? Integer(1) : Integer(-1);
    if (v.p == 2) {
        Integer u = s;
        bool even = mpz_even_p(u.get_mpz_t());
        if (even) u /= 2;
        Integer m = u % 8;
        if (m < 0) m += 8;
        return even ? 2 * m : m;
    }
    Integer u = s;
    bool ram = u % v.p == 0;
    if (ram) u /= v.p;
    bool residue = legendre(u, v.p) == 1;
    Integer rep = residue ? Integer(1) : least_nonresidue(v.p);
    return ram ? rep * v.p : rep;
}

namespace {

long ratio_exponent(const Rational& r, long ell) {
    long e = (r == 1) ? 0 : valuation(r, Integer(ell));
    if (!(pow_rational(Rational(ell), e) == r))
        throw invariant_violation("local Selmer ratio is not a power of ell");
    return e;
}

// Precomputed data for twisting one isogeny repeatedly.
struct TwistContext {
    Isogeny base;
    Rational A, B;        // short model of the domain
    Poly h_short;         // kernel transported to the short model
    std::vector<Integer> hints;
    std::vector<Place> places;
};

TwistContext make_context(const Isogeny& phi) {
    TwistContext ctx;
    ctx.base = phi;
    auto [S, T1] = to_short(phi.domain);
    ctx.A = S.a4;
    ctx.B = S.a6;
    ctx.h_short = phi.kernel.compose_linear(T1.u * T1.u, T1.r).monic();
    Rational D = discriminant(phi.domain);
    ctx.hints = factor(D.get_num() * D.get_den()).primes();
    ctx.hints.push_back(Integer(2));
    ctx.hints.push_back(Integer(3));
    ctx.hints.push_back(Integer(phi.ell));
    ctx.places = relevant_places(phi);
    return ctx;
}

Isogeny twist_in_context(const TwistContext& ctx, const Integer& s,
                         const std::vector<Integer>& s_primes) {
    Rational rs(s);
    WeierstrassCurve Ts{Rational(0), Rational(0), Rational(0), ctx.A * rs * rs,
                        ctx.B * rs * rs * rs};
    std::vector<Integer> hints = ctx.hints;
    hints.insert(hints.end(), s_primes.begin(), s_primes.end());
    auto [Ds, T2] = minimal_model(Ts, hints);
    Poly h = ctx.h_short.scale_roots(rs).compose_linear(T2.u * T2.u, T2.r).monic();
    Isogeny phis = velu(Ds, h, ctx.base.ell, hints, false);
    if (!(j_invariant(phis.codomain) == j_invariant(ctx.base.codomain)))
        throw invariant_violation("twisted isogeny has wrong codomain");
    return phis;
}

std::vector<Integer> squarefree_prime_list(const Integer& s) {
    return factor(abs(s) == 1 ? Integer(1) : abs(s)).primes();
}

}  // namespace

std::map<Integer, long> local_profile(const Isogeny& phi, const Place& v) {
    TwistContext ctx = make_context(phi);
    std::map<Integer, long> out;
    for (const SquareClass& c : class_reps(v)) {
        Isogeny phis = twist_in_context(ctx, c.rep, squarefree_prime_list(c.rep));
        out[c.rep] = ratio_exponent(local_selmer_ratio(phis, v), phi.ell);
    }
    return out;
}

std::map<Integer, std::pair<long, long>> local_joint_profile(const Isogeny& phi1,
                                                             const Isogeny& phi2,
                                                             const Place& v) {
    if (!(phi1.domain == phi2.domain)) throw input_error("isogenies must share a domain");
    TwistContext c1 = make_context(phi1);
    TwistContext c2 = make_context(phi2);
    std::map<Integer, std::pair<long, long>> out;
    for (const SquareClass& c : class_reps(v)) {
        auto ps = squarefree_prime_list(c.rep);
        Isogeny f1 = twist_in_context(c1, c.rep, ps);
        Isogeny f2 = twist_in_context(c2, c.rep, ps);
        out[c.rep] = {ratio_exponent(local_selmer_ratio(f1, v), phi1.ell),
                      ratio_exponent(local_selmer_ratio(f2, v), phi2.ell)};
    }
    return out;
}

namespace {

std::vector<Place> merged_places(const Isogeny& phi1, const Isogeny& phi2) {
    std::vector<Place> a = relevant_places(phi1);
    for (const Place& v : relevant_places(phi2))
        if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
    std::sort(a.begin(), a.end());
    return a;
}

void check_restriction(const ClassRestriction& restrict, const std::vector<Place>& places) {
    for (const auto& [v, rep] : restrict) {
        bool known = false;
        for (const SquareClass& c : class_reps(v))
            if (c.rep == rep) known = true;
        if (!known) throw input_error("unknown class representative at " + v.str());
        (void)places;
    }
}

}  // namespace

DensityPolynomial generating_polynomial(const Isogeny& phi, const ClassRestriction& restrict) {
    if (phi.ell % 2 == 0) throw input_error("generating polynomial needs odd degree");
    std::vector<Place> places = relevant_places(phi);
    check_restriction(restrict, places);
    DensityPolynomial out = DensityPolynomial::one(1);
    for (const Place& v : places) {
        std::map<Integer, long> prof = local_profile(phi, v);
        DensityPolynomial factor_poly(1);
        auto it = restrict.find(v);
        if (it != restrict.end()) {
            factor_poly.add_term({prof.at(it->second)}, Rational(1));
        } else {
            for (const SquareClass& c : class_reps(v))
                factor_poly.add_term({prof.at(c.rep)}, class_measure(c));
        }
        out = out * factor_poly;
    }
    return out;
}

DensityPolynomial joint_generating_polynomial(const Isogeny& phi1, const Isogeny& phi2,
                                              const ClassRestriction& restrict) {
    if (!(phi1.domain == phi2.domain)) throw input_error("isogenies must share a domain");
    std::vector<Place> places = merged_places(phi1, phi2);
    check_restriction(restrict, places);
    DensityPolynomial out = DensityPolynomial::one(2);
    for (const Place& v : places) {
        auto prof = local_joint_profile(phi1, phi2, v);
        DensityPolynomial factor_poly(2);
        auto it = restrict.find(v);
        if (it != restrict.end()) {
            auto [t1, t2] = prof.at(it->second);
            factor_poly.add_term({t1, t2}, Rational(1));
        } else {
            for (const SquareClass& c : class_reps(v)) {
                auto [t1, t2] = prof.at(c.rep);
                factor_poly.add_term({t1, t2}, class_measure(c));
            }
        }
        out = out * factor_poly;
    }
    return out;
}

namespace {

Rational avg_rank_bound_for(long k) {
    return Rational(k) + pow_rational(Rational(3), -k);
}

Rational selmer_trivial_for(long m) {
    Rational q = 1 - pow_rational(Rational(3), m) / 2;
    return q > 0 ? q : Rational(0);
}

RankReport rank_report_from_poly(const DensityPolynomial& poly) {
    RankReport rep;
    rep.avg_rank_bound = 0;
    rep.rank0_density_lb = 0;
    for (const auto& [exps, mu] : poly.terms()) {
        long k = std::abs(exps[0]);
        for (long e : exps) k = std::min(k, std::labs(e));
        RankClassRow row;
        row.exponents = exps;
        row.density = mu;
        row.avg_rank_bound = avg_rank_bound_for(k);
        row.rank0_lb = selmer_trivial_for(k);  // k >= 0: same formula
        row.selmer_trivial_lb = selmer_trivial_for(exps[0]);
        rep.avg_rank_bound += mu * row.avg_rank_bound;
        rep.rank0_density_lb += mu * row.rank0_lb;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace

RankReport rank_report(const Isogeny& phi, const ClassRestriction& restrict) {
    if (phi.ell != 3) throw input_error("rank bounds are licensed for 3-isogenies only");
    return rank_report_from_poly(generating_polynomial(phi, restrict));
}

RankReport rank_report(const Isogeny& phi1, const Isogeny& phi2,
                       const ClassRestriction& restrict) {
    if (phi1.ell != 3 || phi2.ell != 3)
        throw input_error("rank bounds are licensed for 3-isogenies only");
    return rank_report_from_poly(joint_generating_polynomial(phi1, phi2, restrict));
}

std::vector<ShaStatement> sha_report(const Isogeny& psi, const Isogeny& phi,
                                     const ClassRestriction& restrict) {
    if (phi.ell != 3) throw input_error("the rank-control isogeny must have degree 3");
    if (psi.ell % 2 == 0) throw input_error("psi must have odd prime degree");
    if (!(psi.domain == phi.domain)) throw input_error("isogenies must share a domain");
    if (psi.ell == 3 && psi.kernel == phi.kernel)
        throw input_error("isogenies must be independent");

    DensityPolynomial joint = joint_generating_polynomial(psi, phi, restrict);
    std::map<std::pair<std::string, long>, ShaStatement> agg;
    for (const auto& [exps, mu] : joint.terms()) {
        long tpsi = exps[0], n = exps[1];
        long m = std::labs(tpsi);
        if (m <= std::labs(n)) continue;
        Rational mult = selmer_trivial_for(n);
        if (mult == 0) continue;
        ShaStatement st;
        st.curve = tpsi < 0 ? psi.codomain : psi.domain;
        st.ell = psi.ell;
        st.min_order_exponent = m - std::labs(n);
        st.density = mu * mult;
        auto key = std::make_pair(st.curve.str(), st.min_order_exponent);
        auto it = agg.find(key);
        if (it == agg.end())
            agg.emplace(key, st);
        else
            it->second.density += st.density;
    }
    std::vector<ShaStatement> out;
    for (auto& [k, st] : agg) out.push_back(st);
    return out;
}

std::map<Place, Integer> trivializing_classes(const Isogeny& phi1, const Isogeny& phi2) {
    if (phi1.ell != 3 || phi2.ell != 3)
        throw input_error("trivializing classes need two 3-isogenies");
    if (!(phi1.domain == phi2.domain)) throw input_error("isogenies must share a domain");
    std::map<Place, Integer> out;
    for (const Place& v : merged_places(phi1, phi2)) {
        if (v.infinite) continue;
        auto prof = local_joint_profile(phi1, phi2, v);
        bool found = false;
        for (const SquareClass& c : class_reps(v)) {
            auto [t1, t2] = prof.at(c.rep);
            bool ok = (v.p == 3) ? ((t1 == 0 && t2 == 1) || (t1 == 1 && t2 == 0))
                                 : (t1 == 0 && t2 == 0);
            if (ok) {
                out[v] = c.rep;
                found = true;
                break;
            }
        }
        if (!found)
            throw invariant_violation("no trivializing class at " + v.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Empirical enumeration harness.
// ---------------------------------------------------------------------------

namespace {

// squarefree flags and smallest prime factors up to N
struct Sieve {
    std::vector<char> squarefree;
    std::vector<long> spf;
    explicit Sieve(long N) : squarefree(static_cast<size_t>(N) + 1, 1),
                             spf(static_cast<size_t>(N) + 1, 0) {
        for (long d = 2; d * d <= N; ++d) {
            long dd = d * d;
            for (long m = dd; m <= N; m += dd) squarefree[static_cast<size_t>(m)] = 0;
        }
        for (long p = 2; p <= N; ++p) {
            if (spf[static_cast<size_t>(p)] != 0) continue;
            for (long m = p; m <= N; m += p)
                if (spf[static_cast<size_t>(m)] == 0) spf[static_cast<size_t>(m)] = p;
        }
    }
    std::vector<Integer> primes_of(long n) const {
        std::vector<Integer> out;
        while (n > 1) {
            long p = spf[static_cast<size_t>(n)];
            out.emplace_back(p);
            while (n % p == 0) n /= p;
        }
        return out;
    }
};

// Square classes q such that the twist by s has a rational kernel point
// exactly when s*q is a square: s is excluded iff s equals the squarefree
// part of q (with matching sign).
std::vector<Integer> exclusion_twists(const TwistContext& ctx) {
    std::vector<Integer> out;
    auto add_for = [&out](const WeierstrassCurve& curve, const Poly& kernel) {
        auto [S, T1] = to_short(curve);
        Poly hs = kernel.compose_linear(T1.u * T1.u, T1.r).monic();
        Poly f({S.a6, S.a4, Rational(0), Rational(1)});  // y^2 = f(x)
        for (const Rational& x0 : rational_roots(hs)) {
            Rational q = f.eval(x0);
            if (q == 0) continue;
            // squarefree part of q
            Integer n = q.get_num() * q.get_den();
            Factorization fac = factor(n);
            Integer sf = fac.sign;
            for (const auto& [p, e] : fac.factors)
                if (e % 2 == 1) sf *= p;
            out.push_back(sf);
        }
    };
    add_for(ctx.base.domain, ctx.base.kernel);
    Isogeny hat = dual(ctx.base);
    add_for(hat.domain, hat.kernel);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

EmpiricalResult empirical_verify(const std::vector<Isogeny>& phis, long N, int threads) {
    if (phis.empty() || phis.size() > 2) throw input_error("one or two isogenies");
    if (N < 1000) throw input_error("bound must be at least 10^3");
    for (const Isogeny& f : phis)
        if (f.ell % 2 == 0) throw input_error("odd degrees only");
    if (phis.size() == 2 && !(phis[0].domain == phis[1].domain))
        throw input_error("isogenies must share a domain");

    size_t k = phis.size();
    std::vector<TwistContext> ctxs;
    for (const Isogeny& f : phis) ctxs.push_back(make_context(f));

    // Places where exponents can be nonzero, per isogeny.
    std::vector<std::vector<Place>> places;
    for (const TwistContext& c : ctxs) places.push_back(c.places);
    std::vector<Place> all_places = places[0];
    if (k == 2)
        for (const Place& v : places[1])
            if (std::find(all_places.begin(), all_places.end(), v) == all_places.end())
                all_places.push_back(v);
    std::sort(all_places.begin(), all_places.end());

    std::vector<Integer> excluded_classes;
    for (const TwistContext& c : ctxs)
        for (const Integer& e : exclusion_twists(c)) excluded_classes.push_back(e);

    Sieve sieve(N);

    struct ChunkResult {
        std::map<std::vector<long>, long> counts;
        std::vector<Integer> excluded;
        std::map<std::vector<Integer>, std::vector<long>> buckets;
        bool locality_ok = true;
        long total = 0;
    };

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    std::vector<ChunkResult> results(static_cast<size_t>(nthreads));

    auto worker = [&](int id) {
        ChunkResult& res = results[static_cast<size_t>(id)];
        for (long a = 1 + id; a <= N; a += nthreads) {
            if (!sieve.squarefree[static_cast<size_t>(a)]) continue;
            std::vector<Integer> sp = sieve.primes_of(a);
            for (int sign : {1, -1}) {
                Integer s(sign > 0 ? a : -a);
                if (std::find(excluded_classes.begin(), excluded_classes.end(), s) !=
                    excluded_classes.end()) {
                    res.excluded.push_back(s);
                    continue;
                }
                std::vector<long> exps;
                exps.reserve(k);
                for (size_t i = 0; i < k; ++i) {
                    Isogeny fs = twist_in_context(ctxs[i], s, sp);
                    long t = 0;
                    for (const Place& v : places[i])
                        t += ratio_exponent(local_selmer_ratio(fs, v), phis[i].ell);
                    exps.push_back(t);
                }
                ++res.counts[exps];
                ++res.total;
                // locality: the exponent vector must be constant on the class vector
                std::vector<Integer> cv;
                cv.reserve(all_places.size());
                for (const Place& v : all_places) cv.push_back(class_of(s, v));
                auto it = res.buckets.find(cv);
                if (it == res.buckets.end())
                    res.buckets.emplace(cv, exps);
                else if (it->second != exps)
                    res.locality_ok = false;
            }
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
        for (auto& th : pool) th.join();
    }

    EmpiricalResult out;
    out.bound = N;
    out.expected = (k == 1) ? generating_polynomial(phis[0])
                            : joint_generating_polynomial(phis[0], phis[1]);
    std::map<std::vector<Integer>, std::vector<long>> buckets;
    for (const ChunkResult& res : results) {
        out.total += res.total;
        out.locality_ok = out.locality_ok && res.locality_ok;
        for (const Integer& e : res.excluded) out.excluded.push_back(e);
        for (const auto& [exps, c] : res.counts) out.counts[exps] += c;
        for (const auto& [cv, exps] : res.buckets) {
            auto it = buckets.find(cv);
            if (it == buckets.end())
                buckets.emplace(cv, exps);
            else if (it->second != exps)
                out.locality_ok = false;
        }
    }
    std::sort(out.excluded.begin(), out.excluded.end());

    out.max_abs_deviation = 0;
    std::map<std::vector<long>, Rational> freq;
    for (const auto& [exps, c] : out.counts)
        freq[exps] = make_rational(c, out.total);
    for (const auto& [exps, mu] : out.expected.terms()) {
        Rational f = freq.count(exps) ? freq[exps] : Rational(0);
        Rational dev = abs(f - mu);
        if (dev > out.max_abs_deviation) out.max_abs_deviation = dev;
    }
    for (const auto& [exps, f] : freq) {
        if (out.expected.coefficient(exps) == 0 && f > out.max_abs_deviation)
            out.max_abs_deviation = f;
    }
    return out;
}

}  // namespace selmer
