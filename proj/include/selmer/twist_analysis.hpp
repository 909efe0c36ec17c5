// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_TWIST_ANALYSIS_HPP
#define SELMER_TWIST_ANALYSIS_HPP

#include <map>
#include <optional>
#include <vector>

#include "selmer/density_poly.hpp"
#include "selmer/isogeny.hpp"

namespace selmer {

/// A local square class, named by its canonical integer representative:
///   infinite place: +1, -1
///   p = 2:          1, 3, 5, 7, 2, 6, 10, 14
///   odd p:          1, u, p, u*p  with u the least positive non-residue.
struct SquareClass {
    Place place;
    Integer rep;

    bool operator<(const SquareClass& o) const {
        if (!(place == o.place)) return place < o.place;
        return rep < o.rep;
    }
};

std::vector<SquareClass> class_reps(const Place& v);

/// Natural density of squarefree integers in the class: 1/2 per sign at the
/// real place; 1/6 (odd) and 1/12 (even) classes at 2; p/(2p+2) unit and
/// 1/(2p+2) ramified classes at odd p.
Rational class_measure(const SquareClass& c);

/// Canonical representative of the class of squarefree s at the place.
Integer class_of(const Integer& s, const Place& v);

/// Restriction of the twist family to fixed classes at some places.
using ClassRestriction = std::map<Place, Integer>;

/// Exponent t_v(phi_s) of the local Selmer ratio on each class at v.
std::map<Integer, long> local_profile(const Isogeny& phi, const Place& v);

/// Joint exponents for two isogenies sharing a domain.
std::map<Integer, std::pair<long, long>> local_joint_profile(const Isogeny& phi1,
                                                             const Isogeny& phi2,
                                                             const Place& v);

/// Sum over m of mu(T_m(phi)) x^m: the product over the relevant places of
/// the per-class measure sums.  Restricted places contribute their single
/// class with conditional measure 1.
DensityPolynomial generating_polynomial(const Isogeny& phi,
                                        const ClassRestriction& restrict = {});

/// Sum over (m, n) of mu(T_m(phi1) cap T_n(phi2)) x^m y^n.
DensityPolynomial joint_generating_polynomial(const Isogeny& phi1, const Isogeny& phi2,
                                              const ClassRestriction& restrict = {});

struct RankClassRow {
    std::vector<long> exponents;
    Rational density;
    Rational avg_rank_bound;       // min(|m|,|n|) + 3^-min(|m|,|n|)
    Rational rank0_lb;             // max(0, 1 - 3^min(|m|,|n|)/2)
    Rational selmer_trivial_lb;    // max(0, 1 - 3^m/2), first isogeny, signed m
};

struct RankReport {
    std::vector<RankClassRow> rows;
    Rational avg_rank_bound;
    Rational rank0_density_lb;
};

/// Rank bounds from the average-Selmer-size oracle; licensed for degree-3
/// isogenies only.
RankReport rank_report(const Isogeny& phi, const ClassRestriction& restrict = {});
RankReport rank_report(const Isogeny& phi1, const Isogeny& phi2,
                       const ClassRestriction& restrict = {});

/// One lower-bound statement about ell-torsion in a Tate-Shafarevich group
/// over a sub-density of the twist family.
struct ShaStatement {
    WeierstrassCurve curve;
    long ell = 0;
    long min_order_exponent = 0;  // |Sha[ell]| >= ell^min_order_exponent
    Rational density;
};

/// Statements produced by the independent pair (psi of degree ell, phi of
/// degree 3): joint classes with c(psi_s) = ell^{-m}, c(phi_s) = 3^n and
/// m > |n| put |Sha[ell]| >= ell^{m-|n|} on the codomain of psi (domain when
/// the psi-exponent is +m), on a sub-density density*(1 - 3^n/2).
std::vector<ShaStatement> sha_report(const Isogeny& psi, const Isogeny& phi,
                                     const ClassRestriction& restrict = {});

/// For each finite relevant place: a class with both local ratios 1 when
/// p != 3, and with ratio set {1, 3} at p = 3.  Absence is an invariant
/// violation.
std::map<Place, Integer> trivializing_classes(const Isogeny& phi1, const Isogeny& phi2);

struct EmpiricalResult {
    long bound = 0;
    long total = 0;                       // squarefree twists counted
    std::vector<Integer> excluded;        // twists with kernel torsion, flagged
    std::map<std::vector<long>, long> counts;
    DensityPolynomial expected{1};
    Rational max_abs_deviation;           // vs expected coefficients
    bool locality_ok = true;              // class-vector bucketing consistency
};

/// Enumerates squarefree s with 0 < |s| <= N, computes the exact exponent
/// vector per twist, and compares frequencies with the generating
/// polynomial.  One or two isogenies.
EmpiricalResult empirical_verify(const std::vector<Isogeny>& phis, long N, int threads = 0);

}  // namespace selmer

#endif
