// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_JSON_IO_HPP
#define SELMER_JSON_IO_HPP

#include <json.hpp>

#include "selmer/families.hpp"
#include "selmer/twist_analysis.hpp"

namespace selmer {

// Ordered JSON keeps emission deterministic: identical inputs produce
// identical bytes.  Rationals are exact "p/q" strings ("p" when integral);
// optional "approx" fields are advisory doubles.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Json to_json(const WeierstrassCurve& E);
Json curve_info_json(const WeierstrassCurve& E);
Json to_json(const LocalData& ld);
Json to_json(const Isogeny& phi);
Json to_json(const DensityPolynomial& p);
Json to_json(const SelmerRatio& r);
Json to_json(const RankReport& r);
Json to_json(const std::vector<ShaStatement>& sts);
Json to_json(const EmpiricalResult& r);
Json to_json(const HesseCurve& H);
Json to_json(const Family18Member& mem);
Json to_json(const MultPrimeClassification& cls);

}  // namespace selmer

#endif
