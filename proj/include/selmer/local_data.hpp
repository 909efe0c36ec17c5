// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef SELMER_LOCAL_DATA_HPP
#define SELMER_LOCAL_DATA_HPP

#include <string>

#include "selmer/curve.hpp"

namespace selmer {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
enum class PotentialKind { Good, Multiplicative };

struct KodairaType {
    enum Family { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };
    Family family = I0;
    int n = 0;  // component count for In / In*

    bool operator==(const KodairaType& o) const = default;
    /// Serialized form: "I0", "I6", "I1*", "II", "II*", "III", "III*", "IV", "IV*".
    std::string str() const;
};

/// Reduction data of a curve at a finite prime, on the p-minimal model.
struct LocalData {
    Integer p;
    KodairaType kodaira;
    long tamagawa = 1;
    ReductionKind kind = ReductionKind::Good;
    PotentialKind potential = PotentialKind::Good;
    long v_disc_min = 0;
};

/// Full Tate's algorithm at p, including the p = 2, 3 subcases.  The input
/// model need not be minimal or integral.
LocalData tate(const WeierstrassCurve& E, const Integer& p);

/// Tate's algorithm with the composed change of variables from the given
/// integral model to the p-minimal model it ended on.
struct TateResult {
    LocalData local;
    IsoTransform to_minimal;
};
TateResult tate_with_transform(const WeierstrassCurve& E_integral, const Integer& p);

/// Whether the reduced curve's node has rational tangents.  Requires
/// multiplicative reduction at p.
bool is_split(const WeierstrassCurve& E, const Integer& p);

}  // namespace selmer

#endif
