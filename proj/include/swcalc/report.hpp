#pragma once

#include <string>
#include <utility>
#include <vector>

namespace swcalc {

/// One derived fact: a stable key, its rendered value, and the result it
/// follows from.
struct Fact {
    std::string key;
    std::string value;
    std::string provenance;

    bool operator==(const Fact&) const = default;
};

using Facts = std::vector<Fact>;

namespace provenance {
inline const std::string kDimension = "expected dimension formula";
inline const std::string kCharacteristic = "characteristic class condition";
inline const std::string kTwist = "Spin_C twist by a class";
inline const std::string kBlowUp = "blow-up formula";
inline const std::string kProperTransform = "proper transform under blow-up";
inline const std::string kRelation = "relation for negative self-intersection surfaces";
inline const std::string kReduction = "blow-up reduction of the relation";
inline const std::string kAdjunctionInequality = "adjunction inequality";
inline const std::string kAdjunctionFormula = "adjunction formula";
inline const std::string kType = "simple type and type m";
inline const std::string kChambers = "walls and chambers for b2+ = 1";
inline const std::string kNeckClassification = "boundary moduli on the circle bundle";
inline const std::string kNeckIndex = "kernel and cokernel on the tubular neighbourhood";
inline const std::string kRiemannRoch = "Riemann-Roch on the curve";
inline const std::string kFamiliesIndex = "families index over the Jacobian";
inline const std::string kEulerClass = "Euler class of the obstruction bundle";
inline const std::string kClifford = "Clifford module identities";
inline const std::string kTaubes = "symplectic basic class input";
inline const std::string kMonotonicity = "monotonicity of symplectic basic classes";
inline const std::string kLocalMinimizer = "local minimizer in a disk bundle";
inline const std::string kExamples = "worked examples";
inline const std::string kInput = "input";
inline const std::string kSelfTest = "randomized self-test against independent checks";
}  // namespace provenance

}  // namespace swcalc
