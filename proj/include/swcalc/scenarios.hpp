#pragma once

// Parameterized worked examples built on the other modules: plane curves and
// line arrangements in blown-up projective planes, neighbourhoods of curves
// in branched double covers of Hirzebruch surfaces, local minimizers of
// multiples of a surface, and a concrete instance of the symplectic
// contradiction.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/errors.hpp"
#include "swcalc/manifold.hpp"
#include "swcalc/neck.hpp"
#include "swcalc/numeric.hpp"
#include "swcalc/report.hpp"
#include "swcalc/sw.hpp"

namespace swcalc::scenarios {

using manifold::CohClass;
using manifold::FourManifold;
using manifold::operator+;
using manifold::operator-;
using manifold::operator*;

enum class Verdict { Pass, Fail, NotApplicable };

inline std::string toString(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "unknown";
}

struct DerivedFact {
    std::string description;
    std::string value;
    /// Value the construction is known to produce, when there is one.
    std::optional<std::string> expected;
};

struct ScenarioResult {
    std::string name;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<DerivedFact> facts;
    std::vector<std::string> tags;
    Verdict verdict = Verdict::NotApplicable;

    void add(std::string description, std::string value, std::optional<std::string> expected = std::nullopt) {
        facts.push_back({std::move(description), std::move(value), std::move(expected)});
    }

    /// Fail if any expectation is contradicted, pass if at least one is met.
    void settle() {
        bool any = false;
        for (const auto& f : facts) {
            if (!f.expected) continue;
            any = true;
            if (*f.expected != f.value) {
                verdict = Verdict::Fail;
                return;
            }
        }
        verdict = any ? Verdict::Pass : Verdict::NotApplicable;
    }

    Facts toFacts() const {
        Facts out;
        for (const auto& [k, v] : inputs) out.push_back({name + ".input." + k, v, provenance::kInput});
        for (const auto& f : facts) out.push_back({name + "." + f.description, f.value, provenance::kExamples});
        out.push_back({name + ".verdict", toString(verdict), provenance::kExamples});
        return out;
    }
};

// ---------------------------------------------------------------------------
// Local minimizers of multiples of a surface.

/// Genus of the holomorphic representative of t[S] in the disk bundle of S
/// (with the orientation reversed when S has negative square):
/// 1 + t(g - 1) + t(t - 1)/2 |S.S|.
inline Integer localMinimizerGenus(std::int64_t t, std::int64_t g, std::int64_t selfIntersection) {
    if (t < 1) throw ValidationError("multiplicity t must be at least 1");
    if (g < 0) throw ValidationError("genus must be nonnegative");
    Integer q = selfIntersection < 0 ? -selfIntersection : selfIntersection;
    return 1 + Integer(t) * (g - 1) + Integer(t) * (t - 1) / 2 * q;
}

/// Genus bound for t[S] from the adjunction inequality, for a basic class
/// with which the adjunction formula is sharp on S:
/// 1 + (t^2 S.S + t(2g - 2 - S.S)) / 2.
inline Integer adjunctionGenusBound(std::int64_t t, std::int64_t g, std::int64_t selfIntersection) {
    if (t < 1) throw ValidationError("multiplicity t must be at least 1");
    Integer q(selfIntersection);
    return 1 + (Integer(t) * t * q + Integer(t) * (2 * g - 2 - q)) / 2;
}

/// Least t >= 1 at which the adjunction bound for t[S] is negative. Only
/// defined for negative self-intersection.
inline std::int64_t adjunctionCrossover(std::int64_t g, std::int64_t selfIntersection) {
    if (selfIntersection >= 0) throw DomainError("the adjunction bound only drops for negative self-intersection");
    if (g < 0) throw ValidationError("genus must be nonnegative");
    std::int64_t t = 1;
    while (adjunctionGenusBound(t, g, selfIntersection) >= 0) ++t;
    return t;
}

inline ScenarioResult localMinimizerScenario(std::int64_t t, std::int64_t g, std::int64_t selfIntersection) {
    ScenarioResult r;
    r.name = "local-minimizer";
    r.inputs = {{"t", std::to_string(t)}, {"g", std::to_string(g)}, {"self_intersection", std::to_string(selfIntersection)}};
    r.add("local_minimizer_genus", localMinimizerGenus(t, g, selfIntersection).str());
    r.add("adjunction_bound", adjunctionGenusBound(t, g, selfIntersection).str());
    if (selfIntersection < 0) r.add("crossover_t", std::to_string(adjunctionCrossover(g, selfIntersection)));
    r.settle();
    return r;
}

// ---------------------------------------------------------------------------
// Blown-up projective planes.

/// CP^2 # l (-CP^2) with basis H, E1..El.
inline FourManifold blownUpPlane(std::int64_t ell) {
    if (ell < 0) throw ValidationError("number of blow-ups must be nonnegative");
    std::vector<std::string> names{"H"};
    std::vector<Integer> entries{1};
    for (std::int64_t i = 1; i <= ell; ++i) {
        names.push_back("E" + std::to_string(i));
        entries.push_back(-1);
    }
    return FourManifold({}, manifold::IntersectionLattice::diagonal(std::move(names), entries));
}

/// a H + b (E1 + ... + El).
inline CohClass planeClass(std::int64_t ell, const Integer& a, const Integer& b) {
    CohClass c(static_cast<std::size_t>(ell + 1), b);
    c[0] = a;
    return c;
}

/// K = -3H + E1 + ... + El.
inline CohClass planeCanonical(std::int64_t ell) { return planeClass(ell, -3, 1); }

struct MLines {
    std::int64_t m = 0;
    std::int64_t ell = 0;
    FourManifold x;
    CohClass sphere;
    CohClass half;
    Integer sphereGenus;
    Integer halfGenus;
    Integer halfSquare;
    Integer expectedHalfGenus;
    Integer localDoubleGenus;
    ScenarioResult result;
};

/// The double of S/2 = (m+1)/2 H - sum E_i is the class of a sphere built
/// from m + 1 generic lines with l = m(m-1)/2 nodes blown up.
inline MLines mLinesExample(std::int64_t m) {
    if (m < 3 || m % 2 == 0) throw ValidationError("m must be an odd integer >= 3");
    MLines r;
    r.m = m;
    r.ell = m * (m - 1) / 2;
    r.x = blownUpPlane(r.ell);
    CohClass k = planeCanonical(r.ell);
    r.sphere = planeClass(r.ell, m + 1, -2);
    r.half = planeClass(r.ell, (m + 1) / 2, -1);
    manifold::AdjunctionValue sphere = manifold::adjunctionGenus(r.x, r.sphere, k);
    manifold::AdjunctionValue half = manifold::adjunctionGenus(r.x, r.half, k);
    if (!sphere.integral || !half.integral) throw InternalError("adjunction genus is not an integer");
    r.sphereGenus = numerator(sphere.genus);
    r.halfGenus = numerator(half.genus);
    r.halfSquare = r.x.square(r.half);
    r.expectedHalfGenus = Integer(m - 1) * (m - 3) / 8;
    r.localDoubleGenus = localMinimizerGenus(2, toInt64(r.halfGenus), toInt64(r.halfSquare));

    ScenarioResult& s = r.result;
    s.name = "m-lines";
    s.inputs = {{"m", std::to_string(m)}};
    s.add("ell", std::to_string(r.ell));
    s.add("half_class_square", r.halfSquare.str());
    s.add("half_class_genus", r.halfGenus.str(), r.expectedHalfGenus.str());
    s.add("double_class_genus", r.sphereGenus.str(), "0");
    s.add("local_double_genus", r.localDoubleGenus.str());
    s.add("local_double_exceeds_half_genus", r.localDoubleGenus > r.halfGenus ? "true" : "false");
    s.settle();
    return r;
}

struct ProperTransform {
    std::int64_t degree = 0;
    std::int64_t ell = 0;
    FourManifold x;
    CohClass curve;
    Integer genus;
    Integer square;
    Integer pairing;
    Integer thresholdDeficit;
    bool relationHypothesesHold = false;
    ScenarioResult result;
};

/// Proper transform dH - E1 - ... - El of a smooth degree-d plane curve
/// through l blown-up points, with the anticanonical Spin_C structure.
inline ProperTransform properTransformScenario(std::int64_t d, std::int64_t ell) {
    if (d < 1) throw ValidationError("degree must be at least 1");
    ProperTransform r;
    r.degree = d;
    r.ell = ell;
    r.x = blownUpPlane(ell);
    r.curve = planeClass(ell, d, -1);
    CohClass k = planeCanonical(ell);
    manifold::AdjunctionValue a = manifold::adjunctionGenus(r.x, r.curve, k);
    r.genus = numerator(a.genus);
    r.square = r.x.square(r.curve);
    manifold::SpinC s = manifold::makeSpinC(r.x, -k);
    r.pairing = r.x.pair(s.c1, r.curve);
    Integer n = -r.square;
    r.thresholdDeficit = 2 * r.genus + n - abs(r.pairing);
    r.relationHypothesesHold = n > 0 && r.genus > 0 && r.pairing != 0 && r.thresholdDeficit <= 0 &&
                               manifold::dimension(r.x, s) >= 0;

    ScenarioResult& out = r.result;
    out.name = "proper-transform";
    out.inputs = {{"d", std::to_string(d)}, {"ell", std::to_string(ell)}};
    out.add("genus", r.genus.str(), (Integer(d - 1) * (d - 2) / 2).str());
    out.add("square", r.square.str(), std::to_string(d * d - ell));
    out.add("anticanonical_pairing", r.pairing.str());
    out.add("relation_threshold_deficit", r.thresholdDeficit.str());
    out.add("relation_hypotheses_hold", r.relationHypothesesHold ? "true" : "false");
    out.tags.push_back(r.square < 0 ? "genus-minimizing: symplectic surface of negative square"
                                    : "symplectic surface of nonnegative square");
    out.settle();
    return r;
}

// ---------------------------------------------------------------------------
// Branched double covers of blown-up Hirzebruch surfaces.

struct BranchedCover {
    std::int64_t a = 0;
    std::int64_t g = 0;
    std::int64_t n = 0;
    std::int64_t selfIntersection = 0;
    bool manifestlyMinimal = false;
    neck::NeckData neckData;
    std::optional<neck::BoundaryReport> boundary;
    ScenarioResult result;
};

/// The preimage S of the negative section in X(a, g, n) has genus g and
/// self-intersection -2n; its neighbourhood is the disk bundle of Euler
/// number -2n over a genus-g curve.
inline BranchedCover branchedCoverNeighborhood(std::int64_t a, std::int64_t g, std::int64_t n,
                                               std::optional<std::int64_t> k = std::nullopt) {
    if (a < 0 || g < 0 || n < 0) throw ValidationError("a, g, n must be nonnegative");
    if (n == 0) throw ValidationError("n must be positive so that the curve has negative square");
    BranchedCover r;
    r.a = a;
    r.g = g;
    r.n = n;
    r.selfIntersection = -2 * n;
    r.manifestlyMinimal = g > 0;
    r.neckData = {g, 2 * n, k.value_or(0)};
    if (k) r.boundary = neck::classifyBoundaryModuli(r.neckData);

    ScenarioResult& out = r.result;
    out.name = "branched-cover";
    out.inputs = {{"a", std::to_string(a)}, {"g", std::to_string(g)}, {"n", std::to_string(n)}};
    if (k) out.inputs.emplace_back("k", std::to_string(*k));
    out.add("self_intersection", std::to_string(r.selfIntersection), std::to_string(-2 * n));
    out.add("genus", std::to_string(g), std::to_string(g));
    out.add("manifestly_minimal", r.manifestlyMinimal ? "true" : "false");
    if (r.boundary) {
        out.add("irreducibles", r.boundary->irreducibles ? "true" : "false");
        out.add("obstruction_regime", r.boundary->obstructionRegime ? "true" : "false");
        if (r.boundary->obstructionRank) out.add("obstruction_rank", std::to_string(*r.boundary->obstructionRank));
    }
    out.settle();
    return r;
}

// ---------------------------------------------------------------------------
// A concrete symplectic manifold for the contradiction argument.

/// (S_g x S^2) # (-CP^2) with basis F = [pt x S^2], S = [S_g x pt], E and
/// H_1 generators A1, B1, ..., Ag. The surface is the proper transform S - E
/// (genus g, square -1); the competing surface has the same class and genus
/// `genusPrime`, with H_1 images the first `genusPrime` pairs.
inline sw::TaubesInput symplecticBlowUpExample(std::int64_t g, std::int64_t genusPrime, int seedSign = 1) {
    if (g < 1) throw ValidationError("genus must be at least 1");
    if (genusPrime < 0 || genusPrime > g) throw ValidationError("competing genus must lie in [0, g]");
    std::vector<std::string> h1;
    for (std::int64_t i = 1; i <= g; ++i) {
        h1.push_back("A" + std::to_string(i));
        h1.push_back("B" + std::to_string(i));
    }
    manifold::IntersectionLattice q({"F", "S", "E"}, {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}});
    FourManifold x(h1, q);
    auto surface = [&](std::string name, std::int64_t genus) {
        manifold::EmbeddedSurface s{std::move(name), {0, 1, -1}, genus, {}};
        for (std::int64_t i = 0; i < genus; ++i)
            s.h1.push_back({algebra::IntElement::generator(x.ax, h1[2 * i]),
                            algebra::IntElement::generator(x.ax, h1[2 * i + 1])});
        return s;
    };
    sw::TaubesInput in;
    in.x = x;
    in.canonical = {Integer(2 * g - 2), Integer(-2), Integer(1)};
    in.omega = {Rational(2), Rational(2), Rational(-1)};
    in.sigma = surface("S", g);
    in.sigmaPrime = surface("S'", genusPrime);
    in.seedSign = seedSign;
    return in;
}

}  // namespace swcalc::scenarios
