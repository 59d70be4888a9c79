#include <gtest/gtest.h>

#include "bridge.hpp"
#include "oracles.hpp"
#include "swcalc/scenarios.hpp"

using namespace swcalc;
using namespace swcalc::scenarios;

namespace {

/// Genus of a plane curve of degree d whose only singularities are ordinary
/// points of the given multiplicities.
std::int64_t singularPlaneCurveGenus(std::int64_t d, std::int64_t points, std::int64_t mult) {
    return oracle::planeCurveGenus(d) - points * mult * (mult - 1) / 2;
}

/// Adjunction on a surface of positive square q in the reversed disk bundle,
/// where it is a holomorphic curve: 2 g(C) - 2 = C.C + K.C with K.S = 2g - 2 - q.
std::int64_t holomorphicMultipleGenus(std::int64_t t, std::int64_t g, std::int64_t q) {
    std::int64_t twiceMinusTwo = t * t * q + t * (2 * g - 2 - q);
    return twiceMinusTwo / 2 + 1;
}

std::int64_t bruteCrossover(std::int64_t g, std::int64_t s) {
    for (std::int64_t t = 1;; ++t) {
        std::int64_t twice = t * t * s + t * (2 * g - 2 - s);
        if (twice + 2 < 0) return t;
    }
}

}  // namespace

TEST(MLines, GenusAndSquareAgainstPlaneCurveCounts) {
    for (std::int64_t m = 3; m <= 99; m += 2) {
        MLines r = mLinesExample(m);
        std::int64_t ell = m * (m - 1) / 2;
        EXPECT_EQ(r.ell, ell);
        EXPECT_EQ(r.halfGenus, oracle::properTransformGenus((m + 1) / 2)) << m;
        EXPECT_EQ(r.expectedHalfGenus, (m - 1) * (m - 3) / 8);
        EXPECT_EQ(r.halfSquare, (m + 1) * (m + 1) / 4 - ell);
        EXPECT_EQ(r.sphereGenus, singularPlaneCurveGenus(m + 1, ell, 2)) << m;
        EXPECT_EQ(r.sphereGenus, 0);
        EXPECT_EQ(r.result.verdict, Verdict::Pass);
    }
}

TEST(MLines, FiveLinesGiveTenBlowUpsAndATorus) {
    MLines r = mLinesExample(5);
    EXPECT_EQ(r.ell, 10);
    EXPECT_EQ(r.halfGenus, 1);
    EXPECT_EQ(r.halfSquare, -1);
    EXPECT_EQ(r.localDoubleGenus, holomorphicMultipleGenus(2, 1, 1));
}

TEST(MLines, RejectsEvenOrSmallM) {
    EXPECT_THROW(mLinesExample(4), ValidationError);
    EXPECT_THROW(mLinesExample(1), ValidationError);
    EXPECT_THROW(mLinesExample(-3), ValidationError);
}

TEST(ProperTransform, GenusIsUnchangedBySimpleBlowUps) {
    for (std::int64_t d = 1; d <= 12; ++d)
        for (std::int64_t ell = 0; ell <= 40; ell += 3) {
            ProperTransform r = properTransformScenario(d, ell);
            EXPECT_EQ(r.genus, oracle::planeCurveGenus(d));
            EXPECT_EQ(r.square, d * d - ell);
            oracle::Matrix q = bridge::gramOf(r.x);
            oracle::Vec curve = bridge::toVec(r.curve);
            oracle::Vec anti(curve.size(), -1);
            anti[0] = 3;
            EXPECT_EQ(r.pairing, oracle::pair(q, anti, curve));
            EXPECT_EQ(r.result.verdict, Verdict::Pass);
        }
}

TEST(ProperTransform, NegativeSquareTagsGenusMinimizer) {
    ProperTransform r = properTransformScenario(4, 20);
    ASSERT_FALSE(r.result.tags.empty());
    EXPECT_NE(r.result.tags[0].find("negative square"), std::string::npos);
    EXPECT_THROW(properTransformScenario(0, 3), ValidationError);
}

TEST(LocalMinimizer, GenusMatchesAdjunctionInReversedBundle) {
    for (std::int64_t t = 1; t <= 8; ++t)
        for (std::int64_t g = 0; g <= 6; ++g)
            for (std::int64_t s = -9; s <= 9; ++s)
                EXPECT_EQ(localMinimizerGenus(t, g, s), holomorphicMultipleGenus(t, g, s < 0 ? -s : s));
    EXPECT_THROW(localMinimizerGenus(0, 1, -1), ValidationError);
    EXPECT_THROW(localMinimizerGenus(1, -1, -1), ValidationError);
}

TEST(LocalMinimizer, CrossoverIsFirstNegativeBound) {
    for (std::int64_t g = 0; g <= 8; ++g)
        for (std::int64_t s = -7; s <= -1; ++s) EXPECT_EQ(adjunctionCrossover(g, s), bruteCrossover(g, s)) << g << s;
    EXPECT_THROW(adjunctionCrossover(2, 0), DomainError);
}

TEST(LocalMinimizer, ScenarioReportsCrossoverOnlyForNegativeSquare) {
    auto has = [](const ScenarioResult& r, const std::string& key) {
        for (const auto& f : r.facts)
            if (f.description == key) return true;
        return false;
    };
    EXPECT_TRUE(has(localMinimizerScenario(2, 1, -1), "crossover_t"));
    EXPECT_FALSE(has(localMinimizerScenario(2, 1, 3), "crossover_t"));
}

TEST(BranchedCover, NeighbourhoodIsDiskBundleOfEvenEuler) {
    BranchedCover r = branchedCoverNeighborhood(3, 2, 2, 0);
    EXPECT_EQ(r.selfIntersection, -4);
    EXPECT_TRUE(r.manifestlyMinimal);
    ASSERT_TRUE(r.boundary.has_value());
    EXPECT_EQ(r.boundary->irreducibles, !oracle::irreducibleWitnesses(2, 4, 0).empty());
    EXPECT_EQ(r.result.verdict, Verdict::Pass);
    EXPECT_FALSE(branchedCoverNeighborhood(1, 0, 1).manifestlyMinimal);
    EXPECT_THROW(branchedCoverNeighborhood(1, 2, 0), ValidationError);
    EXPECT_THROW(branchedCoverNeighborhood(-1, 2, 1), ValidationError);
}

TEST(SymplecticExample, SurfaceSatisfiesAdjunctionEquality) {
    for (std::int64_t g = 1; g <= 5; ++g) {
        sw::TaubesInput in = symplecticBlowUpExample(g, g - 1);
        oracle::Matrix q = bridge::gramOf(in.x);
        oracle::Vec s = bridge::toVec(in.sigma.pd);
        oracle::Vec k = bridge::toVec(in.canonical);
        EXPECT_EQ(oracle::pair(q, s, s), -1);
        EXPECT_EQ(2 * g - 2, oracle::pair(q, s, s) + oracle::pair(q, k, s));
        EXPECT_TRUE(oracle::characteristic(q, k));
        EXPECT_EQ(in.sigmaPrime.genus, g - 1);
        EXPECT_TRUE(sw::taubesScenario(in).contradiction) << g;
    }
    EXPECT_THROW(symplecticBlowUpExample(0, 0), ValidationError);
    EXPECT_THROW(symplecticBlowUpExample(2, 3), ValidationError);
}
