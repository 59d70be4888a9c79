#include <random>
#include <set>

#include <gtest/gtest.h>

#include "bridge.hpp"
#include "oracles.hpp"
#include "swcalc/scenarios.hpp"
#include "swcalc/selftest.hpp"
#include "swcalc/sw.hpp"

using namespace swcalc;
using namespace swcalc::sw;
using algebra::IntElement;
using algebra::Monomial;
using manifold::CohClass;
using manifold::EmbeddedSurface;
using manifold::FourManifold;
using manifold::IntersectionLattice;
using manifold::SpinC;

namespace {

/// Three hyperbolic planes and a <-1> summand, b1 = 2: b2+ = 3, no chambers.
FourManifold threeHyperbolic() {
    std::vector<std::vector<Integer>> q(7, std::vector<Integer>(7, 0));
    for (int i = 0; i < 3; ++i) q[2 * i][2 * i + 1] = q[2 * i + 1][2 * i] = 1;
    q[6][6] = -1;
    return FourManifold({"A1", "B1"}, IntersectionLattice({"x1", "y1", "x2", "y2", "x3", "y3", "e"}, q));
}

EmbeddedSurface torus(const FourManifold& x) {
    return {"T", {1, -1, 0, 0, 0, 0, 0}, 1,
            {{IntElement::generator(x.ax, "A1"), IntElement::generator(x.ax, "B1")}}};
}

Monomial uPower(const FourManifold& x, std::uint32_t e) {
    Monomial m = x.ax->unit();
    m[0] = e;
    return m;
}

/// prod (U + eps' A_i B_i) U^m in the oracle representation, eps' = -orientation.
oracle::Graded factorOracle(const FourManifold& x, int orientation, std::size_t pairs, std::uint32_t m) {
    auto odd = bridge::parities(*x.ax);
    oracle::Graded f = oracle::monomial(odd, uPower(x, m));
    for (std::size_t i = 0; i < pairs; ++i) {
        Monomial ab = x.ax->unit();
        ab[1 + 2 * i] = ab[2 + 2 * i] = 1;
        f = oracle::mul(f, oracle::add(oracle::monomial(odd, uPower(x, 1)), oracle::monomial(odd, ab), -orientation));
    }
    return f;
}

}  // namespace

TEST(SWTable, ChamberRequiredExactlyWhenB2PlusIsOne) {
    FourManifold hyp({}, IntersectionLattice({"x", "y"}, {{0, 1}, {1, 0}}));
    EXPECT_THROW(SWTable{hyp}, ValidationError);
    EXPECT_NO_THROW((SWTable{hyp, ChamberPoint{{1, 1}, 1}}));
    EXPECT_THROW((SWTable{hyp, ChamberPoint{{1, -1}, 1}}), ValidationError);
    EXPECT_THROW((SWTable{threeHyperbolic(), ChamberPoint{{1, 1, 0, 0, 0, 0, 0}, 1}}), ValidationError);
}

TEST(SWTable, RecordsEvaluatesAndDetectsInconsistency) {
    FourManifold x = threeHyperbolic();
    SWTable t(x);
    SpinC s = manifold::makeSpinC(x, {0, -4, 2, 2, 2, 2, 1});
    ASSERT_EQ(manifold::dimension(x, s), 2);
    IntElement u = IntElement::generator(x.ax, "U");
    IntElement ab = IntElement::product(x.ax, {"A1", "B1"});
    t.record(s, u, 3);
    t.record(s, ab, 5);
    EXPECT_EQ(t.evaluate(s, u + ab), Rational(8));
    EXPECT_EQ(t.evaluate(s, Integer(2) * u - ab), Rational(1));
    EXPECT_FALSE(t.evaluate(s, IntElement::product(x.ax, {"A1"})).has_value() &&
                 *t.evaluate(s, IntElement::product(x.ax, {"A1"})) != 0);
    EXPECT_NO_THROW(t.record(s, u + ab, 8));
    EXPECT_THROW(t.record(s, u + ab, 9), InconsistencyError);
    EXPECT_TRUE(t.isBasicClass(s.c1));
    SpinC negative = manifold::makeSpinC(x, {0, 0, 0, 0, 0, 0, 1});
    EXPECT_LT(manifold::dimension(x, negative), 0);
    EXPECT_EQ(t.evaluate(negative, IntElement::one(x.ax)), Rational(0));
}

TEST(SWTable, RejectsForeignRingAndNonCharacteristic) {
    FourManifold x = threeHyperbolic();
    SWTable t(x);
    FourManifold y({"C"}, IntersectionLattice({"h"}, {{1}}));
    SpinC s{{0, -4, 2, 2, 2, 2, 1}};
    EXPECT_THROW(t.record(s, IntElement::one(y.ax), 1), RingMismatch);
    EXPECT_THROW(t.record(SpinC{{1, 0, 0, 0, 0, 0, 1}}, IntElement::one(x.ax), 1), ValidationError);
}

TEST(Relation, DerivedEquationsMatchOracleFactor) {
    FourManifold x = threeHyperbolic();
    EmbeddedSurface sigma = torus(x);
    SpinC s = manifold::makeSpinC(x, {0, -6, 2, 2, 2, 2, 1});
    SWTable t(x);
    IntElement u = IntElement::generator(x.ax, "U");
    IntElement ab = IntElement::product(x.ax, {"A1", "B1"});
    t.record(s, u, 3);
    t.record(s, ab, -2);
    RelationResult r = applyRelation(t, s, sigma);

    oracle::Matrix q = bridge::gramOf(x);
    oracle::Vec c1 = bridge::toVec(s.c1), pd = bridge::toVec(sigma.pd);
    std::int64_t k = oracle::pair(q, c1, pd), n = -oracle::pair(q, pd, pd);
    int eps = k > 0 ? 1 : -1;
    std::int64_t m = (std::abs(k) - 2 * sigma.genus - n) / 2;
    oracle::Vec target = c1;
    for (std::size_t i = 0; i < target.size(); ++i) target[i] += 2 * eps * pd[i];

    EXPECT_EQ(r.certificate.epsilon, eps);
    EXPECT_EQ(r.certificate.m, m);
    EXPECT_EQ(bridge::toVec(r.certificate.sTarget.c1), target);
    EXPECT_EQ(r.certificate.dimensionTarget, *oracle::swDimension(q, 2, target));
    EXPECT_EQ(r.certificate.dimensionTarget - r.certificate.dimensionSource, 2 * sigma.genus + 2 * m);

    IntElement factor = bridge::fromGraded(x.ax, factorOracle(x, eps, 1, static_cast<std::uint32_t>(m)));
    EXPECT_EQ(r.table.evaluate(r.certificate.sTarget, factor * u), Rational(3));
    EXPECT_EQ(r.table.evaluate(r.certificate.sTarget, factor * ab), Rational(-2));
    EXPECT_EQ(r.certificate.derivedEquations.size(), 2u);
}

TEST(Relation, NamedHypothesisFailures) {
    FourManifold x = threeHyperbolic();
    EmbeddedSurface sigma = torus(x);
    SWTable t(x);
    auto failing = [&](const SpinC& s, const EmbeddedSurface& e, RelationOptions o = {}) -> std::string {
        try {
            applyRelation(t, s, e, o);
        } catch (const HypothesisError& err) {
            return err.hypothesis();
        }
        return "";
    };
    EXPECT_EQ(failing(SpinC{{0, -2, 2, 2, 2, 2, 1}}, sigma), hypothesis::kThreshold);
    EmbeddedSurface sphere{"P", sigma.pd, 0, {}};
    EXPECT_EQ(failing(SpinC{{0, -6, 2, 2, 2, 2, 1}}, sphere), hypothesis::kGenus);
    EXPECT_NO_THROW(applyRelation(t, SpinC{{0, -6, 2, 2, 2, 2, 1}}, sphere, {true}));
    EmbeddedSurface positive{"Q", {1, 1, 0, 0, 0, 0, 0}, 1, sigma.h1};
    EXPECT_EQ(failing(SpinC{{0, -6, 2, 2, 2, 2, 1}}, positive), hypothesis::kNegativeSquare);
    EXPECT_EQ(failing(SpinC{{0, -6, 0, 0, 0, 0, 1}}, sigma), hypothesis::kDimension);
}

TEST(Relation, SurfaceNeedsGPairsOfH1Images) {
    FourManifold x = threeHyperbolic();
    EmbeddedSurface bad{"T", {1, -1, 0, 0, 0, 0, 0}, 2, torus(x).h1};
    EXPECT_THROW(checkSurface(x, bad), ValidationError);
}

TEST(Relation, ChamberHypothesesWhenB2PlusIsOne) {
    FourManifold x({"A1", "B1"}, IntersectionLattice({"F", "S", "E"}, {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}));
    EmbeddedSurface sphere{"S", {0, 1, -1}, 0, {}};
    SpinC s = manifold::makeSpinC(x, {0, 2, -1});
    ASSERT_EQ(manifold::dimension(x, s), 0);
    RelationOptions sphereOk{true};
    SWTable tilted(x, ChamberPoint{{2, 2, -1}, -10});
    auto checks = relationHypotheses(tilted, s, sphere, sphereOk);
    bool perpendicularFails = false;
    for (const auto& c : checks)
        if (c.name == hypothesis::kPerpendicular) perpendicularFails = !c.holds;
    EXPECT_TRUE(perpendicularFails);
    EXPECT_THROW(applyRelation(tilted, s, sphere, sphereOk), HypothesisError);
    SWTable perp(x, ChamberPoint{{2, 3, -2}, -10});
    EXPECT_NO_THROW(applyRelation(perp, s, sphere, sphereOk));
    SWTable onWall(x, ChamberPoint{{2, 3, -2}, -2});
    EXPECT_THROW(applyRelation(onWall, s, sphere, sphereOk), HypothesisError);
}

TEST(BlowUpFormula, LiftThenBlowDownIsIdentity) {
    FourManifold x = threeHyperbolic();
    SWTable t(x);
    SpinC s = manifold::makeSpinC(x, {0, -4, 2, 2, 2, 2, 1});
    t.record(s, IntElement::generator(x.ax, "U"), 7);
    manifold::BlowUp b = manifold::blowUp(x);
    SWTable lifted = liftTable(t, b);
    for (int sgn : {1, -1}) {
        CohClass hat = manifold::extend(s.c1, b.manifold.rank());
        hat.back() = sgn;
        BlowDownResult down = blowUpFormula(lifted, SpinC{hat});
        EXPECT_EQ(down.m, 0);
        EXPECT_EQ(down.s.c1, s.c1);
        EXPECT_EQ(down.table.evaluate(s, IntElement::generator(x.ax, "U")), Rational(7));
    }
}

TEST(BlowUpFormula, ThreeTimesExceptionalShiftsByU) {
    FourManifold x = threeHyperbolic();
    manifold::BlowUp b = manifold::blowUp(x);
    CohClass c1{0, -4, 2, 2, 2, 2, 1};
    CohClass hat = manifold::extend(c1, b.manifold.rank());
    hat.back() = 3;
    oracle::Matrix qhat = bridge::gramOf(b.manifold), q = bridge::gramOf(x);
    std::int64_t dHat = *oracle::swDimension(qhat, 2, bridge::toVec(hat));
    std::int64_t d = *oracle::swDimension(q, 2, bridge::toVec(c1));
    ASSERT_EQ(dHat, 0);
    SWTable t(b.manifold);
    t.record(SpinC{hat}, IntElement::one(b.manifold.ax), -1);
    BlowDownResult down = blowUpFormula(t, SpinC{hat});
    EXPECT_EQ(down.m, (d - dHat) / 2);
    IntElement um = algebra::power(IntElement::generator(x.ax, "U"), static_cast<unsigned>((d - dHat) / 2));
    EXPECT_EQ(down.table.evaluate(SpinC{c1}, um), Rational(-1));
}

TEST(BlowUpFormula, NamedFailures) {
    FourManifold x = threeHyperbolic();
    manifold::BlowUp b = manifold::blowUp(x);
    SWTable t(b.manifold);
    CohClass even = manifold::extend(CohClass{0, -4, 2, 2, 0, 0, 1}, b.manifold.rank());
    even.back() = 2;
    EXPECT_THROW(blowUpFormula(t, SpinC{even}), ValidationError);
    FourManifold hyp({}, IntersectionLattice({"x", "y"}, {{0, 1}, {1, 0}}));
    EXPECT_THROW(blowDownManifold(hyp), HypothesisError);
}

TEST(Reduction, IdentitiesHoldAndMatchOracleOnRandomInstances) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        selftest::ReductionInstance inst = selftest::randomReductionInstance(rng);
        ReductionPlan plan = reductionPlan(inst.x, inst.s, inst.sigma);
        for (const auto& id : plan.identities) ASSERT_TRUE(id.holds) << id.name;
        oracle::Matrix qhat = bridge::gramOf(plan.hat), q = bridge::gramOf(inst.x);
        oracle::Vec shat = bridge::toVec(plan.sHat.c1), sighat = bridge::toVec(plan.sigmaHat.pd);
        std::int64_t ell = toInt64(plan.ell), m = toInt64(plan.m);
        EXPECT_EQ(oracle::pair(qhat, sighat, sighat), -inst.n - ell - m);
        EXPECT_EQ(oracle::pair(qhat, shat, sighat), -2 * inst.g - inst.n - ell - m);
        EXPECT_EQ(oracle::swDimension(qhat, 2 * inst.g, shat),
                  oracle::swDimension(q, 2 * inst.g, bridge::toVec(inst.s.c1)));
    }
}

TEST(Reduction, AgreesWithDirectRelation) {
    FourManifold x = threeHyperbolic();
    EmbeddedSurface sigma = torus(x);
    SpinC s = manifold::makeSpinC(x, {0, -8, 2, 2, 2, 2, 1});
    SWTable t(x);
    t.record(s, IntElement::generator(x.ax, "U"), 4);
    RelationResult direct = applyRelation(t, s, sigma);
    RelationResult reduced = relateByReduction(t, s, sigma);
    EXPECT_EQ(direct.certificate.sTarget.c1, reduced.certificate.sTarget.c1);
    EXPECT_EQ(direct.certificate.m, reduced.certificate.m);
    IntElement factor = bridge::fromGraded(
        x.ax, factorOracle(x, direct.certificate.epsilon, 1, static_cast<std::uint32_t>(toInt64(direct.certificate.m))));
    IntElement probe = factor * IntElement::generator(x.ax, "U");
    EXPECT_EQ(direct.table.evaluate(direct.certificate.sTarget, probe), Rational(4));
    EXPECT_EQ(reduced.table.evaluate(reduced.certificate.sTarget, probe), Rational(4));
}

TEST(Chambers, WallsCoincideAndTwoCommonChambersBySampling) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        selftest::ChamberInstance inst = selftest::randomChamberInstance(rng);
        oracle::Matrix q = bridge::gramOf(inst.x);
        oracle::Vec pd = bridge::toVec(inst.sigma.pd), c1 = bridge::toVec(inst.s.c1);
        oracle::Vec other = c1;
        for (std::size_t i = 0; i < 2; ++i) other[i] += 2 * inst.epsilon * pd[i];
        auto seen = oracle::sampledCommonChambers(q, pd, c1, other);
        EXPECT_TRUE(wallsCoincideOnPerp(inst.x, inst.s.c1, manifold::CohClass(other.begin(), other.end()), inst.sigma));
        EXPECT_EQ(perpendicularCommonChambers(inst.x, inst.s.c1, manifold::CohClass(other.begin(), other.end()),
                                              inst.sigma),
                  static_cast<int>(seen.size()));
        EXPECT_EQ(seen.size(), 2u);
    }
}

TEST(Chambers, DistinctWallsOffThePerpendicularSlice) {
    FourManifold x({}, IntersectionLattice({"F", "S", "E"}, {{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}));
    EmbeddedSurface sigma{"S", {0, 1, -1}, 0, {}};
    CohClass c1{-2, 2, -1};
    CohClass other{-2, 0, 1};
    EXPECT_FALSE(wallsCoincideOnPerp(x, c1, {0, 2, 1}, sigma));
    EXPECT_TRUE(wallsCoincideOnPerp(x, c1, other, sigma));
    ChamberReport r = chamberAnalysis(x, {SpinC{c1}}, sigma, ChamberPoint{{2, 3, -2}, -5});
    EXPECT_TRUE(r.perpendicular);
    EXPECT_EQ(r.classes[0].side, -1);
    EXPECT_EQ(r.classes[0].sideMinus, -1);
    EXPECT_THROW(chamberAnalysis(x, {SpinC{c1}}, sigma, ChamberPoint{{2, 3, -2}, 4}), DomainError);
}

TEST(Taubes, ContradictionWhenCompetingGenusDropsByOne) {
    for (std::int64_t g = 1; g <= 4; ++g)
        for (int seed : {1, -1}) {
            TaubesVerdict v = taubesScenario(scenarios::symplecticBlowUpExample(g, g - 1, seed));
            ASSERT_TRUE(v.derivedValue.has_value());
            EXPECT_EQ(*v.derivedValue, Rational(seed));
            EXPECT_TRUE(v.contradiction);
            EXPECT_EQ(v.deficit, 0);
            EXPECT_EQ(v.genusZeroRoute, g == 1);
            CohClass expect = v.s0.c1 - Integer(2) * CohClass{0, 1, -1};
            EXPECT_EQ(v.target->c1, expect);
            EXPECT_LT(*v.omegaDotC1After, v.omegaDotC1Before);
        }
}

TEST(Taubes, EqualGenusMissesThresholdByTwo) {
    for (std::int64_t g = 1; g <= 4; ++g) {
        TaubesVerdict v = taubesScenario(scenarios::symplecticBlowUpExample(g, g));
        EXPECT_FALSE(v.contradiction);
        EXPECT_EQ(v.deficit, 2);
        EXPECT_FALSE(v.derivedValue.has_value());
    }
}

TEST(Taubes, RejectsNonSymplecticInput) {
    TaubesInput in = scenarios::symplecticBlowUpExample(2, 1);
    in.omega = {-2, 2, -1};
    EXPECT_THROW(taubesScenario(in), HypothesisError);
    in = scenarios::symplecticBlowUpExample(2, 1);
    in.canonical = {0, -2, 1};
    EXPECT_THROW(taubesScenario(in), HypothesisError);
}

TEST(Adjunction, InequalityAndType) {
    FourManifold x = threeHyperbolic();
    EmbeddedSurface sigma = torus(x);
    EXPECT_FALSE(adjunctionCheck(x, SpinC{{0, -6, 2, 2, 2, 2, 1}}, sigma));
    EXPECT_TRUE(adjunctionCheck(x, SpinC{{0, 0, 2, 2, 2, 2, 1}}, sigma));
    SWTable t(x);
    t.record(SpinC{{0, -6, 2, 2, 0, 0, 1}}, IntElement::one(x.ax), 1);
    TypeReport r = typeOf(t);
    EXPECT_TRUE(r.simpleType);
    EXPECT_EQ(r.type, 1);
    EXPECT_EQ(r.basicClasses.size(), 1u);
}
