// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bridge.hpp"
#include "oracles.hpp"
#include "swcalc/swcalc.hpp"

using namespace swcalc;
using algebra::IntElement;
using algebra::Monomial;
using algebra::RingPtr;

namespace {

/// Returns the first failure found, or an empty string.
using Criterion = std::function<std::string()>;

std::string families() {
    for (std::int64_t g = 0; g <= 6; ++g) {
        chern::FamiliesIndex fi = chern::familiesIndexChern(g);
        if (fi.h1E.rank != g) return "rank " + std::to_string(fi.h1E.rank) + " at g = " + std::to_string(g);
        if (bridge::toGraded(fi.h1E.totalChern).terms != oracle::signedPairs(g, 1).terms)
            return "total Chern class differs from prod(1 + a_i b_i) at g = " + std::to_string(g);
    }
    return {};
}

std::string eulerIdentity() {
    for (std::int64_t g = 1; g <= 6; ++g) {
        chern::EulerIdentity e = chern::obstructionEulerIdentity(g);
        if (!e.holds) return "identity fails at g = " + std::to_string(g);
        RingPtr ring = e.muXi.ring();
        if (bridge::toGraded(e.muXi).terms != bridge::muProduct(ring, g, 0).terms)
            return "mu(xi(-S)) differs from the oracle at g = " + std::to_string(g);
        if (bridge::toGraded(e.eulerClass).terms !=
            bridge::component(ring, bridge::muProduct(ring, g, 1), static_cast<int>(2 * g)).terms)
            return "Euler class is not the top class of prod(1 + mu(A)mu(B) + mu(U)) at g = " + std::to_string(g);
    }
    return {};
}

std::string neckSpecializations() {
    auto at = [](std::int64_t g, std::int64_t n, std::int64_t k) {
        return " at (g, n, k) = (" + std::to_string(g) + ", " + std::to_string(n) + ", " + std::to_string(k) + ")";
    };
    for (std::int64_t g = 0; g <= 10; ++g)
        for (std::int64_t n = 1; n <= 20; ++n)
            for (std::int64_t k = -n + 1; k < n; ++k) {
                if ((k + n) % 2 != 0) continue;
                neck::KerCoker kc = neck::kerCokerDims({g, n, k});
                if (kc.kerDim != 0 || kc.cokerDim != 0) return "nonzero kernel or cokernel" + at(g, n, k);
            }
    for (std::int64_t g = 1; g <= 10; ++g)
        for (std::int64_t n = 2 * g; n <= 2 * g + 20; ++n) {
            neck::KerCoker kc = neck::kerCokerDims({g, n, -n - 2 * g});
            if (kc.kerDim != 0 || kc.cokerDim != g) return "threshold dimensions differ from (0, g)" + at(g, n, -n - 2 * g);
        }
    for (std::int64_t g = 0; g <= 8; ++g)
        for (std::int64_t n = 1; n <= 10; ++n)
            for (std::int64_t k = -6 * n - 2 * g; k <= 6 * n + 2 * g; ++k) {
                neck::NeckData d{g, n, k};
                if ((k + n) % 2 != 0 || neck::isDegenerate(d)) continue;
                neck::KerCoker kc = neck::kerCokerDims(d, neck::Mode::Generic);
                if (kc.kerDim - kc.cokerDim != kc.riemannRochSum) return "signed index differs from Riemann-Roch" + at(g, n, k);
                for (const neck::Summand& s : kc.summands) {
                    if (s.cohomology.h0 - s.cohomology.h1 != s.degree + 1 - g) return "summand violates Riemann-Roch" + at(g, n, k);
                    if (auto o = oracle::lineBundleCohomology(s.degree, g))
                        if (s.cohomology.h0 != o->first || s.cohomology.h1 != o->second)
                            return "summand cohomology differs from the degree bound" + at(g, n, k);
                }
            }
    return {};
}

std::string irreducibles() {
    for (std::int64_t g = 0; g <= 20; ++g)
        for (std::int64_t n = 2 * g; n <= 2 * g + 20; ++n) {
            if (n == 0) continue;
            if (neck::classifyBoundaryModuli({g, n, -n - 2 * g}).irreducibles)
                return "irreducibles at the threshold class for (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")";
        }
    std::set<std::int64_t> expected;
    for (std::int64_t k = 0; k < 8; ++k)
        if (!oracle::irreducibleWitnesses(3, 4, k).empty()) expected.insert(k);
    if (neck::irreducibleResidues(3, 4) != expected) return "residues mod 8 differ for n = 4, g = 3";
    std::set<std::int64_t> listed{-8, -7, -6, 6, 7, 8};
    std::set<std::int64_t> listedResidues;
    for (std::int64_t x : listed) listedResidues.insert(floorMod(x, 8));
    if (expected != listedResidues) return "enumerated residues differ from [-8, -6] and [6, 8]";
    for (std::int64_t k = -24; k <= 24; ++k) {
        if (k % 2 != 0 || neck::isDegenerate({3, 4, k})) continue;
        bool lib = neck::classifyBoundaryModuli({3, 4, k}).irreducibles;
        if (lib != (listedResidues.count(floorMod(k, 8)) > 0)) return "classification differs at k = " + std::to_string(k);
    }
    return {};
}

std::string reduction() {
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        selftest::ReductionInstance inst = selftest::randomReductionInstance(rng);
        sw::ReductionPlan plan = sw::reductionPlan(inst.x, inst.s, inst.sigma);
        if (plan.identities.size() != 3) return "expected three identities";
        for (const auto& id : plan.identities)
            if (!id.holds) return id.name + " fails on instance " + std::to_string(trial);
        oracle::Matrix qhat = bridge::gramOf(plan.hat), q = bridge::gramOf(inst.x);
        oracle::Vec shat = bridge::toVec(plan.sHat.c1), sighat = bridge::toVec(plan.sigmaHat.pd);
        std::int64_t ell = toInt64(plan.ell), m = toInt64(plan.m);
        if (oracle::pair(qhat, sighat, sighat) != -inst.n - ell - m) return "square differs on instance " + std::to_string(trial);
        if (oracle::pair(qhat, shat, sighat) != -2 * inst.g - inst.n - ell - m)
            return "pairing differs on instance " + std::to_string(trial);
        if (oracle::swDimension(qhat, 2 * inst.g, shat) != oracle::swDimension(q, 2 * inst.g, bridge::toVec(inst.s.c1)))
            return "dimension changes on instance " + std::to_string(trial);
    }
    return {};
}

std::string symplectic() {
    for (std::int64_t g = 1; g <= 6; ++g) {
        for (int seed : {1, -1}) {
            sw::TaubesInput in = scenarios::symplecticBlowUpExample(g, g - 1, seed);
            sw::TaubesVerdict v = sw::taubesScenario(in);
            oracle::Vec expect = bridge::toVec(v.s0.c1), pd = bridge::toVec(in.sigmaPrime.pd);
            for (std::size_t i = 0; i < expect.size(); ++i) expect[i] -= 2 * pd[i];
            if (!v.target || bridge::toVec(v.target->c1) != expect) return "target is not s0 - PD(S') at g = " + std::to_string(g);
            if (!v.derivedValue || *v.derivedValue != Rational(seed)) return "derived value differs from the seed at g = " + std::to_string(g);
            if (!v.contradiction) return "no contradiction at g = " + std::to_string(g);
        }
        sw::TaubesVerdict same = sw::taubesScenario(scenarios::symplecticBlowUpExample(g, g));
        if (same.contradiction || same.deficit != 2) return "equal genus deficit is not 2 at g = " + std::to_string(g);
    }
    return {};
}

std::string mLines() {
    for (std::int64_t m = 3; m <= 99; m += 2) {
        scenarios::MLines r = scenarios::mLinesExample(m);
        if (r.halfGenus != (m - 1) * (m - 3) / 8 || r.halfGenus != oracle::properTransformGenus((m + 1) / 2))
            return "genus differs at m = " + std::to_string(m);
    }
    scenarios::MLines five = scenarios::mLinesExample(5);
    if (five.ell != 10 || five.halfGenus != 1) return "m = 5 does not give genus 1 with ell = 10";
    return {};
}

std::string algebraSuite() {
    for (int g = 0; g <= 6; ++g) {
        auto [ax, basis] = bridge::axWithPairs(g);
        IntElement prod = algebra::xiClass(ax, basis, 1) * algebra::xiClass(ax, basis, -1);
        Monomial u2g = ax->unit();
        u2g[0] = static_cast<std::uint32_t>(2 * g);
        if (bridge::toGraded(prod).terms != oracle::monomial(bridge::parities(*ax), u2g).terms)
            return "xi(S) xi(-S) != U^(2g) at g = " + std::to_string(g);
    }
    RingPtr ring = std::make_shared<algebra::GradedRingSpec>(
        std::vector<algebra::Generator>{{"u", 2}, {"x", 1}, {"y", 1}, {"z", 1}});
    auto pool = bridge::smallMonomials(*ring);
    auto odd = bridge::parities(*ring);
    for (const Monomial& a : pool)
        for (const Monomial& b : pool) {
            IntElement ea = IntElement::fromMonomial(ring, a), eb = IntElement::fromMonomial(ring, b);
            if (bridge::toGraded(ea * eb).terms != oracle::mul(oracle::monomial(odd, a), oracle::monomial(odd, b)).terms)
                return "product differs from the Koszul oracle";
            int sign = (ring->degree(a) * ring->degree(b)) % 2 ? -1 : 1;
            if (ea * eb != Integer(sign) * (eb * ea)) return "graded commutativity fails";
            for (const Monomial& c : pool) {
                IntElement ec = IntElement::fromMonomial(ring, c);
                if ((ea * eb) * ec != ea * (eb * ec)) return "associativity fails";
            }
        }
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        bridge::ChernRoundTrip r = bridge::randomChernRoundTrip(rng);
        if (r.library.terms != r.expected.terms) return "chToChern round trip fails on trial " + std::to_string(trial);
    }
    return {};
}

std::string cliffordSuite() {
    std::string failures;
    auto note = [&](const std::string& s) { failures += (failures.empty() ? "" : "; ") + s; };
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (!clifford::cliffordRelation(i, j)) note("Clifford relation (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    int contraction = 0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = j + 1; k <= 4; ++k) {
                ++contraction;
                if (!clifford::contractionIdentityCheck(clifford::Form::one(i), clifford::Form::basis({j, k})))
                    note("contraction e" + std::to_string(i) + " with e" + std::to_string(j) + std::to_string(k));
            }
    if (contraction != 24) note("contraction case count");
    auto stars = clifford::threeFormStarCases();
    if (stars.size() != 8) note("star case count");
    for (const auto& c : stars)
        if (!c.agrees) note("star case " + c.nu.str());
    auto offDiagonal = [&](const std::string& label, const clifford::MixedForm& w) {
        clifford::OffDiagonalReport r = clifford::isCompletelyOffDiagonal(w);
        if (!r.witness) note(label + " has no 3-form witness");
        if (!r.completelyOffDiagonal) {
            std::string s = label + " not completely off-diagonal (anticommutator fails at";
            for (int t = 0; t < 4; ++t)
                if (!r.anticommutatorHolds[t]) s += " e" + std::to_string(t + 1);
            note(s + ")");
        }
    };
    offDiagonal("cyclic generator (123)", clifford::cyclicGenerator(1, 2, 3));
    offDiagonal("disk-bundle difference form", clifford::diskBundleDifferenceForm());
    clifford::MixedForm single;
    single.add(1, 2, 3, 1);
    if (clifford::isCompletelyOffDiagonal(single).completelyOffDiagonal) note("single term accepted");
    return failures;
}

std::string chambers() {
    std::mt19937_64 rng(1010);
    for (int trial = 0; trial < 500; ++trial) {
        selftest::ChamberInstance inst = selftest::randomChamberInstance(rng);
        oracle::Matrix q = bridge::gramOf(inst.x);
        oracle::Vec pd = bridge::toVec(inst.sigma.pd), c1 = bridge::toVec(inst.s.c1);
        oracle::Vec other = c1;
        for (std::size_t i = 0; i < 2; ++i) other[i] += 2 * inst.epsilon * pd[i];
        manifold::CohClass target(other.begin(), other.end());
        if (!sw::wallsCoincideOnPerp(inst.x, inst.s.c1, target, inst.sigma)) return "walls differ on trial " + std::to_string(trial);
        auto seen = oracle::sampledCommonChambers(q, pd, c1, other);
        if (seen.size() != 2) return "sampling finds " + std::to_string(seen.size()) + " chambers on trial " + std::to_string(trial);
        if (sw::perpendicularCommonChambers(inst.x, inst.s.c1, target, inst.sigma) != 2)
            return "chamber count differs on trial " + std::to_string(trial);
    }
    return {};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"families index Chern class over the Jacobian, g <= 6", families},
        {"obstruction bundle Euler identity, 1 <= g <= 6", eulerIdentity},
        {"neck kernel and cokernel specializations and Riemann-Roch", neckSpecializations},
        {"irreducible boundary classes", irreducibles},
        {"reduction identities on 1000 random instances", reduction},
        {"symplectic contradiction and equal-genus deficit", symplectic},
        {"line arrangement genus for odd m in [3, 99]", mLines},
        {"graded algebra suite", algebraSuite},
        {"Clifford suite", cliffordSuite},
        {"chamber suite on random rank-2 lattices", chambers},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (detail.empty() ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first;
        if (!detail.empty()) {
            std::cout << ": " << detail;
            ++failed;
        }
        std::cout << "\n";
    }
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
