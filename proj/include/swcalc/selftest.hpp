#pragma once

// Random admissible instances and the invariant suite run by `swcalc selftest`.

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/algebra.hpp"
#include "swcalc/chern.hpp"
#include "swcalc/clifford.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/manifold.hpp"
#include "swcalc/neck.hpp"
#include "swcalc/scenarios.hpp"
#include "swcalc/sw.hpp"

namespace swcalc::selftest {

using manifold::CohClass;
using manifold::FourManifold;
using manifold::operator+;
using manifold::operator-;
using manifold::operator*;

/// Basis (s, f) with Gram [[-n, 1], [1, 0]] followed by `extra` <-1> summands,
/// H_1 generators A1, B1, ..., Ag, the surface s of genus g, and a
/// characteristic c1 with <c1, s> = k <= -n - 2g and d >= 0.
struct ReductionInstance {
    FourManifold x;
    manifold::SpinC s;
    manifold::EmbeddedSurface sigma;
    std::int64_t n = 0;
    std::int64_t g = 0;
    std::int64_t k = 0;
};

inline ReductionInstance randomReductionInstance(std::mt19937_64& rng) {
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    for (;;) {
        ReductionInstance r;
        r.n = uniform(1, 9);
        r.g = uniform(1, 5);
        r.k = -r.n - 2 * r.g - 2 * uniform(0, 4);
        const std::int64_t extra = uniform(0, 3);
        const std::int64_t xs = 2 * uniform(-2, 2);

        std::vector<std::string> names{"s", "f"};
        std::vector<std::vector<Integer>> gram(2 + extra, std::vector<Integer>(2 + extra, 0));
        gram[0][0] = -r.n;
        gram[0][1] = gram[1][0] = 1;
        for (std::int64_t i = 0; i < extra; ++i) {
            names.push_back("e" + std::to_string(i + 1));
            gram[2 + i][2 + i] = -1;
        }
        std::vector<std::string> h1;
        for (std::int64_t i = 1; i <= r.g; ++i) {
            h1.push_back("A" + std::to_string(i));
            h1.push_back("B" + std::to_string(i));
        }
        r.x = FourManifold(h1, manifold::IntersectionLattice(names, gram));
        // <c1, s> = -n xs + ys = k.
        CohClass c1(2 + extra, 0);
        c1[0] = xs;
        c1[1] = r.k + r.n * xs;
        for (std::int64_t i = 0; i < extra; ++i) c1[2 + i] = 2 * uniform(-1, 1) + 1;
        r.s = manifold::makeSpinC(r.x, c1);
        if (manifold::dimension(r.x, r.s) < 0) continue;
        r.sigma = {"S", manifold::unitClass(r.x.rank(), 0), r.g, {}};
        for (std::int64_t i = 0; i < r.g; ++i)
            r.sigma.h1.push_back({algebra::IntElement::generator(r.x.ax, h1[2 * i]),
                                  algebra::IntElement::generator(r.x.ax, h1[2 * i + 1])});
        return r;
    }
}

/// A rank-2 lattice with b2+ = 1, a class S of negative square, and a
/// characteristic c1 with <c1, S> != 0.
struct ChamberInstance {
    FourManifold x;
    manifold::EmbeddedSurface sigma;
    manifold::SpinC s;
    int epsilon = 1;
};

inline ChamberInstance randomChamberInstance(std::mt19937_64& rng) {
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    for (;;) {
        std::int64_t a = uniform(-5, 5), b = uniform(-5, 5), c = uniform(-5, 5);
        if (a * c - b * b >= 0) continue;
        FourManifold x({}, manifold::IntersectionLattice({"u", "v"}, {{a, b}, {b, c}}));
        CohClass pd{Integer(uniform(-3, 3)), Integer(uniform(-3, 3))};
        if (x.square(pd) >= 0) continue;
        CohClass c1{Integer(uniform(-6, 6)), Integer(uniform(-6, 6))};
        if (!manifold::isCharacteristic(x, c1)) continue;
        Integer k = x.pair(c1, pd);
        if (k == 0) continue;
        ChamberInstance r;
        r.x = x;
        r.sigma = {"S", pd, 0, {}};
        r.s = manifold::SpinC{c1};
        r.epsilon = sign(k);
        return r;
    }
}

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline Check run(const std::string& name, const std::function<std::string()>& body) {
    try {
        std::string failure = body();
        return {name, failure.empty(), failure};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace detail

/// The invariant suite. Each check returns an empty string on success.
inline std::vector<Check> runAll() {
    using algebra::IntElement;
    std::vector<Check> out;

    out.push_back(detail::run("xi(S) xi(-S) = U^(2g), g <= 4", [] {
        for (std::int64_t g = 0; g <= 4; ++g) {
            std::vector<std::string> h1;
            for (std::int64_t i = 1; i <= g; ++i) {
                h1.push_back("A" + std::to_string(i));
                h1.push_back("B" + std::to_string(i));
            }
            auto ax = algebra::axRing(h1);
            std::vector<algebra::H1Pair> basis;
            for (std::int64_t i = 0; i < g; ++i)
                basis.push_back({IntElement::generator(ax, h1[2 * i]), IntElement::generator(ax, h1[2 * i + 1])});
            IntElement lhs = algebra::xiClass(ax, basis, 1) * algebra::xiClass(ax, basis, -1);
            IntElement rhs = algebra::power(IntElement::generator(ax, algebra::kU), static_cast<unsigned>(2 * g));
            if (!(lhs == rhs)) return "g = " + std::to_string(g) + ": " + lhs.str();
        }
        return std::string();
    }));

    out.push_back(detail::run("families index c(H^1(E)) = prod(1 + a_i b_i), g <= 4", [] {
        for (std::int64_t g = 0; g <= 4; ++g) {
            chern::FamiliesIndex fi = chern::familiesIndexChern(g);
            std::vector<IntElement> roots;
            auto jac = chern::jacobianRing(g);
            for (std::int64_t i = 1; i <= g; ++i) roots.push_back(IntElement::product(jac, {chern::jacA(i), chern::jacB(i)}));
            if (fi.h1E.rank != g || !(fi.h1E.totalChern == chern::productOfOnePlus(jac, roots)))
                return "g = " + std::to_string(g) + ": " + fi.h1E.totalChern.str();
        }
        return std::string();
    }));

    out.push_back(detail::run("Euler class of the obstruction bundle = mu(xi(-S)), g <= 4", [] {
        for (std::int64_t g = 1; g <= 4; ++g)
            if (!chern::obstructionEulerIdentity(g).holds) return "g = " + std::to_string(g);
        return std::string();
    }));

    out.push_back(detail::run("kernel and cokernel vanish for |k| < n", [] {
        for (std::int64_t g = 0; g <= 6; ++g)
            for (std::int64_t n = 1; n <= 10; ++n)
                for (std::int64_t k = -n + 1; k < n; ++k) {
                    if (floorMod(k + n, 2) != 0) continue;
                    neck::KerCoker kc = neck::kerCokerDims({g, n, k});
                    if (kc.kerDim != 0 || kc.cokerDim != 0)
                        return "(g, n, k) = (" + std::to_string(g) + ", " + std::to_string(n) + ", " + std::to_string(k) + ")";
                }
        return std::string();
    }));

    out.push_back(detail::run("cokernel has dimension g at k = -n - 2g, n >= 2g", [] {
        for (std::int64_t g = 1; g <= 6; ++g)
            for (std::int64_t n = 2 * g; n <= 2 * g + 8; ++n) {
                neck::KerCoker kc = neck::kerCokerDims({g, n, -n - 2 * g});
                if (kc.kerDim != 0 || kc.cokerDim != g) return "(g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")";
                if (neck::classifyBoundaryModuli({g, n, -n - 2 * g}).irreducibles)
                    return "irreducibles at (g, n) = (" + std::to_string(g) + ", " + std::to_string(n) + ")";
            }
        return std::string();
    }));

    out.push_back(detail::run("kernel minus cokernel equals the Riemann-Roch sum", [] {
        for (std::int64_t g = 0; g <= 5; ++g)
            for (std::int64_t n = 1; n <= 8; ++n)
                for (std::int64_t k = -3 * n - 2 * g; k <= 3 * n + 2 * g; ++k) {
                    neck::NeckData d{g, n, k};
                    if (floorMod(k + n, 2) != 0 || neck::isDegenerate(d)) continue;
                    neck::KerCoker kc = neck::kerCokerDims(d, neck::Mode::Generic);
                    if (kc.kerDim - kc.cokerDim != kc.riemannRochSum) return "k = " + std::to_string(k);
                    if (neck::ellOf({g, n, k + 2 * n}) != kc.ell - 1) return "ell periodicity at k = " + std::to_string(k);
                }
        return std::string();
    }));

    out.push_back(detail::run("Clifford relations", [] {
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                if (!clifford::cliffordRelation(i, j)) return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
        return std::string();
    }));

    out.push_back(detail::run("contraction identity on basis pairs", [] {
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                for (int k = j + 1; k <= 4; ++k)
                    if (!clifford::contractionIdentityCheck(clifford::Form::one(i), clifford::Form::basis({j, k})))
                        return "e" + std::to_string(i) + " with e" + std::to_string(j) + std::to_string(k);
        return std::string();
    }));

    out.push_back(detail::run("3-forms agree with their Hodge duals on W+", [] {
        for (const auto& idx : std::vector<clifford::Form::Index>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}})
            if (!clifford::threeFormAgreesWithStar(clifford::Form::basis(idx))) return clifford::Form::basis(idx).str();
        return std::string();
    }));

    out.push_back(detail::run("cyclic generators are completely off-diagonal", [] {
        std::string failures;
        for (auto [a, b, c] : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}) {
            clifford::OffDiagonalReport r = clifford::isCompletelyOffDiagonal(clifford::cyclicGenerator(a, b, c));
            if (!r.completelyOffDiagonal) {
                failures += failures.empty() ? "" : "; ";
                failures += "(" + std::to_string(a) + std::to_string(b) + std::to_string(c) + ") witness " +
                            (r.witness ? r.witness->str() : "none") + ", anticommutator fails at";
                for (int t = 0; t < 4; ++t)
                    if (!r.anticommutatorHolds[t]) failures += " e" + std::to_string(t + 1);
            }
        }
        return failures;
    }));

    out.push_back(detail::run("disk-bundle difference form is completely off-diagonal", [] {
        clifford::OffDiagonalReport r = clifford::isCompletelyOffDiagonal(clifford::diskBundleDifferenceForm());
        if (r.completelyOffDiagonal) return std::string();
        std::string s = std::string("witness ") + (r.witness ? r.witness->str() : "none") + ", anticommutator fails at";
        for (int t = 0; t < 4; ++t)
            if (!r.anticommutatorHolds[t]) s += " e" + std::to_string(t + 1);
        return s;
    }));

    out.push_back(detail::run("single term e1 (x) e23 is rejected", [] {
        clifford::MixedForm w;
        w.add(1, 2, 3, 1);
        return clifford::isCompletelyOffDiagonal(w).completelyOffDiagonal ? std::string("accepted") : std::string();
    }));

    out.push_back(detail::run("line arrangement genus (m-1)(m-3)/8, odd m <= 31", [] {
        for (std::int64_t m = 3; m <= 31; m += 2) {
            scenarios::MLines r = scenarios::mLinesExample(m);
            if (r.halfGenus != r.expectedHalfGenus) return "m = " + std::to_string(m);
        }
        return std::string();
    }));

    out.push_back(detail::run("reduction identities on random instances", [] {
        std::mt19937_64 rng(20260101);
        for (int i = 0; i < 50; ++i) {
            ReductionInstance r = randomReductionInstance(rng);
            sw::ReductionPlan plan = sw::reductionPlan(r.x, r.s, r.sigma);
            for (const auto& id : plan.identities)
                if (!id.holds) return id.name;
        }
        return std::string();
    }));

    out.push_back(detail::run("walls coincide on S-perp with two common chambers", [] {
        std::mt19937_64 rng(20260102);
        for (int i = 0; i < 100; ++i) {
            ChamberInstance c = randomChamberInstance(rng);
            CohClass target = c.s.c1 + Integer(2 * c.epsilon) * c.sigma.pd;
            if (!sw::wallsCoincideOnPerp(c.x, c.s.c1, target, c.sigma)) return std::string("walls differ");
            if (sw::perpendicularCommonChambers(c.x, c.s.c1, target, c.sigma) != 2) return std::string("chamber count");
        }
        return std::string();
    }));

    out.push_back(detail::run("symplectic contradiction", [] {
        for (std::int64_t g = 1; g <= 3; ++g) {
            sw::TaubesVerdict lower = sw::taubesScenario(scenarios::symplecticBlowUpExample(g, g - 1));
            if (!lower.contradiction) return "no contradiction at g = " + std::to_string(g);
            sw::TaubesVerdict same = sw::taubesScenario(scenarios::symplecticBlowUpExample(g, g));
            if (same.deficit != 2 || same.contradiction) return "deficit at g = " + std::to_string(g);
        }
        return std::string();
    }));

    return out;
}

}  // namespace swcalc::selftest
