#pragma once

// Closed-form moduli data on the circle bundle Y over a genus-g surface with
// Euler number -n and on its disk bundle N: the range of k = <c1(s),[S]> in
// which irreducible boundary solutions exist, and the kernel and cokernel of
// the Dirac operator on N as sums of line-bundle cohomology on the curve.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swcalc/errors.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::neck {

struct NeckData {
    std::int64_t g = 0;
    std::int64_t n = 1;
    std::int64_t k = 0;
};

inline void validate(const NeckData& d) {
    if (d.g < 0) throw ValidationError("genus must be nonnegative");
    if (d.n <= 0) throw ValidationError("n must be positive (the surface has self-intersection -n)");
    if (floorMod(d.k + d.n, 2) != 0)
        throw ValidationError("k + n must be even, since k = 2e - 2g + 2 - n for an integer e");
}

/// Degree e of E restricted to the surface: k = 2e - 2g + 2 - n.
inline std::int64_t degreeE(const NeckData& d) {
    validate(d);
    return (d.k - 2 + 2 * d.g + d.n) / 2;
}

inline bool isDegenerate(const NeckData& d) { return floorMod(d.k - d.n, 2 * d.n) == 0; }

enum class Mode { Strict, Generic };

struct Cohomology {
    std::int64_t h0 = 0;
    std::int64_t h1 = 0;

    bool operator==(const Cohomology&) const = default;
};

/// Dimensions of H^0 and H^1 of a degree-`degree` line bundle on a genus-g
/// curve. In [0, 2g - 2] they depend on the bundle; strict mode refuses and
/// generic mode returns the general-position values.
inline Cohomology h0h1(std::int64_t degree, std::int64_t g, Mode mode = Mode::Strict) {
    if (g < 0) throw ValidationError("genus must be nonnegative");
    if (degree < 0) return {0, g - 1 - degree};
    if (degree > 2 * g - 2) return {degree + 1 - g, 0};
    if (mode == Mode::Strict)
        throw DomainError("cohomology of a degree " + std::to_string(degree) + " bundle on a genus " +
                          std::to_string(g) + " curve depends on the bundle");
    return {std::max<std::int64_t>(0, degree - g + 1), std::max<std::int64_t>(0, g - 1 - degree)};
}

/// The greatest integer smaller than -k/2n - 1/2, i.e. floor((-k - n) / 2n),
/// defined when k is not congruent to n mod 2n.
inline std::int64_t ellOf(const NeckData& d) {
    validate(d);
    if (isDegenerate(d))
        throw DomainError("k = " + std::to_string(d.k) + " is congruent to n mod 2n; the boundary value is degenerate");
    return floorDiv(-d.k - d.n, 2 * d.n);
}

struct Summand {
    std::int64_t j = 0;
    std::int64_t degree = 0;
    Cohomology cohomology;
};

struct KerCoker {
    std::int64_t ell = 0;
    std::int64_t e = 0;
    std::int64_t kerDim = 0;
    std::int64_t cokerDim = 0;
    /// Sum of deg + 1 - g over the active summands, signed by which of
    /// H^0/H^1 contributes to the kernel.
    std::int64_t riemannRochSum = 0;
    std::vector<Summand> summands;
};

inline KerCoker kerCokerDims(const NeckData& d, Mode mode = Mode::Strict) {
    KerCoker r;
    r.ell = ellOf(d);
    r.e = degreeE(d);
    if (r.ell >= 0) {
        for (std::int64_t j = 0; j <= r.ell; ++j) {
            std::int64_t deg = r.e - j * d.n;
            Cohomology c = h0h1(deg, d.g, mode);
            r.summands.push_back({j, deg, c});
            r.kerDim += c.h0;
            r.cokerDim += c.h1;
            r.riemannRochSum += deg + 1 - d.g;
        }
    } else {
        for (std::int64_t j = 1; j <= -r.ell - 1; ++j) {
            std::int64_t deg = r.e + j * d.n;
            Cohomology c = h0h1(deg, d.g, mode);
            r.summands.push_back({j, deg, c});
            r.kerDim += c.h1;
            r.cokerDim += c.h0;
            r.riemannRochSum -= deg + 1 - d.g;
        }
    }
    return r;
}

/// The two intervals [-n-2g+2, -n-2] and [n+2, n+2g-2] (possibly empty).
struct Interval {
    std::int64_t lo = 0;
    std::int64_t hi = -1;
    bool empty() const { return lo > hi; }
};

inline std::vector<Interval> irreducibleIntervals(std::int64_t g, std::int64_t n) {
    return {{-n - 2 * g + 2, -n - 2}, {n + 2, n + 2 * g - 2}};
}

/// Residues mod 2n of the integers in the irreducible intervals.
inline std::set<std::int64_t> irreducibleResidues(std::int64_t g, std::int64_t n) {
    if (g < 0 || n <= 0) throw ValidationError("need g >= 0 and n > 0");
    std::set<std::int64_t> out;
    for (const Interval& iv : irreducibleIntervals(g, n))
        for (std::int64_t x = iv.lo; x <= iv.hi; ++x) out.insert(floorMod(x, 2 * n));
    return out;
}

struct BoundaryReport {
    NeckData data;
    std::int64_t e = 0;
    bool reducibleNondegenerate = false;
    bool irreducibles = false;
    /// An integer congruent to k mod 2n lying in one of the intervals.
    std::optional<std::int64_t> witness;
    /// |k| < n: only reducibles on N, cut out transversally.
    bool transverseReducibleRegime = false;
    /// |k| >= n + 2g: finite-energy solutions on N are reducible.
    bool finiteEnergyReducibleRegime = false;
    std::optional<std::int64_t> degreeOfE;
    /// k = -n - 2g: obstructed reducibles with an obstruction bundle.
    bool obstructionRegime = false;
    std::optional<std::int64_t> obstructionRank;
};

inline BoundaryReport classifyBoundaryModuli(const NeckData& d) {
    validate(d);
    BoundaryReport r;
    r.data = d;
    r.e = degreeE(d);
    r.reducibleNondegenerate = !isDegenerate(d);
    for (const Interval& iv : irreducibleIntervals(d.g, d.n)) {
        if (iv.empty()) continue;
        // Smallest x >= lo with x = k mod 2n.
        std::int64_t x = iv.lo + floorMod(d.k - iv.lo, 2 * d.n);
        if (x <= iv.hi) {
            r.irreducibles = true;
            r.witness = x;
            break;
        }
    }
    std::int64_t absK = d.k < 0 ? -d.k : d.k;
    r.transverseReducibleRegime = absK < d.n;
    r.finiteEnergyReducibleRegime = absK >= d.n + 2 * d.g;
    if (r.finiteEnergyReducibleRegime) r.degreeOfE = (d.k + d.n + 2 * d.g - 2) / 2;
    r.obstructionRegime = d.k == -d.n - 2 * d.g;
    if (r.obstructionRegime && !isDegenerate(d)) r.obstructionRank = kerCokerDims(d, Mode::Generic).cokerDim;
    return r;
}

}  // namespace swcalc::neck
