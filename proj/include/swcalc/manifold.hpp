#pragma once

// Integer-lattice model of closed oriented four-manifolds.
//
// The intersection form is stored as an orthogonal direct sum of dense
// blocks (connected components of the Gram matrix), so that repeated
// blow-ups add 1x1 blocks instead of growing a dense matrix.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/algebra.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::manifold {

/// Integral cohomology class, coordinates in the lattice basis.
using CohClass = std::vector<Integer>;
/// Rationally scaled class (chamber points).
using RatClass = std::vector<Rational>;

inline CohClass operator+(CohClass a, const CohClass& b) {
    if (a.size() != b.size()) throw ValidationError("class length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline CohClass operator-(CohClass a, const CohClass& b) {
    if (a.size() != b.size()) throw ValidationError("class length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline CohClass operator*(const Integer& s, CohClass a) {
    for (auto& x : a) x *= s;
    return a;
}

inline CohClass operator-(CohClass a) {
    for (auto& x : a) x = -x;
    return a;
}

inline RatClass toRat(const CohClass& c) { return RatClass(c.begin(), c.end()); }

inline CohClass unitClass(std::size_t rank, std::size_t i) {
    CohClass c(rank, 0);
    c.at(i) = 1;
    return c;
}

/// Pads a class with zero coordinates (for classes pulled back to a blow-up).
inline CohClass extend(CohClass c, std::size_t rank) {
    if (c.size() > rank) throw ValidationError("cannot extend a class to a smaller lattice");
    c.resize(rank, 0);
    return c;
}

inline std::string formatClass(const CohClass& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + c[i].str();
    return out + ")";
}

inline std::string formatClass(const RatClass& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? ", " : "") + toString(c[i]);
    return out + ")";
}

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
};

/// Counts positive and negative eigenvalues of a symmetric rational matrix by
/// congruence diagonalization. Throws ValidationError if it is degenerate,
/// unless `allowDegenerate` is set, in which case null directions are skipped.
inline Signature diagonalizeSignature(std::vector<std::vector<Rational>> a, bool allowDegenerate = false) {
    const std::size_t n = a.size();
    Signature sig;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t j = k + 1;
            while (j < n && a[j][j] == 0) ++j;
            if (j < n) {
                std::swap(a[k], a[j]);
                for (auto& row : a) std::swap(row[k], row[j]);
            } else {
                j = k + 1;
                while (j < n && a[k][j] == 0) ++j;
                if (j == n) {
                    if (!allowDegenerate) throw ValidationError("intersection form is degenerate");
                    continue;
                }
                // Replace e_k by e_k + e_j: new diagonal entry is 2 a_kj.
                for (std::size_t i = 0; i < n; ++i) a[k][i] += a[j][i];
                for (std::size_t i = 0; i < n; ++i) a[i][k] += a[i][j];
            }
        }
        const Rational pivot = a[k][k];
        (pivot > 0 ? sig.positive : sig.negative)++;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational f = a[i][k] / pivot;
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            for (std::size_t j = k; j < n; ++j) a[j][i] = a[i][j];
        }
    }
    return sig;
}

class IntersectionLattice {
public:
    struct Block {
        std::vector<std::size_t> indices;
        std::vector<std::vector<Integer>> gram;
    };

    IntersectionLattice() = default;

    /// Validates a full Gram matrix (square, symmetric, nondegenerate) and
    /// splits it into connected components.
    IntersectionLattice(std::vector<std::string> basisNames, const std::vector<std::vector<Integer>>& gram)
        : names_(std::move(basisNames)) {
        const std::size_t n = gram.size();
        if (names_.size() != n) throw ValidationError("basis name count does not match Gram matrix size");
        for (const auto& row : gram)
            if (row.size() != n) throw ValidationError("Gram matrix is not square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (gram[i][j] != gram[j][i]) throw ValidationError("Gram matrix is not symmetric");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw ValidationError("duplicate basis name '" + names_[i] + "'");

        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (gram[i][j] != 0) parent[find(i)] = find(j);
        std::vector<std::vector<std::size_t>> groups(n);
        for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> ordered;
        for (auto& gidx : groups)
            if (!gidx.empty()) ordered.push_back(std::move(gidx));
        std::sort(ordered.begin(), ordered.end());
        blockOf_.assign(n, 0);
        positionOf_.assign(n, 0);
        for (auto& idx : ordered) {
            Block b;
            b.gram.assign(idx.size(), std::vector<Integer>(idx.size()));
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t c = 0; c < idx.size(); ++c) b.gram[a][c] = gram[idx[a]][idx[c]];
            b.indices = std::move(idx);
            addBlock(std::move(b));
        }
    }

    std::size_t rank() const { return names_.size(); }
    const std::vector<std::string>& basisNames() const { return names_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::size_t b2plus() const { return sig_.positive; }
    std::size_t b2minus() const { return sig_.negative; }
    std::int64_t signature() const {
        return static_cast<std::int64_t>(sig_.positive) - static_cast<std::int64_t>(sig_.negative);
    }

    Integer entry(std::size_t i, std::size_t j) const {
        if (blockOf_.at(i) != blockOf_.at(j)) return 0;
        return blocks_[blockOf_[i]].gram[positionOf_[i]][positionOf_[j]];
    }

    std::vector<std::vector<Integer>> gramMatrix() const {
        std::vector<std::vector<Integer>> g(rank(), std::vector<Integer>(rank(), 0));
        for (const Block& b : blocks_)
            for (std::size_t a = 0; a < b.indices.size(); ++a)
                for (std::size_t c = 0; c < b.indices.size(); ++c) g[b.indices[a]][b.indices[c]] = b.gram[a][c];
        return g;
    }

    template <class T>
    T pair(const std::vector<T>& x, const std::vector<T>& y) const {
        checkLength(x.size());
        checkLength(y.size());
        T total = 0;
        for (const Block& b : blocks_)
            for (std::size_t a = 0; a < b.indices.size(); ++a) {
                const T& xa = x[b.indices[a]];
                if (xa == 0) continue;
                for (std::size_t c = 0; c < b.indices.size(); ++c)
                    if (b.gram[a][c] != 0) total += xa * T(b.gram[a][c]) * y[b.indices[c]];
            }
        return total;
    }

    Rational pairMixed(const RatClass& x, const CohClass& y) const { return pair(x, toRat(y)); }

    Integer square(const CohClass& x) const { return pair(x, x); }

    /// Lattice with an extra orthogonal basis vector of square -1 appended.
    IntersectionLattice withMinusOneSummand(const std::string& name) const {
        for (const auto& n : names_)
            if (n == name) throw ValidationError("duplicate basis name '" + name + "'");
        IntersectionLattice out = *this;
        out.names_.push_back(name);
        out.blockOf_.push_back(0);
        out.positionOf_.push_back(0);
        out.addBlock(Block{{names_.size()}, {{Integer(-1)}}});
        return out;
    }

    /// Orthogonal sum of rank-one lattices, without a dense Gram matrix.
    static IntersectionLattice diagonal(std::vector<std::string> basisNames, const std::vector<Integer>& entries) {
        if (basisNames.size() != entries.size()) throw ValidationError("basis name count does not match entries");
        std::set<std::string> seen;
        for (const auto& n : basisNames)
            if (!seen.insert(n).second) throw ValidationError("duplicate basis name '" + n + "'");
        IntersectionLattice out;
        out.names_ = std::move(basisNames);
        out.blockOf_.assign(out.names_.size(), 0);
        out.positionOf_.assign(out.names_.size(), 0);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (entries[i] == 0) throw ValidationError("lattice is degenerate");
            out.addBlock(Block{{i}, {{entries[i]}}});
        }
        return out;
    }

    std::size_t indexOf(const std::string& name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        throw ValidationError("unknown basis name '" + name + "'");
    }

    /// True if basis vector i spans an orthogonal summand of square -1.
    bool isExceptionalSummand(std::size_t i) const {
        const Block& b = blocks_.at(blockOf_.at(i));
        return b.indices.size() == 1 && b.gram[0][0] == -1;
    }

    /// Removes the last basis vector, which must be an orthogonal summand.
    IntersectionLattice withoutLast() const {
        if (rank() == 0 || blocks_[blockOf_.back()].indices.size() != 1)
            throw ValidationError("last basis vector is not an orthogonal summand");
        IntersectionLattice out;
        out.names_ = names_;
        out.names_.pop_back();
        out.blockOf_.assign(out.names_.size(), 0);
        out.positionOf_.assign(out.names_.size(), 0);
        for (std::size_t k = 0; k < blocks_.size(); ++k)
            if (k != blockOf_.back()) out.addBlock(blocks_[k]);
        return out;
    }

private:
    void addBlock(Block b) {
        std::vector<std::vector<Rational>> q(b.gram.size(), std::vector<Rational>(b.gram.size()));
        for (std::size_t a = 0; a < b.gram.size(); ++a)
            for (std::size_t c = 0; c < b.gram.size(); ++c) q[a][c] = Rational(b.gram[a][c]);
        Signature s = diagonalizeSignature(std::move(q));
        sig_.positive += s.positive;
        sig_.negative += s.negative;
        for (std::size_t a = 0; a < b.indices.size(); ++a) {
            blockOf_[b.indices[a]] = blocks_.size();
            positionOf_[b.indices[a]] = a;
        }
        blocks_.push_back(std::move(b));
    }

    void checkLength(std::size_t n) const {
        if (n != rank())
            throw ValidationError("class has " + std::to_string(n) + " coordinates, lattice rank is " +
                                  std::to_string(rank()));
    }

    std::vector<std::string> names_;
    std::vector<Block> blocks_;
    std::vector<std::size_t> blockOf_;
    std::vector<std::size_t> positionOf_;
    Signature sig_;
};

struct FourManifold {
    std::size_t b1 = 0;
    std::vector<std::string> h1Names;
    IntersectionLattice lattice;
    int homologyOrientation = 1;
    algebra::RingPtr ax;

    FourManifold() = default;

    FourManifold(std::vector<std::string> h1, IntersectionLattice q, int orientation = 1)
        : b1(h1.size()), h1Names(std::move(h1)), lattice(std::move(q)), homologyOrientation(orientation),
          ax(algebra::axRing(h1Names)) {
        if (orientation != 1 && orientation != -1) throw ValidationError("homology orientation must be +1 or -1");
    }

    std::size_t rank() const { return lattice.rank(); }
    std::int64_t euler() const { return 2 - 2 * static_cast<std::int64_t>(b1) + static_cast<std::int64_t>(rank()); }
    std::int64_t signature() const { return lattice.signature(); }
    std::size_t b2plus() const { return lattice.b2plus(); }
    Integer pair(const CohClass& x, const CohClass& y) const { return lattice.pair(x, y); }
    Integer square(const CohClass& x) const { return lattice.square(x); }
};

struct SpinC {
    CohClass c1;

    bool operator==(const SpinC&) const = default;
};

struct EmbeddedSurface {
    std::string name;
    CohClass pd;
    std::int64_t genus = 0;
    std::vector<algebra::H1Pair> h1;
};

inline bool isCharacteristic(const FourManifold& x, const CohClass& c) {
    if (c.size() != x.rank()) throw ValidationError("class length does not match lattice rank");
    for (const auto& b : x.lattice.blocks())
        for (std::size_t a = 0; a < b.indices.size(); ++a) {
            Integer cx = 0;
            for (std::size_t k = 0; k < b.indices.size(); ++k) cx += c[b.indices[k]] * b.gram[a][k];
            Integer diff = cx - b.gram[a][a];
            if (diff % 2 != 0) return false;
        }
    return true;
}

inline SpinC makeSpinC(const FourManifold& x, CohClass c1) {
    if (!isCharacteristic(x, c1)) throw ValidationError("c1 " + formatClass(c1) + " is not characteristic");
    return SpinC{std::move(c1)};
}

/// d(s) = (c1^2 - (2 chi + 3 sigma)) / 4.
inline Integer dimension(const FourManifold& x, const SpinC& s) {
    Integer num = x.square(s.c1) - (2 * x.euler() + 3 * x.signature());
    if (num % 4 != 0)
        throw ValidationError("c1^2 - (2 chi + 3 sigma) = " + num.str() + " is not divisible by 4");
    return num / 4;
}

/// c1 -> c1 + 2c.
inline SpinC twistSpinC(const FourManifold& x, const SpinC& s, const CohClass& c) {
    if (c.size() != x.rank()) throw ValidationError("class length does not match lattice rank");
    return SpinC{s.c1 + Integer(2) * c};
}

struct BlowUp {
    FourManifold manifold;
    CohClass exceptional;
};

/// Connected sum with a negative-definite CP^2; the new class E is the last basis vector.
inline BlowUp blowUp(const FourManifold& x, const std::string& name) {
    FourManifold out(x.h1Names, x.lattice.withMinusOneSummand(name), x.homologyOrientation);
    return {out, unitClass(out.rank(), out.rank() - 1)};
}

/// First basis name of the form prefix + k not yet in use.
inline std::string freshBasisName(const FourManifold& x, const std::string& prefix = "E") {
    const auto& names = x.lattice.basisNames();
    for (std::size_t k = 1;; ++k) {
        std::string candidate = prefix + std::to_string(k);
        if (std::find(names.begin(), names.end(), candidate) == names.end()) return candidate;
    }
}

inline BlowUp blowUp(const FourManifold& x) { return blowUp(x, freshBasisName(x)); }

/// Carries a surface (and its H_1 images) into a blow-up of its manifold.
inline EmbeddedSurface pullBack(const EmbeddedSurface& s, const FourManifold& target) {
    EmbeddedSurface out{s.name, extend(s.pd, target.rank()), s.genus, {}};
    for (const auto& p : s.h1) {
        if (!algebra::sameRing(p.a.ring(), target.ax)) throw RingMismatch("surface is not in this manifold's ring");
        out.h1.push_back(p);
    }
    return out;
}

/// PD(Sigma) - sum E_i, genus and H_1 images unchanged.
inline EmbeddedSurface properTransform(const FourManifold& x, const EmbeddedSurface& sigma,
                                       const std::vector<CohClass>& exceptionals) {
    EmbeddedSurface out = sigma;
    for (std::size_t i = 0; i < exceptionals.size(); ++i) {
        const CohClass& e = exceptionals[i];
        if (x.square(e) != -1) throw ValidationError("exceptional class " + formatClass(e) + " has square != -1");
        if (x.pair(e, sigma.pd) != 0)
            throw ValidationError("exceptional class " + formatClass(e) + " is not orthogonal to the surface");
        for (std::size_t j = 0; j < i; ++j)
            if (x.pair(e, exceptionals[j]) != 0) throw ValidationError("exceptional classes are not orthogonal");
        out.pd = out.pd - e;
    }
    return out;
}

struct AdjunctionValue {
    Rational genus;
    bool integral = true;
};

/// g = 1 + (C^2 + C.K)/2 from the numbers C^2 and C.K.
inline AdjunctionValue adjunctionGenus(const Integer& selfIntersection, const Integer& pairingWithK) {
    Rational g = 1 + Rational(selfIntersection + pairingWithK, 2);
    return {g, isInteger(g)};
}

inline AdjunctionValue adjunctionGenus(const FourManifold& x, const CohClass& c, const CohClass& k) {
    return adjunctionGenus(x.square(c), x.pair(c, k));
}

}  // namespace swcalc::manifold
