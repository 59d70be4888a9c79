#pragma once

// Characteristic classes over the Jacobian of a genus-g surface: the families
// index computation of the total Chern class of the bundle H^1(E) of degree
// -1 line bundles, an independent Chern character to Chern class converter,
// and the Euler class of the obstruction bundle twisted by a line bundle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swcalc/algebra.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::chern {

using algebra::CoefficientMode;
using algebra::Generator;
using algebra::IntElement;
using algebra::RatElement;
using algebra::RingPtr;

inline std::string dualA(std::int64_t i) { return "dA" + std::to_string(i); }
inline std::string dualB(std::int64_t i) { return "dB" + std::to_string(i); }
inline std::string jacA(std::int64_t i) { return "a" + std::to_string(i); }
inline std::string jacB(std::int64_t i) { return "b" + std::to_string(i); }
inline const std::string kPoint = "pt";

/// Exterior ring on a_1, b_1, ..., a_g, b_g (degree 1): H*(J(S)).
inline RingPtr jacobianRing(std::int64_t g, CoefficientMode mode = CoefficientMode::Integers) {
    if (g < 0) throw ValidationError("genus must be nonnegative");
    std::vector<Generator> gens;
    for (std::int64_t i = 1; i <= g; ++i) {
        gens.push_back({jacA(i), 1});
        gens.push_back({jacB(i), 1});
    }
    return std::make_shared<algebra::GradedRingSpec>(std::move(gens), std::vector<std::vector<std::string>>{}, mode);
}

/// H*(S) (x) H*(J(S)) over the rationals: the Kronecker duals dA_i, dB_i of a
/// symplectic basis in degree 1, pt in degree 2, then a_i, b_i. Relations:
/// dA_i dB_j = delta_ij pt, and pt kills every positive-degree class of S.
inline RingPtr productRing(std::int64_t g) {
    if (g < 0) throw ValidationError("genus must be nonnegative");
    std::vector<Generator> gens;
    for (std::int64_t i = 1; i <= g; ++i) {
        gens.push_back({dualA(i), 1});
        gens.push_back({dualB(i), 1});
    }
    gens.push_back({kPoint, 2});
    for (std::int64_t i = 1; i <= g; ++i) {
        gens.push_back({jacA(i), 1});
        gens.push_back({jacB(i), 1});
    }
    std::vector<std::vector<std::string>> zero;
    std::vector<algebra::RewriteRule> rewrites;
    for (std::int64_t i = 1; i <= g; ++i) {
        for (std::int64_t j = i + 1; j <= g; ++j) {
            zero.push_back({dualA(i), dualA(j)});
            zero.push_back({dualB(i), dualB(j)});
        }
        for (std::int64_t j = 1; j <= g; ++j)
            if (i != j) zero.push_back({dualA(i), dualB(j)});
        zero.push_back({kPoint, dualA(i)});
        zero.push_back({kPoint, dualB(i)});
        rewrites.push_back({{dualA(i), dualB(i)}, 1, {kPoint}});
    }
    zero.push_back({kPoint, kPoint});
    return std::make_shared<algebra::GradedRingSpec>(std::move(gens), std::move(zero), CoefficientMode::Rationals,
                                                     std::move(rewrites));
}

/// Total Chern class with optional explicit formal roots.
struct BundleChar {
    std::int64_t rank = 0;
    IntElement totalChern;
    std::optional<std::vector<IntElement>> formalRoots;
};

inline IntElement productOfOnePlus(const RingPtr& ring, const std::vector<IntElement>& roots) {
    IntElement out = IntElement::one(ring);
    for (const IntElement& t : roots) out = out * (IntElement::one(ring) + t);
    return out;
}

/// Chern character exp(x) = sum x^k / k! truncated where powers vanish.
inline RatElement exponential(const RatElement& x) {
    if (x.constantTerm() != 0) throw DomainError("exponential needs a nilpotent argument");
    RatElement out = RatElement::one(x.ring());
    RatElement term = RatElement::one(x.ring());
    for (unsigned k = 1;; ++k) {
        term = Rational(1, k) * (term * x);
        if (term.isZero()) break;
        out += term;
        if (k > 4096) throw InternalError("exponential did not terminate");
    }
    return out;
}

/// Slant product with [S]: the coefficient of pt, as a class on J(S).
/// Terms without pt are discarded; (pt (x) y)/[S] = y.
inline RatElement slantBySurface(const RatElement& x, std::int64_t g) {
    const algebra::GradedRingSpec& ring = *x.ring();
    RingPtr target = jacobianRing(g, CoefficientMode::Rationals);
    const std::size_t pt = ring.require(kPoint);
    RatElement out(target);
    for (const auto& [m, c] : x.terms()) {
        if (m[pt] != 1) continue;
        for (std::size_t i = 0; i < pt; ++i)
            if (m[i] != 0) throw InternalError("pt times a positive-degree class of S survived");
        algebra::Monomial y = target->unit();
        for (std::size_t i = pt + 1; i < m.size(); ++i) y[i - pt - 1] = m[i];
        out.addTerm(std::move(y), c);
    }
    return out;
}

/// Largest degree to which Chern classes are computed for `ch`.
inline int truncationDegree(const RatElement& ch) {
    if (auto top = ch.ring()->topDegree()) return *top;
    int d = 0;
    for (const auto& [m, c] : ch.terms()) d = std::max(d, ch.ring()->degree(m));
    return d;
}

/// Total Chern class from the Chern character by Newton's identities,
/// p_k = k! ch_k and k c_k = sum_{i=1..k} (-1)^{i-1} c_{k-i} p_i. Every
/// division must be exact over the integers.
inline IntElement chToChern(std::int64_t rank, const RatElement& ch, const RingPtr& integralRing) {
    for (const auto& [m, c] : ch.terms())
        if (ch.ring()->degree(m) % 2 != 0) throw ValidationError("Chern character has an odd-degree component");
    if (ch.constantTerm() != Rational(rank))
        throw ValidationError("ch_0 = " + toString(ch.constantTerm()) + " differs from the rank " +
                              std::to_string(rank));
    const RingPtr& ring = ch.ring();
    const int kmax = truncationDegree(ch) / 2;
    std::vector<RatElement> p{RatElement(ring)};
    Rational factorial = 1;
    for (int k = 1; k <= kmax; ++k) {
        factorial *= k;
        p.push_back(factorial * ch.component(2 * k));
    }
    std::vector<RatElement> c{RatElement::one(ring)};
    RatElement total = RatElement::one(ring);
    for (int k = 1; k <= kmax; ++k) {
        RatElement sum(ring);
        for (int i = 1; i <= k; ++i) {
            RatElement term = c[k - i] * p[i];
            if (i % 2 == 0) term = -term;
            sum += term;
        }
        RatElement ck = Rational(1, k) * sum;
        for (const auto& [m, coef] : ck.terms())
            if (!isInteger(coef))
                throw DomainError("c_" + std::to_string(k) + " has non-integral coefficient " + toString(coef) +
                                  "; the Chern character is not that of an integral bundle");
        c.push_back(ck);
        total += ck;
    }
    return algebra::toInteger(total, integralRing);
}

/// c_k -> (-1)^k c_k: total Chern class of the dual bundle.
template <class Coeff>
algebra::Element<Coeff> dualize(const algebra::Element<Coeff>& c) {
    algebra::Element<Coeff> out(c.ring());
    for (const auto& [m, coef] : c.terms()) {
        int d = c.ring()->degree(m);
        if (d % 2 != 0) throw ValidationError("total Chern class has an odd-degree component");
        out.addTerm(m, (d / 2) % 2 == 0 ? coef : Coeff(-coef));
    }
    return out;
}

struct FamiliesIndex {
    std::int64_t genus = 0;
    /// c(pi^*(F (x) K^{-1/2}) (x) U) = 1 + x in H*(S) (x) H*(J).
    RatElement chernOfFamily;
    /// ch of the same bundle.
    RatElement chernCharacter;
    /// ch(H^0(F)) = A-hat(S) ch(...) / [S].
    RatElement chH0;
    IntElement cH0;
    /// The result: H^1(E), the dual of H^0(F).
    BundleChar h1E;
};

/// Runs the families index computation for the bundle H^1(E) over J(S).
inline FamiliesIndex familiesIndexChern(std::int64_t g) {
    if (g < 0) throw ValidationError("genus must be nonnegative");
    FamiliesIndex r;
    r.genus = g;
    RingPtr prod = productRing(g);
    // deg(F (x) K^{-1/2}) = (2g - 1) - (g - 1) = g.
    RatElement x = RatElement::product(prod, {kPoint}, Rational(g));
    for (std::int64_t i = 1; i <= g; ++i) {
        x -= RatElement::product(prod, {jacA(i), dualA(i)});
        x -= RatElement::product(prod, {jacB(i), dualB(i)});
    }
    r.chernOfFamily = RatElement::one(prod) + x;
    r.chernCharacter = exponential(x);
    RatElement aHat = RatElement::one(prod);
    r.chH0 = slantBySurface(aHat * r.chernCharacter, g);
    RingPtr jac = jacobianRing(g);
    r.cH0 = chToChern(g, r.chH0, jac);
    r.h1E.rank = g;
    r.h1E.totalChern = dualize(r.cH0);
    std::vector<IntElement> roots;
    for (std::int64_t i = 1; i <= g; ++i) roots.push_back(IntElement::product(jac, {jacA(i), jacB(i)}));
    if (productOfOnePlus(jac, roots) == r.h1E.totalChern) r.h1E.formalRoots = std::move(roots);
    return r;
}

/// c(V (x) L) for c1(L) = u: prod (1 + t_i + u).
inline BundleChar tensorLineBundleChern(const BundleChar& v, const IntElement& u) {
    if (!v.formalRoots) throw DomainError("tensoring with a line bundle needs formal roots");
    if (u.homogeneousDegree().value_or(2) != 2) throw ValidationError("c1 of a line bundle has degree 2");
    BundleChar out;
    out.rank = v.rank;
    std::vector<IntElement> roots;
    for (const IntElement& t : *v.formalRoots) roots.push_back(t + u);
    out.totalChern = productOfOnePlus(u.ring(), roots);
    out.formalRoots = std::move(roots);
    return out;
}

/// Moves a Jacobian class into the mu-ring of A(X) by a_i -> mu(A_i), b_i -> mu(B_i).
inline IntElement jacobianToMu(const IntElement& x, const RingPtr& mu, std::int64_t g) {
    std::vector<IntElement> images;
    for (std::int64_t i = 1; i <= g; ++i) {
        images.push_back(IntElement::generator(mu, algebra::muName("A" + std::to_string(i))));
        images.push_back(IntElement::generator(mu, algebra::muName("B" + std::to_string(i))));
    }
    return algebra::substitute<Integer>(x, mu, images);
}

struct EulerIdentity {
    std::int64_t genus = 0;
    BundleChar twisted;
    IntElement eulerClass;
    IntElement muXi;
    bool holds = false;
};

/// Compares the top Chern class of H^1(E) (x) L, with c1(L) = mu(U), against
/// mu(xi(-S)) for a surface whose symplectic basis maps to independent
/// generators A_i, B_i of H_1(X).
inline EulerIdentity obstructionEulerIdentity(std::int64_t g) {
    if (g < 1) throw ValidationError("the Euler identity needs g >= 1");
    EulerIdentity r;
    r.genus = g;
    std::vector<std::string> h1;
    for (std::int64_t i = 1; i <= g; ++i) {
        h1.push_back("A" + std::to_string(i));
        h1.push_back("B" + std::to_string(i));
    }
    RingPtr ax = algebra::axRing(h1);
    RingPtr mu = algebra::muRing(*ax);
    std::vector<algebra::H1Pair> basis;
    for (std::int64_t i = 1; i <= g; ++i)
        basis.push_back({IntElement::generator(ax, h1[2 * (i - 1)]), IntElement::generator(ax, h1[2 * i - 1])});
    r.muXi = algebra::muImage(algebra::xiClass(ax, basis, -1));

    FamiliesIndex fi = familiesIndexChern(g);
    if (!fi.h1E.formalRoots) throw InternalError("families index result has no product form");
    BundleChar v;
    v.rank = fi.h1E.rank;
    v.totalChern = jacobianToMu(fi.h1E.totalChern, mu, g);
    std::vector<IntElement> roots;
    for (const IntElement& t : *fi.h1E.formalRoots) roots.push_back(jacobianToMu(t, mu, g));
    v.formalRoots = std::move(roots);
    r.twisted = tensorLineBundleChern(v, IntElement::generator(mu, algebra::muName(algebra::kU)));
    r.eulerClass = r.twisted.totalChern.component(static_cast<int>(2 * r.twisted.rank));
    r.holds = r.eulerClass == r.muXi;
    return r;
}

}  // namespace swcalc::chern
