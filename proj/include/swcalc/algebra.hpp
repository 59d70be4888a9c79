#pragma once

// Exact graded-commutative rings.
//
// A ring is described by a GradedRingSpec: an ordered list of generators with
// nonnegative degrees, monomials declared zero, and optional monomial rewrite
// rules. Odd generators anticommute and square to zero; even generators are
// central. Monomials are stored as exponent vectors in generator declaration
// order, so every element has a unique normal form and equality is equality
// of representation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/errors.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::algebra {

enum class CoefficientMode { Integers, Rationals };

struct Generator {
    std::string name;
    int degree = 0;

    bool operator==(const Generator&) const = default;
};

/// Exponent per generator, in declaration order.
using Monomial = std::vector<std::uint32_t>;

/// `lhs` is replaced by `coefficient * rhs` wherever it divides a monomial.
struct RewriteRule {
    std::vector<std::string> lhs;
    std::int64_t coefficient = 1;
    std::vector<std::string> rhs;
};

class GradedRingSpec {
public:
    GradedRingSpec(std::vector<Generator> generators,
                   std::vector<std::vector<std::string>> zeroMonomials = {},
                   CoefficientMode mode = CoefficientMode::Integers,
                   std::vector<RewriteRule> rewrites = {})
        : generators_(std::move(generators)), mode_(mode) {
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            const Generator& g = generators_[i];
            if (g.degree < 0) throw ValidationError("generator '" + g.name + "' has negative degree");
            for (std::size_t j = 0; j < i; ++j)
                if (generators_[j].name == g.name)
                    throw ValidationError("duplicate generator name '" + g.name + "'");
        }
        for (const auto& names : zeroMonomials) {
            Monomial m = monomialFromNames(names);
            if (isZeroByParity(m)) continue;  // already zero
            zero_.push_back(std::move(m));
        }
        for (const RewriteRule& rule : rewrites) {
            Monomial lhs = monomialFromNames(rule.lhs);
            Monomial rhs = monomialFromNames(rule.rhs);
            if (degree(lhs) != degree(rhs))
                throw ValidationError("rewrite rule does not preserve degree");
            rewrites_.push_back({std::move(lhs), rule.coefficient, std::move(rhs)});
        }
    }

    std::size_t size() const { return generators_.size(); }
    const Generator& generator(std::size_t i) const { return generators_.at(i); }
    const std::vector<Generator>& generators() const { return generators_; }
    CoefficientMode mode() const { return mode_; }
    bool isOdd(std::size_t i) const { return generators_[i].degree % 2 != 0; }

    std::optional<std::size_t> index(const std::string& name) const {
        for (std::size_t i = 0; i < generators_.size(); ++i)
            if (generators_[i].name == name) return i;
        return std::nullopt;
    }

    std::size_t require(const std::string& name) const {
        auto i = index(name);
        if (!i) throw ValidationError("unknown generator '" + name + "'");
        return *i;
    }

    Monomial unit() const { return Monomial(generators_.size(), 0); }

    /// Canonical monomial of a (possibly unsorted, repeating) name list,
    /// ignoring the sign of the reordering.
    Monomial monomialFromNames(const std::vector<std::string>& names) const {
        Monomial m = unit();
        for (const auto& n : names) ++m[require(n)];
        return m;
    }

    int degree(const Monomial& m) const {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * generators_[i].degree;
        return d;
    }

    bool isZeroByParity(const Monomial& m) const {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (isOdd(i) && m[i] > 1) return true;
        return false;
    }

    /// Product of two canonical monomials before relations are applied:
    /// returns the sign of sorting the concatenation (0 if an odd generator
    /// repeats) and the merged monomial.
    std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const {
        Monomial out(a.size());
        int oddInA = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[i] = a[i] + b[i];
            if (isOdd(i) && a[i] != 0 && b[i] != 0) return {0, out};
        }
        // Each odd generator of b moves left past the odd generators of a with larger index.
        int transpositions = 0;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (!isOdd(i)) continue;
            if (b[i] != 0) transpositions += oddInA;
            if (a[i] != 0) ++oddInA;
        }
        return {transpositions % 2 == 0 ? 1 : -1, std::move(out)};
    }

    /// Reduces a canonical monomial modulo relations and rewrite rules.
    /// Returns the scalar factor (0 when the monomial vanishes) and the normal form.
    std::pair<std::int64_t, Monomial> normalize(Monomial m) const {
        std::int64_t factor = 1;
        for (int guard = 0; guard < 4096; ++guard) {
            if (isZeroByParity(m) || divisibleByZeroRelation(m)) return {0, std::move(m)};
            bool rewritten = false;
            for (const Rule& rule : rewrites_) {
                if (!divides(rule.lhs, m)) continue;
                Monomial rest = m;
                for (std::size_t i = 0; i < m.size(); ++i) rest[i] -= rule.lhs[i];
                // m = s * (lhs . rest) with s = sign of sorting lhs.rest.
                int s = multiply(rule.lhs, rest).first;
                auto [t, next] = multiply(rule.rhs, rest);
                factor *= s * t * rule.coefficient;
                m = std::move(next);
                rewritten = true;
                if (factor == 0) return {0, std::move(m)};
                break;
            }
            if (!rewritten) return {factor, std::move(m)};
        }
        throw InternalError("rewrite rules do not terminate");
    }

    /// Largest degree of a nonzero monomial, or nullopt when the ring is infinite.
    std::optional<int> topDegree() const {
        int top = 0;
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            if (isOdd(i)) {
                top += generators_[i].degree;
                continue;
            }
            if (generators_[i].degree == 0) return std::nullopt;
            std::optional<std::uint32_t> nilpotency;
            for (const Monomial& z : zero_) {
                bool pure = true;
                for (std::size_t j = 0; j < z.size(); ++j)
                    if (j != i && z[j] != 0) pure = false;
                if (pure && z[i] > 0 && (!nilpotency || z[i] < *nilpotency)) nilpotency = z[i];
            }
            if (!nilpotency) return std::nullopt;
            top += static_cast<int>(*nilpotency - 1) * generators_[i].degree;
        }
        return top;
    }

    std::string format(const Monomial& m) const {
        std::string out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += generators_[i].name;
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
        }
        return out.empty() ? "1" : out;
    }

    bool operator==(const GradedRingSpec& other) const {
        if (generators_ != other.generators_ || mode_ != other.mode_ || zero_ != other.zero_) return false;
        if (rewrites_.size() != other.rewrites_.size()) return false;
        for (std::size_t i = 0; i < rewrites_.size(); ++i) {
            const Rule& a = rewrites_[i];
            const Rule& b = other.rewrites_[i];
            if (a.lhs != b.lhs || a.rhs != b.rhs || a.coefficient != b.coefficient) return false;
        }
        return true;
    }

private:
    struct Rule {
        Monomial lhs;
        std::int64_t coefficient;
        Monomial rhs;
    };

    static bool divides(const Monomial& d, const Monomial& m) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (d[i] > m[i]) return false;
        return true;
    }

    bool divisibleByZeroRelation(const Monomial& m) const {
        return std::any_of(zero_.begin(), zero_.end(), [&](const Monomial& z) { return divides(z, m); });
    }

    std::vector<Generator> generators_;
    std::vector<Monomial> zero_;
    std::vector<Rule> rewrites_;
    CoefficientMode mode_;
};

using RingPtr = std::shared_ptr<const GradedRingSpec>;

inline bool sameRing(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

/// Element of a graded-commutative ring with exact coefficients.
template <class Coeff>
class Element {
public:
    using Terms = std::map<Monomial, Coeff>;

    /// Placeholder with no ring; assign a real element before use.
    Element() = default;
    explicit Element(RingPtr ring) : ring_(std::move(ring)) {}

    static Element constant(RingPtr ring, Coeff c) {
        Element e(ring);
        e.addTerm(e.ring_->unit(), std::move(c));
        return e;
    }
    static Element one(RingPtr ring) { return constant(std::move(ring), Coeff(1)); }

    static Element generator(RingPtr ring, const std::string& name) {
        Element e(ring);
        Monomial m = e.ring_->unit();
        m[e.ring_->require(name)] = 1;
        e.addTerm(std::move(m), Coeff(1));
        return e;
    }

    /// `c` times the ordered product of the named generators (sign of the
    /// reordering included).
    static Element product(RingPtr ring, const std::vector<std::string>& names, Coeff c = Coeff(1)) {
        Element e = constant(ring, std::move(c));
        for (const auto& n : names) e = e * generator(ring, n);
        return e;
    }

    static Element fromMonomial(RingPtr ring, Monomial m, Coeff c = Coeff(1)) {
        Element e(ring);
        e.addTerm(std::move(m), std::move(c));
        return e;
    }

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

    Coeff coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    /// Adds c * m after reducing m to normal form.
    void addTerm(Monomial m, Coeff c) {
        if (c == 0) return;
        auto [factor, normal] = ring_->normalize(std::move(m));
        if (factor == 0) return;
        c *= factor;
        auto [it, inserted] = terms_.try_emplace(std::move(normal), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Common degree of all terms; nullopt for zero or inhomogeneous elements.
    std::optional<int> homogeneousDegree() const {
        std::optional<int> d;
        for (const auto& [m, c] : terms_) {
            int dm = ring_->degree(m);
            if (d && *d != dm) return std::nullopt;
            d = dm;
        }
        return d;
    }

    Element component(int degree) const {
        Element out(ring_);
        for (const auto& [m, c] : terms_)
            if (ring_->degree(m) == degree) out.terms_.emplace(m, c);
        return out;
    }

    Coeff constantTerm() const { return coefficient(ring_->unit()); }

    Element operator-() const {
        Element out(ring_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    Element& operator+=(const Element& o) {
        checkRing(o);
        for (const auto& [m, c] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(m, c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }
    Element& operator-=(const Element& o) { return *this += -o; }

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    friend Element operator*(const Element& a, const Element& b) {
        a.checkRing(b);
        Element out(a.ring_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                auto [s, m] = a.ring_->multiply(ma, mb);
                if (s == 0) continue;
                Coeff c = ca * cb;
                if (s < 0) c = -c;
                out.addTerm(std::move(m), std::move(c));
            }
        }
        return out;
    }

    friend Element operator*(const Coeff& s, const Element& a) {
        Element out(a.ring_);
        if (s == 0) return out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, s * c);
        return out;
    }

    Element& operator*=(const Element& o) { return *this = *this * o; }

    bool operator==(const Element& o) const { return sameRing(ring_, o.ring_) && terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // Print by increasing degree, then by monomial order, for readability.
        std::vector<std::pair<const Monomial*, const Coeff*>> order;
        for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
        std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
            return ring_->degree(*x.first) < ring_->degree(*y.first);
        });
        for (const auto& [mp, cp] : order) {
            const Monomial& m = *mp;
            Coeff c = *cp;
            bool negative = c < 0;
            if (negative) c = -c;
            if (first)
                out << (negative ? "-" : "");
            else
                out << (negative ? " - " : " + ");
            first = false;
            bool unitMonomial = m == ring_->unit();
            if (c != 1 || unitMonomial) {
                out << c.str();
                if (!unitMonomial) out << "*";
            }
            if (!unitMonomial) out << ring_->format(m);
        }
        return out.str();
    }

private:
    void checkRing(const Element& o) const {
        if (!sameRing(ring_, o.ring_)) throw RingMismatch("operands belong to different rings");
    }

    RingPtr ring_;
    Terms terms_;
};

using IntElement = Element<Integer>;
using RatElement = Element<Rational>;

template <class Coeff>
Element<Coeff> power(const Element<Coeff>& x, unsigned k) {
    Element<Coeff> out = Element<Coeff>::one(x.ring());
    for (unsigned i = 0; i < k; ++i) out = out * x;
    return out;
}

/// The ring morphism sending generator i of x's ring to images[i] (all in
/// `target`). Images of odd generators must be odd, of even ones even.
template <class Coeff>
Element<Coeff> substitute(const Element<Coeff>& x, const RingPtr& target,
                          std::span<const Element<Coeff>> images) {
    const GradedRingSpec& src = *x.ring();
    if (images.size() != src.size()) throw ValidationError("substitution needs one image per generator");
    Element<Coeff> out(target);
    for (const auto& [m, c] : x.terms()) {
        Element<Coeff> term = Element<Coeff>::constant(target, c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::uint32_t e = 0; e < m[i]; ++e) term = term * images[i];
        out += term;
    }
    return out;
}

inline RatElement toRational(const IntElement& x, const RingPtr& target) {
    RatElement out(target);
    for (const auto& [m, c] : x.terms()) out.addTerm(m, Rational(c));
    return out;
}

/// Exact conversion back to integers; throws DomainError on a fractional coefficient.
inline IntElement toInteger(const RatElement& x, const RingPtr& target) {
    IntElement out(target);
    for (const auto& [m, c] : x.terms()) {
        if (!isInteger(c)) throw DomainError("non-integral coefficient " + toString(c));
        out.addTerm(m, numerator(c));
    }
    return out;
}

/// Same generators and relations with a different coefficient mode.
inline RingPtr withMode(const GradedRingSpec& ring, CoefficientMode mode,
                        std::vector<std::vector<std::string>> zero = {}, std::vector<RewriteRule> rewrites = {}) {
    return std::make_shared<GradedRingSpec>(ring.generators(), std::move(zero), mode, std::move(rewrites));
}

// ---------------------------------------------------------------------------
// A(X) = Lambda*(H_1(X)) (x) Z[U] and its mu-images.

inline const std::string kU = "U";

/// The ring A(X): U in degree 2 followed by the H_1 generators in degree 1.
inline RingPtr axRing(const std::vector<std::string>& h1Names) {
    std::vector<Generator> gens{{kU, 2}};
    for (const auto& n : h1Names) {
        if (n == kU) throw ValidationError("H_1 generator may not be named 'U'");
        gens.push_back({n, 1});
    }
    return std::make_shared<GradedRingSpec>(std::move(gens));
}

inline std::string muName(const std::string& generator) { return "mu(" + generator + ")"; }

/// Free graded-commutative ring on the mu-images of the generators of `ax`.
inline RingPtr muRing(const GradedRingSpec& ax) {
    std::vector<Generator> gens;
    for (const Generator& g : ax.generators()) gens.push_back({muName(g.name), g.degree});
    return std::make_shared<GradedRingSpec>(std::move(gens));
}

/// The ring morphism U -> mu(U), gamma -> mu(gamma).
inline IntElement muImage(const IntElement& x) {
    RingPtr target = muRing(*x.ring());
    std::vector<IntElement> images;
    for (const Generator& g : target->generators()) images.push_back(IntElement::generator(target, g.name));
    return substitute<Integer>(x, target, images);
}

/// Images (A_i, B_i) in A(X) of a symplectic basis of H_1 of a surface.
struct H1Pair {
    IntElement a;
    IntElement b;
};

/// xi = prod_i (U - A_i B_i) for orientation +1 and prod_i (U + A_i B_i) for -1.
inline IntElement xiClass(const RingPtr& ax, std::span<const H1Pair> basis, int orientation) {
    if (orientation != 1 && orientation != -1) throw ValidationError("orientation must be +1 or -1");
    IntElement u = IntElement::generator(ax, kU);
    IntElement out = IntElement::one(ax);
    for (const H1Pair& p : basis) {
        if (p.a.homogeneousDegree().value_or(1) != 1 || p.b.homogeneousDegree().value_or(1) != 1)
            throw ValidationError("H_1 images must be degree-one elements");
        IntElement ab = p.a * p.b;
        out = out * (orientation > 0 ? u - ab : u + ab);
    }
    return out;
}

}  // namespace swcalc::algebra
