#pragma once

// Seiberg-Witten tables and the rewrite rules acting on them: the relation
// for surfaces of negative self-intersection, the blow-up formula, the
// reduction of the relation to the case n >= 2g, adjunction and type
// predicates, chamber analysis for b2+ = 1, and the symplectic contradiction
// scenario with Taubes' results taken as input.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "swcalc/algebra.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/linsolve.hpp"
#include "swcalc/manifold.hpp"
#include "swcalc/numeric.hpp"

namespace swcalc::sw {

using algebra::IntElement;
using algebra::Monomial;
using manifold::CohClass;
using manifold::EmbeddedSurface;
using manifold::FourManifold;
using manifold::RatClass;
using manifold::SpinC;
using manifold::operator+;
using manifold::operator-;
using manifold::operator*;

/// Sample point (omega, t') of period space, with t' = t / 2 pi.
struct ChamberPoint {
    RatClass omega;
    Rational tPrime;

    bool operator==(const ChamberPoint&) const = default;
};

inline Rational omegaDot(const FourManifold& x, const RatClass& omega, const CohClass& c) {
    return x.lattice.pairMixed(omega, c);
}

/// Sign of omega.c1 + t'; zero means the point lies on the wall of c1.
inline int wallSide(const FourManifold& x, const ChamberPoint& p, const CohClass& c1) {
    return sign(omegaDot(x, p.omega, c1) + p.tPrime);
}

inline void validateChamber(const FourManifold& x, const ChamberPoint& p) {
    if (p.omega.size() != x.rank()) throw ValidationError("chamber omega has the wrong number of coordinates");
    if (x.lattice.pair(p.omega, p.omega) <= 0) throw ValidationError("chamber omega must have positive square");
}

/// A recorded equation SW(element) = value.
struct Constraint {
    IntElement element;
    Integer value;
};

/// Partial knowledge of SW_{X,s}: A(X) -> Z as a consistent linear system.
/// Only the component of degree d(s) of an element is seen by the functional.
class SWFunctional {
public:
    explicit SWFunctional(Integer dimension) : dimension_(std::move(dimension)) {}

    const Integer& dimension() const { return dimension_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }

    /// Returns false when the equation was already implied.
    bool record(const IntElement& a, const Integer& value) {
        IntElement part = relevantPart(a);
        if (part.isZero()) {
            if (value != 0)
                throw InconsistencyError("nonzero value " + value.str() + " on " + a.str() +
                                         ", which has no component in degree d = " + dimension_.str());
            return false;
        }
        if (!system_.add(toVector(part), Rational(value))) return false;
        constraints_.push_back({part, value});
        return true;
    }

    std::optional<Rational> evaluate(const IntElement& a) const {
        IntElement part = relevantPart(a);
        if (part.isZero()) return Rational(0);
        return system_.evaluate(toVector(part));
    }

    bool isNonzero() const {
        return std::any_of(constraints_.begin(), constraints_.end(), [](const Constraint& c) { return c.value != 0; });
    }

private:
    IntElement relevantPart(const IntElement& a) const {
        if (dimension_ < 0) return IntElement(a.ring());
        return a.component(static_cast<int>(toInt64(dimension_)));
    }

    static EchelonSystem<Monomial>::Vector toVector(const IntElement& a) {
        EchelonSystem<Monomial>::Vector v;
        for (const auto& [m, c] : a.terms()) v.emplace(m, Rational(c));
        return v;
    }

    Integer dimension_;
    EchelonSystem<Monomial> system_;
    std::vector<Constraint> constraints_;
};

class SWTable {
public:
    explicit SWTable(FourManifold x, std::optional<ChamberPoint> chamber = std::nullopt)
        : manifold_(std::move(x)), chamber_(std::move(chamber)) {
        if (manifold_.b2plus() == 1 && !chamber_)
            throw ValidationError("a chamber is required when b2+ = 1");
        if (manifold_.b2plus() != 1 && chamber_)
            throw ValidationError("a chamber is only meaningful when b2+ = 1");
        if (chamber_) validateChamber(manifold_, *chamber_);
    }

    const FourManifold& manifold() const { return manifold_; }
    const std::optional<ChamberPoint>& chamber() const { return chamber_; }
    const std::map<CohClass, SWFunctional>& entries() const { return entries_; }

    bool record(const SpinC& s, const IntElement& a, const Integer& value) {
        if (!algebra::sameRing(a.ring(), manifold_.ax)) throw RingMismatch("element is not in A(X) of this table");
        if (!manifold::isCharacteristic(manifold_, s.c1))
            throw ValidationError("c1 " + manifold::formatClass(s.c1) + " is not characteristic");
        if (chamber_ && wallSide(manifold_, *chamber_, s.c1) == 0)
            throw DomainError("the table's chamber lies on the wall of " + manifold::formatClass(s.c1));
        auto it = entries_.find(s.c1);
        if (it == entries_.end()) it = entries_.emplace(s.c1, SWFunctional(manifold::dimension(manifold_, s))).first;
        return it->second.record(a, value);
    }

    /// Value determined by the recorded equations, or nullopt if undetermined.
    std::optional<Rational> evaluate(const SpinC& s, const IntElement& a) const {
        auto it = entries_.find(s.c1);
        if (it == entries_.end()) {
            Integer d = manifold::dimension(manifold_, s);
            if (d < 0 || a.component(static_cast<int>(toInt64(d))).isZero()) return Rational(0);
            return std::nullopt;
        }
        return it->second.evaluate(a);
    }

    bool isBasicClass(const CohClass& c1) const {
        auto it = entries_.find(c1);
        return it != entries_.end() && it->second.isNonzero();
    }

private:
    FourManifold manifold_;
    std::optional<ChamberPoint> chamber_;
    std::map<CohClass, SWFunctional> entries_;
};

// ---------------------------------------------------------------------------
// Relation along a surface of negative self-intersection.

struct HypothesisCheck {
    std::string name;
    bool holds = false;
    std::string detail;
};

namespace hypothesis {
inline const std::string kB2Plus = "b2+ >= 1";
inline const std::string kGenus = "genus > 0";
inline const std::string kNegativeSquare = "negative self-intersection";
inline const std::string kDimension = "d(s) >= 0";
inline const std::string kThreshold = "|<c1(s),[S]>| >= 2g + n";
inline const std::string kChamberGiven = "chamber given";
inline const std::string kPerpendicular = "chamber perpendicular to PD(S)";
inline const std::string kCommonChamber = "common chamber off both walls";
inline const std::string kExceptional = "last basis vector is an exceptional summand";
inline const std::string kOddCoefficient = "odd exceptional coefficient";
inline const std::string kChamberPerpE = "chamber perpendicular to E";
inline const std::string kPairingBound = "<c1(s),[S]> <= -n - 2g";
inline const std::string kAdjunction = "adjunction formula for the symplectic surface";
inline const std::string kArea = "positive symplectic area";
inline const std::string kCanonicalDimension = "d(s0) = 0";
}  // namespace hypothesis

struct RelationOptions {
    /// Accept g = 0 (the sphere case is a separate known result).
    bool allowGenusZero = false;
};

struct RelationCertificate {
    SpinC s;
    SpinC sTarget;
    int epsilon = 0;
    Integer m;
    Integer pairing;
    Integer n;
    std::int64_t genus = 0;
    Integer dimensionSource;
    Integer dimensionTarget;
    std::vector<HypothesisCheck> hypothesesChecked;
    std::vector<std::string> derivedEquations;
};

struct RelationResult {
    SWTable table;
    RelationCertificate certificate;
};

inline void checkSurface(const FourManifold& x, const EmbeddedSurface& sigma) {
    if (sigma.pd.size() != x.rank()) throw ValidationError("surface class has the wrong number of coordinates");
    if (sigma.genus < 0) throw ValidationError("surface genus is negative");
    if (static_cast<std::int64_t>(sigma.h1.size()) != sigma.genus)
        throw ValidationError("surface '" + sigma.name + "' needs exactly g pairs of H_1 images");
    for (const auto& p : sigma.h1)
        if (!algebra::sameRing(p.a.ring(), x.ax) || !algebra::sameRing(p.b.ring(), x.ax))
            throw RingMismatch("H_1 images of '" + sigma.name + "' are not in A(X)");
}

inline IntElement xiOf(const FourManifold& x, const EmbeddedSurface& sigma, int orientation) {
    return algebra::xiClass(x.ax, sigma.h1, orientation);
}

/// (2g + n) - |<c1(s),[S]>|: positive when the relation's threshold fails.
inline Integer relationThresholdDeficit(const FourManifold& x, const SpinC& s, const EmbeddedSurface& sigma) {
    Integer k = x.pair(s.c1, sigma.pd);
    Integer n = -x.square(sigma.pd);
    return 2 * sigma.genus + n - abs(k);
}

inline std::vector<HypothesisCheck> relationHypotheses(const SWTable& table, const SpinC& s,
                                                       const EmbeddedSurface& sigma, RelationOptions options = {}) {
    const FourManifold& x = table.manifold();
    checkSurface(x, sigma);
    std::vector<HypothesisCheck> out;
    Integer k = x.pair(s.c1, sigma.pd);
    Integer n = -x.square(sigma.pd);
    Integer d = manifold::dimension(x, s);
    out.push_back({hypothesis::kB2Plus, x.b2plus() >= 1, "b2+ = " + std::to_string(x.b2plus())});
    out.push_back({options.allowGenusZero ? std::string("genus >= 0") : hypothesis::kGenus,
                   options.allowGenusZero ? sigma.genus >= 0 : sigma.genus > 0,
                   "g = " + std::to_string(sigma.genus)});
    out.push_back({hypothesis::kNegativeSquare, n > 0, "[S].[S] = " + Integer(-n).str()});
    out.push_back({hypothesis::kDimension, d >= 0, "d(s) = " + d.str()});
    Integer bound = 2 * sigma.genus + n;
    out.push_back({hypothesis::kThreshold, k != 0 && abs(k) >= bound,
                   "|<c1(s),[S]>| = " + Integer(abs(k)).str() + ", 2g + n = " + bound.str()});
    if (x.b2plus() == 1) {
        const auto& p = table.chamber();
        out.push_back({hypothesis::kChamberGiven, p.has_value(), p ? "present" : "missing"});
        if (p) {
            Rational wPd = omegaDot(x, p->omega, sigma.pd);
            out.push_back({hypothesis::kPerpendicular, wPd == 0, "omega.PD(S) = " + toString(wPd)});
            int eps = sign(k) == 0 ? 1 : sign(k);
            CohClass target = s.c1 + Integer(2 * eps) * sigma.pd;
            int a = wallSide(x, *p, s.c1);
            int b = wallSide(x, *p, target);
            out.push_back({hypothesis::kCommonChamber, a != 0 && a == b,
                           "wall sides " + std::to_string(a) + " and " + std::to_string(b)});
        }
    }
    return out;
}

inline void requireAll(const std::vector<HypothesisCheck>& checks) {
    for (const auto& c : checks)
        if (!c.holds) throw HypothesisError(c.name, c.detail);
}

/// For every recorded SW_s(a) = v, records SW_{s + eps PD(S)}(xi(eps S) U^m a) = v.
inline RelationResult applyRelation(const SWTable& table, const SpinC& s, const EmbeddedSurface& sigma,
                                    RelationOptions options = {}) {
    const FourManifold& x = table.manifold();
    std::vector<HypothesisCheck> checks = relationHypotheses(table, s, sigma, options);
    requireAll(checks);
    if (!manifold::isCharacteristic(x, s.c1))
        throw ValidationError("c1 " + manifold::formatClass(s.c1) + " is not characteristic");

    RelationCertificate cert;
    cert.s = s;
    cert.pairing = x.pair(s.c1, sigma.pd);
    cert.n = -x.square(sigma.pd);
    cert.genus = sigma.genus;
    cert.epsilon = sign(cert.pairing);
    Integer twoM = abs(cert.pairing) - 2 * sigma.genus - cert.n;
    if (twoM % 2 != 0) throw InternalError("|<c1,[S]>| - 2g - n is odd for a characteristic c1");
    cert.m = twoM / 2;
    cert.sTarget = manifold::twistSpinC(x, s, Integer(cert.epsilon) * sigma.pd);
    cert.dimensionSource = manifold::dimension(x, s);
    cert.dimensionTarget = manifold::dimension(x, cert.sTarget);
    cert.hypothesesChecked = checks;
    if (cert.dimensionTarget - cert.dimensionSource != 2 * sigma.genus + 2 * cert.m)
        throw InternalError("degree bookkeeping of the relation failed");

    IntElement factor = xiOf(x, sigma, cert.epsilon) *
                        algebra::power(IntElement::generator(x.ax, algebra::kU), static_cast<unsigned>(toInt64(cert.m)));
    SWTable out = table;
    auto it = table.entries().find(s.c1);
    if (it != table.entries().end()) {
        for (const Constraint& c : it->second.constraints()) {
            IntElement image = factor * c.element;
            out.record(cert.sTarget, image, c.value);
            cert.derivedEquations.push_back("SW_" + manifold::formatClass(cert.sTarget.c1) + "(" + image.str() +
                                            ") = " + c.value.str());
        }
    }
    return {std::move(out), std::move(cert)};
}

// ---------------------------------------------------------------------------
// Blow-up formula.

/// Identity images of the generators of A(X), used to move elements between
/// equal rings held by different manifolds.
inline std::vector<IntElement> generatorsOf(const FourManifold& x) {
    std::vector<IntElement> out;
    for (const auto& g : x.ax->generators()) out.push_back(IntElement::generator(x.ax, g.name));
    return out;
}

struct BlowDownResult {
    SWTable table;
    SpinC s;
    Integer m;
    Integer exceptionalCoefficient;
};

inline FourManifold blowDownManifold(const FourManifold& hat) {
    std::size_t last = hat.rank() == 0 ? 0 : hat.rank() - 1;
    if (hat.rank() == 0 || !hat.lattice.isExceptionalSummand(last))
        throw HypothesisError(hypothesis::kExceptional, "the lattice does not end in an orthogonal <-1> summand");
    return FourManifold(hat.h1Names, hat.lattice.withoutLast(), hat.homologyOrientation);
}

/// Transfers SW_{Xhat, shat}(a) = v to SW_{X,s}(U^m a) = v where X is Xhat with
/// its last (exceptional) basis vector removed and 2m = d(s) - d(shat).
/// Entries are merged into `base` when given.
inline BlowDownResult blowUpFormula(const SWTable& hatTable, const SpinC& sHat,
                                    const std::optional<SWTable>& base = std::nullopt) {
    const FourManifold& hat = hatTable.manifold();
    FourManifold x = blowDownManifold(hat);
    const std::size_t last = hat.rank() - 1;
    if (!manifold::isCharacteristic(hat, sHat.c1))
        throw ValidationError("c1 " + manifold::formatClass(sHat.c1) + " is not characteristic");
    Integer a = sHat.c1[last];
    if (a % 2 == 0)
        throw HypothesisError(hypothesis::kOddCoefficient, "c1(shat).E = " + Integer(a).str() + " is even");
    Integer dHat = manifold::dimension(hat, sHat);
    if (dHat < 0) throw HypothesisError(hypothesis::kDimension, "d(shat) = " + dHat.str());
    SpinC s{CohClass(sHat.c1.begin(), sHat.c1.end() - 1)};
    Integer d = manifold::dimension(x, s);
    Integer diff = d - dHat;
    if (diff < 0 || diff % 2 != 0) throw DomainError("d(s) - d(shat) = " + diff.str() + " is negative or odd");
    Integer m = diff / 2;

    std::optional<ChamberPoint> chamber;
    if (hatTable.chamber()) {
        const ChamberPoint& p = *hatTable.chamber();
        if (p.omega[last] != 0)
            throw HypothesisError(hypothesis::kChamberPerpE, "omega.E = " + toString(-p.omega[last]));
        chamber = ChamberPoint{RatClass(p.omega.begin(), p.omega.end() - 1), p.tPrime};
    }
    SWTable out = base ? *base : SWTable(x, chamber);
    if (base) {
        if (base->manifold().lattice.basisNames() != x.lattice.basisNames() ||
            base->manifold().h1Names != x.h1Names)
            throw ValidationError("base table does not live on the blown-down manifold");
    }
    auto it = hatTable.entries().find(sHat.c1);
    if (it != hatTable.entries().end()) {
        IntElement um = algebra::power(IntElement::generator(x.ax, algebra::kU), static_cast<unsigned>(toInt64(m)));
        for (const Constraint& c : it->second.constraints()) {
            IntElement moved = algebra::substitute<Integer>(c.element, x.ax, generatorsOf(x));
            out.record(s, um * moved, c.value);
        }
    }
    return {std::move(out), std::move(s), std::move(m), std::move(a)};
}

/// Carries every entry SW_{X,s} to SW_{Xhat, s + coefficient * E} on a blow-up
/// whose new classes are the trailing basis vectors. Coefficients must be +-1.
inline SWTable liftEntry(const SWTable& table, const SpinC& s, const FourManifold& hat,
                         const std::vector<int>& coefficients, std::optional<SWTable> into = std::nullopt) {
    const FourManifold& x = table.manifold();
    if (hat.rank() != x.rank() + coefficients.size()) throw ValidationError("blow-up rank mismatch");
    for (int c : coefficients)
        if (c != 1 && c != -1) throw ValidationError("lifted exceptional coefficients must be +1 or -1");
    std::optional<ChamberPoint> chamber;
    if (table.chamber()) chamber = ChamberPoint{manifold::RatClass(table.chamber()->omega), table.chamber()->tPrime};
    if (chamber) chamber->omega.resize(hat.rank(), Rational(0));
    SWTable out = into ? *into : SWTable(hat, chamber);
    CohClass c1 = manifold::extend(s.c1, hat.rank());
    for (std::size_t i = 0; i < coefficients.size(); ++i) c1[x.rank() + i] = coefficients[i];
    auto it = table.entries().find(s.c1);
    if (it != table.entries().end())
        for (const Constraint& c : it->second.constraints())
            out.record(SpinC{c1}, algebra::substitute<Integer>(c.element, hat.ax, generatorsOf(hat)), c.value);
    return out;
}

/// Lifts every entry to both classes c1 +- E on a single blow-up.
inline SWTable liftTable(const SWTable& table, const manifold::BlowUp& b) {
    std::optional<ChamberPoint> chamber;
    if (table.chamber()) {
        chamber = *table.chamber();
        chamber->omega.resize(b.manifold.rank(), Rational(0));
    }
    SWTable out(b.manifold, chamber);
    for (const auto& [c1, f] : table.entries())
        for (int sgn : {1, -1}) out = liftEntry(table, SpinC{c1}, b.manifold, {sgn}, out);
    return out;
}

// ---------------------------------------------------------------------------
// Reduction of the relation to the case n >= 2g by blowing up.

struct IdentityCheck {
    std::string name;
    Integer lhs;
    Integer rhs;
    bool holds = false;
};

struct ReductionPlan {
    Integer n;
    Integer pairing;
    std::int64_t genus = 0;
    Integer m;
    Integer ell;
    FourManifold hat;
    std::vector<CohClass> exceptionals;
    EmbeddedSurface sigmaHat;
    SpinC sHat;
    std::vector<IdentityCheck> identities;
};

inline ReductionPlan reductionPlan(const FourManifold& x, const SpinC& s, const EmbeddedSurface& sigma) {
    checkSurface(x, sigma);
    ReductionPlan plan;
    plan.n = -x.square(sigma.pd);
    plan.pairing = x.pair(s.c1, sigma.pd);
    plan.genus = sigma.genus;
    if (plan.n <= 0) throw HypothesisError(hypothesis::kNegativeSquare, "[S].[S] = " + Integer(-plan.n).str());
    if (plan.pairing > -plan.n - 2 * sigma.genus)
        throw HypothesisError(hypothesis::kPairingBound, "<c1(s),[S]> = " + plan.pairing.str());
    Integer d = manifold::dimension(x, s);
    if (d < 0) throw HypothesisError(hypothesis::kDimension, "d(s) = " + d.str());
    Integer twoM = -plan.pairing - plan.n - 2 * sigma.genus;
    if (twoM % 2 != 0) throw DomainError("-<c1(s),[S]> - n - 2g is odd; c1 is not characteristic");
    plan.m = twoM / 2;
    plan.ell = std::max(Integer(0), Integer(2 * sigma.genus) - plan.n - plan.m);

    const std::int64_t total = toInt64(plan.ell + plan.m);
    const std::int64_t ell = toInt64(plan.ell);
    FourManifold current = x;
    for (std::int64_t i = 0; i < total; ++i) {
        manifold::BlowUp b = manifold::blowUp(current);
        current = std::move(b.manifold);
    }
    plan.hat = current;
    for (std::int64_t i = 0; i < total; ++i) plan.exceptionals.push_back(manifold::unitClass(plan.hat.rank(), x.rank() + i));
    EmbeddedSurface lifted = manifold::pullBack(sigma, plan.hat);
    plan.sigmaHat = manifold::properTransform(plan.hat, lifted, plan.exceptionals);
    CohClass c1 = manifold::extend(s.c1, plan.hat.rank());
    for (std::int64_t i = 0; i < total; ++i) c1[x.rank() + i] = i < ell ? -1 : 1;
    plan.sHat = manifold::makeSpinC(plan.hat, std::move(c1));

    const Integer nlm = plan.n + plan.ell + plan.m;
    plan.identities.push_back({"[S^].[S^] = -n - l - m", plan.hat.square(plan.sigmaHat.pd), -nlm, false});
    plan.identities.push_back({"<c1(s^),[S^]> = -2g - n - l - m", plan.hat.pair(plan.sHat.c1, plan.sigmaHat.pd),
                               -2 * sigma.genus - nlm, false});
    plan.identities.push_back({"d(s^) = d(s)", manifold::dimension(plan.hat, plan.sHat), d, false});
    for (auto& id : plan.identities) {
        id.holds = id.lhs == id.rhs;
        if (!id.holds)
            throw InternalError("reduction identity '" + id.name + "' fails: " + id.lhs.str() + " != " + id.rhs.str());
    }
    if (nlm < 2 * sigma.genus) throw InternalError("reduction did not reach n + l + m >= 2g");
    return plan;
}

/// Derives the relation along S by the blow-up route: lift s to the blow-up,
/// apply the relation along the proper transform (where m = 0 and n >= 2g),
/// and blow down again. The result is merged into a copy of `table`.
inline RelationResult relateByReduction(const SWTable& table, const SpinC& s, const EmbeddedSurface& sigma) {
    const FourManifold& x = table.manifold();
    ReductionPlan plan = reductionPlan(x, s, sigma);
    std::vector<int> coefficients;
    for (std::size_t i = x.rank(); i < plan.hat.rank(); ++i) coefficients.push_back(toInt64(plan.sHat.c1[i]) > 0 ? 1 : -1);
    SWTable lifted = liftEntry(table, s, plan.hat, coefficients);
    RelationResult onHat = applyRelation(lifted, plan.sHat, plan.sigmaHat);
    if (onHat.certificate.m != 0) throw InternalError("relation on the blow-up has m != 0");

    SWTable current = onHat.table;
    SpinC target = onHat.certificate.sTarget;
    while (current.manifold().rank() > x.rank()) {
        BlowDownResult down = blowUpFormula(current, target);
        current = std::move(down.table);
        target = std::move(down.s);
    }
    RelationResult out{table, onHat.certificate};
    out.certificate.s = s;
    out.certificate.sTarget = target;
    out.certificate.m = plan.m;
    out.certificate.pairing = plan.pairing;
    out.certificate.n = plan.n;
    out.certificate.dimensionSource = manifold::dimension(x, s);
    out.certificate.dimensionTarget = manifold::dimension(x, target);
    out.certificate.derivedEquations.clear();
    auto it = current.entries().find(target.c1);
    if (it != current.entries().end())
        for (const Constraint& c : it->second.constraints()) {
            IntElement e = algebra::substitute<Integer>(c.element, x.ax, generatorsOf(x));
            out.table.record(target, e, c.value);
            out.certificate.derivedEquations.push_back("SW_" + manifold::formatClass(target.c1) + "(" + e.str() +
                                                       ") = " + c.value.str());
        }
    return out;
}

// ---------------------------------------------------------------------------
// Adjunction and type.

/// |<c1(s),[S]>| + [S].[S] <= 2g - 2 for a surface of negative square and positive genus.
inline bool adjunctionCheck(const FourManifold& x, const SpinC& s, const EmbeddedSurface& sigma) {
    Integer sq = x.square(sigma.pd);
    if (sq >= 0) throw HypothesisError(hypothesis::kNegativeSquare, "[S].[S] = " + sq.str());
    if (sigma.genus <= 0) throw HypothesisError(hypothesis::kGenus, "g = " + std::to_string(sigma.genus));
    return abs(x.pair(s.c1, sigma.pd)) + sq <= 2 * sigma.genus - 2;
}

struct TypeReport {
    /// Least m such that every basic class has d(s) < 2m.
    Integer type;
    bool simpleType = true;
    std::optional<Integer> maxDimension;
    std::vector<CohClass> basicClasses;
};

inline TypeReport typeOf(const SWTable& table) {
    TypeReport r;
    r.type = 0;
    for (const auto& [c1, f] : table.entries()) {
        if (!f.isNonzero()) continue;
        r.basicClasses.push_back(c1);
        if (!r.maxDimension || f.dimension() > *r.maxDimension) r.maxDimension = f.dimension();
        if (f.dimension() != 0) r.simpleType = false;
    }
    if (r.maxDimension) {
        Integer dmax = *r.maxDimension;
        r.type = (dmax >= 0 ? dmax / 2 : Integer(-1)) + 1;
        if (r.type < 0) r.type = 0;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Chambers for b2+ = 1.

struct ClassWallReport {
    CohClass c1;
    Rational omegaDotC1;
    int side = 0;
    int sidePlus = 0;
    int sideMinus = 0;
    bool wallsCoincideOnPerp = false;
};

struct ChamberReport {
    Rational omegaSquare;
    Rational omegaDotPd;
    bool perpendicular = false;
    bool offAllWalls = true;
    std::vector<ClassWallReport> classes;
};

/// Rational basis of the orthogonal complement of c.
inline std::vector<RatClass> perpBasis(const FourManifold& x, const CohClass& c) {
    const std::size_t r = x.rank();
    std::vector<Rational> w(r);
    for (std::size_t i = 0; i < r; ++i) w[i] = Rational(x.pair(manifold::unitClass(r, i), c));
    std::size_t p = 0;
    while (p < r && w[p] == 0) ++p;
    std::vector<RatClass> basis;
    for (std::size_t i = 0; i < r; ++i) {
        if (i == p) continue;
        RatClass v(r, Rational(0));
        v[i] = 1;
        if (p < r) v[p] = -w[i] / w[p];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Does omega.(c1 - c1') vanish for every omega orthogonal to PD(S)?
inline bool wallsCoincideOnPerp(const FourManifold& x, const CohClass& c1, const CohClass& c1Other,
                                const EmbeddedSurface& sigma) {
    CohClass diff = c1 - c1Other;
    for (const RatClass& v : perpBasis(x, sigma.pd))
        if (omegaDot(x, v, diff) != 0) return false;
    return true;
}

inline ChamberReport chamberAnalysis(const FourManifold& x, const std::vector<SpinC>& classes,
                                     const EmbeddedSurface& sigma, const ChamberPoint& p) {
    if (x.b2plus() != 1) throw HypothesisError("b2+ = 1", "b2+ = " + std::to_string(x.b2plus()));
    validateChamber(x, p);
    ChamberReport r;
    r.omegaSquare = x.lattice.pair(p.omega, p.omega);
    r.omegaDotPd = omegaDot(x, p.omega, sigma.pd);
    r.perpendicular = r.omegaDotPd == 0;
    for (const SpinC& s : classes) {
        ClassWallReport c;
        c.c1 = s.c1;
        c.omegaDotC1 = omegaDot(x, p.omega, s.c1);
        c.side = wallSide(x, p, s.c1);
        c.sidePlus = wallSide(x, p, s.c1 + Integer(2) * sigma.pd);
        c.sideMinus = wallSide(x, p, s.c1 - Integer(2) * sigma.pd);
        c.wallsCoincideOnPerp = wallsCoincideOnPerp(x, s.c1, s.c1 + Integer(2) * sigma.pd, sigma) &&
                                wallsCoincideOnPerp(x, s.c1, s.c1 - Integer(2) * sigma.pd, sigma);
        if (c.side == 0) throw DomainError("chamber point lies on the wall of " + manifold::formatClass(s.c1));
        r.classes.push_back(std::move(c));
    }
    return r;
}

/// Number of connected components of (Sigma-perp slice of the positive cone) x R
/// minus the walls of the two classes.
inline int perpendicularCommonChambers(const FourManifold& x, const CohClass& c1, const CohClass& c1Other,
                                       const EmbeddedSurface& sigma) {
    std::vector<RatClass> v = perpBasis(x, sigma.pd);
    auto gramOn = [&](const std::vector<RatClass>& basis) {
        std::vector<std::vector<Rational>> g(basis.size(), std::vector<Rational>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = x.lattice.pair(basis[i], basis[j]);
        return g;
    };
    if (manifold::diagonalizeSignature(gramOn(v), true).positive == 0) return 0;
    CohClass diff = c1 - c1Other;
    std::vector<Rational> f;
    bool zero = true;
    for (const RatClass& b : v) {
        f.push_back(omegaDot(x, b, diff));
        if (f.back() != 0) zero = false;
    }
    if (zero) return 2;
    // The two walls are distinct graphs over the cone; they cross iff the
    // hyperplane where they agree meets the interior of the cone.
    std::size_t p = 0;
    while (f[p] == 0) ++p;
    std::vector<RatClass> kernel;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i == p) continue;
        RatClass w = v[i];
        Rational t = f[i] / f[p];
        for (std::size_t j = 0; j < w.size(); ++j) w[j] -= t * v[p][j];
        kernel.push_back(std::move(w));
    }
    return manifold::diagonalizeSignature(gramOn(kernel), true).positive > 0 ? 4 : 3;
}

// ---------------------------------------------------------------------------
// The symplectic contradiction scenario.

struct TaubesInput {
    FourManifold x;
    CohClass canonical;
    RatClass omega;
    EmbeddedSurface sigma;
    EmbeddedSurface sigmaPrime;
    int seedSign = 1;
};

struct TaubesVerdict {
    bool contradiction = false;
    bool genusZeroRoute = false;
    SpinC s0;
    Integer n;
    Integer pairing;
    Integer threshold;
    Integer deficit;
    Rational area;
    std::optional<ChamberPoint> chamber;
    std::optional<RelationCertificate> certificate;
    std::optional<SWTable> table;
    std::optional<SpinC> target;
    std::optional<Rational> derivedValue;
    Rational omegaDotC1Before;
    std::optional<Rational> omegaDotC1After;
};

inline TaubesVerdict taubesScenario(const TaubesInput& in) {
    const FourManifold& x = in.x;
    checkSurface(x, in.sigma);
    checkSurface(x, in.sigmaPrime);
    if (in.sigma.pd != in.sigmaPrime.pd) throw ValidationError("[S'] must equal [S]");
    if (in.omega.size() != x.rank()) throw ValidationError("omega has the wrong number of coordinates");
    if (in.seedSign != 1 && in.seedSign != -1) throw ValidationError("seed sign must be +1 or -1");
    TaubesVerdict v;
    v.n = -x.square(in.sigma.pd);
    if (v.n <= 0)
        throw HypothesisError(hypothesis::kNegativeSquare,
                              "[S].[S] = " + Integer(-v.n).str() + "; blow up first to make it negative");
    Integer kDotS = x.pair(in.canonical, in.sigma.pd);
    if (-v.n + kDotS != 2 * in.sigma.genus - 2)
        throw HypothesisError(hypothesis::kAdjunction,
                              "[S].[S] + <K,[S]> = " + Integer(-v.n + kDotS).str() + ", 2g - 2 = " +
                                  std::to_string(2 * in.sigma.genus - 2));
    v.area = omegaDot(x, in.omega, in.sigma.pd);
    if (v.area <= 0) throw HypothesisError(hypothesis::kArea, "omega.[S] = " + toString(v.area));
    v.s0 = manifold::makeSpinC(x, -in.canonical);
    Integer d0 = manifold::dimension(x, v.s0);
    if (d0 != 0) throw HypothesisError(hypothesis::kCanonicalDimension, "d(s0) = " + d0.str());

    v.pairing = x.pair(v.s0.c1, in.sigmaPrime.pd);
    v.threshold = 2 * in.sigmaPrime.genus + v.n;
    v.deficit = v.threshold - abs(v.pairing);
    v.omegaDotC1Before = omegaDot(x, in.omega, v.s0.c1);

    if (x.b2plus() == 1) {
        // Perpendicular part of omega, paired with a very negative t'.
        Rational sq = Rational(x.square(in.sigma.pd));
        RatClass w = in.omega;
        Rational t = v.area / sq;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= t * Rational(in.sigma.pd[i]);
        Rational wc = omegaDot(x, w, v.s0.c1);
        v.chamber = ChamberPoint{w, -(abs(wc) + 1)};
    }
    SWTable seed(x, v.chamber);
    seed.record(v.s0, IntElement::one(x.ax), in.seedSign);
    v.table = seed;
    v.genusZeroRoute = in.sigmaPrime.genus == 0;
    if (v.deficit > 0 || v.pairing == 0) return v;

    RelationOptions options;
    options.allowGenusZero = v.genusZeroRoute;
    RelationResult r = applyRelation(seed, v.s0, in.sigmaPrime, options);
    IntElement probe = xiOf(x, in.sigmaPrime, r.certificate.epsilon) *
                       algebra::power(IntElement::generator(x.ax, algebra::kU),
                                      static_cast<unsigned>(toInt64(r.certificate.m)));
    v.derivedValue = r.table.evaluate(r.certificate.sTarget, probe);
    v.target = r.certificate.sTarget;
    v.omegaDotC1After = omegaDot(x, in.omega, r.certificate.sTarget.c1);
    v.certificate = r.certificate;
    v.table = std::move(r.table);
    v.contradiction = v.derivedValue && *v.derivedValue != 0 && *v.omegaDotC1After < v.omegaDotC1Before;
    return v;
}

}  // namespace swcalc::sw
