#pragma once

// Scenario files: JSON loading and validation, a session threaded through an
// ordered list of command records, and text/JSON reports of derived facts.

#include <cstdint>
#include <algorithm>
#include <array>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swcalc/algebra.hpp"
#include "swcalc/chern.hpp"
#include "swcalc/clifford.hpp"
#include "swcalc/errors.hpp"
#include "swcalc/manifold.hpp"
#include "swcalc/neck.hpp"
#include "swcalc/numeric.hpp"
#include "swcalc/report.hpp"
#include "swcalc/scenarios.hpp"
#include "swcalc/selftest.hpp"
#include "swcalc/sw.hpp"

namespace swcalc::io {

using json = nlohmann::ordered_json;
using algebra::IntElement;
using manifold::CohClass;
using manifold::EmbeddedSurface;
using manifold::FourManifold;
using manifold::RatClass;
using manifold::SpinC;
using manifold::operator+;
using manifold::operator-;
using manifold::operator*;

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kParseFailure = 2,
    kValidationFailure = 3,
    kOperationFailure = 4,
    kInconsistency = 5,
};

inline int exitCodeFor(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const json::parse_error*>(&e)) return kParseFailure;
    if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const RingMismatch*>(&e) ||
        dynamic_cast<const json::exception*>(&e))
        return kValidationFailure;
    if (dynamic_cast<const InconsistencyError*>(&e)) return kInconsistency;
    return kOperationFailure;
}

// ---------------------------------------------------------------------------
// Field access.

inline const json& field(const json& rec, const std::string& key) {
    if (!rec.is_object() || !rec.contains(key)) throw ValidationError("missing field '" + key + "'");
    return rec.at(key);
}

inline Integer parseInteger(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
    if (j.is_string()) {
        Rational q = parseRational(j.get<std::string>());
        if (!isInteger(q)) throw ValidationError(what + " must be an integer");
        return numerator(q);
    }
    throw ValidationError(what + " must be an integer or a decimal string");
}

inline Rational parseRationalField(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) return parseRational(j.get<std::string>());
    throw ValidationError(what + " must be an integer or a \"p/q\" string");
}

inline std::int64_t getInt(const json& rec, const std::string& key, std::optional<std::int64_t> fallback = std::nullopt) {
    if (!rec.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError("missing field '" + key + "'");
    }
    return toInt64(parseInteger(rec.at(key), key));
}

inline std::string getString(const json& rec, const std::string& key,
                             std::optional<std::string> fallback = std::nullopt) {
    if (!rec.contains(key)) {
        if (fallback) return *fallback;
        throw ValidationError("missing field '" + key + "'");
    }
    if (!rec.at(key).is_string()) throw ValidationError("field '" + key + "' must be a string");
    return rec.at(key).get<std::string>();
}

inline bool getBool(const json& rec, const std::string& key, bool fallback) {
    if (!rec.contains(key)) return fallback;
    if (!rec.at(key).is_boolean()) throw ValidationError("field '" + key + "' must be a boolean");
    return rec.at(key).get<bool>();
}

inline CohClass parseClass(const json& j, std::size_t rank, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    if (j.size() != rank)
        throw ValidationError(what + " has " + std::to_string(j.size()) + " coordinates, lattice rank is " +
                              std::to_string(rank));
    CohClass c;
    for (const auto& v : j) c.push_back(parseInteger(v, what));
    return c;
}

inline RatClass parseRatClass(const json& j, std::size_t rank, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be an array");
    if (j.size() != rank) throw ValidationError(what + " has the wrong number of coordinates");
    RatClass c;
    for (const auto& v : j) c.push_back(parseRationalField(v, what));
    return c;
}

inline json classToJson(const CohClass& c) {
    json out = json::array();
    for (const auto& v : c) {
        if (v >= INT64_MIN && v <= INT64_MAX) out.push_back(toInt64(v));
        else out.push_back(v.str());
    }
    return out;
}

inline std::string yesNo(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------
// Session.

struct Session {
    std::optional<FourManifold> manifold;
    std::map<std::string, EmbeddedSurface> surfaces;
    std::map<std::string, SpinC> spinc;
    std::optional<sw::ChamberPoint> chamber;
    std::optional<sw::SWTable> table;

    const FourManifold& requireManifold() const {
        if (!manifold) throw ValidationError("no manifold loaded; pass a scenario file with a \"manifold\" section");
        return *manifold;
    }

    const EmbeddedSurface& surface(const std::string& name) const {
        auto it = surfaces.find(name);
        if (it == surfaces.end()) throw ValidationError("unknown surface '" + name + "'");
        return it->second;
    }

    SpinC spincNamed(const std::string& name) const {
        auto it = spinc.find(name);
        if (it == spinc.end()) throw ValidationError("unknown spinc structure '" + name + "'");
        return it->second;
    }

    /// A Spin_C structure from a record: "spinc" names one, "c1" gives the class.
    SpinC spincFrom(const json& rec) const {
        if (rec.contains("spinc")) return spincNamed(getString(rec, "spinc"));
        if (rec.contains("c1")) return manifold::makeSpinC(requireManifold(), parseClass(rec.at("c1"), requireManifold().rank(), "c1"));
        throw ValidationError("missing field 'spinc' or 'c1'");
    }

    sw::SWTable& requireTable() {
        if (!table) table.emplace(requireManifold(), chamber);
        return *table;
    }
};

/// A degree-one element sum c_j gamma_j from [[name, coefficient], ...].
inline IntElement parseH1Image(const FourManifold& x, const json& j, const std::string& what) {
    if (!j.is_array()) throw ValidationError(what + " must be a list of [generator, coefficient] pairs");
    IntElement e(x.ax);
    for (const auto& term : j) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_string())
            throw ValidationError(what + " entries must be [generator, coefficient]");
        std::string name = term[0].get<std::string>();
        if (name == algebra::kU || std::find(x.h1Names.begin(), x.h1Names.end(), name) == x.h1Names.end())
            throw ValidationError(what + " refers to unknown H_1 generator '" + name + "'");
        e += parseInteger(term[1], what) * IntElement::generator(x.ax, name);
    }
    return e;
}

inline IntElement parseMonomial(const FourManifold& x, const json& j) {
    if (!j.is_object()) throw ValidationError("monomial must be an object {\"U\": e, \"h1\": [names]}");
    std::int64_t e = getInt(j, "U", 0);
    if (e < 0) throw ValidationError("negative power of U");
    IntElement out = algebra::power(IntElement::generator(x.ax, algebra::kU), static_cast<unsigned>(e));
    if (j.contains("h1")) {
        if (!j.at("h1").is_array()) throw ValidationError("monomial h1 must be a list of names");
        for (const auto& n : j.at("h1")) {
            if (!n.is_string()) throw ValidationError("monomial h1 entries must be names");
            std::string name = n.get<std::string>();
            if (std::find(x.h1Names.begin(), x.h1Names.end(), name) == x.h1Names.end())
                throw ValidationError("unknown H_1 generator '" + name + "'");
            out = out * IntElement::generator(x.ax, name);
        }
    }
    return out;
}

/// Builds and validates the session from a scenario document. The
/// "commands", "facts", "exit_code" and "error" keys are not part of it.
inline Session loadSession(const json& doc) {
    if (!doc.is_object()) throw ParseError("scenario must be a JSON object");
    static const std::vector<std::string> known{"manifold", "surfaces", "spinc", "swtable", "chamber",
                                                "commands", "facts",    "exit_code", "error"};
    for (const auto& [key, value] : doc.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("unknown top-level key '" + key + "'");
    Session s;
    if (doc.contains("manifold")) {
        const json& m = doc.at("manifold");
        std::vector<std::string> h1;
        if (m.contains("h1"))
            for (const auto& n : m.at("h1")) h1.push_back(n.get<std::string>());
        if (m.contains("b1") && getInt(m, "b1") != static_cast<std::int64_t>(h1.size()))
            throw ValidationError("b1 does not match the number of H_1 generator names");
        const json& gramJson = field(m, "gram");
        if (!gramJson.is_array()) throw ValidationError("gram must be an array of rows");
        std::vector<std::vector<Integer>> gram;
        for (const auto& row : gramJson) {
            if (!row.is_array()) throw ValidationError("gram rows must be arrays");
            std::vector<Integer> r;
            for (const auto& v : row) r.push_back(parseInteger(v, "gram entry"));
            gram.push_back(std::move(r));
        }
        std::vector<std::string> basis;
        if (m.contains("basis")) {
            for (const auto& n : m.at("basis")) basis.push_back(n.get<std::string>());
        } else {
            for (std::size_t i = 0; i < gram.size(); ++i) basis.push_back("e" + std::to_string(i + 1));
        }
        int orientation = static_cast<int>(getInt(m, "homology_orientation", 1));
        s.manifold.emplace(h1, manifold::IntersectionLattice(basis, gram), orientation);
    }
    auto needManifold = [&](const std::string& key) -> const FourManifold& {
        if (!s.manifold) throw ValidationError("\"" + key + "\" needs a \"manifold\" section");
        return *s.manifold;
    };
    if (doc.contains("surfaces")) {
        const FourManifold& x = needManifold("surfaces");
        for (const auto& j : doc.at("surfaces")) {
            EmbeddedSurface e;
            e.name = getString(j, "name");
            e.pd = parseClass(field(j, "pd"), x.rank(), "surface '" + e.name + "' pd");
            e.genus = getInt(j, "genus");
            if (j.contains("h1"))
                for (const auto& p : j.at("h1"))
                    e.h1.push_back({parseH1Image(x, field(p, "a"), "surface '" + e.name + "' h1"),
                                    parseH1Image(x, field(p, "b"), "surface '" + e.name + "' h1")});
            sw::checkSurface(x, e);
            if (!s.surfaces.emplace(e.name, e).second) throw ValidationError("duplicate surface '" + e.name + "'");
        }
    }
    if (doc.contains("spinc")) {
        const FourManifold& x = needManifold("spinc");
        for (const auto& j : doc.at("spinc")) {
            std::string name = getString(j, "name");
            SpinC sc = manifold::makeSpinC(x, parseClass(field(j, "c1"), x.rank(), "spinc '" + name + "' c1"));
            if (!s.spinc.emplace(name, sc).second) throw ValidationError("duplicate spinc '" + name + "'");
        }
    }
    if (doc.contains("chamber")) {
        const FourManifold& x = needManifold("chamber");
        const json& c = doc.at("chamber");
        s.chamber = sw::ChamberPoint{parseRatClass(field(c, "omega"), x.rank(), "chamber omega"),
                                     parseRationalField(field(c, "tPrime"), "chamber tPrime")};
    }
    if (doc.contains("swtable")) {
        const FourManifold& x = needManifold("swtable");
        sw::SWTable& t = s.requireTable();
        for (const auto& j : doc.at("swtable"))
            t.record(s.spincNamed(getString(j, "spinc")), parseMonomial(x, field(j, "monomial")),
                     parseInteger(field(j, "value"), "swtable value"));
    }
    return s;
}

inline std::vector<json> commandsOf(const json& doc) {
    std::vector<json> out;
    if (!doc.contains("commands")) return out;
    if (!doc.at("commands").is_array()) throw ParseError("\"commands\" must be an array");
    for (const auto& c : doc.at("commands")) {
        if (!c.is_object() || !c.contains("command") || !c.at("command").is_string())
            throw ParseError("each command record needs a \"command\" string");
        out.push_back(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Commands.

class FactSink {
public:
    explicit FactSink(Facts& out) : out_(out) {}
    void add(const std::string& key, const std::string& value, const std::string& provenance) {
        out_.push_back({key, value, provenance});
    }

private:
    Facts& out_;
};

namespace commands {

inline void dim(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    if (!rec.contains("spinc") && !rec.contains("c1")) {
        for (const auto& [name, sc] : s.spinc) f.add("d(" + name + ")", manifold::dimension(x, sc).str(), provenance::kDimension);
        return;
    }
    SpinC sc = s.spincFrom(rec);
    std::string label = rec.contains("spinc") ? getString(rec, "spinc") : manifold::formatClass(sc.c1);
    f.add("d(" + label + ")", manifold::dimension(x, sc).str(), provenance::kDimension);
}

inline void characteristic(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    CohClass c = rec.contains("spinc") ? s.spincNamed(getString(rec, "spinc")).c1
                                       : parseClass(field(rec, "c1"), x.rank(), "c1");
    f.add("characteristic" + manifold::formatClass(c), yesNo(manifold::isCharacteristic(x, c)),
          provenance::kCharacteristic);
}

inline void blowup(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    std::string name = rec.contains("name") ? getString(rec, "name") : manifold::freshBasisName(x);
    manifold::BlowUp b = manifold::blowUp(x, name);
    if (s.table) s.table = sw::liftTable(*s.table, b);
    if (s.chamber) s.chamber->omega.resize(b.manifold.rank(), Rational(0));
    for (auto& [n, surface] : s.surfaces) surface = manifold::pullBack(surface, b.manifold);
    for (auto& [n, sc] : s.spinc) {
        sc.c1 = manifold::extend(sc.c1, b.manifold.rank());
        sc.c1.back() = 1;
    }
    s.manifold = b.manifold;
    f.add("exceptional", name, provenance::kBlowUp);
    f.add("rank", std::to_string(b.manifold.rank()), provenance::kBlowUp);
    f.add("b2+", std::to_string(b.manifold.b2plus()), provenance::kBlowUp);
    f.add("b2-", std::to_string(b.manifold.lattice.b2minus()), provenance::kBlowUp);
    f.add("euler", std::to_string(b.manifold.euler()), provenance::kBlowUp);
    f.add("signature", std::to_string(b.manifold.signature()), provenance::kBlowUp);
    if (s.table) f.add("table_entries", std::to_string(s.table->entries().size()), provenance::kBlowUp);
}

inline void transform(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    std::string from = getString(rec, "surface");
    std::vector<CohClass> exceptionals;
    for (const auto& n : field(rec, "exceptionals")) {
        if (!n.is_string()) throw ValidationError("exceptionals must be basis names");
        exceptionals.push_back(manifold::unitClass(x.rank(), x.lattice.indexOf(n.get<std::string>())));
    }
    EmbeddedSurface t = manifold::properTransform(x, s.surface(from), exceptionals);
    t.name = getString(rec, "as", from + "^");
    f.add(t.name + ".pd", manifold::formatClass(t.pd), provenance::kProperTransform);
    f.add(t.name + ".square", x.square(t.pd).str(), provenance::kProperTransform);
    f.add(t.name + ".genus", std::to_string(t.genus), provenance::kProperTransform);
    s.surfaces[t.name] = t;
}

inline void reportHypotheses(const std::vector<sw::HypothesisCheck>& checks, FactSink& f, const std::string& prov) {
    for (const auto& c : checks)
        f.add("hypothesis[" + c.name + "]", std::string(c.holds ? "holds" : "fails") + " (" + c.detail + ")", prov);
}

inline void reportEquations(const std::vector<std::string>& eqs, FactSink& f, const std::string& prov) {
    for (std::size_t i = 0; i < eqs.size(); ++i) f.add("equation[" + std::to_string(i + 1) + "]", eqs[i], prov);
}

inline void reportCertificate(const sw::RelationCertificate& c, FactSink& f, const std::string& prov) {
    f.add("epsilon", std::to_string(c.epsilon), prov);
    f.add("m", c.m.str(), prov);
    f.add("n", c.n.str(), prov);
    f.add("pairing", c.pairing.str(), prov);
    f.add("target_c1", manifold::formatClass(c.sTarget.c1), prov);
    f.add("d(source)", c.dimensionSource.str(), prov);
    f.add("d(target)", c.dimensionTarget.str(), prov);
}

inline void relate(Session& s, const json& rec, FactSink& f) {
    SpinC sc = s.spincFrom(rec);
    const EmbeddedSurface& sigma = s.surface(getString(rec, "surface"));
    sw::RelationOptions options;
    options.allowGenusZero = getBool(rec, "allow_genus_zero", false);
    sw::SWTable& table = s.requireTable();
    reportHypotheses(sw::relationHypotheses(table, sc, sigma, options), f, provenance::kRelation);
    sw::RelationResult r = sw::applyRelation(table, sc, sigma, options);
    reportCertificate(r.certificate, f, provenance::kRelation);
    reportEquations(r.certificate.derivedEquations, f, provenance::kRelation);
    s.table = std::move(r.table);
    if (rec.contains("as")) s.spinc[getString(rec, "as")] = r.certificate.sTarget;
}

inline void reduce(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    SpinC sc = s.spincFrom(rec);
    const EmbeddedSurface& sigma = s.surface(getString(rec, "surface"));
    sw::ReductionPlan plan = sw::reductionPlan(x, sc, sigma);
    const std::string& p = provenance::kReduction;
    f.add("n", plan.n.str(), p);
    f.add("pairing", plan.pairing.str(), p);
    f.add("genus", std::to_string(plan.genus), p);
    f.add("m", plan.m.str(), p);
    f.add("ell", plan.ell.str(), p);
    f.add("blowups", std::to_string(plan.exceptionals.size()), p);
    f.add("s_hat.c1", manifold::formatClass(plan.sHat.c1), p);
    f.add("surface_hat.pd", manifold::formatClass(plan.sigmaHat.pd), p);
    for (const auto& id : plan.identities)
        f.add("identity[" + id.name + "]", id.lhs.str() + " = " + id.rhs.str() + (id.holds ? ": holds" : ": fails"), p);
    if (!getBool(rec, "apply", true)) return;
    sw::RelationResult r = sw::relateByReduction(s.requireTable(), sc, sigma);
    reportCertificate(r.certificate, f, p);
    reportEquations(r.certificate.derivedEquations, f, p);
    s.table = std::move(r.table);
    if (rec.contains("as")) s.spinc[getString(rec, "as")] = r.certificate.sTarget;
}

inline void adjunction(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    const EmbeddedSurface& sigma = s.surface(getString(rec, "surface"));
    if (rec.contains("canonical")) {
        CohClass k = parseClass(rec.at("canonical"), x.rank(), "canonical");
        manifold::AdjunctionValue a = manifold::adjunctionGenus(x, sigma.pd, k);
        f.add("adjunction_genus", toString(a.genus), provenance::kAdjunctionFormula);
    }
    if (!rec.contains("spinc") && !rec.contains("c1")) return;
    SpinC sc = s.spincFrom(rec);
    Integer lhs = abs(x.pair(sc.c1, sigma.pd)) + x.square(sigma.pd);
    f.add("|<c1,[S]>| + [S].[S]", lhs.str(), provenance::kAdjunctionInequality);
    f.add("2g - 2", std::to_string(2 * sigma.genus - 2), provenance::kAdjunctionInequality);
    f.add("inequality_holds", yesNo(sw::adjunctionCheck(x, sc, sigma)), provenance::kAdjunctionInequality);
}

inline void type(Session& s, const json&, FactSink& f) {
    sw::TypeReport r = sw::typeOf(s.requireTable());
    f.add("type", r.type.str(), provenance::kType);
    f.add("simple_type", yesNo(r.simpleType), provenance::kType);
    f.add("max_dimension", r.maxDimension ? r.maxDimension->str() : "none", provenance::kType);
    std::string classes;
    for (const auto& c : r.basicClasses) classes += (classes.empty() ? "" : "; ") + manifold::formatClass(c);
    f.add("basic_classes", classes.empty() ? "none" : classes, provenance::kType);
}

inline void chambers(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    if (!s.chamber) throw ValidationError("no chamber in the scenario");
    const EmbeddedSurface& sigma = s.surface(getString(rec, "surface"));
    std::vector<std::pair<std::string, SpinC>> classes;
    if (rec.contains("spinc")) {
        const json& names = rec.at("spinc");
        if (names.is_string()) classes.emplace_back(names.get<std::string>(), s.spincNamed(names.get<std::string>()));
        else
            for (const auto& n : names) classes.emplace_back(n.get<std::string>(), s.spincNamed(n.get<std::string>()));
    } else {
        for (const auto& [n, sc] : s.spinc) classes.emplace_back(n, sc);
    }
    std::vector<SpinC> list;
    for (const auto& [n, sc] : classes) list.push_back(sc);
    sw::ChamberReport r = sw::chamberAnalysis(x, list, sigma, *s.chamber);
    const std::string& p = provenance::kChambers;
    f.add("omega^2", toString(r.omegaSquare), p);
    f.add("omega.PD(S)", toString(r.omegaDotPd), p);
    f.add("perpendicular", yesNo(r.perpendicular), p);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const std::string& n = classes[i].first;
        const sw::ClassWallReport& c = r.classes[i];
        f.add(n + ".omega.c1", toString(c.omegaDotC1), p);
        f.add(n + ".side", std::to_string(c.side), p);
        f.add(n + ".side(c1 + 2PD)", std::to_string(c.sidePlus), p);
        f.add(n + ".side(c1 - 2PD)", std::to_string(c.sideMinus), p);
        f.add(n + ".walls_coincide_on_perp", yesNo(c.wallsCoincideOnPerp), p);
        f.add(n + ".perpendicular_common_chambers(c1 + 2PD)",
              std::to_string(sw::perpendicularCommonChambers(x, c.c1, c.c1 + Integer(2) * sigma.pd, sigma)), p);
        f.add(n + ".perpendicular_common_chambers(c1 - 2PD)",
              std::to_string(sw::perpendicularCommonChambers(x, c.c1, c.c1 - Integer(2) * sigma.pd, sigma)), p);
    }
}

inline void neckCommand(Session&, const json& rec, FactSink& f) {
    neck::NeckData d{getInt(rec, "g"), getInt(rec, "n"), getInt(rec, "k")};
    std::string modeName = getString(rec, "mode", "strict");
    if (modeName != "strict" && modeName != "generic") throw ValidationError("mode must be 'strict' or 'generic'");
    neck::Mode mode = modeName == "generic" ? neck::Mode::Generic : neck::Mode::Strict;
    neck::BoundaryReport r = neck::classifyBoundaryModuli(d);
    const std::string& p = provenance::kNeckClassification;
    f.add("e", std::to_string(r.e), p);
    f.add("reducibles_nondegenerate", yesNo(r.reducibleNondegenerate), p);
    f.add("irreducibles", r.irreducibles ? "irreducibles exist" : "reducibles only", p);
    if (r.witness) f.add("irreducible_witness", std::to_string(*r.witness), p);
    f.add("transverse_reducible_regime", yesNo(r.transverseReducibleRegime), p);
    f.add("finite_energy_reducible_regime", yesNo(r.finiteEnergyReducibleRegime), p);
    if (r.degreeOfE) f.add("deg(E)", std::to_string(*r.degreeOfE), p);
    f.add("obstruction_regime", yesNo(r.obstructionRegime), p);
    if (r.obstructionRank) f.add("obstruction_rank", std::to_string(*r.obstructionRank), p);
    try {
        neck::KerCoker kc = neck::kerCokerDims(d, mode);
        f.add("ell", std::to_string(kc.ell), provenance::kNeckIndex);
        f.add("kernel", std::to_string(kc.kerDim), provenance::kNeckIndex);
        f.add("cokernel", std::to_string(kc.cokerDim), provenance::kNeckIndex);
        f.add("riemann_roch_sum", std::to_string(kc.riemannRochSum), provenance::kRiemannRoch);
    } catch (const DomainError& e) {
        f.add("kernel_cokernel", std::string("undefined: ") + e.what(), provenance::kNeckIndex);
    }
}

inline void chernCommand(Session&, const json& rec, FactSink& f) {
    std::int64_t g = getInt(rec, "g");
    chern::FamiliesIndex fi = chern::familiesIndexChern(g);
    const std::string& p = provenance::kFamiliesIndex;
    f.add("ch(H0(F))", fi.chH0.str(), p);
    f.add("c(H0(F))", fi.cH0.str(), p);
    f.add("rank(H1(E))", std::to_string(fi.h1E.rank), p);
    f.add("c(H1(E))", fi.h1E.totalChern.str(), p);
    f.add("product_form", yesNo(fi.h1E.formalRoots.has_value()), p);
    if (g < 1) return;
    chern::EulerIdentity e = chern::obstructionEulerIdentity(g);
    f.add("euler_class", e.eulerClass.str(), provenance::kEulerClass);
    f.add("mu(xi(-S))", e.muXi.str(), provenance::kEulerClass);
    f.add("euler_identity", e.holds ? "holds" : "fails", provenance::kEulerClass);
}

inline void reportOffDiagonal(const std::string& label, const clifford::MixedForm& w, FactSink& f) {
    const std::string& p = provenance::kClifford;
    clifford::OffDiagonalReport r = clifford::isCompletelyOffDiagonal(w);
    f.add(label + ".form", w.str(), p);
    f.add(label + ".three_form_witness", r.witness ? r.witness->str() : "none", p);
    std::string failing;
    for (int b = 0; b < 4; ++b)
        if (!r.anticommutatorHolds[b]) failing += (failing.empty() ? "e" : " e") + std::to_string(b + 1);
    f.add(label + ".anticommutator_fails_at", failing.empty() ? "none" : failing, p);
    f.add(label + ".exchanges_chirality", yesNo(clifford::exchangesChirality(clifford::rhoMixed(w))), p);
    f.add(label + ".completely_off_diagonal", yesNo(r.completelyOffDiagonal), p);
}

inline void cliffordCheck(Session&, const json&, FactSink& f) {
    const std::string& p = provenance::kClifford;
    int rel = 0, con = 0, hodge = 0;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) rel += clifford::cliffordRelation(i, j);
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            for (int k = j + 1; k <= 4; ++k)
                con += clifford::contractionIdentityCheck(clifford::Form::one(i), clifford::Form::basis({j, k}));
    for (const auto& c : clifford::threeFormStarCases()) hodge += c.agrees;
    f.add("clifford_relations", std::to_string(rel) + "/16", p);
    f.add("contraction_identity", std::to_string(con) + "/24", p);
    f.add("three_form_hodge_agreement_on_W+", std::to_string(hodge) + "/8", p);
    f.add("volume_trace_on_W+", clifford::traceOnWPlus(clifford::model().volume()).str(), p);
    for (auto [a, b, c] : std::vector<std::array<int, 3>>{{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}})
        reportOffDiagonal("cyclic(" + std::to_string(a) + std::to_string(b) + std::to_string(c) + ")",
                          clifford::cyclicGenerator(a, b, c), f);
    reportOffDiagonal("disk_bundle_difference", clifford::diskBundleDifferenceForm(), f);
    clifford::MixedForm single;
    single.add(1, 2, 3, 1);
    reportOffDiagonal("single_term", single, f);
    f.add("off_diagonal_subspace_dimension", std::to_string(clifford::offDiagonalDimension()), p);
}

inline void reportTaubes(const sw::TaubesVerdict& v, FactSink& f) {
    const std::string& p = provenance::kTaubes;
    const std::string& q = provenance::kMonotonicity;
    f.add("s0.c1", manifold::formatClass(v.s0.c1), p);
    f.add("n", v.n.str(), p);
    f.add("pairing", v.pairing.str(), provenance::kRelation);
    f.add("threshold", v.threshold.str(), provenance::kRelation);
    f.add("deficit", v.deficit.str(), provenance::kRelation);
    f.add("area", toString(v.area), p);
    if (v.chamber) {
        f.add("chamber.omega", manifold::formatClass(v.chamber->omega), provenance::kChambers);
        f.add("chamber.tPrime", toString(v.chamber->tPrime), provenance::kChambers);
    }
    f.add("genus_zero_route", yesNo(v.genusZeroRoute), provenance::kRelation);
    if (v.certificate) reportHypotheses(v.certificate->hypothesesChecked, f, provenance::kRelation);
    if (v.target) f.add("target.c1", manifold::formatClass(v.target->c1), provenance::kRelation);
    if (v.derivedValue) f.add("derived_value", toString(*v.derivedValue), provenance::kRelation);
    f.add("omega.c1(before)", toString(v.omegaDotC1Before), q);
    if (v.omegaDotC1After) f.add("omega.c1(after)", toString(*v.omegaDotC1After), q);
    f.add("contradiction", yesNo(v.contradiction), q);
}

inline void symplectic(Session& s, const json& rec, FactSink& f) {
    const FourManifold& x = s.requireManifold();
    sw::TaubesInput in;
    in.x = x;
    in.canonical = parseClass(field(rec, "canonical"), x.rank(), "canonical");
    in.omega = parseRatClass(field(rec, "omega"), x.rank(), "omega");
    in.sigma = s.surface(getString(rec, "surface"));
    in.sigmaPrime = s.surface(getString(rec, "surface_prime"));
    in.seedSign = static_cast<int>(getInt(rec, "seed_sign", 1));
    sw::TaubesVerdict v = sw::taubesScenario(in);
    reportTaubes(v, f);
    if (v.table) s.table = *v.table;
}

inline void scenario(Session&, const json& rec, FactSink& f) {
    std::string name = getString(rec, "name");
    scenarios::ScenarioResult r;
    if (name == "m-lines") {
        r = scenarios::mLinesExample(getInt(rec, "m")).result;
    } else if (name == "proper-transform") {
        r = scenarios::properTransformScenario(getInt(rec, "d"), getInt(rec, "ell")).result;
    } else if (name == "branched-cover") {
        std::optional<std::int64_t> k;
        if (rec.contains("k")) k = getInt(rec, "k");
        r = scenarios::branchedCoverNeighborhood(getInt(rec, "a", 1), getInt(rec, "g"), getInt(rec, "n"), k).result;
    } else if (name == "local-minimizer") {
        r = scenarios::localMinimizerScenario(getInt(rec, "t"), getInt(rec, "g"), getInt(rec, "self_intersection"));
    } else if (name == "symplectic") {
        std::int64_t g = getInt(rec, "g");
        sw::TaubesVerdict v = sw::taubesScenario(scenarios::symplecticBlowUpExample(
            g, getInt(rec, "genus_prime", g - 1), static_cast<int>(getInt(rec, "seed_sign", 1))));
        reportTaubes(v, f);
        return;
    } else {
        throw ParseError("unknown scenario '" + name +
                         "' (expected m-lines, proper-transform, branched-cover, local-minimizer, symplectic)");
    }
    for (const Fact& fact : r.toFacts()) f.add(fact.key, fact.value, fact.provenance);
    for (const auto& t : r.tags) f.add(r.name + ".tag", t, provenance::kExamples);
}

}  // namespace commands

inline const std::vector<std::string>& commandNames() {
    static const std::vector<std::string> names{"dim",    "characteristic", "blowup", "transform", "relate",
                                                "reduce", "adjunction",     "type",   "chambers",  "neck",
                                                "chern",  "clifford-check", "scenario", "symplectic", "selftest"};
    return names;
}

struct CommandResult {
    std::string command;
    Facts facts;
};

struct Report {
    std::vector<CommandResult> commands;
    int exitCode = kOk;
    std::optional<std::string> error;
};

/// Runs one command record, appending its facts to `out`. Returns false if
/// a self-test check failed.
inline bool execute(Session& s, const json& rec, Facts& out) {
    FactSink f(out);
    const std::string cmd = getString(rec, "command");
    if (cmd == "dim") commands::dim(s, rec, f);
    else if (cmd == "characteristic") commands::characteristic(s, rec, f);
    else if (cmd == "blowup") commands::blowup(s, rec, f);
    else if (cmd == "transform") commands::transform(s, rec, f);
    else if (cmd == "relate") commands::relate(s, rec, f);
    else if (cmd == "reduce") commands::reduce(s, rec, f);
    else if (cmd == "adjunction") commands::adjunction(s, rec, f);
    else if (cmd == "type") commands::type(s, rec, f);
    else if (cmd == "chambers") commands::chambers(s, rec, f);
    else if (cmd == "neck") commands::neckCommand(s, rec, f);
    else if (cmd == "chern") commands::chernCommand(s, rec, f);
    else if (cmd == "clifford-check") commands::cliffordCheck(s, rec, f);
    else if (cmd == "scenario") commands::scenario(s, rec, f);
    else if (cmd == "symplectic") commands::symplectic(s, rec, f);
    else if (cmd == "selftest") {
        bool all = true;
        for (const auto& c : selftest::runAll()) {
            f.add(c.name, c.passed ? "pass" : "FAIL: " + c.detail, provenance::kSelfTest);
            all = all && c.passed;
        }
        return all;
    } else {
        throw ParseError("unknown command '" + cmd + "'");
    }
    return true;
}

/// Executes records in order, stopping at the first error.
inline Report run(Session& s, const std::vector<json>& records) {
    Report r;
    for (const json& rec : records) {
        CommandResult c;
        c.command = rec.value("command", std::string("?"));
        try {
            if (!execute(s, rec, c.facts)) r.exitCode = kCheckFailed;
        } catch (const std::exception& e) {
            r.commands.push_back(std::move(c));
            r.exitCode = exitCodeFor(e);
            r.error = e.what();
            return r;
        }
        r.commands.push_back(std::move(c));
    }
    return r;
}

inline std::string factKey(std::size_t index, const CommandResult& c, const Fact& f) {
    return std::to_string(index + 1) + "." + c.command + "." + f.key;
}

inline std::string renderText(const Report& r) {
    std::ostringstream out;
    for (std::size_t i = 0; i < r.commands.size(); ++i) {
        const CommandResult& c = r.commands[i];
        out << "[" << i + 1 << "] " << c.command << "\n";
        for (const Fact& f : c.facts) out << "  " << f.key << " = " << f.value << "  (" << f.provenance << ")\n";
    }
    return out.str();
}

/// The scenario document with "facts" (and "error", "exit_code") attached;
/// loading it again reproduces the same facts.
inline json renderJson(json doc, const Report& r) {
    json facts = json::array();
    for (std::size_t i = 0; i < r.commands.size(); ++i)
        for (const Fact& f : r.commands[i].facts)
            facts.push_back({{"key", factKey(i, r.commands[i], f)}, {"value", f.value}, {"provenance", f.provenance}});
    doc["facts"] = std::move(facts);
    doc["exit_code"] = r.exitCode;
    if (r.error) doc["error"] = *r.error;
    else doc.erase("error");
    return doc;
}

inline json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Loads a scenario document and runs its commands. Load failures are
/// reported through the exit code like command failures.
inline Report runDocument(const json& doc, const std::optional<std::vector<json>>& override = std::nullopt) {
    try {
        Session s = loadSession(doc);
        return run(s, override ? *override : commandsOf(doc));
    } catch (const std::exception& e) {
        Report r;
        r.exitCode = exitCodeFor(e);
        r.error = e.what();
        return r;
    }
}

}  // namespace swcalc::io
