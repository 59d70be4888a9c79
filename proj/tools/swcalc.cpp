#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swcalc/io.hpp"

namespace {

using swcalc::io::json;

enum class Kind { Int, Str, Flag, NegatedFlag, IntList, RatList, NameList };

struct FlagSpec {
    std::string flag;
    std::string key;
    Kind kind;
    std::string help;
};

struct CommandSpec {
    std::string name;
    std::string help;
    std::vector<FlagSpec> flags;
};

const std::vector<CommandSpec>& commandSpecs() {
    static const FlagSpec spinc{"--spinc", "spinc", Kind::Str, "name of a Spin_C structure in the scenario"};
    static const FlagSpec c1{"--c1", "c1", Kind::IntList, "first Chern class, comma-separated coordinates"};
    static const FlagSpec surface{"--surface", "surface", Kind::Str, "name of a surface in the scenario"};
    static const FlagSpec as{"--as", "as", Kind::Str, "name under which to register the result"};
    static const std::vector<CommandSpec> specs{
        {"dim", "expected dimension of the moduli space", {spinc, c1}},
        {"characteristic", "test whether a class is characteristic", {spinc, c1}},
        {"blowup", "blow up the session manifold and lift table, surfaces and Spin_C structures",
         {{"--name", "name", Kind::Str, "name of the exceptional basis vector"}}},
        {"transform", "proper transform of a surface",
         {surface, {"--exceptionals", "exceptionals", Kind::NameList, "comma-separated exceptional basis names"}, as}},
        {"relate", "apply the relation for a negative square surface",
         {spinc, c1, surface, {"--allow-genus-zero", "allow_genus_zero", Kind::Flag, "accept a sphere"}, as}},
        {"reduce", "reduce the relation to the threshold case by blowing up",
         {spinc, c1, surface, {"--plan-only", "apply", Kind::NegatedFlag, "print the plan without applying it"}, as}},
        {"adjunction", "adjunction inequality and adjunction formula",
         {surface, spinc, c1, {"--canonical", "canonical", Kind::IntList, "canonical class coordinates"}}},
        {"type", "simple type, type and basic classes of the session table", {}},
        {"chambers", "wall sides and chambers for b2+ = 1",
         {surface, {"--spinc", "spinc", Kind::NameList, "comma-separated Spin_C names (default: all)"}}},
        {"neck",
         "boundary moduli and kernel/cokernel on a disk bundle",
         {{"--g", "g", Kind::Int, "genus"},
          {"--n", "n", Kind::Int, "self-intersection magnitude"},
          {"--k", "k", Kind::Int, "Chern number on the disk bundle"},
          {"--mode", "mode", Kind::Str, "strict or generic cohomology"}}},
        {"chern", "Chern classes over the Jacobian and the Euler class identity", {{"--g", "g", Kind::Int, "genus"}}},
        {"clifford-check", "Clifford module identities in dimension four", {}},
        {"scenario",
         "named worked example (m-lines, proper-transform, branched-cover, local-minimizer, symplectic)",
         {{"--m", "m", Kind::Int, "number of lines"},
          {"--d", "d", Kind::Int, "degree"},
          {"--ell", "ell", Kind::Int, "number of blown-up points"},
          {"--a", "a", Kind::Int, "branching multiplicity"},
          {"--g", "g", Kind::Int, "genus"},
          {"--n", "n", Kind::Int, "self-intersection magnitude"},
          {"--k", "k", Kind::Int, "Chern number"},
          {"--t", "t", Kind::Int, "multiplicity"},
          {"--self-intersection", "self_intersection", Kind::Int, "self-intersection"},
          {"--genus-prime", "genus_prime", Kind::Int, "genus of the competing surface"},
          {"--seed-sign", "seed_sign", Kind::Int, "sign of the canonical seed value"}}},
        {"symplectic",
         "monotonicity contradiction for a symplectic surface",
         {{"--canonical", "canonical", Kind::IntList, "canonical class coordinates"},
          {"--omega", "omega", Kind::RatList, "symplectic class, comma-separated p/q"},
          surface,
          {"--surface-prime", "surface_prime", Kind::Str, "competing surface"},
          {"--seed-sign", "seed_sign", Kind::Int, "sign of the canonical seed value"}}},
        {"selftest", "randomized and exhaustive invariant checks", {}},
    };
    return specs;
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(' ');
        auto e = item.find_last_not_of(' ');
        if (b == std::string::npos) throw swcalc::ParseError("empty list entry in '" + text + "'");
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

swcalc::Rational rationalValue(const std::string& text) {
    try {
        return swcalc::parseRational(text);
    } catch (const swcalc::ValidationError& e) {
        throw swcalc::ParseError(e.what());
    }
}

json integerValue(const std::string& text) {
    swcalc::Rational q = rationalValue(text);
    if (!swcalc::isInteger(q)) throw swcalc::ParseError("'" + text + "' is not an integer");
    return text;
}

json flagValue(const FlagSpec& f, const std::string& raw) {
    switch (f.kind) {
        case Kind::Int:
            return integerValue(raw);
        case Kind::Str:
            return raw;
        case Kind::IntList: {
            json out = json::array();
            for (const auto& v : split(raw)) out.push_back(integerValue(v));
            return out;
        }
        case Kind::RatList: {
            json out = json::array();
            for (const auto& v : split(raw)) out.push_back(swcalc::toString(rationalValue(v)));
            return out;
        }
        case Kind::NameList: {
            json out = json::array();
            for (const auto& v : split(raw)) out.push_back(v);
            return out;
        }
        case Kind::Flag:
        case Kind::NegatedFlag:
            break;
    }
    return raw;
}

struct Bound {
    CLI::App* app = nullptr;
    const CommandSpec* spec = nullptr;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> toggles;
    std::string positional;
};

json buildRecord(const Bound& b) {
    json rec;
    rec["command"] = b.spec->name;
    if (b.spec->name == "scenario") rec["name"] = b.positional;
    for (const auto& f : b.spec->flags) {
        if (f.kind == Kind::Flag || f.kind == Kind::NegatedFlag) {
            if (b.toggles.at(f.flag)) rec[f.key] = f.kind == Kind::Flag;
            continue;
        }
        auto it = b.values.find(f.flag);
        if (it != b.values.end() && b.app->count(f.flag) > 0) rec[f.key] = flagValue(f, it->second);
    }
    return rec;
}

int emit(const json& doc, const swcalc::io::Report& report, const std::string& jsonOut) {
    swcalc::io::Report textual = report;
    textual.error.reset();
    std::cout << swcalc::io::renderText(textual);
    if (!jsonOut.empty()) {
        std::ofstream out(jsonOut);
        if (!out) {
            std::cerr << "error: cannot write '" << jsonOut << "'\n";
            return swcalc::io::kParseFailure;
        }
        out << swcalc::io::renderJson(doc, report).dump(2) << "\n";
    }
    if (report.error) std::cerr << "error: " << *report.error << "\n";
    return report.exitCode;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Seiberg-Witten calculus on user-supplied four-manifold data", "swcalc"};
    app.fallthrough();
    std::string scenarioPath;
    std::string jsonOut;
    app.add_option("--scenario", scenarioPath, "scenario JSON file supplying the session");
    app.add_option("--json", jsonOut, "write the JSON report to this file");

    std::string runPath;
    CLI::App* run = app.add_subcommand("run", "run every command of a scenario file");
    run->add_option("file", runPath, "scenario JSON file")->required();

    std::vector<Bound> bound;
    bound.reserve(commandSpecs().size());
    for (const auto& spec : commandSpecs()) {
        Bound& b = bound.emplace_back();
        b.spec = &spec;
        b.app = app.add_subcommand(spec.name, spec.help);
        if (spec.name == "scenario") b.app->add_option("name", b.positional, "scenario name")->required();
        for (const auto& f : spec.flags) {
            if (f.kind == Kind::Flag || f.kind == Kind::NegatedFlag) {
                b.toggles[f.flag] = false;
                b.app->add_flag(f.flag, b.toggles[f.flag], f.help);
            } else {
                b.app->add_option(f.flag, b.values[f.flag], f.help);
            }
        }
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return swcalc::io::kParseFailure;
    }

    try {
        json doc = json::object();
        if (run->parsed()) {
            doc = swcalc::io::readJsonFile(runPath);
            return emit(doc, swcalc::io::runDocument(doc), jsonOut);
        }
        if (!scenarioPath.empty()) doc = swcalc::io::readJsonFile(scenarioPath);
        for (const Bound& b : bound) {
            if (!b.app->parsed()) continue;
            doc["commands"] = json::array({buildRecord(b)});
            return emit(doc, swcalc::io::runDocument(doc), jsonOut);
        }
        if (scenarioPath.empty()) {
            std::cerr << app.help();
            return swcalc::io::kParseFailure;
        }
        return emit(doc, swcalc::io::runDocument(doc), jsonOut);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return swcalc::io::exitCodeFor(e);
    }
}
