#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "swcalc/io.hpp"

using swcalc::io::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome invoke(const std::string& args) {
    std::string cmd = std::string(SWCALC_CLI_PATH) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return o;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) o.out += buf.data();
    int status = pclose(p);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string scenario(const std::string& name) { return std::string(SWCALC_SCENARIO_DIR) + "/" + name; }

fs::path writeTemp(const std::string& name, const json& doc) {
    fs::path p = fs::temp_directory_path() / ("swcalc_test_" + name + ".json");
    std::ofstream(p) << doc.dump(2);
    return p;
}

json readJson(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

/// The shipped b2+ = 3 session with its table and commands removed.
json baseSession() {
    json doc = readJson(scenario("relation_blowup.json"));
    doc.erase("swtable");
    doc.erase("commands");
    return doc;
}

std::string valueOf(const json& report, const std::string& key) {
    for (const auto& f : report.at("facts"))
        if (f.at("key") == key) return f.at("value").get<std::string>();
    return "<missing>";
}

}  // namespace

TEST(Cli, ShippedScenariosExitAsDocumented) {
    EXPECT_EQ(invoke("run " + scenario("minimal_dim.json")).code, 0);
    EXPECT_EQ(invoke("run " + scenario("relation_blowup.json")).code, 0);
    EXPECT_EQ(invoke("run " + scenario("symplectic_contradiction.json")).code, 0);
    EXPECT_EQ(invoke("run " + scenario("nonsymmetric_gram.json")).code, 3);
    EXPECT_EQ(invoke("--scenario " + scenario("minimal_dim.json")).code, 0);
}

TEST(Cli, StandaloneCommandsPrintFacts) {
    Outcome neck = invoke("neck --g 3 --n 4 --k 6");
    EXPECT_EQ(neck.code, 0);
    EXPECT_NE(neck.out.find("irreducibles"), std::string::npos);
    Outcome chern = invoke("chern --g 2");
    EXPECT_EQ(chern.code, 0);
    EXPECT_NE(chern.out.find("euler_identity = holds"), std::string::npos);
    Outcome lines = invoke("scenario m-lines --m 5");
    EXPECT_EQ(lines.code, 0);
    EXPECT_NE(lines.out.find("ell = 10"), std::string::npos);
    EXPECT_NE(lines.out.find("half_class_genus = 1"), std::string::npos);
    EXPECT_EQ(invoke("clifford-check").code, 0);
}

TEST(Cli, UsageErrorsExitTwoAndHelpExitsZero) {
    EXPECT_EQ(invoke("bogus").code, 2);
    EXPECT_EQ(invoke("neck --g x --n 1 --k 0").code, 2);
    EXPECT_EQ(invoke("neck --nope 3").code, 2);
    EXPECT_EQ(invoke("run /nonexistent/file.json").code, 2);
    EXPECT_EQ(invoke("").code, 2);
    EXPECT_EQ(invoke("--help").code, 0);
}

TEST(Cli, ValidationFailuresExitThree) {
    EXPECT_EQ(invoke("scenario m-lines --m 4").code, 3);
    EXPECT_EQ(invoke("chern --g -1").code, 3);
    EXPECT_EQ(invoke("dim").code, 3);
}

TEST(Cli, ViolatedHypothesisExitsFour) {
    json doc = baseSession();
    doc["spinc"] = json::parse(R"([{"name": "s", "c1": [0, -2, 0, 0, 0, 0, 1]}])");
    doc["commands"] = json::array({json{{"command", "relate"}, {"spinc", "s"}, {"surface", "T"}}});
    EXPECT_EQ(invoke("run " + writeTemp("hypothesis", doc).string()).code, 4);
}

TEST(Cli, ContradictoryTableExitsFive) {
    json doc = baseSession();
    doc["swtable"] = json::parse(R"([
      {"spinc": "s", "monomial": {"U": 0}, "value": 1},
      {"spinc": "s", "monomial": {"U": 0}, "value": 2}])");
    doc["commands"] = json::array({json{{"command", "type"}}});
    EXPECT_EQ(invoke("run " + writeTemp("inconsistent", doc).string()).code, 5);
}

TEST(Cli, UnknownTopLevelKeyIsParseError) {
    json doc = baseSession();
    doc["extra"] = 1;
    doc["commands"] = json::array({json{{"command", "dim"}, {"spinc", "s"}}});
    EXPECT_EQ(invoke("run " + writeTemp("unknown_key", doc).string()).code, 2);
}

TEST(Cli, JsonReportRoundTripsToIdenticalFacts) {
    for (const char* name : {"minimal_dim.json", "relation_blowup.json", "symplectic_contradiction.json"}) {
        fs::path first = fs::temp_directory_path() / "swcalc_rt_first.json";
        fs::path second = fs::temp_directory_path() / "swcalc_rt_second.json";
        ASSERT_EQ(invoke("--json " + first.string() + " run " + scenario(name)).code, 0);
        ASSERT_EQ(invoke("--json " + second.string() + " run " + first.string()).code, 0);
        json a = readJson(first), b = readJson(second);
        EXPECT_EQ(a.at("facts"), b.at("facts")) << name;
        EXPECT_EQ(a.at("exit_code"), 0);
    }
}

TEST(Cli, TextAndJsonCarryTheSameValues) {
    fs::path out = fs::temp_directory_path() / "swcalc_text_json.json";
    Outcome o = invoke("--json " + out.string() + " run " + scenario("minimal_dim.json"));
    ASSERT_EQ(o.code, 0);
    json report = readJson(out);
    for (const auto& f : report.at("facts")) {
        std::string key = f.at("key").get<std::string>();
        std::string leaf = key.substr(key.find('.', key.find('.') + 1) + 1);
        std::string line = leaf + " = " + f.at("value").get<std::string>();
        EXPECT_NE(o.out.find(line), std::string::npos) << line;
    }
}

TEST(Cli, ErrorIsRecordedInJsonReport) {
    fs::path out = fs::temp_directory_path() / "swcalc_error.json";
    EXPECT_EQ(invoke("--json " + out.string() + " run " + scenario("nonsymmetric_gram.json")).code, 3);
    json report = readJson(out);
    EXPECT_EQ(report.at("exit_code"), 3);
    EXPECT_TRUE(report.contains("error"));
}

TEST(Io, InProcessRunMatchesExpectedDimension) {
    json doc = json::parse(R"({
      "manifold": {"b1": 0, "h1": [], "basis": ["H"], "gram": [[1]]},
      "spinc": [{"name": "c", "c1": [3]}],
      "commands": [{"command": "dim", "spinc": "c"}]
    })");
    swcalc::io::Report r = swcalc::io::runDocument(doc);
    EXPECT_EQ(r.exitCode, 0);
    json rendered = swcalc::io::renderJson(doc, r);
    EXPECT_EQ(valueOf(rendered, "1.dim.d(c)"), "0");
}

TEST(Io, StopsAtFirstFailingCommand) {
    json doc = baseSession();
    doc["commands"] = json::array({json{{"command", "dim"}, {"spinc", "s"}},
                                   json{{"command", "neck"}, {"g", 1}},
                                   json{{"command", "dim"}, {"spinc", "s"}}});
    swcalc::io::Report r = swcalc::io::runDocument(doc);
    ASSERT_EQ(r.commands.size(), 2u);
    EXPECT_EQ(r.commands[1].command, "neck");
    EXPECT_EQ(r.exitCode, 3);
    ASSERT_TRUE(r.error.has_value());
}
