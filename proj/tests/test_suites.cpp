#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "btl/suites.hpp"

using namespace btl;
namespace fs = std::filesystem;

namespace {

const Record* find(const Report& r, const std::string& suite) {
    for (const auto& rec : r.records)
        if (rec.suite == suite) return &rec;
    return nullptr;
}

}  // namespace

TEST_CASE("catalogue") {
    const auto& cat = suite_catalogue();
    CHECK(cat.size() >= 20);
    std::set<std::string> names;
    for (const auto& s : cat) {
        CHECK(!s.anchor.empty());
        CHECK(!s.description.empty());
        CHECK(names.insert(s.name).second);
    }
    CHECK(names.count("thm4.2-reconstruction"));
    CHECK(names.count("lemma6.4-W-bound"));
    CHECK(names.count("lemma9.1"));
    CHECK(find_suite("nope") == nullptr);
    // stages never decrease along the dependency chain
    int prev = 0;
    for (const auto& s : cat) {
        CHECK(s.stage >= prev);
        prev = s.stage;
    }
}

TEST_CASE("config parsing") {
    SuiteConfig c = parse_config(R"({"model": {"kind": "torus", "n": 4}, "b": 2, "seed": 5})");
    CHECK(c.model.kind == GraphKind::Torus);
    CHECK(c.model.n == 4);
    CHECK(c.seed == 5);
    CHECK(c.grid.size() == 12);
    CHECK(c.all_suites);
    CHECK(c.tolerance("reconstruction") == 1e-9);

    SuiteConfig t = parse_config(R"({"model": {"n": 8}, "tolerances": {"reconstruction": 1e-7}, "suites": [],
                                     "grid": [[0, 2, "inf"]], "flavors": ["tilde"]})");
    CHECK(t.tolerance("reconstruction") == 1e-7);
    CHECK(!t.all_suites);
    CHECK(t.suites.empty());
    CHECK(std::isinf(t.grid[0][2]));
    CHECK(t.flavors.size() == 1);

    const char* bad[] = {
        "not json",
        R"({"b": 2})",
        R"({"model": {"kind": "sphere"}})",
        R"({"model": {"n": 8}, "colour": 1})",
        R"({"model": {"n": 8}, "suites": ["lemma9.9"]})",
        R"({"model": {"n": 8}, "b": 1})",
        R"({"model": {"n": 8}, "gamma": 0})",
        R"({"model": {"n": 8}, "tolerances": {"speed": 1}})",
        R"({"model": {"n": 8}, "symbols": ["x +"]})",
        R"({"model": {"kind": "tree", "n": 4, "edges": [[0, 1], [2, 3]]}})",
        R"({"model": {"n": 8}, "flavors": ["plain"]})",
        R"({"model": {"n": 8}, "battery": {"functions": 0}})",
    };
    for (const char* b : bad) CHECK_THROWS_AS(parse_config(b), ConfigError);
}

TEST_CASE("empty suite list gives a manifest-only report") {
    SuiteConfig c = parse_config(R"({"model": {"n": 8}, "suites": []})");
    Report r = run_suites(c);
    CHECK(r.records.empty());
    CHECK(!r.manifest.empty());
    CHECK(!r.hard_failure());
}

TEST_CASE("lemma9.1 on C_8 passes exactly") {
    Report r = run_suites(parse_config(R"({"model": {"n": 8}, "suites": ["lemma9.1"]})"));
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].status == Status::Pass);
    CHECK(r.records[0].get("violations") == "0");
    CHECK(r.records[0].anchor == "Lemma 9.1");
}

TEST_CASE("suites run in stage order and the report is deterministic") {
    const char* cfg = R"({"model": {"n": 16}, "seed": 3,
        "suites": ["thm4.2-reconstruction", "lemma9.2", "lp-telescoping", "omega-identities"],
        "battery": {"triples": 50}})";
    Report a = run_suites(parse_config(cfg));
    Report b = run_suites(parse_config(cfg));
    REQUIRE(a.records.size() == 4);
    CHECK(a.records[0].suite == "lemma9.2");
    CHECK(a.records[1].suite == "lp-telescoping");
    CHECK(a.records[3].suite == "omega-identities");
    CHECK(a.machine() == b.machine());
    CHECK(!a.hard_failure());
    CHECK(a.machine().find("runtime") == std::string::npos);
    const Record* rec = find(a, "thm4.2-reconstruction");
    REQUIRE(rec);
    CHECK(rec->status == Status::Pass);
}

TEST_CASE("inhomogeneous mode skips the compact frame") {
    Report r = run_suites(parse_config(
        R"({"model": {"n": 16}, "mode": "inhomogeneous", "suites": ["thm6.7-compact-frame", "thm4.2-reconstruction"]})"));
    const Record* c = find(r, "thm6.7-compact-frame");
    REQUIRE(c);
    CHECK(c->status == Status::Skipped);
    CHECK(find(r, "thm4.2-reconstruction")->status == Status::Pass);
    CHECK(!r.hard_failure());
}

TEST_CASE("report files") {
    fs::path dir = fs::temp_directory_path() / "btl_suite_test";
    fs::remove_all(dir);
    Report r = run_suites(parse_config(R"({"model": {"n": 8}, "suites": ["lemma9.1", "doubling-profile"]})"));
    r.write(dir.string());
    for (const char* f : {"report.txt", "constants.csv", "summary.txt"}) CHECK(fs::exists(dir / f));
    std::ifstream in(dir / "constants.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "suite,anchor,key,value");
    fs::remove_all(dir);
}

#ifdef BTL_CLI_PATH
TEST_CASE("command line exit codes") {
    fs::path dir = fs::temp_directory_path() / "btl_cli_test";
    fs::create_directories(dir);
    auto write = [&](const char* name, const char* text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    std::string good = write("good.json", R"({"model": {"n": 8}, "suites": ["lemma9.1"]})");
    std::string bad = write("bad.json", R"({"model": {"kind": "sphere"}})");
    std::string out = (dir / "out").string();
    auto run = [&](const std::string& args) {
        std::string cmd = "BTL_OUTPUT_DIR=" + out + " " + BTL_CLI_PATH + " " + args + " > /dev/null 2>&1";
        int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };
    CHECK(run("run " + good) == 0);
    CHECK(fs::exists(fs::path(out) / "report.txt"));
    CHECK(run("run " + bad) == 2);
    CHECK(run("run " + (dir / "missing.json").string()) == 2);
    CHECK(run("list-suites") == 0);
    CHECK(run("describe lemma9.1") == 0);
    CHECK(run("describe nothing") == 2);
    CHECK(run("") == 2);
    fs::remove_all(dir);
}
#endif
