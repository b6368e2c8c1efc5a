#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pqsquares/cli.hpp"

using namespace pqs;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("pqsquares_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

json load(const std::string& path) { return json::parse(slurp(path)); }

int run_cli(std::initializer_list<std::string> args) {
    return run(std::vector<std::string>(args));
}

}  // namespace

TEST_CASE("solve subcommand emits the expected envelope") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    TempDir tmp;
    std::string out = tmp.file("s75.json");
    int rc = run_cli({"solve", "--p", "7", "--q", "5", "--max-x", "40", "--max-y", "60",
                      "--format", "json", "--out", out});
    CHECK(rc == 0);
    json doc = load(out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["tool"] == "pqsquares");
    CHECK(doc["kind"] == "solution_set");
    CHECK(doc["config"]["max_x"] == 40);
    REQUIRE(doc["payload"]["solutions"].size() == 1);
    CHECK(doc["payload"]["solutions"][0]["x"] == 0);
    CHECK(doc["payload"]["solutions"][0]["y"] == 0);
    CHECK(doc["payload"]["solutions"][0]["n"] == "0");
}

TEST_CASE("emitted JSON round-trips byte-for-byte") {
    TempDir tmp;
    std::string out = tmp.file("s32.json");
    REQUIRE(run_cli({"solve", "--p", "3", "--q", "2", "--out", out}) == 0);
    std::string text = slurp(out);
    json doc = json::parse(text);
    CHECK(doc.dump(2) + "\n" == text);
}

TEST_CASE("usage and validation errors exit 2") {
    CHECK(run_cli({"solve", "--p", "4", "--q", "2"}) == 2);
    CHECK(run_cli({"solve", "--p", "7"}) == 2);
    CHECK(run_cli({"solve", "--p", "7", "--q", "5", "--bogus-flag", "1"}) == 2);
    CHECK(run_cli({"frobnicate"}) == 2);
    CHECK(run_cli({"solve", "--p", "11", "--q", "5"}) == 2);  // not consecutive
    CHECK(run_cli({"scan", "--limit", "2"}) == 2);
    CHECK(run_cli({"ring", "--d", "-4", "--base", "1,1", "--pow", "2"}) == 2);
    CHECK(run_cli({"certify", "--p", "7", "--q", "5"}) == 2);
}

TEST_CASE("unwritable output path exits 1") {
    CHECK(run_cli({"solve", "--p", "7", "--q", "5",
                   "--out", "/nonexistent_dir_zzz/x.json"}) == 1);
}

TEST_CASE("ring subcommand") {
    TempDir tmp;
    std::string out = tmp.file("ring.json");
    REQUIRE(run_cli({"ring", "--d", "-2", "--base", "1,-1", "--pow", "5",
                     "--out", out}) == 0);
    json doc = load(out);
    CHECK(doc["payload"]["a"] == "1");
    CHECK(doc["payload"]["b"] == "11");
    CHECK(doc["payload"]["norm"] == "243");

    REQUIRE(run_cli({"ring", "--d", "-2", "--base", "1,-1", "--solve-imag", "-1",
                     "--xmax", "500", "--out", out}) == 0);
    doc = load(out);
    CHECK(doc["payload"]["solutions"] == json::array({1, 3}));

    REQUIRE(run_cli({"ring", "--d", "-1", "--base", "2,-1", "--solve-imag", "-1",
                     "--xmax", "500", "--out", out}) == 0);
    doc = load(out);
    CHECK(doc["payload"]["solutions"] == json::array({1}));
}

TEST_CASE("certify subcommand") {
    TempDir tmp;
    std::string out = tmp.file("cert.json");
    REQUIRE(run_cli({"certify", "--p", "7", "--q", "5", "--modulus", "4",
                     "--out", out}) == 0);
    json doc = load(out);
    CHECK(doc["payload"]["certificate"]["modulus"] == 4);
    CHECK(doc["payload"]["certificate"]["x_period"] == 2);
    CHECK(doc["payload"]["certificate"]["allowed_classes"] ==
          json::array({json::array({0, 0})}));

    REQUIRE(run_cli({"certify", "--p", "7", "--q", "5", "--search-max-m", "10",
                     "--out", out}) == 0);
    doc = load(out);
    bool has4 = false;
    for (const auto& c : doc["payload"]["certificates"])
        if (c["modulus"] == 4) has4 = true;
    CHECK(has4);
}

TEST_CASE("descent subcommand") {
    TempDir tmp;
    std::string out = tmp.file("descent.json");
    REQUIRE(run_cli({"descent", "--p", "7", "--q", "5", "--out", out}) == 0);
    json doc = load(out);
    CHECK(doc["payload"]["status"] == "proved");
    CHECK(doc["payload"]["proof"]["cycle_residues"] == json::array({14, 23, 11, 2}));

    REQUIRE(run_cli({"descent", "--p", "11", "--q", "7", "--out", out}) == 0);
    doc = load(out);
    CHECK(doc["payload"]["status"] == "inconclusive");
    CHECK(doc["payload"]["failing_step"] == 0);
}

TEST_CASE("verify-paper reports the claimed-set mismatch honestly") {
    TempDir tmp;
    std::string out = tmp.file("verify.json");
    // The (5,3) claim misses the true solution (2,2,4), so the replay exits 1.
    int rc = run_cli({"verify-paper", "--out", out});
    CHECK(rc == 1);
    json doc = load(out);
    const auto& props = doc["payload"]["propositions"];
    REQUIRE(props.size() == 3);
    CHECK(props[0]["pass"] == true);
    CHECK(props[1]["sets_match"] == false);
    CHECK(props[2]["pass"] == true);
    CHECK(doc["payload"]["errata_present"] == true);
    CHECK(doc["payload"]["errata"].size() >= 3);
    CHECK(doc["payload"]["all_sets_match"] == false);
}

TEST_CASE("scan verdicts agree between JSON and CSV") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    TempDir tmp;
    std::string jout = tmp.file("scan.json"), cout_ = tmp.file("scan.csv");
    REQUIRE(run_cli({"scan", "--limit", "60", "--max-x", "20", "--max-y", "20",
                     "--out", jout}) == 0);
    REQUIRE(run_cli({"scan", "--limit", "60", "--max-x", "20", "--max-y", "20",
                     "--format", "csv", "--out", cout_}) == 0);
    json doc = load(jout);
    std::istringstream csv(slurp(cout_));
    std::string line;
    std::getline(csv, line);  // header
    std::size_t i = 0;
    while (std::getline(csv, line)) {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        std::string p = line.substr(0, c1);
        std::string verdict = line.substr(c2 + 1, line.find(',', c2 + 1) - c2 - 1);
        const auto& rec = doc["payload"]["pairs"][i];
        CHECK(rec["pair"]["p"] == p);
        CHECK(rec["verdict"] == verdict);
        ++i;
    }
    CHECK(i == doc["payload"]["pairs"].size());
}

TEST_CASE("scan resume reproduces the uninterrupted report byte-for-byte") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    TempDir tmp;
    std::string direct = tmp.file("direct.json");
    REQUIRE(run_cli({"scan", "--limit", "400", "--max-x", "15", "--max-y", "15",
                     "--out", direct}) == 0);

    // prefix run writes a checkpoint, the second run continues from it
    std::string ck = tmp.file("ck.json"), resumed = tmp.file("resumed.json");
    REQUIRE(run_cli({"scan", "--limit", "200", "--max-x", "15", "--max-y", "15",
                     "--resume", ck, "--out", tmp.file("prefix.json")}) == 0);
    REQUIRE(json::parse(slurp(ck))["pairs_done"] ==
            consecutive_pairs(200).size());
    REQUIRE(run_cli({"scan", "--limit", "400", "--max-x", "15", "--max-y", "15",
                     "--resume", ck, "--out", resumed}) == 0);
    CHECK(slurp(direct) == slurp(resumed));

    // config mismatch is refused
    CHECK(run_cli({"scan", "--limit", "400", "--max-x", "16", "--max-y", "15",
                   "--resume", ck, "--out", resumed}) == 2);
}

TEST_CASE("scan reports are byte-identical across worker counts") {
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    TempDir tmp;
    std::string w1 = tmp.file("w1.json"), w4 = tmp.file("w4.json");
    REQUIRE(run_cli({"scan", "--limit", "300", "--max-x", "15", "--max-y", "15",
                     "--workers", "1", "--out", w1}) == 0);
    REQUIRE(run_cli({"scan", "--limit", "300", "--max-x", "15", "--max-y", "15",
                     "--workers", "4", "--out", w4}) == 0);
    CHECK(slurp(w1) == slurp(w4));
}
