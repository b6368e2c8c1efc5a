#include <catch2/catch_amalgamated.hpp>

#include "pqsquares/proofcheck.hpp"
#include "pqsquares/report.hpp"

using namespace pqs;

namespace {

const Erratum* find_erratum(const std::vector<Erratum>& errata, const std::string& key) {
    for (const auto& e : errata)
        if (e.claim.find(key) != std::string::npos) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("check_errata finds the series counterexamples") {
    auto errata = check_errata(51);
    REQUIRE(errata.size() >= 3);

    const Erratum* a = find_erratum(errata, "variant A");
    REQUIRE(a != nullptr);
    CHECK(a->counterexample.at("x") == "5");
    CHECK(a->counterexample.at("f_x") == "11");
    CHECK(a->counterexample.at("f_x_plus_2") == "-13");

    const Erratum* b = find_erratum(errata, "variant B");
    REQUIRE(b != nullptr);
    CHECK(b->counterexample.at("x") == "5");
    CHECK(b->counterexample.at("f_x") == "-41");
    CHECK(b->counterexample.at("f_x_plus_2") == "29");

    const Erratum* mod9 = find_erratum(errata, "x = 0 or 4 (mod 6)");
    REQUIRE(mod9 != nullptr);
    CHECK(mod9->counterexample.at("computed_x_classes_mod_6") == "0,2,4");

    const Erratum* missed = find_erratum(errata, "only solutions are (0,0) and (1,0)");
    REQUIRE(missed != nullptr);
    CHECK(missed->counterexample.at("x") == "2");
    CHECK(missed->counterexample.at("y") == "2");
    CHECK(missed->counterexample.at("n") == "4");

    CHECK_THROWS_AS(check_errata(7), std::invalid_argument);
}

TEST_CASE("proposition replay") {
    auto reports = verify_propositions(SearchBounds{64, 64, 4096});
    REQUIRE(reports.size() == 3);

    const auto& p1 = reports[0];
    CHECK(p1.id == 1);
    CHECK(p1.sets_match);
    CHECK(p1.pass());
    CHECK(p1.computed.solutions.size() == 5);
    for (const auto& s : p1.steps) CHECK(s.pass);

    // The (5,3) claim is arithmetically wrong: bounded search finds the
    // extra true solution (2,2,4), so the sets cannot match. The supporting
    // step computations still replay, and the gap is carried as errata.
    const auto& p2 = reports[1];
    CHECK(p2.id == 2);
    CHECK_FALSE(p2.sets_match);
    CHECK_FALSE(p2.pass());
    for (const auto& s : p2.steps) CHECK(s.pass);
    CHECK_FALSE(p2.errata.empty());
    bool extra_found = false;
    for (const auto& s : p2.computed.solutions)
        if (s.x == 2 && s.y == 2 && s.n == 4) extra_found = true;
    CHECK(extra_found);

    const auto& p3 = reports[2];
    CHECK(p3.id == 3);
    CHECK(p3.sets_match);
    CHECK(p3.pass());

    CHECK_THROWS_AS(verify_propositions(SearchBounds{10, 10, 4096}),
                    std::invalid_argument);
}

TEST_CASE("proposition replay is deterministic") {
    auto a = verify_propositions();
    auto b = verify_propositions();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(to_json(a[i]) == to_json(b[i]));
    }
}

TEST_CASE("scan limit 20 verdict spot checks") {
    auto rep = scan_conjectures(20, SearchBounds{30, 30, 4096});
    REQUIRE(rep.records.size() == 7);  // pairs through (19,17)
    auto verdict_of = [&](unsigned long p) {
        for (const auto& r : rep.records)
            if (r.pair.p == p) return r.verdict;
        throw std::logic_error("pair not scanned");
    };
    CHECK(verdict_of(3) == Verdict::nontrivial);
    CHECK(verdict_of(5) == Verdict::nontrivial);
    CHECK(verdict_of(7) == Verdict::proved_trivial);
    CHECK(verdict_of(17) == Verdict::nontrivial);
    CHECK(verdict_of(19) == Verdict::unresolved);

    CHECK(rep.count_proved_trivial + rep.count_nontrivial + rep.count_unresolved ==
          rep.records.size());

    for (const auto& r : rep.records)
        if (r.pair.p == 17) {
            CHECK(r.has_10_witness);
            bool w = false;
            for (const auto& s : r.witness_list)
                if (s.x == 1 && s.y == 0 && s.n == 4) w = true;
            CHECK(w);
        }
}

TEST_CASE("scan limit 3 is the single pair (3,2)") {
    auto rep = scan_conjectures(3, SearchBounds{30, 30, 4096});
    REQUIRE(rep.records.size() == 1);
    CHECK(rep.records[0].pair == PrimePair{3, 2});
    CHECK(rep.records[0].verdict == Verdict::nontrivial);
}

TEST_CASE("(1,0)-witness pairs below 100 are exactly p in {5, 17, 37}") {
    auto rep = scan_conjectures(100, SearchBounds{30, 30, 4096});
    std::vector<unsigned long> ps;
    for (const auto& r : rep.records)
        if (r.has_10_witness) ps.push_back(r.pair.p.get_ui());
    CHECK(ps == std::vector<unsigned long>({5, 17, 37}));
}

TEST_CASE("twin pairs with p = 3 (mod 4) are tagged") {
    auto rep = scan_conjectures(50, SearchBounds{20, 20, 4096});
    std::vector<unsigned long> twins;
    for (const auto& r : rep.records)
        if (r.twin_3mod4) twins.push_back(r.pair.p.get_ui());
    // (5,3): 5 = 1 mod 4 excluded; (7,5), (13,11)? 13 = 1 mod 4 excluded.
    CHECK(twins == std::vector<unsigned long>({7, 19, 31, 43}));
}

TEST_CASE("scan output is independent of the worker count") {
    auto one = scan_conjectures(300, SearchBounds{20, 20, 4096}, 20, 1);
    auto four = scan_conjectures(300, SearchBounds{20, 20, 4096}, 20, 4);
    CHECK(to_json(one) == to_json(four));
}

TEST_CASE("scan payload re-validates after a JSON round trip") {
    auto rep = scan_conjectures(100, SearchBounds{20, 20, 4096});
    json payload = json::parse(to_json(rep).dump());
    CHECK(revalidate_scan_payload(payload));

    // corrupt one witness: revalidation must notice
    for (auto& rec : payload["pairs"])
        if (!rec["witnesses"].empty()) {
            rec["witnesses"][0]["n"] = "12345";
            break;
        }
    CHECK_FALSE(revalidate_scan_payload(payload));
}
