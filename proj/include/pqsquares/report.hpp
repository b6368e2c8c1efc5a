#pragma once

// JSON / CSV / text serialization of solver outputs, the versioned report
// envelope, and revalidation of loaded reports.
//
// Schema notes: schema_version 1, field names lowercase snake-case, all
// big integers (p, q, n) serialized as exact decimal strings.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqsquares/classify.hpp"
#include "pqsquares/proofcheck.hpp"

namespace pqs {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

// ISO-8601 UTC. Honors SOURCE_DATE_EPOCH so reports can be reproduced
// byte-for-byte.
inline std::string report_timestamp() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    else
        t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline json to_json(const Solution& s) {
    return {{"x", s.x}, {"y", s.y}, {"n", s.n.get_str()}};
}

inline json to_json(const SearchBounds& b) {
    return {{"max_x", b.max_x}, {"max_y", b.max_y}, {"max_bits", b.max_bits}};
}

inline json to_json(const PrimePair& p) {
    return {{"p", p.p.get_str()}, {"q", p.q.get_str()}};
}

inline json to_json(const SolutionSet& s) {
    json sols = json::array();
    for (const auto& sol : s.solutions) sols.push_back(to_json(sol));
    return {{"pair", to_json(s.pair)},
            {"bounds", to_json(s.bounds)},
            {"effective_max_x", s.effective_max_x},
            {"effective_max_y", s.effective_max_y},
            {"truncated", s.truncated},
            {"solutions", sols}};
}

inline json to_json(const ResidueCertificate& c) {
    json allowed = json::array();
    for (const auto& [a, b] : c.allowed) allowed.push_back(json::array({a, b}));
    return {{"pair", to_json(c.pair)},
            {"modulus", c.modulus},
            {"x_period", c.x_period},
            {"y_period", c.y_period},
            {"regime", {{"x_min", c.x_preperiod}, {"y_min", c.y_preperiod}}},
            {"allowed_classes", allowed}};
}

inline json to_json(const DescentProof& p) {
    json steps = json::array();
    for (const auto& s : p.steps)
        steps.push_back({{"index", s.index}, {"description", s.description}, {"pass", s.pass}});
    return {{"pair", to_json(p.pair)},
            {"p_mod_4", p.p_mod4},
            {"q_mod_4", p.q_mod4},
            {"squares_mod_4", p.squares_mod4},
            {"gcd_2p_q", p.gcd_2p_q.get_str()},
            {"cycle_modulus", p.cycle_modulus},
            {"cycle_length", p.cycle_length},
            {"cycle_residues", p.cycle_residues},
            {"y1_lhs", p.y1_lhs.get_str()},
            {"y1_rhs", p.y1_rhs.get_str()},
            {"steps", steps}};
}

inline json to_json(const Erratum& e) {
    return {{"claim", e.claim},
            {"location", e.location},
            {"counterexample", json(e.counterexample)}};
}

inline json to_json(const PropositionReport& r) {
    json claimed = json::array();
    for (const auto& [x, y] : r.claimed_xy) claimed.push_back(json::array({x, y}));
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"description", s.description}, {"pass", s.pass}});
    json errata = json::array();
    for (const auto& e : r.errata) errata.push_back(to_json(e));
    return {{"id", r.id},
            {"pair", to_json(r.pair)},
            {"claimed_xy", claimed},
            {"computed", to_json(r.computed)},
            {"sets_match", r.sets_match},
            {"pass", r.pass()},
            {"steps", steps},
            {"errata", errata}};
}

inline json to_json(const PairRecord& r) {
    json w = json::array();
    for (const auto& s : r.witness_list) w.push_back(to_json(s));
    json rec = {{"pair", to_json(r.pair)},
                {"verdict", verdict_name(r.verdict)},
                {"witnesses", w},
                {"solution_count", r.solution_count},
                {"truncated", r.truncated},
                {"twin_3mod4", r.twin_3mod4},
                {"has_10_witness", r.has_10_witness}};
    if (!r.descent_reason.empty()) rec["descent_reason"] = r.descent_reason;
    if (!r.certificate_moduli.empty()) rec["certificate_moduli"] = r.certificate_moduli;
    return rec;
}

inline json to_json(const ConjectureScanReport& r) {
    json recs = json::array();
    json twins = json::array();
    json wit10 = json::array();
    for (const auto& rec : r.records) {
        recs.push_back(to_json(rec));
        if (rec.twin_3mod4) twins.push_back(to_json(rec.pair));
        if (rec.has_10_witness) wit10.push_back(to_json(rec.pair));
    }
    return {{"limit", r.limit},
            {"bounds", to_json(r.bounds)},
            {"m_max", r.m_max},
            {"primality", r.primality_deterministic ? "deterministic" : "probabilistic"},
            {"counts",
             {{"proved_trivial", r.count_proved_trivial},
              {"nontrivial", r.count_nontrivial},
              {"unresolved", r.count_unresolved}}},
            {"twin_pairs_3mod4", twins},
            {"witness_10_pairs", wit10},
            {"pairs", recs}};
}

inline json make_envelope(const std::string& kind, json config, json payload) {
    return {{"schema_version", kSchemaVersion},
            {"tool", "pqsquares"},
            {"tool_version", kToolVersion},
            {"timestamp", report_timestamp()},
            {"kind", kind},
            {"config", std::move(config)},
            {"payload", std::move(payload)}};
}

// Recomputes every witness and replays every descent proof found in a scan
// payload that was loaded back from JSON.
inline bool revalidate_scan_payload(const json& payload) {
    for (const auto& rec : payload.at("pairs")) {
        PrimePair pair{Natural(rec.at("pair").at("p").get<std::string>()),
                       Natural(rec.at("pair").at("q").get<std::string>())};
        for (const auto& w : rec.at("witnesses")) {
            Solution s{w.at("x").get<unsigned>(), w.at("y").get<unsigned>(),
                       Natural(w.at("n").get<std::string>())};
            if (!revalidate_solution(pair, s)) return false;
        }
        if (rec.at("verdict").get<std::string>() == "proved_trivial") {
            if (!prove_trivial_descent(pair).proved()) return false;
        }
    }
    return true;
}

// Rebuilds a scan record from its JSON form (checkpoint loading).
inline PairRecord pair_record_from_json(const json& j) {
    PairRecord r;
    r.pair = {Natural(j.at("pair").at("p").get<std::string>()),
              Natural(j.at("pair").at("q").get<std::string>())};
    std::string v = j.at("verdict").get<std::string>();
    r.verdict = v == "proved_trivial" ? Verdict::proved_trivial
              : v == "nontrivial"     ? Verdict::nontrivial
                                      : Verdict::unresolved;
    for (const auto& w : j.at("witnesses"))
        r.witness_list.push_back({w.at("x").get<unsigned>(), w.at("y").get<unsigned>(),
                                  Natural(w.at("n").get<std::string>())});
    r.solution_count = j.at("solution_count").get<unsigned>();
    r.truncated = j.at("truncated").get<bool>();
    r.twin_3mod4 = j.at("twin_3mod4").get<bool>();
    r.has_10_witness = j.at("has_10_witness").get<bool>();
    if (j.contains("descent_reason")) r.descent_reason = j.at("descent_reason").get<std::string>();
    if (j.contains("certificate_moduli"))
        for (const auto& m : j.at("certificate_moduli"))
            r.certificate_moduli.push_back(m.get<std::uint64_t>());
    return r;
}

// ---------------------------------------------------------------------------
// CSV / text
// ---------------------------------------------------------------------------

inline std::string solutions_to_csv(const SolutionSet& s) {
    std::ostringstream os;
    os << "x,y,n\n";
    for (const auto& sol : s.solutions)
        os << sol.x << "," << sol.y << "," << sol.n.get_str() << "\n";
    return os.str();
}

inline std::string solutions_to_text(const SolutionSet& s) {
    std::ostringstream os;
    os << "pair (" << s.pair.p.get_str() << ", " << s.pair.q.get_str() << "), bounds ("
       << s.bounds.max_x << ", " << s.bounds.max_y << ", " << s.bounds.max_bits
       << " bits)" << (s.truncated ? " [truncated]" : "") << "\n";
    for (const auto& sol : s.solutions)
        os << "  x=" << sol.x << " y=" << sol.y << " n=" << sol.n.get_str() << "\n";
    os << s.solutions.size() << " solution(s)\n";
    return os.str();
}

inline std::string scan_to_csv(const ConjectureScanReport& r) {
    std::ostringstream os;
    os << "p,q,verdict,solution_count,twin_3mod4,has_10_witness,first_witness_x,"
          "first_witness_y,first_witness_n\n";
    for (const auto& rec : r.records) {
        os << rec.pair.p.get_str() << "," << rec.pair.q.get_str() << ","
           << verdict_name(rec.verdict) << "," << rec.solution_count << ","
           << (rec.twin_3mod4 ? 1 : 0) << "," << (rec.has_10_witness ? 1 : 0);
        if (!rec.witness_list.empty()) {
            const auto& w = rec.witness_list.front();
            os << "," << w.x << "," << w.y << "," << w.n.get_str();
        } else {
            os << ",,,";
        }
        os << "\n";
    }
    return os.str();
}

inline std::string scan_to_text(const ConjectureScanReport& r) {
    std::ostringstream os;
    os << "scan limit " << r.limit << ": " << r.records.size() << " pairs, "
       << r.count_nontrivial << " nontrivial, " << r.count_proved_trivial
       << " proved trivial, " << r.count_unresolved << " unresolved\n";
    for (const auto& rec : r.records) {
        os << "  (" << rec.pair.p.get_str() << ", " << rec.pair.q.get_str() << ") "
           << verdict_name(rec.verdict);
        if (!rec.witness_list.empty()) {
            const auto& w = rec.witness_list.front();
            os << " witness (" << w.x << ", " << w.y << ", " << w.n.get_str() << ")";
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace pqs
