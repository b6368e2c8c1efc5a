#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage/validation error,
// 1 runtime error or a verify-paper solution-set mismatch.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqsquares/report.hpp"

namespace pqs {

namespace cli_detail {

inline void print_error(const std::string& code, const std::string& message) {
    json err = {{"error", {{"code", code}, {"message", message}}}};
    std::cerr << err.dump(2) << "\n";
}

inline int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) {
        print_error("unwritable_output", "cannot open output path: " + out_path);
        return 1;
    }
    os << text;
    if (!os) {
        print_error("write_failed", "write failed: " + out_path);
        return 1;
    }
    return 0;
}

inline int emit_json(const json& doc, const std::string& out_path) {
    return emit(doc.dump(2) + "\n", out_path);
}

inline PrimePair parse_pair_or_throw(const std::string& p_str, const std::string& q_str) {
    return make_prime_pair(Natural(p_str), Natural(q_str));
}

// Scan checkpoints: written every kCheckpointEvery pairs and at completion.
inline constexpr std::size_t kCheckpointEvery = 1000;

inline void write_checkpoint(const std::string& path, const SearchBounds& b,
                             std::uint64_t m_max,
                             const std::vector<PairRecord>& records) {
    json recs = json::array();
    for (const auto& r : records) recs.push_back(to_json(r));
    json ck = {{"schema_version", kSchemaVersion},
               {"kind", "scan_checkpoint"},
               {"bounds", to_json(b)},
               {"m_max", m_max},
               {"last_p", records.empty() ? "0" : records.back().pair.p.get_str()},
               {"pairs_done", records.size()},
               {"records", recs}};
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write checkpoint: " + path);
    os << ck.dump(2) << "\n";
}

}  // namespace cli_detail

inline int run(const std::vector<std::string>& args) {
    using cli_detail::emit;
    using cli_detail::emit_json;
    using cli_detail::print_error;

    CLI::App app{"bounded solvers, residue certificates and descent proofs for "
                 "p^x - q^y = n^2 over consecutive primes"};
    app.require_subcommand(1);

    // solve
    std::string s_p, s_q, s_format = "json", s_out;
    SearchBounds s_bounds;
    auto* solve_cmd = app.add_subcommand("solve", "bounded exhaustive solve for one pair");
    solve_cmd->add_option("--p", s_p)->required();
    solve_cmd->add_option("--q", s_q)->required();
    solve_cmd->add_option("--max-x", s_bounds.max_x);
    solve_cmd->add_option("--max-y", s_bounds.max_y);
    solve_cmd->add_option("--max-bits", s_bounds.max_bits);
    solve_cmd->add_option("--format", s_format)
        ->check(CLI::IsMember({"json", "csv", "text"}));
    solve_cmd->add_option("--out", s_out);

    // scan
    std::uint64_t sc_limit = 0, sc_mmax = 0;
    unsigned sc_workers = 1;
    SearchBounds sc_bounds;
    std::string sc_out, sc_resume, sc_format = "json";
    auto* scan_cmd = app.add_subcommand("scan", "classify all pairs with p <= limit");
    scan_cmd->add_option("--limit", sc_limit)->required();
    scan_cmd->add_option("--max-x", sc_bounds.max_x);
    scan_cmd->add_option("--max-y", sc_bounds.max_y);
    scan_cmd->add_option("--max-bits", sc_bounds.max_bits);
    scan_cmd->add_option("--m-max", sc_mmax);
    scan_cmd->add_option("--workers", sc_workers);
    scan_cmd->add_option("--out", sc_out);
    scan_cmd->add_option("--resume", sc_resume);
    scan_cmd->add_option("--format", sc_format)
        ->check(CLI::IsMember({"json", "csv", "text"}));

    // certify
    std::string c_p, c_q, c_out;
    std::uint64_t c_modulus = 0, c_search_max = 0;
    auto* certify_cmd = app.add_subcommand("certify", "modular elimination certificates");
    certify_cmd->add_option("--p", c_p)->required();
    certify_cmd->add_option("--q", c_q)->required();
    auto* c_mod_opt = certify_cmd->add_option("--modulus", c_modulus);
    auto* c_search_opt = certify_cmd->add_option("--search-max-m", c_search_max);
    c_mod_opt->excludes(c_search_opt);
    certify_cmd->add_option("--out", c_out);

    // descent
    std::string d_p, d_q, d_out;
    auto* descent_cmd = app.add_subcommand("descent", "generalized descent prover");
    descent_cmd->add_option("--p", d_p)->required();
    descent_cmd->add_option("--q", d_q)->required();
    descent_cmd->add_option("--out", d_out);

    // ring
    long r_d = -1;
    std::string r_base, r_target, r_out;
    std::uint64_t r_pow = 0, r_xmax = 10'000;
    auto* ring_cmd = app.add_subcommand("ring", "quadratic-ring arithmetic");
    ring_cmd->add_option("--d", r_d)->required();
    ring_cmd->add_option("--base", r_base)->required();
    auto* r_pow_opt = ring_cmd->add_option("--pow", r_pow);
    auto* r_solve_opt = ring_cmd->add_option("--solve-imag", r_target);
    ring_cmd->add_option("--xmax", r_xmax);
    r_pow_opt->excludes(r_solve_opt);
    ring_cmd->add_option("--out", r_out);

    // verify-paper
    SearchBounds v_bounds;
    std::string v_out;
    auto* verify_cmd =
        app.add_subcommand("verify-paper", "replay the three published base cases");
    verify_cmd->add_option("--max-x", v_bounds.max_x);
    verify_cmd->add_option("--max-y", v_bounds.max_y);
    verify_cmd->add_option("--out", v_out);

    std::vector<const char*> argv;
    static const std::string prog = "pqsquares";
    argv.push_back(prog.c_str());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (*solve_cmd) {
            PrimePair pair;
            try {
                pair = cli_detail::parse_pair_or_throw(s_p, s_q);
            } catch (const std::invalid_argument& e) {
                print_error("invalid_pair", e.what());
                return 2;
            }
            SolutionSet sols = solve_pair(pair, s_bounds);
            if (s_format == "csv") return emit(solutions_to_csv(sols), s_out);
            if (s_format == "text") return emit(solutions_to_text(sols), s_out);
            json config = {{"subcommand", "solve"},
                           {"p", pair.p.get_str()},
                           {"q", pair.q.get_str()},
                           {"max_x", s_bounds.max_x},
                           {"max_y", s_bounds.max_y},
                           {"max_bits", s_bounds.max_bits},
                           {"format", s_format}};
            return emit_json(make_envelope("solution_set", config, to_json(sols)), s_out);
        }

        if (*scan_cmd) {
            if (sc_limit < 3) {
                print_error("invalid_limit", "scan limit must be >= 3");
                return 2;
            }
            auto pairs = consecutive_pairs(sc_limit);
            std::vector<PairRecord> records;

            if (!sc_resume.empty()) {
                std::ifstream is(sc_resume);
                if (is) {
                    json ck = json::parse(is);
                    if (ck.at("bounds") != to_json(sc_bounds) ||
                        ck.at("m_max").get<std::uint64_t>() != sc_mmax) {
                        print_error("checkpoint_mismatch",
                                    "checkpoint config differs from requested scan");
                        return 2;
                    }
                    for (const auto& r : ck.at("records"))
                        records.push_back(pair_record_from_json(r));
                    if (records.size() > pairs.size() ||
                        (!records.empty() &&
                         records.back().pair.p != pairs[records.size() - 1].p)) {
                        print_error("checkpoint_mismatch",
                                    "checkpoint does not prefix the requested scan");
                        return 2;
                    }
                }
            }

            while (records.size() < pairs.size()) {
                std::size_t begin = records.size();
                std::size_t end = std::min(pairs.size(), begin + cli_detail::kCheckpointEvery);
                std::vector<PrimePair> block(pairs.begin() + begin, pairs.begin() + end);
                auto block_records = scan_pairs(block, sc_bounds, sc_mmax, sc_workers);
                for (auto& r : block_records) records.push_back(std::move(r));
                if (!sc_resume.empty())
                    cli_detail::write_checkpoint(sc_resume, sc_bounds, sc_mmax, records);
            }

            ConjectureScanReport rep =
                assemble_scan_report(sc_limit, sc_bounds, sc_mmax, std::move(records));
            if (sc_format == "csv") return emit(scan_to_csv(rep), sc_out);
            if (sc_format == "text") return emit(scan_to_text(rep), sc_out);
            // workers / paths deliberately left out of the echo: reports are
            // byte-identical across worker counts and resume runs.
            json config = {{"subcommand", "scan"},
                           {"limit", sc_limit},
                           {"max_x", sc_bounds.max_x},
                           {"max_y", sc_bounds.max_y},
                           {"max_bits", sc_bounds.max_bits},
                           {"m_max", sc_mmax},
                           {"format", sc_format}};
            return emit_json(make_envelope("conjecture_scan", config, to_json(rep)), sc_out);
        }

        if (*certify_cmd) {
            PrimePair pair;
            try {
                pair = cli_detail::parse_pair_or_throw(c_p, c_q);
            } catch (const std::invalid_argument& e) {
                print_error("invalid_pair", e.what());
                return 2;
            }
            if ((c_modulus == 0) == (c_search_max == 0)) {
                print_error("usage", "certify needs exactly one of --modulus, --search-max-m");
                return 2;
            }
            json config = {{"subcommand", "certify"},
                           {"p", pair.p.get_str()},
                           {"q", pair.q.get_str()}};
            json payload;
            if (c_modulus != 0) {
                config["modulus"] = c_modulus;
                payload = {{"certificate",
                            to_json(build_certificate(
                                pair, Natural(static_cast<unsigned long>(c_modulus))))}};
            } else {
                config["search_max_m"] = c_search_max;
                json certs = json::array();
                for (const auto& c : search_modulus(pair, c_search_max)) {
                    json cj = to_json(c);
                    cj["elimination_fraction"] = elimination_fraction(c);
                    certs.push_back(std::move(cj));
                }
                payload = {{"certificates", certs}};
            }
            return emit_json(make_envelope("certificates", config, payload), c_out);
        }

        if (*descent_cmd) {
            PrimePair pair;
            try {
                pair = cli_detail::parse_pair_or_throw(d_p, d_q);
            } catch (const std::invalid_argument& e) {
                print_error("invalid_pair", e.what());
                return 2;
            }
            DescentOutcome outcome = prove_trivial_descent(pair);
            json payload;
            if (outcome.proved())
                payload = {{"status", "proved"}, {"proof", to_json(*outcome.proof)}};
            else
                payload = {{"status", "inconclusive"},
                           {"reason", outcome.reason},
                           {"failing_step", outcome.failing_step}};
            json config = {{"subcommand", "descent"},
                           {"p", pair.p.get_str()},
                           {"q", pair.q.get_str()}};
            return emit_json(make_envelope("descent", config, payload), d_out);
        }

        if (*ring_cmd) {
            auto comma = r_base.find(',');
            if (comma == std::string::npos) {
                print_error("usage", "--base expects a,b");
                return 2;
            }
            QuadInt base;
            try {
                base = make_quadint(Integer(r_base.substr(0, comma)),
                                    Integer(r_base.substr(comma + 1)), r_d);
            } catch (const std::invalid_argument& e) {
                print_error("invalid_ring_element", e.what());
                return 2;
            }
            if ((r_pow_opt->count() == 0) == (r_solve_opt->count() == 0)) {
                print_error("usage", "ring needs exactly one of --pow, --solve-imag");
                return 2;
            }
            json config = {{"subcommand", "ring"},
                           {"d", r_d},
                           {"base", {{"a", base.a.get_str()}, {"b", base.b.get_str()}}}};
            json payload;
            if (r_pow_opt->count()) {
                config["pow"] = r_pow;
                QuadInt r = qpow(base, r_pow);
                payload = {{"a", r.a.get_str()},
                           {"b", r.b.get_str()},
                           {"d", r.d},
                           {"norm", qnorm(r).get_str()}};
            } else {
                config["solve_imag"] = r_target;
                config["xmax"] = r_xmax;
                json xs = json::array();
                for (auto x : solve_imag_equals(base, Integer(r_target), r_xmax))
                    xs.push_back(x);
                payload = {{"solutions", xs}};
            }
            return emit_json(make_envelope("ring", config, payload), r_out);
        }

        if (*verify_cmd) {
            auto reports = verify_propositions(v_bounds);
            auto errata = check_errata();
            bool all_match = true;
            json props = json::array();
            for (const auto& r : reports) {
                all_match = all_match && r.sets_match;
                props.push_back(to_json(r));
            }
            json err = json::array();
            for (const auto& e : errata) err.push_back(to_json(e));
            json payload = {{"propositions", props},
                            {"errata", err},
                            {"all_sets_match", all_match},
                            {"errata_present", !errata.empty()}};
            json config = {{"subcommand", "verify-paper"},
                           {"max_x", v_bounds.max_x},
                           {"max_y", v_bounds.max_y}};
            int rc = emit_json(make_envelope("proposition_replay", config, payload), v_out);
            if (rc != 0) return rc;
            return all_match ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        print_error("invalid_argument", e.what());
        return 2;
    } catch (const std::exception& e) {
        print_error("runtime_error", e.what());
        return 1;
    }
    return 2;
}

}  // namespace pqs
