#pragma once

// Per-pair classification: Nontrivial when bounded search finds a witness,
// ProvedTrivial when the descent prover succeeds, Unresolved otherwise.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqsquares/certificate.hpp"
#include "pqsquares/search.hpp"

namespace pqs {

enum class Verdict { proved_trivial, nontrivial, unresolved };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::proved_trivial: return "proved_trivial";
        case Verdict::nontrivial: return "nontrivial";
        case Verdict::unresolved: return "unresolved";
    }
    return "unresolved";
}

struct ClassifyConfig {
    SearchBounds bounds{};
    // When >= 2, attach the best elimination certificates found up to this
    // modulus as evidence.
    std::uint64_t m_max = 0;
    std::size_t max_certificates = 3;
};

struct ClassificationRecord {
    PrimePair pair;
    Verdict verdict = Verdict::unresolved;
    std::vector<Solution> witness_list;
    std::optional<DescentProof> proof;
    std::string descent_reason;  // why the descent did not apply/close
    int descent_failing_step = -1;
    SearchBounds bounds;
    bool truncated = false;
    unsigned solution_count = 0;  // within bounds, (0,0,0) included
    std::vector<ResidueCertificate> certificates;
};

inline ClassificationRecord classify_pair(const PrimePair& pair,
                                          const ClassifyConfig& cfg = {}) {
    ClassificationRecord rec;
    rec.pair = pair;
    rec.bounds = cfg.bounds;

    SolutionSet sols = solve_pair(pair, cfg.bounds);
    rec.truncated = sols.truncated;
    rec.solution_count = static_cast<unsigned>(sols.solutions.size());
    rec.witness_list = witnesses(sols);

    if (!rec.witness_list.empty()) {
        rec.verdict = Verdict::nontrivial;
        for (const auto& w : rec.witness_list)
            if (!revalidate_solution(pair, w))
                throw std::logic_error("witness failed revalidation");
    } else {
        DescentOutcome d = prove_trivial_descent(pair);
        if (d.proved()) {
            rec.verdict = Verdict::proved_trivial;
            rec.proof = d.proof;
        } else {
            rec.verdict = Verdict::unresolved;
            rec.descent_reason = d.reason;
            rec.descent_failing_step = d.failing_step;
        }
    }

    // A descent proof must never coexist with a found witness.
    if (rec.verdict == Verdict::proved_trivial && !rec.witness_list.empty())
        throw std::logic_error("descent proof contradicts a found witness");

    if (cfg.m_max >= 2) {
        auto certs = search_modulus(pair, cfg.m_max);
        if (certs.size() > cfg.max_certificates) certs.resize(cfg.max_certificates);
        for (const auto& c : certs)
            if (!check_soundness(c, sols))
                throw std::logic_error("unsound certificate during classification");
        rec.certificates = std::move(certs);
    }
    return rec;
}

}  // namespace pqs
