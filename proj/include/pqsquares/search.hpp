#pragma once

// Bounded exhaustive solver for p^x - q^y = n^2 over a consecutive-prime
// pair, with explicit bit-cap truncation reporting.

#include <cstdint>
#include <vector>

#include "pqsquares/arith.hpp"
#include "pqsquares/primes.hpp"

namespace pqs {

struct SearchBounds {
    unsigned max_x = 64;
    unsigned max_y = 64;
    unsigned max_bits = kDefaultBitCap;

    bool operator==(const SearchBounds&) const = default;
};

struct Solution {
    unsigned x = 0;
    unsigned y = 0;
    Natural n;

    bool operator==(const Solution&) const = default;
};

struct SolutionSet {
    PrimePair pair;
    SearchBounds bounds;
    // Effective bounds actually searched; smaller than requested only when
    // the bit cap truncated the x range (never silent: truncated is set).
    unsigned effective_max_x = 0;
    unsigned effective_max_y = 0;
    bool truncated = false;
    std::vector<Solution> solutions;  // sorted ascending by (x, y)
};

// Every (x, y, n) with 0 <= x <= max_x, 0 <= y <= max_y, p^x >= q^y and
// p^x - q^y = n^2. (0, 0, 0) is always a member. For fixed x the y loop
// stops as soon as q^y exceeds p^x.
inline SolutionSet solve_pair(const PrimePair& pair, const SearchBounds& b = {}) {
    SolutionSet out{pair, b, b.max_x, b.max_y, false, {}};
    Natural px = 1;
    for (unsigned x = 0; x <= b.max_x; ++x) {
        if (bit_length(px) > b.max_bits) {
            out.truncated = true;
            out.effective_max_x = x - 1;
            break;
        }
        Natural qy = 1;
        for (unsigned y = 0; y <= b.max_y && qy <= px; ++y) {
            Natural diff = px - qy;
            if (auto root = is_perfect_square(diff, b.max_bits))
                out.solutions.push_back({x, y, *root});
            qy *= pair.q;
        }
        px *= pair.p;
    }
    return out;
}

inline bool is_trivial_solution(const Solution& s) { return s.x == 0 && s.y == 0; }

// Solutions other than (0, 0, 0): the witnesses that make a pair
// nontrivially squared.
inline std::vector<Solution> witnesses(const SolutionSet& s) {
    std::vector<Solution> w;
    for (const auto& sol : s.solutions)
        if (!is_trivial_solution(sol)) w.push_back(sol);
    return w;
}

// Direct recomputation of p^x - q^y = n^2 for a claimed solution.
inline bool revalidate_solution(const PrimePair& pair, const Solution& s) {
    Natural px, qy;
    mpz_pow_ui(px.get_mpz_t(), pair.p.get_mpz_t(), s.x);
    mpz_pow_ui(qy.get_mpz_t(), pair.q.get_mpz_t(), s.y);
    return px >= qy && px - qy == s.n * s.n;
}

}  // namespace pqs
