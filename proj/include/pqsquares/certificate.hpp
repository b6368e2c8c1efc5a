#pragma once

// Modular elimination certificates: for a modulus m, the exponent classes
// (x mod r, y mod s) over the periodic regime for which p^x - q^y mod m can
// be a square residue. Also the generalized descent prover for pairs with
// p = 3 (mod 4), q = 1 (mod 4).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pqsquares/arith.hpp"
#include "pqsquares/primes.hpp"
#include "pqsquares/search.hpp"

namespace pqs {

// x_period * y_period above this is skipped/rejected; keeps modulus search
// and composition bounded.
inline constexpr std::uint64_t kClassTableCap = 10'000;

struct ResidueCertificate {
    PrimePair pair;
    std::uint64_t modulus = 0;
    std::uint64_t x_preperiod = 0, x_period = 1;
    std::uint64_t y_preperiod = 0, y_period = 1;
    // Classes (x mod x_period, y mod y_period) not eliminated. Sound for all
    // true solutions with x >= x_preperiod and y >= y_preperiod.
    std::set<std::pair<std::uint64_t, std::uint64_t>> allowed;
};

inline double elimination_fraction(const ResidueCertificate& c) {
    double total = double(c.x_period) * double(c.y_period);
    return 1.0 - double(c.allowed.size()) / total;
}

namespace detail {

// Smallest exponent >= pre congruent to cls mod per.
inline std::uint64_t class_representative(std::uint64_t cls, std::uint64_t pre,
                                          std::uint64_t per) {
    std::uint64_t r = pre + (cls + per - pre % per) % per;
    return r;
}

// p^x mod m for each class over the periodic regime.
inline std::vector<std::uint64_t> regime_values(const Natural& base, std::uint64_t m,
                                                const PeriodInfo& pi) {
    std::uint64_t b = mpz_fdiv_ui(base.get_mpz_t(), m);
    std::vector<std::uint64_t> v(pi.period);
    for (std::uint64_t cls = 0; cls < pi.period; ++cls)
        v[cls] = powmod_u64(b, class_representative(cls, pi.preperiod, pi.period), m);
    return v;
}

}  // namespace detail

inline ResidueCertificate build_certificate(const PrimePair& pair, const Natural& m) {
    if (m < 2) throw std::invalid_argument("certificate modulus must be >= 2");
    if (!m.fits_ulong_p() || m.get_ui() > 10'000'000)
        throw std::domain_error("certificate modulus too large");
    std::uint64_t mm = m.get_ui();
    PeriodInfo xp = eventual_period(pair.p, m);
    PeriodInfo yp = eventual_period(pair.q, m);
    if (xp.period * yp.period > kClassTableCap)
        throw std::domain_error("class table exceeds cap");

    ResidueCertificate cert{pair, mm, xp.preperiod, xp.period, yp.preperiod, yp.period, {}};
    auto squares = square_residue_set(m);
    auto pv = detail::regime_values(pair.p, mm, xp);
    auto qv = detail::regime_values(pair.q, mm, yp);
    for (std::uint64_t a = 0; a < xp.period; ++a)
        for (std::uint64_t b = 0; b < yp.period; ++b)
            if (squares.count((pv[a] + mm - qv[b]) % mm))
                cert.allowed.insert({a, b});
    return cert;
}

// Conjunction of certificates for the same pair: lift classes to the lcm of
// the periods, intersect the allowed sets, take the worst-case regime.
inline ResidueCertificate compose_certificates(const std::vector<ResidueCertificate>& certs) {
    if (certs.empty()) throw std::invalid_argument("nothing to compose");
    for (const auto& c : certs)
        if (c.pair.p != certs.front().pair.p || c.pair.q != certs.front().pair.q)
            throw std::invalid_argument("certificates refer to different pairs");

    std::uint64_t xl = 1, yl = 1, ml = 1, x0 = 0, y0 = 0;
    for (const auto& c : certs) {
        xl = std::lcm(xl, c.x_period);
        yl = std::lcm(yl, c.y_period);
        ml = std::lcm(ml, c.modulus);
        x0 = std::max(x0, c.x_preperiod);
        y0 = std::max(y0, c.y_preperiod);
        if (xl * yl > kClassTableCap)
            throw std::domain_error("composed class table exceeds cap");
    }
    ResidueCertificate out{certs.front().pair, ml, x0, xl, y0, yl, {}};
    for (std::uint64_t a = 0; a < xl; ++a)
        for (std::uint64_t b = 0; b < yl; ++b) {
            bool ok = true;
            for (const auto& c : certs)
                if (!c.allowed.count({a % c.x_period, b % c.y_period})) { ok = false; break; }
            if (ok) out.allowed.insert({a, b});
        }
    return out;
}

// True iff every solution inside the certificate's regime maps into allowed.
inline bool check_soundness(const ResidueCertificate& cert, const SolutionSet& sols) {
    if (cert.pair.p != sols.pair.p || cert.pair.q != sols.pair.q)
        throw std::invalid_argument("certificate and solution set refer to different pairs");
    for (const auto& s : sols.solutions) {
        if (s.x < cert.x_preperiod || s.y < cert.y_preperiod) continue;
        if (!cert.allowed.count({s.x % cert.x_period, s.y % cert.y_period}))
            return false;
    }
    return true;
}

using EliminationGoal = std::function<bool(const ResidueCertificate&)>;

// Certificates for m in [2, m_max] that eliminate at least one class (and
// satisfy goal, when given), ranked by elimination fraction desc, then m asc.
inline std::vector<ResidueCertificate> search_modulus(const PrimePair& pair,
                                                      std::uint64_t m_max,
                                                      const EliminationGoal& goal = {}) {
    if (m_max < 2) throw std::invalid_argument("m_max must be >= 2");
    std::vector<ResidueCertificate> out;
    for (std::uint64_t m = 2; m <= m_max; ++m) {
        ResidueCertificate c;
        try {
            c = build_certificate(pair, Natural(static_cast<unsigned long>(m)));
        } catch (const std::domain_error&) {
            continue;  // class table over cap for this m
        }
        if (elimination_fraction(c) <= 0.0) continue;
        if (goal && !goal(c)) continue;
        out.push_back(std::move(c));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const ResidueCertificate& a, const ResidueCertificate& b) {
                         double fa = elimination_fraction(a), fb = elimination_fraction(b);
                         if (fa != fb) return fa > fb;
                         return a.modulus < b.modulus;
                     });
    return out;
}

// ---------------------------------------------------------------------------
// Generalized descent prover.
//
// Template: p = 3 (mod 4), q = 1 (mod 4). Then
//   (1) mod 4 forces x even, x = 2k (k >= 1 once x > 0);
//   (2) (p^k - n)(p^k + n) = q^y forces both factors to be powers of q,
//       since their gcd divides both 2p^k and q^y and gcd(2p, q) = 1;
//   (3) q divides the RHS of 2p^k = q^a + q^b unless a = 0, so 2p^k = 1 + q^y;
//   (4) if y >= 2 then 2p^k = 1 (mod q^2); when 1 is outside the cycle
//       {2 p^k mod q^2}, no such y exists;
//   (5) y = 1 fails since 2p^k >= 2p > q + 1, and y = 0 gives p^k = 1.
// When every step closes, the only solution is (0, 0).
// ---------------------------------------------------------------------------

struct DescentStep {
    int index = 0;
    std::string description;
    bool pass = false;
};

struct DescentProof {
    PrimePair pair;
    unsigned p_mod4 = 0, q_mod4 = 0;
    std::vector<std::uint64_t> squares_mod4;   // always {0, 1}
    Natural gcd_2p_q;                          // step (2)/(3) coprimality, = 1
    std::uint64_t cycle_modulus = 0;           // q^2
    std::uint64_t cycle_length = 0;            // ord of p mod q^2
    std::vector<std::uint64_t> cycle_residues; // {2 p^k mod q^2 : 1 <= k <= ord}
    Natural y1_lhs;                            // 2p, minimal LHS of step (5)
    Natural y1_rhs;                            // q + 1
    std::vector<DescentStep> steps;
};

struct DescentOutcome {
    std::optional<DescentProof> proof;
    std::string reason;        // set when inconclusive
    int failing_step = -1;     // 0 = precondition, 4 = cycle check

    bool proved() const { return proof.has_value(); }
};

inline DescentOutcome prove_trivial_descent(const PrimePair& pair) {
    unsigned pm4 = mpz_fdiv_ui(pair.p.get_mpz_t(), 4);
    unsigned qm4 = mpz_fdiv_ui(pair.q.get_mpz_t(), 4);
    if (pm4 != 3)
        return {std::nullopt, "precondition: p = " + std::to_string(pm4) + " (mod 4), need 3", 0};
    if (qm4 != 1)
        return {std::nullopt, "precondition: q = " + std::to_string(qm4) + " (mod 4), need 1", 0};
    if (!pair.q.fits_ulong_p() || pair.q.get_ui() > (1u << 31))
        return {std::nullopt, "q too large for the cycle check", 4};

    DescentProof proof;
    proof.pair = pair;
    proof.p_mod4 = pm4;
    proof.q_mod4 = qm4;
    for (auto r : square_residue_set(4)) proof.squares_mod4.push_back(r);

    // (1) For x odd, p^x - q^y = 3 - 1 = 2 (mod 4), not a square residue.
    bool parity_ok = !square_residue_set(4).count((pm4 + 4 - qm4) % 4);
    proof.steps.push_back({1, "mod-4 parity forces x even", parity_ok});

    // (2) gcd(p^k - n, p^k + n) divides 2p^k and q^y; gcd(2p, q) = 1.
    mpz_gcd(proof.gcd_2p_q.get_mpz_t(), Natural(2 * pair.p).get_mpz_t(),
            pair.q.get_mpz_t());
    bool gcd_ok = proof.gcd_2p_q == 1;
    proof.steps.push_back({2, "factor gcd argument: gcd(2p, q) = 1", gcd_ok});

    // (3) a = 0 forced, so 2p^k = 1 + q^y. Same coprimality fact.
    proof.steps.push_back({3, "exponent forcing to 2p^k = 1 + q^y", gcd_ok});

    // (4) Cycle of 2 p^k mod q^2 over the full multiplicative order of p.
    std::uint64_t q = pair.q.get_ui();
    std::uint64_t q2 = q * q;
    std::uint64_t pm = mpz_fdiv_ui(pair.p.get_mpz_t(), q2);
    std::uint64_t v = pm;
    bool hits_one = false;
    constexpr std::uint64_t kCycleCap = 2'000'000;
    for (;;) {
        std::uint64_t r = detail::mulmod_u64(2, v, q2);
        proof.cycle_residues.push_back(r);
        if (r == 1) { hits_one = true; break; }
        v = detail::mulmod_u64(v, pm, q2);
        if (v == pm) break;  // order completed
        if (proof.cycle_residues.size() >= kCycleCap)
            return {std::nullopt, "cycle mod q^2 too long to enumerate", 4};
    }
    proof.cycle_modulus = q2;
    proof.cycle_length = proof.cycle_residues.size();
    proof.steps.push_back({4, "cycle {2 p^k mod q^2} excludes 1, killing y >= 2",
                           !hits_one});
    if (hits_one)
        return {std::nullopt,
                "cycle check: 2 p^k = 1 (mod q^2) is attainable", 4};

    // (5) y = 1: 2p^k >= 2p > q + 1. y = 0: 2p^k = 2 has no k >= 1.
    proof.y1_lhs = 2 * pair.p;
    proof.y1_rhs = pair.q + 1;
    bool small_ok = proof.y1_lhs > proof.y1_rhs;
    proof.steps.push_back({5, "small cases y = 1 and y = 0 fail arithmetically",
                           small_ok});
    if (!parity_ok || !gcd_ok || !small_ok)
        return {std::nullopt, "internal step failed", 1};
    return {proof, "", -1};
}

// Re-checks every stored step from scratch against the arith module.
inline bool replay_descent(const DescentProof& proof) {
    DescentOutcome again = prove_trivial_descent(proof.pair);
    if (!again.proved()) return false;
    const DescentProof& r = *again.proof;
    return r.p_mod4 == proof.p_mod4 && r.q_mod4 == proof.q_mod4 &&
           r.gcd_2p_q == proof.gcd_2p_q && r.cycle_modulus == proof.cycle_modulus &&
           r.cycle_length == proof.cycle_length &&
           r.cycle_residues == proof.cycle_residues && r.y1_lhs == proof.y1_lhs &&
           r.y1_rhs == proof.y1_rhs && r.steps.size() == proof.steps.size();
}

}  // namespace pqs
