#pragma once

// Primality testing (deterministic below 2^64), prime navigation, and
// enumeration of consecutive prime pairs via a segmented sieve.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pqsquares/arith.hpp"

namespace pqs {

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for the full 64-bit range with the standard
// 12-witness set.
inline bool miller_rabin_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                            23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace detail

struct PrimalityResult {
    bool prime = false;
    bool deterministic = true;  // false only above 2^64 (probable-prime battery)
};

inline PrimalityResult test_prime(const Natural& n) {
    if (n < 2) return {false, true};
    if (mpz_fits_ulong_p(n.get_mpz_t()))
        return {detail::miller_rabin_u64(n.get_ui()), true};
    int r = mpz_probab_prime_p(n.get_mpz_t(), 40);
    return {r != 0, r != 1};
}

inline bool is_prime(const Natural& n) { return test_prime(n).prime; }

inline Natural next_prime(const Natural& n) {
    if (n < 2) return 2;
    Natural c = n + 1;
    if (c > 2 && c % 2 == 0) ++c;
    while (!is_prime(c)) c += (c == 2) ? 1 : 2;
    return c;
}

inline Natural prev_prime(const Natural& n) {
    if (n < 3) throw std::invalid_argument("prev_prime requires n >= 3");
    Natural c = n - 1;
    if (c > 2 && c % 2 == 0) --c;
    while (!is_prime(c)) c -= (c == 3) ? 1 : 2;
    return c;
}

// An ordered pair of consecutive primes p > q.
struct PrimePair {
    Natural p;
    Natural q;

    bool operator==(const PrimePair&) const = default;
};

inline PrimePair make_prime_pair(const Natural& p, const Natural& q) {
    if (!is_prime(p)) throw std::invalid_argument("p is not prime");
    if (!is_prime(q)) throw std::invalid_argument("q is not prime");
    if (p <= q) throw std::invalid_argument("p must exceed q");
    if (next_prime(q) != p)
        throw std::invalid_argument("p and q are not consecutive primes");
    return {p, q};
}

// All primes <= limit, segmented sieve.
inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::uint64_t root = 1;
    while ((root + 1) * (root + 1) <= limit) ++root;

    std::vector<bool> base(root + 1, true);
    std::vector<std::uint64_t> base_primes;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!base[i]) continue;
        base_primes.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) base[j] = false;
    }
    for (std::uint64_t p : base_primes) primes.push_back(p);

    constexpr std::uint64_t kSegment = 1u << 20;
    std::vector<bool> seg;
    for (std::uint64_t lo = root + 1; lo <= limit; lo += kSegment) {
        std::uint64_t hi = std::min(limit, lo + kSegment - 1);
        seg.assign(hi - lo + 1, true);
        for (std::uint64_t p : base_primes) {
            std::uint64_t start = ((lo + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::uint64_t j = start; j <= hi; j += p) seg[j - lo] = false;
        }
        for (std::uint64_t i = 0; i < seg.size(); ++i)
            if (seg[i]) primes.push_back(lo + i);
    }
    return primes;
}

// All consecutive-prime pairs (p, q) with p <= limit, ascending by p.
inline std::vector<PrimePair> consecutive_pairs(std::uint64_t limit) {
    if (limit < 3) throw std::invalid_argument("limit must be >= 3");
    auto ps = primes_up_to(limit);
    std::vector<PrimePair> out;
    out.reserve(ps.size());
    for (std::size_t i = 1; i < ps.size(); ++i)
        out.push_back({Natural(static_cast<unsigned long>(ps[i])),
                       Natural(static_cast<unsigned long>(ps[i - 1]))});
    return out;
}

}  // namespace pqs
