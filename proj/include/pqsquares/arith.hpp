#pragma once

// Exact nonnegative big-integer helpers: integer square root, perfect-square
// detection, modular exponentiation, multiplicative order, square residues
// and eventual periodicity of power sequences modulo m.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace pqs {

using Natural = mpz_class;
using Integer = mpz_class;  // signed values (ring coefficients, series terms)

// Operands above this many bits are refused (bit_cap_error) instead of
// silently grinding on; the bounded solver sets its own cap from the same
// default.
inline constexpr unsigned kDefaultBitCap = 4096;

struct bit_cap_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline std::size_t bit_length(const Natural& n) {
    return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline void require_within_cap(const Natural& n, unsigned cap = kDefaultBitCap) {
    if (bit_length(n) > cap)
        throw bit_cap_error("operand exceeds the " + std::to_string(cap) + "-bit cap");
}

inline void require_nonneg(const Natural& n) {
    if (n < 0) throw std::invalid_argument("negative operand");
}

// Floor square root by integer Newton iteration. The iteration starts above
// sqrt(n) and decreases monotonically; the trailing adjustment makes the
// result correct independent of how the loop terminated.
inline Natural isqrt(const Natural& n, unsigned bit_cap = kDefaultBitCap) {
    require_nonneg(n);
    require_within_cap(n, bit_cap);
    if (n < 2) return n;
    std::size_t bits = bit_length(n);
    Natural x = Natural(1) << static_cast<unsigned long>(bits / 2 + 1);
    Natural y = (x + n / x) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    while (x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

namespace detail {

// Quadratic-residue bitmaps for the standard reject filters 64, 63, 65, 11.
template <std::size_t M>
constexpr std::array<bool, M> square_table() {
    std::array<bool, M> t{};
    for (std::size_t i = 0; i < M; ++i) t[(i * i) % M] = true;
    return t;
}

inline constexpr auto kSq64 = square_table<64>();
inline constexpr auto kSq63 = square_table<63>();
inline constexpr auto kSq65 = square_table<65>();
inline constexpr auto kSq11 = square_table<11>();

}  // namespace detail

// Returns the root when n = r^2, absent otherwise. 0 counts as a square.
inline std::optional<Natural> is_perfect_square(const Natural& n,
                                                unsigned bit_cap = kDefaultBitCap) {
    require_nonneg(n);
    require_within_cap(n, bit_cap);
    if (!detail::kSq64[mpz_fdiv_ui(n.get_mpz_t(), 64)]) return std::nullopt;
    if (!detail::kSq63[mpz_fdiv_ui(n.get_mpz_t(), 63)]) return std::nullopt;
    if (!detail::kSq65[mpz_fdiv_ui(n.get_mpz_t(), 65)]) return std::nullopt;
    if (!detail::kSq11[mpz_fdiv_ui(n.get_mpz_t(), 11)]) return std::nullopt;
    Natural r = isqrt(n, bit_cap);
    if (r * r == n) return r;
    return std::nullopt;
}

inline Natural pow_mod(const Natural& a, const Natural& e, const Natural& m) {
    require_nonneg(a);
    require_nonneg(e);
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    Natural r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Least t >= 1 with a^t = 1 (mod m); requires gcd(a, m) = 1.
inline Natural multiplicative_order(const Natural& a, const Natural& m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    Natural g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (g != 1) throw std::invalid_argument("multiplicative_order: gcd(a, m) != 1");
    Natural one = Natural(1) % m;
    Natural cur = a % m;
    Natural t = 1;
    while (cur != one) {
        cur = cur * a % m;
        ++t;
        if (t > m) throw std::logic_error("order loop exceeded modulus");
    }
    return t;
}

// {t^2 mod m : 0 <= t < m}. Residue enumeration, so m is capped.
inline std::set<std::uint64_t> square_residue_set(const Natural& m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    if (!m.fits_ulong_p() || m.get_ui() > 10'000'000)
        throw std::domain_error("square_residue_set: modulus too large to enumerate");
    std::uint64_t mm = m.get_ui();
    std::set<std::uint64_t> out;
    for (std::uint64_t t = 0; t <= mm / 2; ++t)
        out.insert(static_cast<std::uint64_t>((unsigned __int128)t * t % mm));
    return out;
}

struct PeriodInfo {
    std::uint64_t preperiod = 0;  // minimal x0 from which the cycle applies
    std::uint64_t period = 1;     // minimal cycle length

    bool operator==(const PeriodInfo&) const = default;
};

// Minimal (preperiod, period) of the sequence a^x mod m, x = 0, 1, 2, ...
// Works for gcd(a, m) > 1 too, where the sequence is only eventually periodic.
inline PeriodInfo eventual_period(const Natural& a, const Natural& m) {
    if (m < 1) throw std::invalid_argument("modulus must be >= 1");
    if (a < 1) throw std::invalid_argument("base must be >= 1");
    if (!m.fits_ulong_p() || m.get_ui() > 100'000'000)
        throw std::domain_error("eventual_period: modulus too large to enumerate");
    std::uint64_t mm = m.get_ui();
    std::uint64_t aa = mpz_fdiv_ui(a.get_mpz_t(), mm);
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    std::uint64_t v = 1 % mm;
    for (std::uint64_t i = 0;; ++i) {
        auto it = first_seen.find(v);
        if (it != first_seen.end()) return {it->second, i - it->second};
        first_seen.emplace(v, i);
        v = static_cast<std::uint64_t>((unsigned __int128)v * aa % mm);
    }
}

}  // namespace pqs
