#pragma once

// Exact arithmetic in imaginary quadratic rings Z[sqrt(d)], d < 0 squarefree,
// the two binomial series used in the y=1 / y=0 endgames, and the bounded
// solver for imag_coeff(base, x) = target.

#include <cstdint>
#include <set>
#include <stdexcept>

#include "pqsquares/arith.hpp"

namespace pqs {

namespace detail {

inline bool squarefree_small(long n) {
    for (long f = 2; f * f <= n; ++f)
        if (n % (f * f) == 0) return false;
    return true;
}

}  // namespace detail

// a + b*sqrt(d) with d a negative squarefree integer. Elements with
// different d never mix.
struct QuadInt {
    Integer a;
    Integer b;
    long d = -1;

    bool operator==(const QuadInt&) const = default;
};

inline QuadInt make_quadint(const Integer& a, const Integer& b, long d) {
    if (d >= 0) throw std::invalid_argument("d must be negative");
    if (!detail::squarefree_small(-d))
        throw std::invalid_argument("d must be squarefree");
    return {a, b, d};
}

inline void require_same_ring(const QuadInt& u, const QuadInt& v) {
    if (u.d != v.d) throw std::invalid_argument("mixed quadratic rings");
}

inline QuadInt qadd(const QuadInt& u, const QuadInt& v) {
    require_same_ring(u, v);
    return {u.a + v.a, u.b + v.b, u.d};
}

inline QuadInt qmul(const QuadInt& u, const QuadInt& v) {
    require_same_ring(u, v);
    return {u.a * v.a + u.d * u.b * v.b, u.a * v.b + u.b * v.a, u.d};
}

inline QuadInt qconj(const QuadInt& u) { return {u.a, -u.b, u.d}; }

// N(a + b*sqrt(d)) = a^2 - d*b^2, nonnegative since d < 0.
inline Natural qnorm(const QuadInt& u) { return u.a * u.a - u.d * u.b * u.b; }

inline QuadInt qpow(const QuadInt& u, std::uint64_t e) {
    QuadInt r{1, 0, u.d};
    QuadInt base = u;
    while (e) {
        if (e & 1) r = qmul(r, base);
        base = qmul(base, base);
        e >>= 1;
    }
    return r;
}

// The sqrt(d) coefficient of u^e.
inline Integer imag_coeff(const QuadInt& u, std::uint64_t e) { return qpow(u, e).b; }

// The two alternating binomial series over odd k <= x. Variant A weights
// 2^((k-1)/2) (the Z[sqrt(-2)] endgame); variant B weights 2^(x-k) (Z[i]).
enum class FVariant { A, B };

inline Integer f_series(std::uint64_t x, FVariant v) {
    if (x == 0 || x % 2 == 0) throw std::invalid_argument("f_series: x must be odd");
    Integer sum = 0;
    for (std::uint64_t k = 1; k <= x; k += 2) {
        Integer term;
        mpz_bin_uiui(term.get_mpz_t(), x, k);
        std::uint64_t shift = (v == FVariant::A) ? (k - 1) / 2 : x - k;
        term <<= static_cast<unsigned long>(shift);
        if (((k + 1) / 2) % 2 == 1)
            sum -= term;
        else
            sum += term;
    }
    return sum;
}

// All x <= xmax with imag_coeff(base, x) = target, by exhaustive scan with
// incremental powers. No monotonicity of the coefficient sequence is
// assumed; see check_errata for why the shortcut is unsound.
inline std::set<std::uint64_t> solve_imag_equals(const QuadInt& base,
                                                 const Integer& target,
                                                 std::uint64_t xmax) {
    if (xmax < 1) throw std::invalid_argument("xmax must be >= 1");
    std::set<std::uint64_t> out;
    QuadInt cur{1, 0, base.d};
    for (std::uint64_t x = 0; x <= xmax; ++x) {
        if (cur.b == target) out.insert(x);
        cur = qmul(cur, base);
    }
    return out;
}

}  // namespace pqs
