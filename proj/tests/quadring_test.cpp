#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pqsquares/quadring.hpp"

using namespace pqs;

TEST_CASE("ring multiplication matches the norm factorizations") {
    QuadInt a = make_quadint(1, -1, -2);  // 1 - sqrt(-2)
    QuadInt b = make_quadint(1, 1, -2);   // 1 + sqrt(-2)
    CHECK(qmul(a, b) == make_quadint(3, 0, -2));

    QuadInt c = make_quadint(2, -1, -1);  // 2 - i
    QuadInt d = make_quadint(2, 1, -1);   // 2 + i
    CHECK(qmul(c, d) == make_quadint(5, 0, -1));

    QuadInt one = make_quadint(1, 0, -2);
    CHECK(qmul(a, one) == a);
    CHECK_THROWS_AS(qmul(a, c), std::invalid_argument);
    CHECK_THROWS_AS(make_quadint(1, 1, -4), std::invalid_argument);  // not squarefree
    CHECK_THROWS_AS(make_quadint(1, 1, 2), std::invalid_argument);   // not negative
}

TEST_CASE("qnorm") {
    CHECK(qnorm(make_quadint(0, 0, -2)) == 0);
    CHECK(qnorm(make_quadint(1, -1, -2)) == 3);
    CHECK(qnorm(make_quadint(2, -1, -1)) == 5);
}

TEST_CASE("qpow direct expansions") {
    CHECK(qpow(make_quadint(1, -1, -2), 5) == make_quadint(1, 11, -2));
    CHECK(qpow(make_quadint(2, -1, -1), 3) == make_quadint(2, -11, -1));
    CHECK(qpow(make_quadint(9, 4, -2), 0) == make_quadint(1, 0, -2));
}

TEST_CASE("norm properties on random elements") {
    std::mt19937_64 gen(321);
    std::uniform_int_distribution<long> coeff(-1'000'000, 1'000'000);
    const long ds[] = {-1, -2, -3, -5, -7};
    for (int i = 0; i < 1000; ++i) {
        long d = ds[gen() % 5];
        QuadInt u = make_quadint(coeff(gen), coeff(gen), d);
        QuadInt v = make_quadint(coeff(gen), coeff(gen), d);
        CHECK(qnorm(qmul(u, v)) == qnorm(u) * qnorm(v));
        QuadInt prod = qmul(u, qconj(u));
        CHECK(prod.b == 0);
        CHECK(prod.a == qnorm(u));
    }
}

TEST_CASE("qpow norm consistency up to e = 64") {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<long> coeff(-3, 3);
    for (int i = 0; i < 50; ++i) {
        QuadInt u = make_quadint(coeff(gen), coeff(gen), (gen() % 2) ? -1 : -2);
        Natural n = qnorm(u);
        Natural expected = 1;
        for (unsigned e = 0; e <= 64; ++e) {
            CHECK(qnorm(qpow(u, e)) == expected);
            expected *= n;
        }
    }
}

TEST_CASE("f_series printed values") {
    CHECK(f_series(1, FVariant::A) == -1);
    CHECK(f_series(3, FVariant::A) == -1);
    CHECK(f_series(5, FVariant::A) == 11);
    CHECK(f_series(3, FVariant::B) == -11);
    CHECK_THROWS_AS(f_series(4, FVariant::A), std::invalid_argument);
    CHECK_THROWS_AS(f_series(0, FVariant::B), std::invalid_argument);
}

TEST_CASE("series equals the ring imaginary coefficient for all odd x <= 201") {
    QuadInt baseA = make_quadint(1, -1, -2);
    QuadInt baseB = make_quadint(2, -1, -1);
    for (std::uint64_t x = 1; x <= 201; x += 2) {
        CHECK(f_series(x, FVariant::A) == imag_coeff(baseA, x));
        CHECK(f_series(x, FVariant::B) == imag_coeff(baseB, x));
    }
}

TEST_CASE("the claimed series monotonicity is false: first break at x = 5") {
    // Variant A is claimed nondecreasing over odd x, variant B nonincreasing.
    // Both hold up to x = 3 and break at x = 5, because powers of a complex
    // number rotate in argument.
    CHECK(f_series(1, FVariant::A) <= f_series(3, FVariant::A));
    CHECK(f_series(3, FVariant::A) <= f_series(5, FVariant::A));
    CHECK(f_series(5, FVariant::A) == 11);
    CHECK(f_series(7, FVariant::A) == -13);
    CHECK_FALSE(f_series(5, FVariant::A) <= f_series(7, FVariant::A));

    CHECK(f_series(1, FVariant::B) >= f_series(3, FVariant::B));
    CHECK(f_series(3, FVariant::B) >= f_series(5, FVariant::B));
    CHECK(f_series(5, FVariant::B) == -41);
    CHECK(f_series(7, FVariant::B) == 29);
    CHECK_FALSE(f_series(5, FVariant::B) >= f_series(7, FVariant::B));
}

TEST_CASE("imag_coeff documented cases") {
    CHECK(imag_coeff(make_quadint(1, -1, -2), 3) == -1);
    CHECK(imag_coeff(make_quadint(2, -1, -1), 1) == -1);
    CHECK(imag_coeff(make_quadint(7, 9, -2), 0) == 0);
}

TEST_CASE("solve_imag_equals bounded scans") {
    CHECK(solve_imag_equals(make_quadint(1, -1, -2), -1, 1000) ==
          std::set<std::uint64_t>({1, 3}));
    CHECK(solve_imag_equals(make_quadint(2, -1, -1), -1, 1000) ==
          std::set<std::uint64_t>({1}));
    CHECK(solve_imag_equals(make_quadint(1, 1, -2), -1, 1000).empty());
    CHECK_THROWS_AS(solve_imag_equals(make_quadint(1, 1, -2), -1, 0),
                    std::invalid_argument);
    // x = 0 counts when the target is 0
    CHECK(solve_imag_equals(make_quadint(2, 1, -1), 0, 10).count(0) == 1);
}
