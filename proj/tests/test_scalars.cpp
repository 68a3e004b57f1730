#include <doctest.h>

#include <random>

#include "hc/scalars.hpp"
#include "support.hpp"

using namespace hc;
using testing::random_series;

namespace {

Series poly(std::vector<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Series::from_coeffs(v);
}

// Schoolbook product with explicit truncation.
Series naive_mul(const Series& a, const Series& b) {
    Series out(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order(); ++j) out.add_to(i + j, a[i] * b[j]);
    return out;
}

} // namespace

TEST_CASE("series arithmetic examples") {
    CHECK(poly({1, 1, 0}) * poly({1, -1, 0}) == poly({1, 0, -1}));
    CHECK(poly({1, 1, 1}) * poly({0, 1, 0}) == poly({0, 1, 1}));
    std::mt19937_64 rng(1);
    Series s = random_series(rng, 4);
    CHECK(Series(4) + s == s);
}

TEST_CASE("series inverse") {
    CHECK(inverse(Series::constant(3, 1)) == Series::constant(3, 1));
    CHECK(inverse(poly({1, 1, 0, 0})) == poly({1, -1, 1, -1}));
    try {
        inverse(poly({0, 1, 0}));
        FAIL("expected NotInvertible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotInvertible);
    }
}

TEST_CASE("series exponential") {
    CHECK(exp(Series(3)) == Series::constant(3, 1));
    CHECK(exp(poly({0, 1, 0})) == Series::from_coeffs({1, 1, Rational(1, 2)}));
    CHECK(exp(poly({0, 1, 0, 0, 0})) * exp(poly({0, -1, 0, 0, 0})) == Series::constant(4, 1));
    try {
        exp(poly({1, 1}));
        FAIL("expected an error for a nonzero constant term");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NonzeroConstantTerm);
    }
}

TEST_CASE("ring axioms on random series") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        const int N = 1 + static_cast<int>(rng() % 5);
        Series a = random_series(rng, N), b = random_series(rng, N), c = random_series(rng, N);
        CHECK(a * b == naive_mul(a, b));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a - a == Series(N));
        Series unit = Series::constant(N, 1) + random_series(rng, N, 1);
        CHECK(unit * inverse(unit) == Series::constant(N, 1));
        Series nil = random_series(rng, N, 1);
        CHECK(exp(nil) * exp(-nil) == Series::constant(N, 1));
    }
}

TEST_CASE("truncated products") {
    Series a = poly({1, 2, 3, 4}), b = poly({5, 6, 7, 8});
    CHECK(mul_upto(a, b, 1) == (a * b).truncated(1));
    Series acc = poly({1, 1, 1, 1});
    fma_upto(acc, a, b, 2);
    CHECK(acc == poly({1, 1, 1, 1}) + (a * b).truncated(2));
}

TEST_CASE("rationals are reduced and parsed exactly") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    try {
        Series::constant(2, 1) + Series::constant(3, 1);
        FAIL("expected MismatchedOrder");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MismatchedOrder);
    }
}
