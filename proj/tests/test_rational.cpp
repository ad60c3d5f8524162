#include <doctest.h>

#include <json.hpp>

#include "tfm/json_io.hpp"
#include "tfm/rational.hpp"

using tfm::Rational;

TEST_CASE("arithmetic is exact and normalized") {
    Rational a(1, 4), b(1, 2);
    CHECK(a + b == Rational(3, 4));
    CHECK(b - a == Rational(1, 4));
    CHECK(a * b == Rational(1, 8));
    CHECK(a / b == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK((-Rational(1, 3)).num() == -1);
}

TEST_CASE("comparisons cross-multiply exactly") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 3) > Rational(1, 2));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK(Rational(-1, 2) < Rational(0));
    CHECK(Rational(1000000007, 3) > Rational(1000000006, 3));
}

TEST_CASE("no drift across a long exact sum") {
    Rational sum(0);
    for (int i = 0; i < 3 * 7 * 11; ++i) sum += Rational(1, 231);
    CHECK(sum == Rational(1));
}

TEST_CASE("parse accepts integers, fractions, decimals") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("7/4") == Rational(7, 4));
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("19.8") == Rational(99, 5));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
}

TEST_CASE("str round-trips") {
    for (const char* s : {"0", "5", "-5", "1/4", "-7/3", "19/5"})
        CHECK(Rational::parse(s).str() == s);
}

TEST_CASE("overflow throws instead of wrapping") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("json keeps exactness") {
    // Power-of-two denominators travel as numbers, others as "p/q" strings.
    auto roundtrip = [](const Rational& r) {
        return tfm::rational_from_json(tfm::rational_to_json(r));
    };
    CHECK(roundtrip(Rational(3)) == Rational(3));
    CHECK(roundtrip(Rational(1, 4)) == Rational(1, 4));
    CHECK(roundtrip(Rational(-5, 8)) == Rational(-5, 8));
    CHECK(roundtrip(Rational(1, 3)) == Rational(1, 3));
    CHECK(tfm::rational_to_json(Rational(1, 3)).is_string());
    CHECK(tfm::rational_to_json(Rational(1, 4)).is_number());
    // Doubles parse back to their exact binary value.
    CHECK(tfm::rational_from_json(nlohmann::json(0.375)) == Rational(3, 8));
}
