#include <catch_amalgamated.hpp>

#include "pi2lab/rational.hpp"
#include "pi2lab/units.hpp"
#include "pi2lab/errors.hpp"

using namespace pi2lab;
using Catch::Approx;

TEST_CASE("rates parse with explicit suffixes", "[units]") {
    CHECK(parse_rate("8333pps") == 8333.0);
    CHECK(parse_rate("2kpps") == 2000.0);
    CHECK(parse_rate("12000bit") == Approx(1.0));
    CHECK(parse_rate("12kbit") == Approx(1.0));
    CHECK(parse_rate("100mbit") == Approx(8333.333333));
    CHECK(parse_rate("100Mbps") == Approx(8333.333333));
    CHECK(parse_rate("1gbit") == Approx(83333.33333));
    CHECK_THROWS_AS(parse_rate("100"), ValidationError);
    CHECK_THROWS_AS(parse_rate("fast"), ValidationError);
    CHECK_THROWS_AS(parse_rate("-4mbit"), ValidationError);
    CHECK_THROWS_AS(parse_rate("4furlongs"), ValidationError);
}

TEST_CASE("times parse with explicit suffixes", "[units]") {
    CHECK(parse_time("15ms") == Approx(0.015));
    CHECK(parse_time("2s") == 2.0);
    CHECK(parse_time("250us") == Approx(250e-6));
    CHECK(parse_time("0.5 ms") == Approx(0.0005));
    CHECK_THROWS_AS(parse_time("15"), ValidationError);
    CHECK_THROWS_AS(parse_time("15 min"), ValidationError);
    CHECK_THROWS_AS(parse_time("-5ms"), ValidationError);
    CHECK(parse_time("0s") == 0.0);
}

TEST_CASE("unit conversions round-trip", "[units]") {
    for (double mbps : {0.5, 4.0, 40.0, 200.0, 1000.0}) CHECK(pps_to_mbps(mbps_to_pps(mbps)) == Approx(mbps));
    CHECK(kPacketBits == 12000.0);
    CHECK(format_ms(0.0155, 1) == "15.5 ms");
    CHECK(format_s(3.40119, 2) == "3.40 s");
    CHECK(round_to(0.385, 2) == Approx(0.39));
    CHECK(round_to(18.7797, 0) == 19.0);
}

TEST_CASE("rationals reduce and compare exactly", "[units]") {
    const Rational r(10, -4);
    CHECK(r.num() == -5);
    CHECK(r.den() == 2);
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(7, 10) * Rational(10, 7) == Rational(1));
    CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(5, 9).to_double() == Approx(0.5555555556));
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS(Rational(1) / Rational(0));
    CHECK_THROWS(Rational(INT64_MAX) * Rational(INT64_MAX));
}
