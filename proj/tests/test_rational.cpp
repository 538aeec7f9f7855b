#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "colorpart/rational.hpp"

using colorpart::parse_rational;
using colorpart::Rational;

TEST_CASE("decimal strings parse exactly") {
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-2.50") == Rational(-5, 2));
  CHECK(parse_rational("+3") == Rational(3));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("5.") == Rational(5));
}

TEST_CASE("leading zeros are decimal, not octal") {
  CHECK(parse_rational("0.088") == Rational(11, 125));
  CHECK(parse_rational("0.0009") == Rational(9, 10000));
  CHECK(parse_rational("007") == Rational(7));
  CHECK(parse_rational("09/010") == Rational(9, 10));
}

TEST_CASE("exponents and fractions") {
  CHECK(parse_rational("1e3") == Rational(1000));
  CHECK(parse_rational("2.5E-2") == Rational(1, 40));
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
}

TEST_CASE("malformed numbers are rejected") {
  for (const char* bad : {"", "abc", "1..2", "1/0", "1/-2", "0.5/2", "1e", "--1", "1,5", "."}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("doubles convert exactly") {
  CHECK(colorpart::to_rational(0.5) == Rational(1, 2));
  CHECK(colorpart::to_double(colorpart::to_rational(0.1)) == 0.1);
  CHECK(colorpart::to_rational(0.1) != Rational(1, 10));
  CHECK_THROWS(colorpart::to_rational(std::numeric_limits<double>::infinity()));
  CHECK(colorpart::to_string(Rational(-1, 2)) == "-1/2");
}
