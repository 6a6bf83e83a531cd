#include <doctest.h>

#include "quotamatch/errors.hpp"
#include "quotamatch/rational.hpp"

using namespace quotamatch;

TEST_CASE("decimal strings parse exactly") {
  CHECK(parse_rational("0") == Rational(0));
  CHECK(parse_rational("12") == Rational(12));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("1.1") == Rational(11, 10));
  CHECK(parse_rational("0.9") == Rational(9, 10));
  CHECK(parse_rational("3.25") == Rational(13, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("+2.5") == Rational(5, 2));
  CHECK(parse_rational("007") == Rational(7));
  CHECK(parse_rational("0.050") == Rational(1, 20));
}

TEST_CASE("fraction strings parse exactly") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-29/10") == Rational(-29, 10));
  CHECK(parse_rational("2/4") == Rational(1, 2));  // canonicalized
  CHECK(boost::multiprecision::denominator(parse_rational("2/4")) == 2);
}

TEST_CASE("malformed numerals are rejected") {
  for (const char* bad : {"", "1.", "1..2", "a", "1a", "1/0", "1/-2", "1.5/2", "--1", ".", "-"}) {
    CHECK_THROWS_AS(parse_rational(bad), ValueError);
  }
}

TEST_CASE("serialization uses finite decimals when possible") {
  CHECK(to_string_exact(Rational(0)) == "0");
  CHECK(to_string_exact(Rational(3)) == "3");
  CHECK(to_string_exact(Rational(-1, 2)) == "-0.5");
  CHECK(to_string_exact(Rational(11, 10)) == "1.1");
  CHECK(to_string_exact(Rational(1, 8)) == "0.125");
  CHECK(to_string_exact(Rational(1, 20)) == "0.05");
  CHECK(to_string_exact(Rational(1, 3)) == "1/3");
  CHECK(to_string_exact(Rational(-5, 7)) == "-5/7");
}

TEST_CASE("canonical strings round-trip byte for byte") {
  for (const char* text : {"0", "3", "-0.5", "1.1", "0.125", "29/10", "-2/7", "123456789.000000001"}) {
    Rational parsed = parse_rational(text);
    std::string rendered = to_string_exact(parsed);
    if (std::string(text).find('/') == std::string::npos)
      CHECK(rendered == text);
    CHECK(parse_rational(rendered) == parsed);
  }
}

TEST_CASE("value round-trip holds for every rational") {
  for (int num = -20; num <= 20; ++num) {
    for (int den = 1; den <= 12; ++den) {
      Rational q(num, den);
      CHECK(parse_rational(to_string_exact(q)) == q);
    }
  }
}

TEST_CASE("integrality detection is exact") {
  CHECK(is_integer(Rational(4, 2)));
  CHECK(is_integer(Rational(0)));
  CHECK(!is_integer(Rational(1, 2)));
}
