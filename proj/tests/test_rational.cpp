#include <doctest.h>

#include <stdexcept>

#include "edgevote/rational.hpp"

using edgevote::Rational;

TEST_SUITE("rational") {

TEST_CASE("normalization and equality") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, -7).den == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("ordering uses exact cross products") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 10) <= Rational(7, 10));
  // denominators large enough that double comparison would tie
  CHECK(Rational(1000000000000000001, 3) > Rational(1000000000000000000, 3));
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 6) + Rational(1, 3) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 10) == Rational(2, 5));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK((-Rational(1, 4)).num == -1);
}

TEST_CASE("floor and ceil of integer multiples") {
  CHECK(Rational(1, 2).ceil_mul(5) == 3);
  CHECK(Rational(1, 2).floor_mul(5) == 2);
  CHECK(Rational(1, 2).ceil_mul(4) == 2);
  CHECK(Rational(3, 10).ceil_mul(10) == 3);
  CHECK(Rational(-1, 2).floor_mul(3) == -2);
  CHECK(Rational(-1, 2).ceil_mul(3) == -1);
}

TEST_CASE("parsing") {
  CHECK(Rational::parse("1/10") == Rational(1, 10));
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("0.1") == Rational(1, 10));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0.125").str() == "1/8");
  CHECK_THROWS(Rational::parse(""));
}

}  // TEST_SUITE
