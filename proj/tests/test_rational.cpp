// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "secrisk/error.hpp"
#include "secrisk/rational.hpp"

using secrisk::DomainError;
using secrisk::parse_rational;
using secrisk::Rational;

TEST_CASE("floor rounds toward negative infinity") {
  CHECK(secrisk::floor(Rational(17, 4)) == 4);
  CHECK(secrisk::floor(Rational(4)) == 4);
  CHECK(secrisk::floor(Rational(-1, 4)) == -1);
  CHECK(secrisk::floor(Rational(-4)) == -4);
  CHECK(secrisk::floor(Rational(0)) == 0);
}

TEST_CASE("parse accepts fractions, integers and decimals exactly") {
  CHECK(parse_rational("17/4") == Rational(17, 4));
  CHECK(parse_rational(" 16 ") == Rational(16));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("007") == Rational(7));
  CHECK(parse_rational("1e-05") == Rational(1, 100000));
  CHECK(parse_rational("2.5E3") == Rational(2500));
}

TEST_CASE("parse rejects malformed input") {
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
  CHECK_THROWS_AS(parse_rational("1/2/3"), DomainError);
  CHECK_THROWS_AS(parse_rational("."), DomainError);
}

TEST_CASE("to_string omits unit denominators") {
  CHECK(secrisk::to_string(Rational(17, 4)) == "17/4");
  CHECK(secrisk::to_string(Rational(8, 2)) == "4");
  CHECK(parse_rational(secrisk::to_string(Rational(-22, 7))) == Rational(-22, 7));
}
