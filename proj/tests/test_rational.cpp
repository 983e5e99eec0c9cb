#include <bdd2bn/rational.hpp>

#include <catch_amalgamated.hpp>

using bdd2bn::rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(rational(6, 8) == rational(3, 4));
  CHECK(rational(-6, 8) == rational(-3, 4));
  CHECK(rational(6, -8) == rational(-3, 4));
  CHECK(rational(-6, -8) == rational(3, 4));
  CHECK(rational(0, 5) == rational());
  CHECK(rational(7) == rational(7, 1));
  CHECK_THROWS_AS(rational(1, 0), std::domain_error);
}

TEST_CASE("predicates") {
  CHECK(rational().is_zero());
  CHECK(rational(1).is_one());
  CHECK(rational(4, 4).is_one());
  CHECK(rational(5).is_integer());
  CHECK_FALSE(rational(1, 2).is_integer());
  CHECK_FALSE(rational(1, 2).is_zero());
  CHECK_FALSE(rational(1, 2).is_one());
}

TEST_CASE("arithmetic is exact") {
  CHECK(rational(1, 3) + rational(1, 6) == rational(1, 2));
  CHECK(rational(1, 2) - rational(1, 3) == rational(1, 6));
  CHECK(rational(2, 3) * rational(3, 4) == rational(1, 2));
  CHECK(-rational(1, 2) == rational(-1, 2));
  CHECK(rational(1, 2) + rational(-1, 2) == rational());

  // 1/3 has no double representation; the rational sum is still exact
  rational third(1, 3);
  CHECK(third + third + third == rational(1));
}

TEST_CASE("accumulation keeps exactness over many steps") {
  // sum of 1/2^k for k=1..62 is 1 - 1/2^62; doubles would round it to 1
  rational sum;
  for (int k = 1; k <= 62; ++k) {
    sum += rational(1, 1ll << k);
  }
  CHECK_FALSE(sum == rational(1));
  CHECK(sum < rational(1));
  CHECK(rational(1) - sum == rational(1, 1ll << 62));
}

TEST_CASE("ordering") {
  CHECK(rational(1, 3) < rational(1, 2));
  CHECK(rational(-1, 2) < rational(1, 3));
  CHECK(rational(1, 2) <= rational(1, 2));
  CHECK_FALSE(rational(1, 2) < rational(1, 2));
  CHECK(rational(2, 4) <= rational(1, 2));
}

TEST_CASE("from_string accepts fractions, integers, and decimals") {
  CHECK(rational::from_string("3/8") == rational(3, 8));
  CHECK(rational::from_string("-2") == rational(-2));
  CHECK(rational::from_string("0.5") == rational(1, 2));
  CHECK(rational::from_string(".25") == rational(1, 4));
  CHECK(rational::from_string(" 1/2 ") == rational(1, 2));
  CHECK(rational::from_string("10/4") == rational(5, 2));

  CHECK_THROWS_AS(rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(rational::from_string("abc"), std::invalid_argument);
  CHECK_THROWS_AS(rational::from_string("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(rational::from_string("1/0"), std::domain_error);
}

TEST_CASE("from_double is exact for dyadic values") {
  CHECK(rational::from_double(0.5) == rational(1, 2));
  CHECK(rational::from_double(0.375) == rational(3, 8));
  CHECK(rational::from_double(-2.25) == rational(-9, 4));
  CHECK(rational::from_double(0.0) == rational());
  CHECK(rational::from_double(1.0) == rational(1));

  // 0.1 is not representable; the conversion captures the actual double
  rational tenth = rational::from_double(0.1);
  CHECK_FALSE(tenth == rational(1, 10));
  CHECK(tenth.to_double() == 0.1);
}

TEST_CASE("to_string and to_double") {
  CHECK(rational(3, 8).to_string() == "3/8");
  CHECK(rational(-3, 8).to_string() == "-3/8");
  CHECK(rational(4).to_string() == "4");
  CHECK(rational().to_string() == "0");
  CHECK(rational(3, 8).to_double() == 0.375);
  CHECK(rational::from_string(rational(7, 12).to_string()) == rational(7, 12));
}
