#include "phplab/bigint.hpp"
#include "phplab/errors.hpp"

#include <doctest.h>

using namespace phplab;

TEST_CASE("factorials and binomials are exact") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(to_string(factorial(30)) == "265252859812191058636308480000000");
  CHECK(falling_factorial(8, 2) == 56);
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
  CHECK_THROWS_AS(factorial(-1), DomainError);
  CHECK_THROWS_AS(falling_factorial(3, 4), DomainError);
  CHECK_THROWS_AS(binomial(3, -1), DomainError);
}

TEST_CASE("pascal rule holds") {
  for (long n = 1; n <= 40; ++n) {
    for (long k = 1; k < n; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("integer roots are floors") {
  CHECK(integer_root(10000, 2) == 100);
  CHECK(integer_root(9999, 2) == 99);
  CHECK(integer_root(16, 2) == 4);
  CHECK(integer_root(26, 3) == 2);
  CHECK(integer_root(27, 3) == 3);
  CHECK(integer_root(0, 5) == 0);
  for (unsigned q = 1; q <= 5; ++q) {
    for (int x = 0; x < 300; ++x) {
      const BigInt r = integer_root(x, q);
      CHECK(boost::multiprecision::pow(r, q) <= x);
      CHECK(boost::multiprecision::pow(BigInt(r + 1), q) > x);
    }
  }
  CHECK_THROWS_AS(integer_root(-1, 2), DomainError);
  CHECK_THROWS_AS(integer_root(4, 0), DomainError);
}

TEST_CASE("rational text round-trips") {
  CHECK(to_string(Rational(101, 91)) == "101/91");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(parse_rational("1/2") == Rational(1, 2));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("x"), DomainError);
}
