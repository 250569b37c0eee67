#ifndef PHPLAB_BIGINT_HPP
#define PHPLAB_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace phplab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// All of these throw DomainError on negative or out-of-range arguments.
BigInt factorial(long n);
BigInt falling_factorial(long n, long k);  // n (n-1) ... (n-k+1)
BigInt binomial(long n, long k);

// Largest r with r^q <= x, for x >= 0 and q >= 1.
BigInt integer_root(const BigInt& x, unsigned q);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& x);

// Parses "p/q" or "p"; throws DomainError on malformed text or q == 0.
Rational parse_rational(const std::string& text);

}  // namespace phplab

#endif  // PHPLAB_BIGINT_HPP
