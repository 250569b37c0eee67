#include "phplab/bigint.hpp"

#include "phplab/errors.hpp"

#include <charconv>

namespace phplab {

BigInt factorial(long n) {
  if (n < 0) throw DomainError("factorial of negative number");
  return falling_factorial(n, n);
}

BigInt falling_factorial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("falling factorial (" + std::to_string(n) + ")_" +
                      std::to_string(k) + " out of domain");
  }
  BigInt result = 1;
  for (long i = 0; i < k; ++i) result *= (n - i);
  return result;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("binomial C(" + std::to_string(n) + "," +
                      std::to_string(k) + ") out of domain");
  }
  if (k > n - k) k = n - k;
  // Each partial product is itself a binomial coefficient, so the division is exact.
  BigInt result = 1;
  for (long i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigInt integer_root(const BigInt& x, unsigned q) {
  if (x < 0) throw DomainError("integer root of negative number");
  if (q == 0) throw DomainError("zeroth root");
  if (q == 1 || x < 2) return x;
  BigInt lo = 1;
  BigInt hi = 1;
  while (boost::multiprecision::pow(hi, q) <= x) hi *= 2;
  // invariant: lo^q <= x < hi^q
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, q) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw DomainError("malformed rational '" + text + "'");
    std::size_t start = (s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw DomainError("malformed rational '" + text + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') {
        throw DomainError("malformed rational '" + text + "'");
      }
    }
    return BigInt(s);
  };
  if (slash == std::string::npos) return Rational(parse_int(text));
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + text + "'");
  return Rational(num, den);
}

}  // namespace phplab
