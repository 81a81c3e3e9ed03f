#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace unimap {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
/// (2m-1)!! = 1*3*5*...*(2m-1); equals 1 for m = 0.
BigInt double_factorial_odd(unsigned m);
BigInt binomial(unsigned n, unsigned k);
BigInt catalan(unsigned n);

/// "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

inline bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

double to_double(const Rational& q);
long double to_long_double(const BigInt& x);

}  // namespace unimap
