#include "unimap/numeric.hpp"

#include "unimap/errors.hpp"

#include <cmath>

namespace unimap {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt double_factorial_odd(unsigned m) {
  BigInt r = 1;
  for (unsigned i = 1; i < 2 * m; i += 2) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt catalan(unsigned n) { return binomial(2 * n, n) / (n + 1); }

std::string to_string(const Rational& q) {
  const BigInt& num = boost::multiprecision::numerator(q);
  const BigInt& den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw DomainError("zero denominator in rational '" + text + "'");
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      BigInt den = 1;
      for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
      return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(text));
  } catch (const std::runtime_error&) {
    throw DomainError("cannot parse rational '" + text + "'");
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

long double to_long_double(const BigInt& x) { return x.convert_to<long double>(); }

}  // namespace unimap
