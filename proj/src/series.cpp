#include "unimap/series.hpp"

#include "unimap/errors.hpp"

#include <algorithm>
#include <cmath>

namespace unimap {

TruncatedSeries::TruncatedSeries(unsigned order) : order_(order), coefficients_(order + 1, Rational(0)) {}

TruncatedSeries::TruncatedSeries(unsigned order, std::vector<Rational> coefficients)
    : order_(order), coefficients_(std::move(coefficients)) {
  coefficients_.resize(order + 1, Rational(0));
}

TruncatedSeries TruncatedSeries::one(unsigned order) {
  TruncatedSeries s(order);
  s[0] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::z(unsigned order) {
  TruncatedSeries s(order);
  if (order >= 1) s[1] = 1;
  return s;
}

TruncatedSeries TruncatedSeries::binomial_series(unsigned order, const Rational& a, const Rational& r) {
  TruncatedSeries s(order);
  Rational term = 1;
  for (unsigned k = 0; k <= order; ++k) {
    s[k] = term;
    term = term * (r - Rational(k)) / Rational(k + 1) * a;
  }
  return s;
}

unsigned TruncatedSeries::valuation() const {
  for (unsigned k = 0; k <= order_; ++k) {
    if (coefficients_[k] != 0) return k;
  }
  return order_ + 1;
}

TruncatedSeries TruncatedSeries::truncated(unsigned order) const {
  if (order > order_) throw DomainError("cannot extend a truncated series");
  return TruncatedSeries(order, std::vector<Rational>(coefficients_.begin(), coefficients_.begin() + order + 1));
}

TruncatedSeries TruncatedSeries::derivative() const {
  TruncatedSeries d(order_ == 0 ? 0 : order_ - 1);
  for (unsigned k = 1; k <= order_; ++k) d[k - 1] = coefficients_[k] * k;
  return d;
}

TruncatedSeries TruncatedSeries::shifted(unsigned k) const {
  TruncatedSeries s(order_);
  for (unsigned i = 0; i + k <= order_; ++i) s[i + k] = coefficients_[i];
  return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(order_, o.order_));
  for (unsigned k = 0; k <= s.order_; ++k) s[k] = coefficients_[k] + o.coefficients_[k];
  return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(order_, o.order_));
  for (unsigned k = 0; k <= s.order_; ++k) s[k] = coefficients_[k] - o.coefficients_[k];
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  TruncatedSeries s(std::min(order_, o.order_));
  for (unsigned i = 0; i <= s.order_; ++i) {
    if (coefficients_[i] == 0) continue;
    for (unsigned j = 0; i + j <= s.order_; ++j) s[i + j] += coefficients_[i] * o.coefficients_[j];
  }
  return s;
}

TruncatedSeries TruncatedSeries::operator*(const Rational& c) const {
  TruncatedSeries s(*this);
  for (auto& x : s.coefficients_) x *= c;
  return s;
}

TruncatedSeries TruncatedSeries::operator/(const TruncatedSeries& o) const {
  const unsigned v = o.valuation();
  if (v > o.order_) throw DomainError("division by the zero series");
  if (v > valuation() && valuation() <= order_) {
    throw DomainError("quotient is not a power series");
  }
  const unsigned top = std::min(order_, o.order_);
  if (v > top) throw DomainError("not enough terms to divide");
  const unsigned out = top - v;
  TruncatedSeries q(out);
  const Rational& lead = o.coefficients_[v];
  for (unsigned k = 0; k <= out; ++k) {
    Rational acc = k + v <= order_ ? coefficients_[k + v] : Rational(0);
    for (unsigned j = 1; j <= k; ++j) acc -= o.coefficients_[v + j] * q[k - j];
    q[k] = acc / lead;
  }
  return q;
}

bool TruncatedSeries::all_integers() const {
  return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Rational& x) { return is_integer(x); });
}

std::vector<BigInt> TruncatedSeries::integer_coefficients() const {
  std::vector<BigInt> out;
  out.reserve(coefficients_.size());
  for (const auto& x : coefficients_) {
    if (!is_integer(x)) throw DomainError("series has a non-integer coefficient");
    out.push_back(boost::multiprecision::numerator(x));
  }
  return out;
}

double TruncatedSeries::evaluate(double x) const {
  long double acc = 0;
  for (unsigned k = order_ + 1; k-- > 0;) acc = acc * x + coefficients_[k].convert_to<long double>();
  return static_cast<double>(acc);
}

TruncatedSeries series_T(unsigned order) {
  TruncatedSeries t(order);
  for (unsigned k = 1; k <= order; ++k) t[k] = Rational(catalan(k));
  return t;
}

TruncatedSeries series_D(unsigned order) {
  const auto t = series_T(order);
  return t / (TruncatedSeries::one(order) - t);
}

TruncatedSeries series_C(unsigned order) {
  const auto d = series_D(order + 1);
  return d.derivative().shifted(1).truncated(order);
}

TruncatedSeries closed_form_D(unsigned order) {
  const unsigned work = order + 2;
  const auto s = TruncatedSeries::binomial_series(work, Rational(-4), Rational(1, 2));
  const auto one = TruncatedSeries::one(work);
  const auto z = TruncatedSeries::z(work);
  const auto num = one - z * Rational(2) - s;
  const auto den = z * Rational(4) - one + s;
  return (num / den).truncated(order);
}

TruncatedSeries closed_form_C(unsigned order) {
  const unsigned work = order + 3;
  const auto s = TruncatedSeries::binomial_series(work, Rational(-4), Rational(1, 2));
  const auto one = TruncatedSeries::one(work);
  const auto z = TruncatedSeries::z(work);
  const auto num = z * (one * Rational(2) - s * Rational(2) - z * Rational(4));
  const auto base = z * Rational(4) - one + s;
  const auto den = base * base * s;
  return (num / den).truncated(order);
}

std::vector<BigInt> multiply_truncated(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                       unsigned order) {
  std::vector<BigInt> out(order + 1, BigInt(0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<std::vector<BigInt>> power_table(const std::vector<BigInt>& base, unsigned max_exponent,
                                             unsigned order) {
  std::vector<std::vector<BigInt>> powers;
  powers.reserve(max_exponent + 1);
  std::vector<BigInt> unit(order + 1, BigInt(0));
  unit[0] = 1;
  powers.push_back(std::move(unit));
  for (unsigned j = 1; j <= max_exponent; ++j) powers.push_back(multiply_truncated(powers.back(), base, order));
  return powers;
}

BigInt tree_count(unsigned k) { return k == 0 ? BigInt(0) : catalan(k); }

BigInt doubly_rooted_count(unsigned k) { return k == 0 ? BigInt(0) : catalan(k) * (k + 1) / 2; }

BigInt marked_doubly_rooted_count(unsigned k) { return doubly_rooted_count(k) * k; }

namespace {

long double root_s(double beta) {
  if (!(beta >= 0.0) || beta >= 0.25) throw DomainError("beta must lie in [0, 1/4)");
  return std::sqrt(1.0L - 4.0L * beta);
}

}  // namespace

double eval_D(double beta) {
  const long double s = root_s(beta);
  return static_cast<double>(2.0L * beta / (s * (1.0L + s)));
}

double eval_C(double beta) {
  const long double s = root_s(beta);
  return static_cast<double>(beta / (s * s * s));
}

double mean_X(double beta) {
  const long double s = root_s(beta);
  return static_cast<double>(1.0L + 6.0L * beta / (s * s));
}

double mean_Y(double beta) {
  const long double s = root_s(beta);
  return static_cast<double>((1.0L + s) / (2.0L * s * s));
}

double solve_beta(double c) {
  if (!(c > 0.0) || c > 1.0) throw DomainError("solve_beta needs 0 < c <= 1");
  auto excess = [c](long double beta) {
    const long double s = std::sqrt(1.0L - 4.0L * beta);
    return c * (1.0L + s) / (2.0L * s * s) - 1.0L;
  };
  if (excess(0.0L) >= 0.0L) return 0.0;
  long double lo = 0.0L;
  long double hi = 0.25L;
  for (int it = 0; it < 200 && hi - lo > 0.0L; ++it) {
    const long double mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (excess(mid) < 0.0L ? lo : hi) = mid;
  }
  if (hi >= 0.25L) throw DomainError("solve_beta: no root below 1/4");
  return static_cast<double>(std::fabs(excess(lo)) <= std::fabs(excess(hi)) ? lo : hi);
}

double beta_closed_form(double c) {
  const long double cc = c;
  const long double root = std::sqrt(cc * cc + 8.0L * cc);
  return static_cast<double>(-cc * (cc / 4.0L + root / 4.0L) / 8.0L - cc / 8.0L + 0.25L);
}

double solve_beta_finite(double n, double s) {
  if (!(s >= 0.0) || s > n - 1.0) throw DomainError("solve_beta_finite needs 0 <= s <= n - 1");
  auto excess = [n, s](long double beta) {
    const long double r = std::sqrt(1.0L - 4.0L * beta);
    return 1.0L + 6.0L * beta / (r * r) + s * (1.0L + r) / (2.0L * r * r) - n;
  };
  if (excess(0.0L) >= 0.0L) return 0.0;
  long double lo = 0.0L;
  long double hi = 0.25L;
  for (int it = 0; it < 200; ++it) {
    const long double mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (excess(mid) < 0.0L ? lo : hi) = mid;
  }
  return static_cast<double>(std::fabs(excess(lo)) <= std::fabs(excess(hi)) ? lo : hi);
}

namespace {

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

}  // namespace

double rate_function(double u, double y) {
  if (!(u > 0.0) || u > 1.0 || !(y >= 0.0) || !(y < u)) {
    throw DomainError("rate_function needs 0 < u <= 1 and 0 <= y < u");
  }
  const double log2 = std::log(2.0);
  return (2.0 * log2 - xlogx(u) - xlogx(2.0 - u)) / 3.0 + xlogx(u) - xlogx(y) - xlogx(u - y) +
         xlogx(2.0 - u) - xlogx(2.0 - u - y) - log2 + 0.5 * (xlogx(2.0 - u - y) + xlogx(u - y));
}

double tail_bound(double beta_star, double A, unsigned k) {
  const double x = A * beta_star;
  if (!(A > 0.0) || !(x >= 0.0) || x >= 0.25) throw DomainError("tail_bound needs A beta* < 1/4");
  const double W = x == 0.0 ? 1.0 : eval_D(x) / x;
  return W / std::pow(A, static_cast<double>(k));
}

double exact_tail_Y(double beta, unsigned k) {
  if (!(beta > 0.0) || beta >= 0.25) throw DomainError("exact_tail_Y needs 0 < beta < 1/4");
  const long double total = eval_D(beta);
  long double head = 0.0L;
  long double term = beta;  // dt_1 beta
  for (unsigned j = 1; j < k; ++j) {
    head += term;
    term *= beta * 2.0L * (2.0L * j + 1.0L) / (j + 1.0L);
  }
  return static_cast<double>(std::max(0.0L, 1.0L - head / total));
}

double delta_frontier(double eta, double c) {
  double best = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double delta = i * 1e-3;
    const double y = eta * delta;
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 0;; ++j) {
      const double u = std::min(1.0, eta + j * 1e-3);
      worst = std::max(worst, rate_function(u, y));
      if (u >= 1.0) break;
    }
    if (!(worst < -c)) break;
    best = delta;
  }
  return best;
}

ConstantPipeline derive_constants(double theta, double epsilon, double eta) {
  if (!(theta > 0.0) || theta >= 0.5) throw DomainError("theta must lie in (0, 1/2)");
  if (!(epsilon > 0.0) || epsilon >= 1.0) throw DomainError("epsilon must lie in (0, 1)");
  if (!(eta > 0.0) || eta >= 1.0) throw DomainError("eta must lie in (0, 1)");
  ConstantPipeline p;
  p.theta = theta;
  p.epsilon = epsilon;
  p.eta = eta;

  p.beta_star = solve_beta(theta);
  p.A = p.beta_star < 1e-12 ? 2.0 : std::sqrt(1.0 / (4.0 * p.beta_star));
  p.B = (1.0 + p.A) / 2.0;
  p.r = p.B / p.A;
  const double x = p.A * p.beta_star;
  p.W = x == 0.0 ? 1.0 : eval_D(x) / x;

  const double budget = epsilon / 2.0 * std::log(p.B);
  for (int M = 1; M <= 10'000'000; ++M) {
    if (std::log1p(p.W * std::pow(p.r, M) / (1.0 - p.r)) <= budget) {
      p.M = M;
      break;
    }
  }
  if (p.M == 0) throw InfeasibleConstantsError("no threshold M satisfies the tail condition");

  p.c = -rate_function(eta, 0.0) / 2.0;
  p.delta = delta_frontier(eta, p.c);
  if (p.delta <= 0.0) throw InfeasibleConstantsError("grid search found no delta > 0");
  p.kappa = p.delta / (2.0 * p.M - 1.0);
  return p;
}

nlohmann::json to_json(const ConstantPipeline& p) {
  return nlohmann::json{
      {"theta", p.theta},
      {"epsilon", p.epsilon},
      {"eta", p.eta},
      {"beta_star", p.beta_star},
      {"A", p.A},
      {"B", p.B},
      {"r", p.r},
      {"W", p.W},
      {"M", p.M},
      {"c", p.c},
      {"delta", p.delta},
      {"kappa", p.kappa},
      {"notes",
       {{"beta_star", "root of theta C(beta)/D(beta) = 1 by bisection"},
        {"A", "geometric mean of 1 and 1/(4 beta_star); 2 when beta_star is 0"},
        {"B", "(1 + A)/2"},
        {"r", "B/A"},
        {"W", "D(A beta_star)/(A beta_star)"},
        {"M", "smallest M with log(1 + W r^M/(1-r)) <= (epsilon/2) log B"},
        {"eta", "input, not derived"},
        {"c", "-f(eta,0)/2"},
        {"delta", "largest 1e-3 grid value with max over u in [eta,1] of f(u, eta delta) < -c"},
        {"kappa", "delta/(2M-1)"}}}};
}

}  // namespace unimap
