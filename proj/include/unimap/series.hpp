#pragma once

#include "unimap/numeric.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace unimap {

/// Power series in z truncated after z^order, exact rational coefficients.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(unsigned order);
  TruncatedSeries(unsigned order, std::vector<Rational> coefficients);

  /// 1 + 0z + ...
  static TruncatedSeries one(unsigned order);
  /// z
  static TruncatedSeries z(unsigned order);
  /// (1 + a z)^r by the binomial series.
  static TruncatedSeries binomial_series(unsigned order, const Rational& a, const Rational& r);

  unsigned order() const noexcept { return order_; }
  const Rational& operator[](unsigned k) const { return coefficients_.at(k); }
  Rational& operator[](unsigned k) { return coefficients_.at(k); }
  const std::vector<Rational>& coefficients() const noexcept { return coefficients_; }

  /// Index of the first nonzero coefficient, or order()+1 for the zero series.
  unsigned valuation() const;
  TruncatedSeries truncated(unsigned order) const;
  TruncatedSeries derivative() const;
  TruncatedSeries shifted(unsigned k) const;  ///< times z^k

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const Rational& c) const;
  /// Exact quotient when the divisor's valuation v does not exceed the
  /// dividend's; the result is known only up to order() - v.
  TruncatedSeries operator/(const TruncatedSeries& o) const;

  bool all_integers() const;
  std::vector<BigInt> integer_coefficients() const;
  double evaluate(double x) const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  unsigned order_;
  std::vector<Rational> coefficients_;
};

/// Rooted plane trees with at least one edge, by edges: sum_{k>=1} Cat(k) z^k.
TruncatedSeries series_T(unsigned order);
/// Doubly rooted trees, D = T / (1 - T).
TruncatedSeries series_D(unsigned order);
/// Doubly rooted trees with a marked edge, C = z D'.
TruncatedSeries series_C(unsigned order);

/// The closed forms in sqrt(1-4z), expanded exactly.
TruncatedSeries closed_form_D(unsigned order);
TruncatedSeries closed_form_C(unsigned order);

/// Truncated products over big integers.
std::vector<BigInt> multiply_truncated(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                       unsigned order);
/// powers[j] = base^j truncated after z^order, j = 0..max_exponent.
std::vector<std::vector<BigInt>> power_table(const std::vector<BigInt>& base, unsigned max_exponent,
                                             unsigned order);

/// [z^k] T, D, C in closed form: Cat(k), Cat(k)(k+1)/2, k Cat(k)(k+1)/2 (zero at k = 0).
BigInt tree_count(unsigned k);
BigInt doubly_rooted_count(unsigned k);
BigInt marked_doubly_rooted_count(unsigned k);

/// 0 <= beta < 1/4; domain error otherwise.
double eval_D(double beta);
double eval_C(double beta);
/// E(X_beta) = beta C'(beta)/C(beta) and E(Y_beta) = beta D'(beta)/D(beta); both 1 at beta = 0.
double mean_X(double beta);
double mean_Y(double beta);

/// Root of c C(beta)/D(beta) = 1 in [0, 1/4), by bisection.
double solve_beta(double c);
/// -c(c/4 + sqrt(c^2+8c)/4)/8 - c/8 + 1/4.
double beta_closed_form(double c);
/// Root of E(X) + s E(Y) = n in [0, 1/4) for 0 <= s <= n - 1.
double solve_beta_finite(double n, double s);

/// f(u, y) for 0 < u <= 1, 0 <= y < u, with 0 log 0 = 0.
double rate_function(double u, double y);

/// W / A^k with W = D(A beta*)/(A beta*).
double tail_bound(double beta_star, double A, unsigned k);
/// P(Y_beta >= k) from the exact coefficients.
double exact_tail_Y(double beta, unsigned k);

struct ConstantPipeline {
  double theta = 0;
  double epsilon = 0;
  double eta = 0;
  double beta_star = 0;
  double A = 0;
  double B = 0;
  double r = 0;
  double W = 0;
  int M = 0;
  double c = 0;
  double delta = 0;
  double kappa = 0;
};

/// Evaluated in dependency order: (theta, epsilon) -> beta*, A, B, r, W -> M;
/// eta -> c -> delta; (delta, M) -> kappa.
ConstantPipeline derive_constants(double theta, double epsilon, double eta = 0.05);
/// Largest delta on the 1e-3 grid with max_{u in [eta,1]} f(u, eta delta) < -c; 0 if none.
double delta_frontier(double eta, double c);
nlohmann::json to_json(const ConstantPipeline& p);

}  // namespace unimap
