#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/series.hpp"

#include <cmath>

using namespace unimap;

TEST_CASE("T has catalan coefficients") {
  const auto t = series_T(12);
  CHECK(t[0] == 0);
  for (unsigned k = 1; k <= 12; ++k) CHECK(t[k] == Rational(oracle::catalan(k)));
}

TEST_CASE("D and C small coefficients") {
  const auto d = series_D(6);
  const auto c = series_C(6);
  const int dt[] = {0, 1, 3, 10, 35, 126, 462};
  for (unsigned k = 0; k <= 6; ++k) {
    CHECK(d[k] == dt[k]);
    CHECK(c[k] == k * dt[k]);
    CHECK(doubly_rooted_count(k) == dt[k]);
    CHECK(marked_doubly_rooted_count(k) == k * dt[k]);
  }
}

TEST_CASE("series arithmetic") {
  const auto one = TruncatedSeries::one(8);
  const auto z = TruncatedSeries::z(8);
  const auto geo = one / (one - z);
  for (unsigned k = 0; k <= 8; ++k) CHECK(geo[k] == 1);
  const auto sq = TruncatedSeries::binomial_series(8, Rational(-4), Rational(1, 2));
  const auto back = sq * sq;
  CHECK(back[0] == 1);
  CHECK(back[1] == -4);
  for (unsigned k = 2; k <= 8; ++k) CHECK(back[k] == 0);
  CHECK((z * z).valuation() == 2);
  CHECK(z.derivative()[0] == 1);
  CHECK(z.shifted(2)[3] == 1);
}

TEST_CASE("power table") {
  std::vector<BigInt> base{0, 1, 1};
  const auto p = power_table(base, 3, 6);
  // (z + z^2)^3 = z^3 + 3z^4 + 3z^5 + z^6
  CHECK(p[3] == std::vector<BigInt>{0, 0, 0, 1, 3, 3, 1});
}

TEST_CASE("generating function values") {
  const double b = 0.2;
  const double s = std::sqrt(1 - 4 * b);
  const double t = (1 - s) / (2 * b) - 1;
  CHECK(eval_D(b) == doctest::Approx(t / (1 - t)).epsilon(1e-12));
  CHECK(eval_C(b) == doctest::Approx(b / (s * s * s)).epsilon(1e-12));
  CHECK(mean_X(0.0) == 1.0);
  CHECK(mean_Y(0.0) == 1.0);
  CHECK_THROWS_AS(eval_D(0.25), DomainError);
  CHECK_THROWS_AS(eval_D(-0.1), DomainError);
}

TEST_CASE("beta solvers") {
  for (double c : {0.05, 0.3, 0.7, 1.0}) {
    const double b = solve_beta(c);
    const double s = std::sqrt(1 - 4 * b);
    CHECK(c * (1 + s) / (2 * s * s) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(solve_beta_finite(10.0, 0.0) < 0.25);
  const double n = 40, s = 10;
  const double b = solve_beta_finite(n, s);
  CHECK(mean_X(b) + s * mean_Y(b) == doctest::Approx(n).epsilon(1e-8));
}

TEST_CASE("rate function") {
  CHECK(rate_function(1.0, 0.0) == doctest::Approx(-std::log(2.0) / 3).epsilon(1e-14));
  const double u = 0.5;
  const double direct = (u * std::log(u) + (2 - u) * std::log(2 - u)) / 6 - std::log(2.0) / 3;
  CHECK(rate_function(u, 0.0) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(rate_function(0.3, 0.0) < 0);
  CHECK_THROWS(rate_function(0.3, 0.3));
}

TEST_CASE("constant pipeline") {
  const auto p = derive_constants(0.3, 0.1);
  CHECK(p.beta_star > 0);
  CHECK(p.beta_star < 0.25);
  CHECK(p.A == doctest::Approx(std::sqrt(1 / (4 * p.beta_star))));
  CHECK(p.B == doctest::Approx((1 + p.A) / 2));
  CHECK(p.M >= 1);
  CHECK(std::log1p(p.W * std::pow(p.r, p.M) / (1 - p.r)) <= 0.05 * std::log(p.B) + 1e-15);
  CHECK(p.kappa == doctest::Approx(p.delta / (2 * p.M - 1)));
  CHECK(p.delta > 0);
  const auto j = to_json(p);
  CHECK(j.contains("notes"));
  CHECK(j["M"] == p.M);
}

TEST_CASE("exact tail of Y") {
  const double b = 0.1;
  CHECK(exact_tail_Y(b, 1) == doctest::Approx(1.0));
  const double s = std::sqrt(1 - 4 * b);
  const double d = 2 * b / (s * (1 + s));
  CHECK(exact_tail_Y(b, 2) == doctest::Approx(1 - b / d).epsilon(1e-12));
}
