#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimap/errors.hpp"
#include "unimap/expansion.hpp"
#include "unimap/samplers.hpp"

#include <cmath>

using namespace unimap;

namespace {

Multigraph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Multigraph(n, e);
}

}  // namespace

TEST_CASE("h of explicit cuts") {
  const auto c6 = cycle(6);
  const auto w = h_value(c6, {0, 1, 2});
  CHECK(w.boundary == 2);
  CHECK(w.vol_subset == 6);
  CHECK(w.h == Rational(1, 3));
  CHECK_THROWS_AS(h_value(c6, {}), EmptySideError);
  CHECK_THROWS_AS(h_value(c6, {0, 1, 2, 3, 4, 5}), EmptySideError);
}

TEST_CASE("cycles and complete graphs") {
  for (int k = 2; k <= 5; ++k) CHECK(cheeger_exact(cycle(2 * k)).h == Rational(1, k));
  std::vector<std::pair<int, int>> k4;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) k4.emplace_back(i, j);
  }
  CHECK(cheeger_exact(Multigraph(4, k4)).h == Rational(2, 3));
}

TEST_CASE("loops count in volume only") {
  const Multigraph g(2, {{0, 1}, {0, 0}});
  CHECK(g.degrees() == std::vector<int>{3, 1});
  CHECK(cheeger_exact(g).h == 1);
  const Multigraph two(2, {{0, 1}, {0, 0}, {1, 1}});
  CHECK(cheeger_exact(two).h == Rational(1, 3));
}

TEST_CASE("exact engine agrees with brute force") {
  Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + static_cast<int>(uniform_below(7, rng));
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < n; ++v) e.emplace_back(static_cast<int>(uniform_below(static_cast<std::uint64_t>(v), rng)), v);
    const int extra = static_cast<int>(uniform_below(6, rng));
    for (int i = 0; i < extra; ++i) {
      e.emplace_back(static_cast<int>(uniform_below(static_cast<std::uint64_t>(n), rng)),
                     static_cast<int>(uniform_below(static_cast<std::uint64_t>(n), rng)));
    }
    const Multigraph g(n, e);
    const auto w = cheeger_exact(g);
    CHECK(w.h == oracle::cheeger_all_subsets({n, e}));
    CHECK(h_value(g, w.subset).h == w.h);
    CHECK(2 * w.vol_subset <= g.volume());
    const auto b = spectral_cheeger_bounds(g);
    CHECK(b.lower <= to_double(w.h) + 1e-12);
    CHECK(to_double(w.h) <= b.upper + 1e-12);
  }
}

TEST_CASE("disconnected and degenerate graphs") {
  const Multigraph g(4, {{0, 1}, {2, 3}});
  const auto w = cheeger_exact(g);
  CHECK(w.h == 0);
  CHECK(w.subset == std::vector<int>{0, 1});
  CHECK_THROWS_AS(spectral_cheeger_bounds(g), DisconnectedGraphError);
  CHECK_THROWS(cheeger_exact(Multigraph(1, {{0, 0}})));
  CHECK_THROWS_AS(cheeger_exact(cycle(30), 24), CapExceededError);
}

TEST_CASE("kappa expander verdicts") {
  const auto v = is_kappa_expander(cycle(8), Rational(1, 4));
  CHECK(v.holds);
  const auto f = is_kappa_expander(cycle(8), Rational(1, 3));
  CHECK_FALSE(f.holds);
  REQUIRE(f.violation.has_value());
  CHECK(f.violation->h < Rational(1, 3));
}

TEST_CASE("subset volume counts") {
  const DegreeSequence d{3, 3, 4, 5, 3};
  for (int V = 1; V <= 9; ++V) {
    long brute = 0;
    for (unsigned mask = 0; mask < 32; ++mask) {
      int s = 0;
      for (int i = 0; i < 5; ++i) {
        if (mask >> i & 1U) s += d[i];
      }
      brute += s == V;
    }
    const auto c = count_subset_volumes(d, V);
    CHECK(c.count == brute);
    CHECK(c.count <= c.bound);
  }
}

TEST_CASE("bad event estimates") {
  Rng rng(3);
  const DegreeSequence d{3, 3, 3, 3};
  const auto exact = estimate_bad_event(d, 6, Rational(1, 2), 0, rng);
  CHECK(exact.exact);
  long hits = 0, total = 0;
  for_each_pairing(6, [&](const Pairing& p) {
    ++total;
    hits += bad_event(d, p, 6, Rational(1, 2));
  });
  CHECK(exact.exact_value == Rational(hits, total));
  const auto [lo, hi] = wilson_interval(50, 100);
  CHECK(lo < 0.5);
  CHECK(hi > 0.5);
  CHECK(hi - 0.5 == doctest::Approx(0.5 - lo));
}

TEST_CASE("edge substitution transfer") {
  Rng rng(10);
  const Multigraph h(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
  for (int M = 1; M <= 3; ++M) {
    const auto t = branch_substitution_transfer_check(h, M, rng);
    CHECK(t.holds);
    CHECK(t.h_G * (2 * M + 1) >= t.h_H);
    int extra = 0;
    for (int s : t.tree_sizes) extra += s - 1;
    CHECK(t.G.vertex_count() == 3 + extra);
  }
}

TEST_CASE("witness json") {
  const auto j = to_json(cheeger_exact(cycle(4)));
  CHECK(j["h"] == "1/2");
  CHECK(j["vol"].size() == 2);
}
