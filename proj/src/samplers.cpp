#include "unimap/samplers.hpp"

#include "unimap/core_decomp.hpp"
#include "unimap/errors.hpp"
#include "unimap/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace unimap {

void for_each_pairing(int n, const std::function<void(const Pairing&)>& visit, int cap) {
  if (n < 0) throw DomainError("pairing size must be nonnegative");
  if (n > cap) throw CapExceededError("pairing enumeration", n, cap);
  const auto darts = static_cast<std::size_t>(2 * n);
  Pairing p(darts, -1);
  if (darts == 0) {
    visit(p);
    return;
  }
  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < darts && p[first] >= 0) ++first;
    if (first == darts) {
      visit(p);
      return;
    }
    for (std::size_t other = first + 1; other < darts; ++other) {
      if (p[other] >= 0) continue;
      p[first] = static_cast<Dart>(other);
      p[other] = static_cast<Dart>(first);
      rec();
      p[other] = -1;
    }
    p[first] = -1;
  };
  rec();
}

OneVertexCount count_one_vertex_maps(int p) {
  if (p < 1) throw DomainError("count_one_vertex_maps needs p >= 1");
  const auto up = static_cast<unsigned>(p);
  const BigInt den = BigInt(1) << up;
  Rational value(factorial(2 * up), den * factorial(up) * (up + 1));
  return {value, is_integer(value)};
}

namespace {

Pairing uniform_pairing(std::size_t darts, Rng& rng) {
  Pairing p(darts, -1);
  std::vector<Dart> pool(darts);
  std::vector<std::size_t> where(darts);
  std::iota(pool.begin(), pool.end(), 0);
  std::iota(where.begin(), where.end(), 0);
  auto take = [&](std::size_t i) {
    const Dart x = pool[i];
    pool[i] = pool.back();
    where[static_cast<std::size_t>(pool[i])] = i;
    pool.pop_back();
    return x;
  };
  // match the smallest unmatched dart to a uniform other unmatched dart
  for (std::size_t d = 0; d < darts; ++d) {
    if (p[d] >= 0) continue;
    take(where[d]);
    const Dart b = take(uniform_below(pool.size(), rng));
    p[d] = b;
    p[static_cast<std::size_t>(b)] = static_cast<Dart>(d);
  }
  return p;
}

}  // namespace

CombinatorialMap sample_polygon_gluing(int n, Rng& rng) {
  if (n < 1) throw DomainError("polygon gluing needs n >= 1");
  return CombinatorialMap::from_polygon_gluing(uniform_pairing(static_cast<std::size_t>(2 * n), rng));
}

RejectionResult sample_unicellular_fixed_genus(int n, int g, Rng& rng, std::uint64_t max_attempts) {
  if (n < 1 || g < 0 || 2 * g > n) throw DomainError("need n >= 1 and 0 <= g <= n/2");
  if (max_attempts < 1) throw DomainError("max_attempts must be positive");
  const auto target = static_cast<std::size_t>(n + 1 - 2 * g);
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    auto m = sample_polygon_gluing(n, rng);
    if (vertex_count(m) == target) return {std::move(m), attempt};
  }
  const auto total = to_long_double(double_factorial_odd(static_cast<unsigned>(n)));
  const double expected = static_cast<double>(to_long_double(unicellular_count(n, g)) / total);
  throw AttemptsExhaustedError(max_attempts, 0.0, expected);
}

bool parity_allows_unicellular(const DegreeSequence& d) {
  const long total = std::accumulate(d.begin(), d.end(), 0L);
  return total % 2 == 0 && (total / 2 + static_cast<long>(d.size())) % 2 == 1;
}

CombinatorialMap configuration_model_map(const DegreeSequence& d, const Pairing& pairing, Dart root) {
  std::vector<Dart> sigma;
  for (int deg : d) {
    if (deg < 1) throw DomainError("degrees must be positive");
    const auto base = static_cast<Dart>(sigma.size());
    for (int i = 0; i < deg; ++i) sigma.push_back(base + (i + 1) % deg);
  }
  if (pairing.size() != sigma.size()) throw DomainError("pairing size does not match the degree sum");
  return CombinatorialMap(pairing, std::move(sigma), root);
}

CombinatorialMap sample_configuration_model(const DegreeSequence& d, Rng& rng) {
  const long total = std::accumulate(d.begin(), d.end(), 0L);
  if (total <= 0 || total % 2 != 0) throw DomainError("degree sum must be positive and even");
  auto pairing = uniform_pairing(static_cast<std::size_t>(total), rng);
  const auto root = static_cast<Dart>(uniform_below(static_cast<std::uint64_t>(total), rng));
  return configuration_model_map(d, pairing, root);
}

namespace {

std::vector<Dart> sample_tree_pairing(int n, Rng& rng) {
  std::vector<bool> steps(static_cast<std::size_t>(2 * n + 1), false);
  std::fill(steps.begin(), steps.begin() + n, true);
  std::shuffle(steps.begin(), steps.end(), rng);
  int height = 0;
  int lowest = 0;
  std::size_t cut = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    height += steps[i] ? 1 : -1;
    if (height < lowest) {
      lowest = height;
      cut = i + 1;
    }
  }
  std::rotate(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(cut % steps.size()), steps.end());
  steps.pop_back();
  return pairing_of_dyck_word(steps);
}

}  // namespace

CombinatorialMap sample_plane_tree(int n, Rng& rng) {
  if (n < 1) throw DomainError("plane tree needs n >= 1");
  auto alpha = sample_tree_pairing(n, rng);
  std::vector<Dart> sigma(alpha.size());
  for (std::size_t d = 0; d < alpha.size(); ++d) sigma[d] = (alpha[d] + 1) % static_cast<Dart>(alpha.size());
  return CombinatorialMap(std::move(alpha), std::move(sigma), 0);
}

DoublyRootedTreeSampler::DoublyRootedTreeSampler(int max_size) : max_size_(max_size) {
  if (max_size < 1) throw DomainError("doubly rooted tree sampler needs max_size >= 1");
  const auto order = static_cast<unsigned>(max_size);
  tree_powers_ = power_table(series_T(order).integer_coefficients(), order, order);
}

DoublyRootedTree DoublyRootedTreeSampler::sample(int k, Rng& rng) const {
  if (k < 1 || k > max_size_) throw DomainError("doubly rooted tree size out of range");
  const auto uk = static_cast<std::size_t>(k);
  std::vector<BigInt> weights(uk + 1, BigInt(0));
  for (std::size_t L = 1; L <= uk; ++L) weights[L] = tree_powers_[L][uk];
  const std::size_t L = weighted_index(weights, rng);

  std::vector<int> sizes;
  std::size_t rest = uk;
  for (std::size_t left = L; left >= 1; --left) {
    std::vector<BigInt> w(rest + 1, BigInt(0));
    for (std::size_t s = 1; s + (left - 1) <= rest; ++s) w[s] = catalan(static_cast<unsigned>(s)) * tree_powers_[left - 1][rest - s];
    const std::size_t s = weighted_index(w, rng);
    sizes.push_back(static_cast<int>(s));
    rest -= s;
  }

  std::vector<Dart> alpha;
  std::vector<Dart> sigma;
  std::vector<Dart> roots;
  for (int s : sizes) {
    const auto off = static_cast<Dart>(alpha.size());
    const auto part = sample_tree_pairing(s, rng);
    roots.push_back(off);
    for (std::size_t d = 0; d < part.size(); ++d) {
      alpha.push_back(off + part[d]);
      sigma.push_back(off + (part[d] + 1) % static_cast<Dart>(part.size()));
    }
  }
  auto pred = [&](Dart x) {
    Dart y = x;
    while (sigma[static_cast<std::size_t>(y)] != x) y = sigma[static_cast<std::size_t>(y)];
    return y;
  };
  for (std::size_t j = 0; j + 1 < roots.size(); ++j) {
    const Dart head = alpha[static_cast<std::size_t>(roots[j])];
    const Dart next = roots[j + 1];
    const Dart a = pred(head);
    const Dart b = pred(next);
    sigma[static_cast<std::size_t>(a)] = next;
    sigma[static_cast<std::size_t>(b)] = head;
  }
  return make_doubly_rooted(alpha, sigma, roots.front(), alpha[static_cast<std::size_t>(roots.back())]);
}

DoublyRootedTree sample_doubly_rooted_tree(int k, Rng& rng) { return DoublyRootedTreeSampler(k).sample(k, rng); }

int sample_branch_size(BranchSizeLaw::Kind kind, double beta, Rng& rng) {
  return BranchSizeLaw(kind, beta).sample(rng);
}

BranchSizeLaw::BranchSizeLaw(Kind kind, double beta) {
  if (!(beta > 0.0) || beta >= 0.25) throw DomainError("branch size law needs 0 < beta < 1/4");
  const long double q = 4.0L * beta;
  std::vector<long double> terms{0.0L};
  long double dt_term = beta;  // dt_k beta^k at k = 1
  for (long k = 1;; ++k) {
    terms.push_back(kind == Kind::X ? dt_term * k : dt_term);
    const long double tail = std::pow(q, k + 1) * ((k + 1) - k * q) / ((1 - q) * (1 - q)) / beta;
    if (tail <= 1e-12L) break;
    if (k > 200'000'000) throw DomainError("branch size table too large; beta too close to 1/4");
    dt_term *= beta * 2.0L * (2.0L * k + 1.0L) / (k + 1.0L);
  }
  const long double total = std::accumulate(terms.begin(), terms.end(), 0.0L);
  long double run = 0.0L;
  for (long double t : terms) {
    probabilities_.push_back(static_cast<double>(t / total));
    run += t / total;
    cumulative_.push_back(static_cast<double>(run));
  }
  cumulative_.back() = 1.0;
}

int BranchSizeLaw::sample(Rng& rng) const {
  const double u = uniform_unit(rng);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative_.begin(), static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

double BranchSizeLaw::mean() const {
  long double m = 0.0L;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) m += static_cast<long double>(k) * probabilities_[k];
  return static_cast<double>(m);
}

double BranchSizeLaw::probability(int k) const {
  if (k < 0 || static_cast<std::size_t>(k) >= probabilities_.size()) return 0.0;
  return probabilities_[static_cast<std::size_t>(k)];
}

BigInt unicellular_count(int n, int g) {
  if (n < 0 || g < 0) throw DomainError("unicellular_count needs n, g >= 0");
  if (2 * g > n) return 0;
  const auto N = static_cast<std::size_t>(n);
  const auto G = static_cast<std::size_t>(g);
  std::vector<std::vector<BigInt>> eps(G + 1, std::vector<BigInt>(N + 1, BigInt(0)));
  eps[0][0] = 1;
  for (std::size_t m = 1; m <= N; ++m) {
    for (std::size_t h = 0; h <= G; ++h) {
      BigInt acc = BigInt(2 * (2 * m - 1)) * eps[h][m - 1];
      if (h >= 1 && m >= 2) acc += BigInt((m - 1) * (2 * m - 1) * (2 * m - 3)) * eps[h - 1][m - 2];
      eps[h][m] = acc / (m + 1);
    }
  }
  return eps[G][N];
}

BigInt long_cycle_permutation_count(int m, int k) {
  if (m < 0 || k < 0) return 0;
  const auto M = static_cast<std::size_t>(m);
  const auto K = static_cast<std::size_t>(k);
  std::vector<std::vector<BigInt>> a(M + 1, std::vector<BigInt>(K + 1, BigInt(0)));
  a[0][0] = 1;
  for (std::size_t i = 1; i <= M; ++i) {
    for (std::size_t c = 1; c <= K; ++c) {
      BigInt falling = (i - 1) * (i - 2);  // (i-1)!/(i-j)! at j = 3
      for (std::size_t j = 3; j <= i; ++j) {
        if (j > 3) falling *= i - j + 1;
        a[i][c] += falling * a[i - j][c - 1];
      }
    }
  }
  return a[M][K];
}

UnicellularSampler::UnicellularSampler(int n, int g)
    : n_(n), g_(g), trees_(std::max(n, 1)) {
  if (n < 1 || g < 0 || 2 * g > n) throw DomainError("need n >= 1 and 0 <= g <= n/2");
  if (g == 0) return;
  const auto order = static_cast<unsigned>(n);
  e_min_ = 2 * g;
  e_max_ = std::min(n, 6 * g - 3);
  c_coeffs_ = series_C(order).integer_coefficients();
  d_coeffs_ = series_D(order).integer_coefficients();
  d_powers_ = power_table(d_coeffs_, order, order);
  // [z^m] C D^{e-1}
  auto cd = [&](int e, int m) {
    BigInt acc = 0;
    for (int x = 1; x <= m; ++x) acc += c_coeffs_[static_cast<std::size_t>(x)] * d_powers_[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(m - x)];
    return acc;
  };
  core_counts_.assign(static_cast<std::size_t>(n) + 1, BigInt(0));
  for (int m = e_min_; m <= n; ++m) {
    BigInt value = unicellular_count(m, g);
    for (int e = e_min_; e < m; ++e) value -= core_counts_[static_cast<std::size_t>(e)] * cd(e, m);
    if (value < 0 || (m > 6 * g - 3 && value != 0)) throw DomainError("inconsistent core counts");
    core_counts_[static_cast<std::size_t>(m)] = value;
  }
  for (int e = e_min_; e <= e_max_; ++e) e_weights_.push_back(core_counts_[static_cast<std::size_t>(e)] * cd(e, n));

  const auto max_darts = static_cast<std::size_t>(2 * e_max_);
  const auto max_cycles = static_cast<std::size_t>(e_max_ + 1 - 2 * g);
  std::vector<std::vector<BigInt>> a(max_darts + 1, std::vector<BigInt>(max_cycles + 1, BigInt(0)));
  a[0][0] = 1;
  cycle_laws_.assign(max_darts + 1, std::vector<CycleLengthLaw>(max_cycles + 1));
  for (std::size_t i = 3; i <= max_darts; ++i) {
    for (std::size_t c = 1; c <= max_cycles; ++c) {
      auto& law = cycle_laws_[i][c];
      BigInt falling = (i - 1) * (i - 2);  // (i-1)!/(i-j)!
      BigInt run = 0;
      for (std::size_t j = 3; j <= i; ++j) {
        if (j > 3) falling *= i - j + 1;
        run += falling * a[i - j][c - 1];
        law.prefix.push_back(run);
      }
      a[i][c] = run;
    }
  }
}

const BigInt& UnicellularSampler::core_count(int e) const {
  static const BigInt zero = 0;
  if (e < 0 || static_cast<std::size_t>(e) >= core_counts_.size()) return zero;
  return core_counts_[static_cast<std::size_t>(e)];
}

std::size_t UnicellularSampler::CycleLengthLaw::sample(Rng& rng) const {
  const BigInt r = uniform_below(prefix.back(), rng);
  return static_cast<std::size_t>(std::upper_bound(prefix.begin(), prefix.end(), r) - prefix.begin()) + 3;
}

CombinatorialMap UnicellularSampler::sample_core(int e, Rng& rng) const {
  const auto darts = static_cast<std::size_t>(2 * e);
  const auto cycles = static_cast<std::size_t>(e + 1 - 2 * g_);
  constexpr std::uint64_t kMaxTries = 10'000'000;
  std::vector<Dart> order(darts);
  std::vector<std::size_t> lengths;
  for (std::uint64_t attempt = 0; attempt < kMaxTries; ++attempt) {
    // cycle lengths as in the smallest-element recursion, then a uniform labelling
    lengths.clear();
    std::size_t m = darts;
    for (std::size_t left = cycles; left >= 1; --left) {
      const std::size_t len = cycle_laws_[m][left].sample(rng);
      lengths.push_back(len);
      m -= len;
    }
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Dart> sigma(darts, -1);
    std::size_t at = 0;
    for (std::size_t len : lengths) {
      for (std::size_t i = 0; i < len; ++i) {
        sigma[static_cast<std::size_t>(order[at + i])] = order[at + (i + 1) % len];
      }
      at += len;
    }
    auto alpha = uniform_pairing(darts, rng);
    const auto root = static_cast<Dart>(uniform_below(static_cast<std::uint64_t>(darts), rng));
    CombinatorialMap candidate(std::move(alpha), std::move(sigma), root);
    std::size_t walk = 1;
    for (Dart d = candidate.phi(root); d != root; d = candidate.phi(d)) ++walk;
    if (walk == darts) return canonical_form(candidate);
  }
  throw AttemptsExhaustedError(kMaxTries, 0.0, 0.0);
}

CombinatorialMap UnicellularSampler::sample(Rng& rng) const {
  if (g_ == 0) return sample_plane_tree(n_, rng);
  const int e = e_min_ + static_cast<int>(weighted_index(e_weights_, rng));
  const auto& powers = d_powers_;

  std::vector<int> sizes;
  {
    std::vector<BigInt> w(static_cast<std::size_t>(n_) + 1, BigInt(0));
    for (int x = 1; x + (e - 1) <= n_; ++x) {
      w[static_cast<std::size_t>(x)] = c_coeffs_[static_cast<std::size_t>(x)] * powers[static_cast<std::size_t>(e - 1)][static_cast<std::size_t>(n_ - x)];
    }
    sizes.push_back(static_cast<int>(weighted_index(w, rng)));
  }
  int rest = n_ - sizes[0];
  for (int left = e - 1; left >= 1; --left) {
    std::vector<BigInt> w(static_cast<std::size_t>(rest) + 1, BigInt(0));
    for (int y = 1; y + (left - 1) <= rest; ++y) {
      w[static_cast<std::size_t>(y)] = d_coeffs_[static_cast<std::size_t>(y)] * powers[static_cast<std::size_t>(left - 1)][static_cast<std::size_t>(rest - y)];
    }
    const int y = static_cast<int>(weighted_index(w, rng));
    sizes.push_back(y);
    rest -= y;
  }

  BranchDecomposition decomp{sample_core(e, rng), {}, 0};
  std::size_t next = 0;
  for (Dart a = 0; a < static_cast<Dart>(decomp.core.dart_count()); ++a) {
    const Dart b = decomp.core.alpha(a);
    if (b < a) continue;
    Branch br;
    br.first_core_dart = a;
    br.second_core_dart = b;
    br.tree = trees_.sample(sizes[next], rng);
    if (next == 0) {
      const auto pick = static_cast<Dart>(uniform_below(br.tree.alpha.size(), rng));
      br.marked_edge = std::min(pick, br.tree.alpha[static_cast<std::size_t>(pick)]);
    }
    decomp.branches.push_back(std::move(br));
    ++next;
  }
  return reconstruct(decomp);
}

}  // namespace unimap
