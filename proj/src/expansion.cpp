#include "unimap/expansion.hpp"

#include "unimap/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace unimap {

CutWitness h_value(const Multigraph& graph, const std::vector<int>& subset) {
  const int n = graph.vertex_count();
  std::vector<bool> in(static_cast<std::size_t>(n), false);
  for (int v : subset) {
    if (v < 0 || v >= n) throw DomainError("subset vertex out of range");
    in[static_cast<std::size_t>(v)] = true;
  }
  CutWitness w;
  for (int v = 0; v < n; ++v) {
    if (in[static_cast<std::size_t>(v)]) w.subset.push_back(v);
  }
  if (w.subset.empty() || static_cast<int>(w.subset.size()) == n) throw EmptySideError("cut has an empty side");
  for (int v = 0; v < n; ++v) {
    (in[static_cast<std::size_t>(v)] ? w.vol_subset : w.vol_complement) += graph.degrees()[static_cast<std::size_t>(v)];
  }
  for (const auto& [u, v] : graph.edges()) {
    if (in[static_cast<std::size_t>(u)] != in[static_cast<std::size_t>(v)]) ++w.boundary;
  }
  const long denom = std::min(w.vol_subset, w.vol_complement);
  if (denom == 0) throw EmptySideError("cut side has volume 0");
  w.h = Rational(w.boundary, denom);
  return w;
}

namespace {

using Mask = std::uint64_t;

std::vector<int> members(Mask m) {
  std::vector<int> out;
  for (int v = 0; m != 0; ++v, m >>= 1) {
    if (m & 1) out.push_back(v);
  }
  return out;
}

class ConnectedCutSearch {
 public:
  explicit ConnectedCutSearch(const Multigraph& g) : n_(g.vertex_count()) {
    mult_.assign(static_cast<std::size_t>(n_ * n_), 0);
    loops_.assign(static_cast<std::size_t>(n_), 0);
    nbr_.assign(static_cast<std::size_t>(n_), 0);
    deg_ = g.degrees();
    for (const auto& [u, v] : g.edges()) {
      if (u == v) {
        ++loops_[static_cast<std::size_t>(u)];
        continue;
      }
      ++mult_[static_cast<std::size_t>(u * n_ + v)];
      ++mult_[static_cast<std::size_t>(v * n_ + u)];
      nbr_[static_cast<std::size_t>(u)] |= Mask{1} << v;
      nbr_[static_cast<std::size_t>(v)] |= Mask{1} << u;
    }
    total_ = g.volume();
  }

  CutWitness run() {
    for (int anchor = 0; anchor < n_; ++anchor) {
      allowed_ = ~Mask{0} << anchor;
      if (n_ < 64) allowed_ &= (Mask{1} << n_) - 1;
      const auto a = static_cast<std::size_t>(anchor);
      const long vol = deg_[a];
      if (2 * vol > total_) continue;
      const long boundary = deg_[a] - 2L * loops_[a];
      grow(Mask{1} << anchor, vol, boundary, nbr_[a] & allowed_, Mask{1} << anchor);
    }
    CutWitness w;
    w.subset = members(best_);
    w.boundary = best_boundary_;
    w.vol_subset = best_vol_;
    w.vol_complement = total_ - best_vol_;
    w.h = Rational(best_boundary_, best_vol_);
    return w;
  }

 private:
  void consider(Mask s, long vol, long boundary) {
    if (s == (Mask{1} << n_) - 1 || vol == 0) return;
    if (best_ != 0) {
      const long lhs = boundary * best_vol_;
      const long rhs = best_boundary_ * vol;
      if (lhs > rhs) return;
      if (lhs == rhs) {
        const auto mine = members(s);
        const auto theirs = members(best_);
        if (!std::lexicographical_compare(mine.begin(), mine.end(), theirs.begin(), theirs.end())) return;
      }
    }
    best_ = s;
    best_vol_ = vol;
    best_boundary_ = boundary;
  }

  // s connected, ext = candidate vertices adjacent to s, seen = s plus excluded vertices
  void grow(Mask s, long vol, long boundary, Mask ext, Mask seen) {
    consider(s, vol, boundary);
    ext &= ~seen;
    while (ext != 0) {
      const int u = std::countr_zero(ext);
      const Mask bit = Mask{1} << u;
      ext &= ~bit;
      const auto ui = static_cast<std::size_t>(u);
      const long nvol = vol + deg_[ui];
      if (2 * nvol <= total_) {
        long into = 0;
        for (Mask r = s; r != 0; r &= r - 1) into += mult_[ui * static_cast<std::size_t>(n_) + static_cast<std::size_t>(std::countr_zero(r))];
        const long nboundary = boundary + deg_[ui] - 2L * loops_[ui] - 2 * into;
        grow(s | bit, nvol, nboundary, ext | (nbr_[ui] & allowed_), seen | bit);
      }
      seen |= bit;
    }
  }

  int n_;
  std::vector<int> mult_;
  std::vector<int> loops_;
  std::vector<Mask> nbr_;
  std::vector<int> deg_;
  long total_ = 0;
  Mask allowed_ = 0;
  Mask best_ = 0;
  long best_vol_ = 1;
  long best_boundary_ = 0;
};

}  // namespace

CutWitness cheeger_exact(const Multigraph& graph, int cap) {
  const int n = graph.vertex_count();
  if (n < 2) throw DomainError("Cheeger constant needs at least 2 vertices");
  if (n > cap || n > 63) throw CapExceededError("exact Cheeger enumeration", n, std::min(cap, 63));
  const auto comp = connected_components(graph);
  if (std::any_of(comp.begin(), comp.end(), [](int c) { return c != 0; })) {
    CutWitness w;
    for (int v = 0; v < n; ++v) {
      (comp[static_cast<std::size_t>(v)] == 0 ? w.vol_subset : w.vol_complement) += graph.degrees()[static_cast<std::size_t>(v)];
      if (comp[static_cast<std::size_t>(v)] == 0) w.subset.push_back(v);
    }
    w.boundary = 0;
    w.h = 0;
    return w;
  }
  return ConnectedCutSearch(graph).run();
}

ExpanderVerdict is_kappa_expander(const Multigraph& graph, const Rational& kappa, int cap) {
  if (kappa < 0) throw DomainError("kappa must be nonnegative");
  ExpanderVerdict v;
  v.minimum = cheeger_exact(graph, cap);
  v.holds = v.minimum.h >= kappa;
  if (!v.holds) v.violation = v.minimum;
  return v;
}

SpectralBounds spectral_cheeger_bounds(const Multigraph& graph) {
  const int n = graph.vertex_count();
  if (n < 2) throw DomainError("spectral bounds need at least 2 vertices");
  if (!is_connected(graph)) throw DisconnectedGraphError();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : graph.edges()) {
    if (u == v) {
      a(u, u) += 2.0;
    } else {
      a(u, v) += 1.0;
      a(v, u) += 1.0;
    }
  }
  Eigen::VectorXd inv_sqrt(n);
  for (int v = 0; v < n; ++v) inv_sqrt(v) = 1.0 / std::sqrt(static_cast<double>(graph.degrees()[static_cast<std::size_t>(v)]));
  const Eigen::MatrixXd lap =
      Eigen::MatrixXd::Identity(n, n) - inv_sqrt.asDiagonal() * a * inv_sqrt.asDiagonal();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  SpectralBounds b;
  b.lambda2 = std::max(0.0, solver.eigenvalues()(1));
  b.lower = b.lambda2 / 2.0;
  b.upper = std::sqrt(2.0 * b.lambda2);
  return b;
}

SubsetVolumeCount count_subset_volumes(const DegreeSequence& d, int V) {
  const long total = std::accumulate(d.begin(), d.end(), 0L);
  const long n = total / 2;
  if (std::any_of(d.begin(), d.end(), [](int x) { return x < 3; })) throw DomainError("all degrees must be >= 3");
  if (V <= 0 || V > n) throw DomainError("volume must satisfy 0 < V <= n");
  std::vector<BigInt> ways(static_cast<std::size_t>(V) + 1, BigInt(0));
  ways[0] = 1;
  for (int x : d) {
    for (int s = V; s >= x; --s) ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - x)];
  }
  SubsetVolumeCount out;
  out.V = V;
  out.count = ways[static_cast<std::size_t>(V)];
  const auto third = static_cast<unsigned>(V / 3);
  out.bound = BigInt(third) * binomial(static_cast<unsigned>(2 * n / 3), third);
  return out;
}

namespace {

struct SubsetIndex {
  std::vector<int> owner;           // vertex of each dart
  std::vector<std::uint32_t> sets;  // vertex subsets of volume V
};

SubsetIndex index_subsets(const DegreeSequence& d, int V) {
  if (d.size() > 30) throw CapExceededError("bad-event subset enumeration (vertices)", static_cast<std::int64_t>(d.size()), 30);
  SubsetIndex idx;
  for (std::size_t i = 0; i < d.size(); ++i) idx.owner.insert(idx.owner.end(), static_cast<std::size_t>(d[i]), static_cast<int>(i));
  const std::uint32_t full = d.size() == 32 ? ~0U : ((1U << d.size()) - 1);
  for (std::uint32_t s = 1; s <= full && s != 0; ++s) {
    long vol = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (s >> i & 1U) vol += d[i];
    }
    if (vol == V) idx.sets.push_back(s);
    if (s == full) break;
  }
  return idx;
}

bool bad_event_indexed(const SubsetIndex& idx, const Pairing& pairing, int V, const Rational& delta) {
  const Rational threshold = delta * V;
  for (std::uint32_t s : idx.sets) {
    long outside = 0;
    for (std::size_t x = 0; x < pairing.size(); ++x) {
      if (!(s >> idx.owner[x] & 1U)) continue;
      if (!(s >> idx.owner[static_cast<std::size_t>(pairing[x])] & 1U)) ++outside;
    }
    if (Rational(outside) < threshold) return true;
  }
  return false;
}

}  // namespace

bool bad_event(const DegreeSequence& d, const Pairing& pairing, int V, const Rational& delta) {
  return bad_event_indexed(index_subsets(d, V), pairing, V, delta);
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z / (1 + z2 / n) * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

FrequencyEstimate estimate_bad_event(const DegreeSequence& d, int V, const Rational& delta, std::uint64_t trials,
                                     Rng& rng) {
  if (!(delta > 0 && delta < 1)) throw DomainError("delta must lie in (0, 1)");
  const long total = std::accumulate(d.begin(), d.end(), 0L);
  if (total <= 0 || total % 2 != 0) throw DomainError("degree sum must be positive and even");
  const auto idx = index_subsets(d, V);
  FrequencyEstimate est;
  if (total <= kExactBadEventDarts) {
    est.exact = true;
    for_each_pairing(static_cast<int>(total / 2), [&](const Pairing& p) {
      ++est.trials;
      if (bad_event_indexed(idx, p, V, delta)) ++est.hits;
    });
    est.exact_value = Rational(est.hits, est.trials);
    est.frequency = to_double(est.exact_value);
    est.lower = est.upper = est.frequency;
    return est;
  }
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto m = sample_configuration_model(d, rng);
    ++est.trials;
    if (bad_event_indexed(idx, m.alpha_array(), V, delta)) ++est.hits;
  }
  est.frequency = est.trials ? static_cast<double>(est.hits) / static_cast<double>(est.trials) : 0.0;
  std::tie(est.lower, est.upper) = wilson_interval(est.hits, est.trials);
  return est;
}

TransferInstance branch_substitution_transfer_check(const Multigraph& H, int M, Rng& rng, int cap) {
  if (M < 1) throw DomainError("M must be positive");
  if (!is_connected(H)) throw DisconnectedGraphError();
  DoublyRootedTreeSampler trees(M);
  int next_vertex = H.vertex_count();
  std::vector<std::pair<int, int>> edges;
  std::vector<int> sizes;
  for (const auto& [u, w] : H.edges()) {
    const int k = 1 + static_cast<int>(uniform_below(static_cast<std::uint64_t>(M), rng));
    sizes.push_back(k);
    const auto t = trees.sample(k, rng);
    const auto m = t.as_map();
    const auto owner = vertex_of_darts(m);
    const int v1 = owner[0];
    const int v2 = owner[static_cast<std::size_t>(t.second_root)];
    const int tree_vertices = *std::max_element(owner.begin(), owner.end()) + 1;
    std::vector<int> global(static_cast<std::size_t>(tree_vertices), -1);
    global[static_cast<std::size_t>(v1)] = u;
    global[static_cast<std::size_t>(v2)] = w;
    for (int x = 0; x < tree_vertices; ++x) {
      if (global[static_cast<std::size_t>(x)] < 0) global[static_cast<std::size_t>(x)] = next_vertex++;
    }
    for (Dart dd = 0; dd < static_cast<Dart>(m.dart_count()); ++dd) {
      const Dart a = m.alpha(dd);
      if (dd < a) {
        edges.emplace_back(global[static_cast<std::size_t>(owner[static_cast<std::size_t>(dd)])],
                           global[static_cast<std::size_t>(owner[static_cast<std::size_t>(a)])]);
      }
    }
  }
  TransferInstance out{H, Multigraph(next_vertex, std::move(edges)), std::move(sizes), 0, 0, false};
  out.h_H = cheeger_exact(H, cap).h;
  out.h_G = cheeger_exact(out.G, cap).h;
  out.holds = out.h_G * (2 * M + 1) >= out.h_H;
  return out;
}

nlohmann::json to_json(const CutWitness& w) {
  return nlohmann::json{{"h", to_string(w.h)},
                        {"subset", w.subset},
                        {"boundary", w.boundary},
                        {"vol", {w.vol_subset, w.vol_complement}}};
}

}  // namespace unimap
