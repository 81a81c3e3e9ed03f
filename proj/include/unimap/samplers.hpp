#pragma once

#include "unimap/combinatorial_map.hpp"
#include "unimap/numeric.hpp"
#include "unimap/plane_tree.hpp"
#include "unimap/random.hpp"

#include <functional>
#include <vector>

namespace unimap {

/// A fixed-point-free involution on the darts, stored as the alpha array.
using Pairing = std::vector<Dart>;
using DegreeSequence = std::vector<int>;

inline constexpr int kDefaultPairingCap = 8;

/// Calls visit on every pairing of 2n darts exactly once, in lexicographic
/// order of the alpha array. CapExceededError when n > cap.
void for_each_pairing(int n, const std::function<void(const Pairing&)>& visit, int cap = kDefaultPairingCap);
inline void enumerate_pairings(int n, const std::function<void(const Pairing&)>& visit, int cap = kDefaultPairingCap) {
  for_each_pairing(n, visit, cap);
}

struct OneVertexCount {
  Rational value;  ///< (2p)!/(2^p p! (p+1))
  bool integral = false;
};
OneVertexCount count_one_vertex_maps(int p);

/// Uniform over the (2n-1)!! gluings of a 2n-gon; root 0.
CombinatorialMap sample_polygon_gluing(int n, Rng& rng);

struct RejectionResult {
  CombinatorialMap map;
  std::uint64_t attempts;
};
/// Uniform on U(n,g) by rejection from polygon gluings.
RejectionResult sample_unicellular_fixed_genus(int n, int g, Rng& rng, std::uint64_t max_attempts);

/// Vertex i owns darts offset_i .. offset_i + d_i - 1 in clockwise order;
/// uniform pairing; uniform root dart.
CombinatorialMap configuration_model_map(const DegreeSequence& d, const Pairing& pairing, Dart root);
CombinatorialMap sample_configuration_model(const DegreeSequence& d, Rng& rng);
/// |d|/2 + k odd and |d| even.
bool parity_allows_unicellular(const DegreeSequence& d);

/// Uniform rooted plane tree with n edges, canonical labels.
CombinatorialMap sample_plane_tree(int n, Rng& rng);

/// Uniform doubly rooted trees of a fixed size via the decomposition along the
/// v1-v2 path into a sequence of rooted trees.
class DoublyRootedTreeSampler {
 public:
  explicit DoublyRootedTreeSampler(int max_size);
  DoublyRootedTree sample(int k, Rng& rng) const;
  int max_size() const noexcept { return max_size_; }

 private:
  int max_size_;
  std::vector<std::vector<BigInt>> tree_powers_;  // [L][m] = [z^m] T^L
};

DoublyRootedTree sample_doubly_rooted_tree(int k, Rng& rng);

/// Discrete law P(k) proportional to [z^k]F beta^k, F = C (law X) or D (law Y),
/// tabulated up to the first K with tail mass below 1e-12, then renormalized.
class BranchSizeLaw {
 public:
  enum class Kind { X, Y };
  BranchSizeLaw(Kind kind, double beta);

  int sample(Rng& rng) const;
  double mean() const;
  int max_size() const noexcept { return static_cast<int>(probabilities_.size()) - 1; }
  double probability(int k) const;

 private:
  std::vector<double> probabilities_;
  std::vector<double> cumulative_;
};

/// One draw from a freshly tabulated law; build a BranchSizeLaw to draw repeatedly.
int sample_branch_size(BranchSizeLaw::Kind kind, double beta, Rng& rng);

/// Harer-Zagier numbers: rooted one-face maps with n edges and genus g.
BigInt unicellular_count(int n, int g);

/// Exactly uniform sampler on U(n,g) for any feasible (n,g): draws the core
/// size, a uniform core with all degrees >= 3, the branch sizes and the
/// branches, then reassembles.
class UnicellularSampler {
 public:
  UnicellularSampler(int n, int g);

  CombinatorialMap sample(Rng& rng) const;
  int n() const noexcept { return n_; }
  int genus() const noexcept { return g_; }

  /// Rooted one-face genus-g maps with e edges and no vertex of degree 1 or 2.
  const BigInt& core_count(int e) const;

 private:
  CombinatorialMap sample_core(int e, Rng& rng) const;

  struct CycleLengthLaw {
    std::vector<BigInt> prefix;  // cumulative weights of lengths 3, 4, ...
    std::size_t sample(Rng& rng) const;
  };

  int n_;
  int g_;
  int e_min_ = 0;
  int e_max_ = -1;
  std::vector<BigInt> core_counts_;              // indexed by e
  std::vector<std::vector<BigInt>> d_powers_;    // [j][m] = [z^m] D^j
  std::vector<BigInt> c_coeffs_;
  std::vector<BigInt> d_coeffs_;
  std::vector<BigInt> e_weights_;                // indexed by e - e_min
  std::vector<std::vector<CycleLengthLaw>> cycle_laws_;  // [darts left][cycles left]
  DoublyRootedTreeSampler trees_;
};

/// Permutations of m elements with exactly k cycles, all of length >= 3.
BigInt long_cycle_permutation_count(int m, int k);

}  // namespace unimap
