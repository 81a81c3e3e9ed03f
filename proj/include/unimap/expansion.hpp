#pragma once

#include "unimap/combinatorial_map.hpp"
#include "unimap/numeric.hpp"
#include "unimap/random.hpp"
#include "unimap/samplers.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace unimap {

struct CutWitness {
  std::vector<int> subset;  // sorted
  long boundary = 0;
  long vol_subset = 0;
  long vol_complement = 0;
  Rational h;
};

/// h_G(X) = boundary / min(vol X, vol complement). Loops count 2 towards the
/// volume of their vertex and never towards the boundary. EmptySideError if
/// either side is empty or has volume 0.
CutWitness h_value(const Multigraph& graph, const std::vector<int>& subset);

inline constexpr int kDefaultCheegerCap = 24;

/// Minimum of h_G over connected X with 2 vol(X) <= vol(G); the
/// lexicographically smallest minimizer is returned. A disconnected graph gives
/// 0 with the component of vertex 0 as witness. Needs at least 2 vertices.
CutWitness cheeger_exact(const Multigraph& graph, int cap = kDefaultCheegerCap);

struct ExpanderVerdict {
  bool holds = false;
  CutWitness minimum;
  std::optional<CutWitness> violation;
};
ExpanderVerdict is_kappa_expander(const Multigraph& graph, const Rational& kappa, int cap = kDefaultCheegerCap);

struct SpectralBounds {
  double lambda2 = 0;
  double lower = 0;  ///< lambda2 / 2
  double upper = 0;  ///< sqrt(2 lambda2)
};
/// Second eigenvalue of the normalized Laplacian I - D^{-1/2} A D^{-1/2};
/// a loop adds 2 to both A(v,v) and deg(v). DisconnectedGraphError when disconnected.
SpectralBounds spectral_cheeger_bounds(const Multigraph& graph);

struct SubsetVolumeCount {
  int V = 0;
  BigInt count;
  BigInt bound;  ///< floor(V/3) * binom(floor(2n/3), floor(V/3)), n = |d|/2
};
/// Number of index sets I with sum_{i in I} d_i = V; needs all d_i >= 3 and 0 < V <= n.
SubsetVolumeCount count_subset_volumes(const DegreeSequence& d, int V);

/// In the configuration map of (d, pairing): some I with vol(I) = V has fewer
/// than delta V of its half-edges paired outside I.
bool bad_event(const DegreeSequence& d, const Pairing& pairing, int V, const Rational& delta);

struct FrequencyEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double frequency = 0;
  double lower = 0;
  double upper = 0;
  bool exact = false;
  Rational exact_value;  ///< only when exact
};

/// Wilson score interval; z = 2.5758 is the 99% level.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = 2.5758);

inline constexpr int kExactBadEventDarts = 16;
/// Frequency of the bad event over CM(d): by enumeration of all pairings when
/// |d| <= 16, otherwise over `trials` seeded draws.
FrequencyEstimate estimate_bad_event(const DegreeSequence& d, int V, const Rational& delta, std::uint64_t trials,
                                     Rng& rng);

struct TransferInstance {
  Multigraph H;
  Multigraph G;
  std::vector<int> tree_sizes;
  Rational h_H;
  Rational h_G;
  bool holds = false;
};
/// Replaces every edge u-w of H by a uniform doubly rooted tree of uniform
/// size in [1, M] with v1 = u and v2 = w, and checks h_G >= h_H / (2M+1).
TransferInstance branch_substitution_transfer_check(const Multigraph& H, int M, Rng& rng,
                                                    int cap = kDefaultCheegerCap);

/// {"h": "p/q", "subset": [...], "boundary": b, "vol": [vol X, vol complement]}
nlohmann::json to_json(const CutWitness& w);

}  // namespace unimap
