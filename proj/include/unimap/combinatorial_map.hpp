#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace unimap {

/// Darts are the integers 0..n_darts-1; an edge is identified by its smaller dart.
using Dart = std::int32_t;

std::vector<std::vector<Dart>> cycle_decomposition(std::span<const Dart> permutation);

/// A rooted map given by two permutations of the darts: alpha pairs the two
/// darts of each edge, sigma turns clockwise around each vertex. Faces are
/// the cycles of sigma∘alpha, so gluing a polygon with face cycle gamma
/// means sigma = gamma∘alpha.
///
/// Validated at construction and immutable afterwards.
class CombinatorialMap {
 public:
  CombinatorialMap(std::vector<Dart> alpha, std::vector<Dart> sigma, Dart root);

  /// The map obtained by gluing the sides of a polygon with sides 0..n_darts-1
  /// in cyclic order according to `pairing`; it has exactly one face and root 0.
  static CombinatorialMap from_polygon_gluing(std::vector<Dart> pairing);

  std::size_t dart_count() const noexcept { return alpha_.size(); }
  std::size_t edge_count() const noexcept { return alpha_.size() / 2; }
  Dart root() const noexcept { return root_; }

  Dart alpha(Dart d) const { return alpha_[static_cast<std::size_t>(d)]; }
  Dart sigma(Dart d) const { return sigma_[static_cast<std::size_t>(d)]; }
  /// Face successor: sigma(alpha(d)).
  Dart phi(Dart d) const { return sigma_[static_cast<std::size_t>(alpha(d))]; }

  const std::vector<Dart>& alpha_array() const noexcept { return alpha_; }
  const std::vector<Dart>& sigma_array() const noexcept { return sigma_; }

  friend bool operator==(const CombinatorialMap&, const CombinatorialMap&) = default;

 private:
  std::vector<Dart> alpha_;
  std::vector<Dart> sigma_;
  Dart root_;
};

/// Cycles of sigma∘alpha.
std::vector<std::vector<Dart>> faces(const CombinatorialMap& map);
/// Cycles of sigma.
std::vector<std::vector<Dart>> vertices(const CombinatorialMap& map);
std::size_t face_count(const CombinatorialMap& map);
std::size_t vertex_count(const CombinatorialMap& map);

/// g = (2 - V + E - F) / 2; throws MalformedMapError when that is negative or
/// not an integer (e.g. a disconnected map).
int genus(const CombinatorialMap& map);

/// Lengths of the sigma-cycles, sorted ascending.
std::vector<int> vertex_degrees(const CombinatorialMap& map);

/// vertex index of every dart (vertices numbered in order of their smallest dart).
std::vector<int> vertex_of_darts(const CombinatorialMap& map);

/// For a map with one face: relabel darts by their position along the face
/// walk starting at the root. Two rooted unicellular maps are isomorphic iff
/// their canonical forms are equal.
CombinatorialMap canonical_form(const CombinatorialMap& map);

/// Loops and multiple edges are allowed; a loop adds 2 to the degree of its vertex.
class Multigraph {
 public:
  Multigraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  int volume() const noexcept { return 2 * static_cast<int>(edges_.size()); }

  friend bool operator==(const Multigraph&, const Multigraph&) = default;

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> degrees_;
};

/// One vertex per sigma-cycle, one edge per alpha-orbit (listed by smaller dart).
Multigraph underlying_graph(const CombinatorialMap& map);

bool is_connected(const Multigraph& graph);
/// Component index per vertex, components numbered by smallest vertex.
std::vector<int> connected_components(const Multigraph& graph);

/// `p mg <n_vertices> <n_edges>` followed by one `u v` line per edge.
void write_edge_list(std::ostream& out, const Multigraph& graph);
Multigraph read_edge_list(std::istream& in);

/// {"n_darts": int, "alpha": [...], "sigma": [...], "root": int}
nlohmann::json to_json(const CombinatorialMap& map);
CombinatorialMap map_from_json(const nlohmann::json& j);

}  // namespace unimap
