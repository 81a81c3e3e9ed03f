#pragma once

#include "unimap/combinatorial_map.hpp"
#include "unimap/plane_tree.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <vector>

namespace unimap {

/// The doubly rooted tree glued in place of one core edge. Its v1 side goes to
/// the corner of core dart `first_core_dart`, its v2 side to `second_core_dart`
/// (= core alpha of the first, and the larger of the two).
struct Branch {
  DoublyRootedTree tree;
  Dart first_core_dart = 0;
  Dart second_core_dart = 1;
  /// Only on the root branch: a dart of the marked (unoriented) edge, the smaller one.
  std::optional<Dart> marked_edge;

  friend bool operator==(const Branch&, const Branch&) = default;
};

/// Core in canonical form (root 0); one branch per core edge, ordered by the
/// smaller core dart, so the root branch is always branches[0].
struct BranchDecomposition {
  CombinatorialMap core;
  std::vector<Branch> branches;
  std::size_t root_branch_index = 0;

  friend bool operator==(const BranchDecomposition&, const BranchDecomposition&) = default;
};

/// Requires one face and genus >= 1 (GenusZeroError for trees).
BranchDecomposition core(const CombinatorialMap& map);

/// Inverse of core(); returns the map in canonical form. Throws
/// CornerMismatchError when the pieces do not fit.
CombinatorialMap reconstruct(const BranchDecomposition& decomp);

/// Every branch of size >= M replaced by a single edge.
CombinatorialMap core_less_M(const CombinatorialMap& map, int M);
BranchDecomposition collapse_branches(const BranchDecomposition& decomp, int M);

struct BranchProfile {
  int root_size = 0;
  std::vector<int> other_sizes;
  friend auto operator<=>(const BranchProfile&, const BranchProfile&) = default;
};
BranchProfile branch_size_profile(const CombinatorialMap& map);
BranchProfile branch_size_profile(const BranchDecomposition& decomp);

/// [{size, tree: {alpha, second_root}, marked_edge?, attachment: [a, b]}]
nlohmann::json branches_to_json(const BranchDecomposition& decomp);
BranchDecomposition decomposition_from_json(const nlohmann::json& core, const nlohmann::json& branches);

}  // namespace unimap
