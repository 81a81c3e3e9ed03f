#pragma once

#include "unimap/combinatorial_map.hpp"

#include <compare>
#include <vector>

namespace unimap {

/// A plane tree with an ordered pair of distinct marked vertices v1, v2.
///
/// Stored in canonical labels: dart 0 is the first edge of the v1-v2 path,
/// leaving v1; the face walk is d -> d+1 (mod 2k), so sigma(d) = alpha(d)+1.
/// second_root is the dart at v2 on the path, pointing back to v1.
struct DoublyRootedTree {
  std::vector<Dart> alpha{1, 0};
  Dart second_root = 1;

  static DoublyRootedTree trivial() { return {}; }

  int size() const noexcept { return static_cast<int>(alpha.size() / 2); }
  Dart sigma(Dart d) const {
    return static_cast<Dart>((alpha[static_cast<std::size_t>(d)] + 1) % static_cast<Dart>(alpha.size()));
  }
  CombinatorialMap as_map() const;

  friend auto operator<=>(const DoublyRootedTree&, const DoublyRootedTree&) = default;
  friend bool operator==(const DoublyRootedTree&, const DoublyRootedTree&) = default;
};

/// Throws CornerMismatchError unless the tree is a canonical plane tree whose
/// second root sits on the far side of edge 0 and points back towards v1.
void validate(const DoublyRootedTree& tree);

/// Canonical form of the tree (alpha, sigma) with first path dart e1 and second root e2.
DoublyRootedTree make_doubly_rooted(const std::vector<Dart>& alpha, const std::vector<Dart>& sigma, Dart e1,
                                    Dart e2);

/// The same tree with v1 and v2 exchanged.
DoublyRootedTree swap_roots(const DoublyRootedTree& tree);

/// Orients the marked edge (given by either of its darts): walking around the
/// tree clockwise from the corner after dart 0, edges met before the walk
/// first arrives at v2 are oriented by their first traversal, the others by
/// their second traversal.
Dart orient_marked_edge(const DoublyRootedTree& tree, Dart marked);

/// Canonical labels of the darts in the sigma-cycle of v1 (resp. v2), listed
/// from sigma(0) to 0 (resp. sigma(second_root) to second_root).
std::vector<Dart> first_block(const DoublyRootedTree& tree);
std::vector<Dart> second_block(const DoublyRootedTree& tree);

/// Pairing of a balanced parenthesis word (true = opening); gives a rooted
/// plane tree in canonical labels.
std::vector<Dart> pairing_of_dyck_word(const std::vector<bool>& word);

}  // namespace unimap
