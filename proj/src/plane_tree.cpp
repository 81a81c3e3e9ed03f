#include "unimap/plane_tree.hpp"

#include "unimap/errors.hpp"

#include <string>

namespace unimap {

CombinatorialMap DoublyRootedTree::as_map() const {
  std::vector<Dart> s(alpha.size());
  for (std::size_t d = 0; d < alpha.size(); ++d) s[d] = sigma(static_cast<Dart>(d));
  return CombinatorialMap(alpha, std::move(s), 0);
}

void validate(const DoublyRootedTree& tree) {
  const auto n = static_cast<Dart>(tree.alpha.size());
  if (n < 2 || n % 2 != 0) throw CornerMismatchError("doubly rooted tree needs a positive even dart count");
  std::vector<bool> seen(tree.alpha.size(), false);
  for (Dart d = 0; d < n; ++d) {
    const Dart a = tree.alpha[static_cast<std::size_t>(d)];
    if (a < 0 || a >= n || a == d || tree.alpha[static_cast<std::size_t>(a)] != d) {
      throw CornerMismatchError("tree alpha is not a fixed-point-free involution");
    }
  }
  // genus 0 with face walk +1 means the pairing is non-crossing
  std::vector<Dart> stack;
  for (Dart d = 0; d < n; ++d) {
    const Dart a = tree.alpha[static_cast<std::size_t>(d)];
    if (a > d) {
      stack.push_back(d);
    } else {
      if (stack.empty() || stack.back() != a) throw CornerMismatchError("tree pairing is crossing");
      stack.pop_back();
    }
  }
  const Dart r = tree.second_root;
  if (r < 0 || r >= n) throw CornerMismatchError("second root out of range");
  if (!(tree.alpha[static_cast<std::size_t>(r)] < r && r <= tree.alpha[0])) {
    throw CornerMismatchError("second root is not on the path from v2 back to v1");
  }
}

DoublyRootedTree make_doubly_rooted(const std::vector<Dart>& alpha, const std::vector<Dart>& sigma, Dart e1,
                                    Dart e2) {
  const std::size_t n = alpha.size();
  std::vector<Dart> label(n, -1);
  Dart d = e1;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[static_cast<std::size_t>(d)] >= 0) throw CornerMismatchError("branch is not a tree");
    label[static_cast<std::size_t>(d)] = static_cast<Dart>(i);
    d = sigma[static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])];
  }
  DoublyRootedTree t;
  t.alpha.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    t.alpha[static_cast<std::size_t>(label[x])] = label[static_cast<std::size_t>(alpha[x])];
  }
  t.second_root = label[static_cast<std::size_t>(e2)];
  validate(t);
  return t;
}

DoublyRootedTree swap_roots(const DoublyRootedTree& tree) {
  std::vector<Dart> s(tree.alpha.size());
  for (std::size_t d = 0; d < s.size(); ++d) s[d] = tree.sigma(static_cast<Dart>(d));
  return make_doubly_rooted(tree.alpha, s, tree.second_root, 0);
}

Dart orient_marked_edge(const DoublyRootedTree& tree, Dart marked) {
  const auto n = static_cast<Dart>(tree.alpha.size());
  if (marked < 0 || marked >= n) throw CornerMismatchError("marked edge out of range");
  const Dart start = (tree.alpha[0] + 1) % n;
  auto pos = [&](Dart x) { return ((x - start) % n + n) % n; };
  const Dart t = pos(tree.alpha[static_cast<std::size_t>(tree.second_root)]) + 1;
  const Dart other = tree.alpha[static_cast<std::size_t>(marked)];
  const Dart first = pos(marked) < pos(other) ? marked : other;
  const Dart second = first == marked ? other : marked;
  return pos(first) < t ? first : second;
}

namespace {

std::vector<Dart> block_ending_at(const DoublyRootedTree& tree, Dart last) {
  std::vector<Dart> block;
  Dart d = tree.sigma(last);
  for (;;) {
    block.push_back(d);
    if (d == last) break;
    d = tree.sigma(d);
  }
  return block;
}

}  // namespace

std::vector<Dart> first_block(const DoublyRootedTree& tree) { return block_ending_at(tree, 0); }

std::vector<Dart> second_block(const DoublyRootedTree& tree) { return block_ending_at(tree, tree.second_root); }

std::vector<Dart> pairing_of_dyck_word(const std::vector<bool>& word) {
  std::vector<Dart> alpha(word.size(), -1);
  std::vector<Dart> open;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i]) {
      open.push_back(static_cast<Dart>(i));
    } else {
      if (open.empty()) throw DomainError("unbalanced parenthesis word");
      alpha[i] = open.back();
      alpha[static_cast<std::size_t>(open.back())] = static_cast<Dart>(i);
      open.pop_back();
    }
  }
  if (!open.empty()) throw DomainError("unbalanced parenthesis word");
  return alpha;
}

}  // namespace unimap
