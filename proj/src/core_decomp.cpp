#include "unimap/core_decomp.hpp"

#include "unimap/errors.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace unimap {

namespace {

struct Pruned {
  CombinatorialMap map;  // canonical
  std::vector<int> owner;
  std::vector<std::vector<Dart>> cycles;
  std::vector<int> degree;  // degree after leaf pruning
  std::vector<bool> alive;
};

Pruned prune(const CombinatorialMap& input) {
  Pruned p{canonical_form(input), {}, {}, {}, {}};
  const auto& m = p.map;
  p.owner = vertex_of_darts(m);
  p.cycles = vertices(m);
  p.alive.assign(m.dart_count(), true);
  for (const auto& c : p.cycles) p.degree.push_back(static_cast<int>(c.size()));
  std::deque<int> leaves;
  for (std::size_t v = 0; v < p.cycles.size(); ++v) {
    if (p.degree[v] == 1) leaves.push_back(static_cast<int>(v));
  }
  while (!leaves.empty()) {
    const int v = leaves.front();
    leaves.pop_front();
    if (p.degree[static_cast<std::size_t>(v)] != 1) continue;
    Dart d = -1;
    for (Dart x : p.cycles[static_cast<std::size_t>(v)]) {
      if (p.alive[static_cast<std::size_t>(x)]) d = x;
    }
    const Dart a = m.alpha(d);
    p.alive[static_cast<std::size_t>(d)] = false;
    p.alive[static_cast<std::size_t>(a)] = false;
    p.degree[static_cast<std::size_t>(v)] = 0;
    const int w = p.owner[static_cast<std::size_t>(a)];
    if (--p.degree[static_cast<std::size_t>(w)] == 1) leaves.push_back(w);
  }
  return p;
}

class Decomposer {
 public:
  explicit Decomposer(const CombinatorialMap& input) : p_(prune(input)) {
    const auto& m = p_.map;
    const std::size_t n = m.dart_count();
    path_end_.assign(n, -1);
    block_of_.assign(n, {});
    for (std::size_t v = 0; v < p_.cycles.size(); ++v) {
      if (!is_core_vertex(static_cast<int>(v))) continue;
      const auto& cyc = p_.cycles[v];
      // cyc follows sigma; block of an alive dart = darts after the previous alive dart, up to itself
      std::size_t first_alive = 0;
      while (!p_.alive[static_cast<std::size_t>(cyc[first_alive])]) ++first_alive;
      std::vector<Dart> pending;
      for (std::size_t i = 1; i <= cyc.size(); ++i) {
        const Dart x = cyc[(first_alive + i) % cyc.size()];
        pending.push_back(x);
        if (p_.alive[static_cast<std::size_t>(x)]) {
          block_of_[static_cast<std::size_t>(x)] = std::move(pending);
          pending.clear();
          core_darts_.push_back(x);
        }
      }
    }
    if (core_darts_.empty()) throw MalformedMapError("pruning removed every edge");
    std::sort(core_darts_.begin(), core_darts_.end());
    for (Dart d : core_darts_) path_end_[static_cast<std::size_t>(d)] = trace(d);
  }

  bool is_core_vertex(int v) const { return p_.degree[static_cast<std::size_t>(v)] >= 3; }
  const CombinatorialMap& map() const { return p_.map; }
  const std::vector<Dart>& core_darts() const { return core_darts_; }
  Dart path_end(Dart d) const { return path_end_[static_cast<std::size_t>(d)]; }

  Dart next_alive(Dart d) const {
    Dart x = p_.map.sigma(d);
    while (!p_.alive[static_cast<std::size_t>(x)]) x = p_.map.sigma(x);
    return x;
  }

  struct LocalTree {
    DoublyRootedTree tree;
    std::unordered_map<Dart, Dart> label;  // map dart -> canonical tree dart
    std::vector<Dart> dart_of_label;
  };

  /// Branch between core darts first (at v1) and second (= path_end(first), at v2).
  LocalTree branch(Dart first, Dart second) const {
    const auto& m = p_.map;
    const auto& b1 = block_of_[static_cast<std::size_t>(first)];
    const auto& b2 = block_of_[static_cast<std::size_t>(second)];
    std::vector<Dart> darts;
    std::unordered_map<Dart, Dart> local;
    std::unordered_map<Dart, Dart> block_next;
    auto add = [&](Dart x) {
      if (local.emplace(x, static_cast<Dart>(darts.size())).second) darts.push_back(x);
    };
    for (const auto* b : {&b1, &b2}) {
      for (std::size_t i = 0; i < b->size(); ++i) {
        add((*b)[i]);
        block_next[(*b)[i]] = (*b)[(i + 1) % b->size()];
      }
    }
    for (std::size_t i = 0; i < darts.size(); ++i) {
      const Dart y = m.alpha(darts[i]);
      if (local.count(y)) continue;
      const int w = p_.owner[static_cast<std::size_t>(y)];
      if (is_core_vertex(w)) throw CornerMismatchError("branch reaches a core corner outside its blocks");
      for (Dart z : p_.cycles[static_cast<std::size_t>(w)]) add(z);
    }
    const std::size_t k = darts.size();
    std::vector<Dart> alpha(k);
    std::vector<Dart> sigma(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Dart x = darts[i];
      alpha[i] = local.at(m.alpha(x));
      const auto it = block_next.find(x);
      sigma[i] = local.at(it != block_next.end() ? it->second : m.sigma(x));
    }
    LocalTree out;
    out.tree = make_doubly_rooted(alpha, sigma, local.at(first), local.at(second));
    // recover canonical labels by replaying the face walk from e1
    out.dart_of_label.resize(k);
    Dart d = local.at(first);
    for (std::size_t i = 0; i < k; ++i) {
      out.dart_of_label[i] = darts[static_cast<std::size_t>(d)];
      out.label[darts[static_cast<std::size_t>(d)]] = static_cast<Dart>(i);
      d = sigma[static_cast<std::size_t>(alpha[static_cast<std::size_t>(d)])];
    }
    return out;
  }

 private:
  Dart trace(Dart d) const {
    const auto& m = p_.map;
    Dart x = d;
    for (std::size_t steps = 0; steps <= m.dart_count(); ++steps) {
      const Dart y = m.alpha(x);
      const int w = p_.owner[static_cast<std::size_t>(y)];
      if (is_core_vertex(w)) return y;
      const Dart z = next_alive(y);
      if (z == y || z == m.alpha(y)) throw MalformedMapError("isolated cycle while smoothing");
      x = z;
    }
    throw MalformedMapError("smoothing did not terminate");
  }

  Pruned p_;
  std::vector<Dart> core_darts_;
  std::vector<Dart> path_end_;
  std::vector<std::vector<Dart>> block_of_;
};

}  // namespace

BranchDecomposition core(const CombinatorialMap& map) {
  if (face_count(map) != 1) throw MalformedMapError("core needs a map with one face");
  if (genus(map) == 0) throw GenusZeroError();
  const Decomposer dec(map);
  const auto& m = dec.map();

  const auto& cds = dec.core_darts();
  std::unordered_map<Dart, Dart> cid;
  for (std::size_t i = 0; i < cds.size(); ++i) cid[cds[i]] = static_cast<Dart>(i);
  std::vector<Dart> calpha(cds.size());
  std::vector<Dart> csigma(cds.size());
  for (std::size_t i = 0; i < cds.size(); ++i) {
    calpha[i] = cid.at(dec.path_end(cds[i]));
    csigma[i] = cid.at(dec.next_alive(cds[i]));
  }

  // the branch holding the map root decides the core root and its orientation
  Dart core_root_dart = -1;
  for (Dart d : cds) {
    const Dart e = dec.path_end(d);
    if (d > e) continue;
    const auto lt = dec.branch(d, e);
    const auto it = lt.label.find(m.root());
    if (it == lt.label.end()) continue;
    const Dart oriented = lt.dart_of_label[static_cast<std::size_t>(orient_marked_edge(lt.tree, it->second))];
    core_root_dart = oriented == m.root() ? d : e;
    break;
  }
  if (core_root_dart < 0) throw CornerMismatchError("root lies in no branch");

  const CombinatorialMap raw(calpha, csigma, cid.at(core_root_dart));
  const std::size_t ncore = cds.size();
  std::vector<Dart> canon(ncore, -1);
  {
    Dart d = raw.root();
    for (std::size_t i = 0; i < ncore; ++i) {
      canon[static_cast<std::size_t>(d)] = static_cast<Dart>(i);
      d = raw.phi(d);
    }
  }
  BranchDecomposition out{canonical_form(raw), {}, 0};
  std::vector<Dart> map_dart_of_core(ncore);
  for (std::size_t i = 0; i < ncore; ++i) map_dart_of_core[static_cast<std::size_t>(canon[i])] = cds[i];

  int total = 0;
  for (Dart a = 0; a < static_cast<Dart>(ncore); ++a) {
    const Dart b = out.core.alpha(a);
    if (b < a) continue;
    Branch br;
    br.first_core_dart = a;
    br.second_core_dart = b;
    const auto lt = dec.branch(map_dart_of_core[static_cast<std::size_t>(a)], map_dart_of_core[static_cast<std::size_t>(b)]);
    br.tree = lt.tree;
    if (const auto it = lt.label.find(m.root()); it != lt.label.end()) {
      const Dart x = it->second;
      br.marked_edge = std::min(x, br.tree.alpha[static_cast<std::size_t>(x)]);
      if (orient_marked_edge(br.tree, x) != x) throw CornerMismatchError("root orientation is not recoverable");
      out.root_branch_index = out.branches.size();
    }
    total += br.tree.size();
    out.branches.push_back(std::move(br));
  }
  if (total != static_cast<int>(m.edge_count())) throw CornerMismatchError("branch sizes do not add up");
  if (out.root_branch_index != 0 || !out.branches[0].marked_edge) {
    throw CornerMismatchError("root branch is not on core edge 0");
  }
  return out;
}

CombinatorialMap reconstruct(const BranchDecomposition& decomp) {
  const auto& c = decomp.core;
  if (decomp.branches.size() != c.edge_count()) {
    throw CornerMismatchError("expected " + std::to_string(c.edge_count()) + " branches, got " +
                              std::to_string(decomp.branches.size()));
  }
  if (decomp.root_branch_index >= decomp.branches.size()) throw CornerMismatchError("root branch index out of range");
  const std::size_t nc = c.dart_count();
  std::vector<int> branch_of(nc, -1);
  std::vector<bool> is_first(nc, false);
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (std::size_t i = 0; i < decomp.branches.size(); ++i) {
    const auto& br = decomp.branches[i];
    validate(br.tree);
    const Dart a = br.first_core_dart;
    const Dart b = br.second_core_dart;
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= nc || static_cast<std::size_t>(b) >= nc || c.alpha(a) != b) {
      throw CornerMismatchError("branch attachment is not a core edge");
    }
    if (branch_of[static_cast<std::size_t>(a)] >= 0 || branch_of[static_cast<std::size_t>(b)] >= 0) {
      throw CornerMismatchError("core edge carries two branches");
    }
    branch_of[static_cast<std::size_t>(a)] = static_cast<int>(i);
    branch_of[static_cast<std::size_t>(b)] = static_cast<int>(i);
    is_first[static_cast<std::size_t>(a)] = true;
    if (br.marked_edge.has_value() != (i == decomp.root_branch_index)) {
      throw CornerMismatchError("exactly the root branch must carry a marked edge");
    }
    offset.push_back(total);
    total += br.tree.alpha.size();
  }
  const auto& root_branch = decomp.branches[decomp.root_branch_index];
  if (root_branch.first_core_dart != c.root()) throw CornerMismatchError("root branch does not start at the core root");

  std::vector<Dart> alpha(total);
  std::vector<Dart> sigma(total, -1);
  std::vector<std::vector<Dart>> first_blocks;
  std::vector<std::vector<Dart>> second_blocks;
  for (std::size_t i = 0; i < decomp.branches.size(); ++i) {
    const auto& t = decomp.branches[i].tree;
    const auto off = static_cast<Dart>(offset[i]);
    for (Dart x = 0; x < static_cast<Dart>(t.alpha.size()); ++x) {
      alpha[static_cast<std::size_t>(off + x)] = off + t.alpha[static_cast<std::size_t>(x)];
      sigma[static_cast<std::size_t>(off + x)] = off + t.sigma(x);
    }
    first_blocks.push_back(first_block(t));
    second_blocks.push_back(second_block(t));
  }
  for (const auto& cyc : vertices(c)) {
    std::vector<Dart> corner;
    for (Dart x : cyc) {
      const auto i = static_cast<std::size_t>(branch_of[static_cast<std::size_t>(x)]);
      const auto& blk = is_first[static_cast<std::size_t>(x)] ? first_blocks[i] : second_blocks[i];
      for (Dart y : blk) corner.push_back(static_cast<Dart>(offset[i]) + y);
    }
    for (std::size_t j = 0; j < corner.size(); ++j) {
      sigma[static_cast<std::size_t>(corner[j])] = corner[(j + 1) % corner.size()];
    }
  }
  const Dart marked = *root_branch.marked_edge;
  if (marked < 0 || marked >= static_cast<Dart>(root_branch.tree.alpha.size())) {
    throw CornerMismatchError("marked edge out of range");
  }
  const Dart root = static_cast<Dart>(offset[decomp.root_branch_index]) + orient_marked_edge(root_branch.tree, marked);
  try {
    return canonical_form(CombinatorialMap(std::move(alpha), std::move(sigma), root));
  } catch (const MalformedMapError& e) {
    throw CornerMismatchError(std::string("reassembled map is inconsistent: ") + e.what());
  }
}

BranchDecomposition collapse_branches(const BranchDecomposition& decomp, int M) {
  BranchDecomposition out = decomp;
  for (auto& br : out.branches) {
    if (br.tree.size() < M) continue;
    br.tree = DoublyRootedTree::trivial();
    if (br.marked_edge) br.marked_edge = 0;
  }
  return out;
}

CombinatorialMap core_less_M(const CombinatorialMap& map, int M) {
  if (M < 2) throw DomainError("core_less_M needs M >= 2");
  return reconstruct(collapse_branches(core(map), M));
}

BranchProfile branch_size_profile(const BranchDecomposition& decomp) {
  BranchProfile p;
  for (std::size_t i = 0; i < decomp.branches.size(); ++i) {
    if (i == decomp.root_branch_index) {
      p.root_size = decomp.branches[i].tree.size();
    } else {
      p.other_sizes.push_back(decomp.branches[i].tree.size());
    }
  }
  return p;
}

BranchProfile branch_size_profile(const CombinatorialMap& map) { return branch_size_profile(core(map)); }

nlohmann::json branches_to_json(const BranchDecomposition& decomp) {
  auto list = nlohmann::json::array();
  for (const auto& br : decomp.branches) {
    nlohmann::json j{{"size", br.tree.size()},
                     {"tree", {{"alpha", br.tree.alpha}, {"second_root", br.tree.second_root}}},
                     {"attachment", {br.first_core_dart, br.second_core_dart}}};
    if (br.marked_edge) j["marked_edge"] = *br.marked_edge;
    list.push_back(std::move(j));
  }
  return list;
}

BranchDecomposition decomposition_from_json(const nlohmann::json& core_json, const nlohmann::json& branches) {
  BranchDecomposition d{map_from_json(core_json), {}, 0};
  try {
    bool found = false;
    for (const auto& j : branches) {
      Branch br;
      br.tree.alpha = j.at("tree").at("alpha").get<std::vector<Dart>>();
      br.tree.second_root = j.at("tree").at("second_root").get<Dart>();
      br.first_core_dart = j.at("attachment").at(0).get<Dart>();
      br.second_core_dart = j.at("attachment").at(1).get<Dart>();
      if (j.contains("marked_edge")) {
        if (found) throw CornerMismatchError("two branches carry a marked edge");
        found = true;
        br.marked_edge = j.at("marked_edge").get<Dart>();
        d.root_branch_index = d.branches.size();
      }
      d.branches.push_back(std::move(br));
    }
    if (!found) throw CornerMismatchError("no branch carries a marked edge");
  } catch (const nlohmann::json::exception& e) {
    throw CornerMismatchError(std::string("bad branch JSON: ") + e.what());
  }
  return d;
}

}  // namespace unimap
