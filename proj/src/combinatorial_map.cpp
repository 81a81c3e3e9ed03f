#include "unimap/combinatorial_map.hpp"

#include "unimap/errors.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

namespace unimap {

std::vector<std::vector<Dart>> cycle_decomposition(std::span<const Dart> permutation) {
  std::vector<std::vector<Dart>> cycles;
  std::vector<bool> seen(permutation.size(), false);
  for (std::size_t start = 0; start < permutation.size(); ++start) {
    if (seen[start]) continue;
    std::vector<Dart> cycle;
    for (auto d = static_cast<Dart>(start); !seen[static_cast<std::size_t>(d)];
         d = permutation[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = true;
      cycle.push_back(d);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

namespace {

void check_permutation(const std::vector<Dart>& p, const char* name) {
  std::vector<bool> hit(p.size(), false);
  for (Dart d : p) {
    if (d < 0 || static_cast<std::size_t>(d) >= p.size() || hit[static_cast<std::size_t>(d)]) {
      throw MalformedMapError(std::string(name) + " is not a permutation of the darts");
    }
    hit[static_cast<std::size_t>(d)] = true;
  }
}

}  // namespace

CombinatorialMap::CombinatorialMap(std::vector<Dart> alpha, std::vector<Dart> sigma, Dart root)
    : alpha_(std::move(alpha)), sigma_(std::move(sigma)), root_(root) {
  if (alpha_.empty() || alpha_.size() % 2 != 0) {
    throw MalformedMapError("dart count must be positive and even");
  }
  if (sigma_.size() != alpha_.size()) throw MalformedMapError("alpha and sigma sizes differ");
  check_permutation(alpha_, "alpha");
  check_permutation(sigma_, "sigma");
  for (std::size_t d = 0; d < alpha_.size(); ++d) {
    const auto a = static_cast<std::size_t>(alpha_[d]);
    if (a == d || static_cast<std::size_t>(alpha_[a]) != d) {
      throw MalformedMapError("alpha must be a fixed-point-free involution");
    }
  }
  if (root_ < 0 || static_cast<std::size_t>(root_) >= alpha_.size()) {
    throw MalformedMapError("root is not a dart");
  }
}

CombinatorialMap CombinatorialMap::from_polygon_gluing(std::vector<Dart> pairing) {
  const auto n = static_cast<Dart>(pairing.size());
  std::vector<Dart> sigma(pairing.size());
  for (Dart d = 0; d < n; ++d) {
    const Dart a = pairing[static_cast<std::size_t>(d)];
    if (a < 0 || a >= n) throw MalformedMapError("pairing entry out of range");
    sigma[static_cast<std::size_t>(d)] = (a + 1) % n;
  }
  return CombinatorialMap(std::move(pairing), std::move(sigma), 0);
}

std::vector<std::vector<Dart>> faces(const CombinatorialMap& map) {
  std::vector<Dart> phi(map.dart_count());
  for (std::size_t d = 0; d < phi.size(); ++d) phi[d] = map.phi(static_cast<Dart>(d));
  return cycle_decomposition(phi);
}

std::vector<std::vector<Dart>> vertices(const CombinatorialMap& map) {
  return cycle_decomposition(map.sigma_array());
}

std::size_t face_count(const CombinatorialMap& map) { return faces(map).size(); }

std::size_t vertex_count(const CombinatorialMap& map) {
  return cycle_decomposition(map.sigma_array()).size();
}

int genus(const CombinatorialMap& map) {
  const auto v = static_cast<long>(vertex_count(map));
  const auto e = static_cast<long>(map.edge_count());
  const auto f = static_cast<long>(face_count(map));
  const long twice = 2 - v + e - f;
  if (twice < 0 || twice % 2 != 0) {
    throw MalformedMapError("Euler characteristic gives genus " + std::to_string(twice) + "/2");
  }
  return static_cast<int>(twice / 2);
}

std::vector<int> vertex_degrees(const CombinatorialMap& map) {
  std::vector<int> degrees;
  for (const auto& cycle : vertices(map)) degrees.push_back(static_cast<int>(cycle.size()));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<int> vertex_of_darts(const CombinatorialMap& map) {
  std::vector<int> owner(map.dart_count(), -1);
  int next = 0;
  for (std::size_t start = 0; start < owner.size(); ++start) {
    if (owner[start] >= 0) continue;
    auto d = static_cast<Dart>(start);
    do {
      owner[static_cast<std::size_t>(d)] = next;
      d = map.sigma(d);
    } while (d != static_cast<Dart>(start));
    ++next;
  }
  return owner;
}

CombinatorialMap canonical_form(const CombinatorialMap& map) {
  const std::size_t n = map.dart_count();
  std::vector<Dart> label(n, -1);
  Dart d = map.root();
  for (std::size_t i = 0; i < n; ++i) {
    if (label[static_cast<std::size_t>(d)] >= 0) {
      throw MalformedMapError("canonical form requires a map with exactly one face");
    }
    label[static_cast<std::size_t>(d)] = static_cast<Dart>(i);
    d = map.phi(d);
  }
  std::vector<Dart> alpha(n);
  std::vector<Dart> sigma(n);
  for (std::size_t x = 0; x < n; ++x) {
    alpha[static_cast<std::size_t>(label[x])] = label[static_cast<std::size_t>(map.alpha(static_cast<Dart>(x)))];
    sigma[static_cast<std::size_t>(label[x])] = label[static_cast<std::size_t>(map.sigma(static_cast<Dart>(x)))];
  }
  return CombinatorialMap(std::move(alpha), std::move(sigma), 0);
}

Multigraph::Multigraph(int vertex_count, std::vector<std::pair<int, int>> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), degrees_(static_cast<std::size_t>(std::max(vertex_count, 0)), 0) {
  if (vertex_count < 0) throw DomainError("negative vertex count");
  for (auto& [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw DomainError("edge endpoint out of range");
    }
    ++degrees_[static_cast<std::size_t>(u)];
    ++degrees_[static_cast<std::size_t>(v)];
  }
}

Multigraph underlying_graph(const CombinatorialMap& map) {
  const auto owner = vertex_of_darts(map);
  const int n_vertices = owner.empty() ? 0 : *std::max_element(owner.begin(), owner.end()) + 1;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(map.edge_count());
  for (std::size_t d = 0; d < map.dart_count(); ++d) {
    const Dart a = map.alpha(static_cast<Dart>(d));
    if (static_cast<Dart>(d) < a) {
      edges.emplace_back(owner[d], owner[static_cast<std::size_t>(a)]);
    }
  }
  return Multigraph(n_vertices, std::move(edges));
}

std::vector<int> connected_components(const Multigraph& graph) {
  std::vector<int> parent(static_cast<std::size_t>(graph.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const auto& [u, v] : graph.edges()) {
    const int a = find(u);
    const int b = find(v);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> component(parent.size(), -1);
  int next = 0;
  std::vector<int> id_of_root(parent.size(), -1);
  for (int v = 0; v < graph.vertex_count(); ++v) {
    const int r = find(v);
    if (id_of_root[static_cast<std::size_t>(r)] < 0) id_of_root[static_cast<std::size_t>(r)] = next++;
    component[static_cast<std::size_t>(v)] = id_of_root[static_cast<std::size_t>(r)];
  }
  return component;
}

bool is_connected(const Multigraph& graph) {
  if (graph.vertex_count() <= 1) return true;
  const auto comp = connected_components(graph);
  return std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
}

void write_edge_list(std::ostream& out, const Multigraph& graph) {
  out << "p mg " << graph.vertex_count() << ' ' << graph.edge_count() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

Multigraph read_edge_list(std::istream& in) {
  std::string line;
  int n_vertices = -1;
  std::size_t n_edges = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'c') continue;
    std::istringstream fields(line);
    if (n_vertices < 0) {
      std::string p, kind;
      fields >> p >> kind >> n_vertices >> n_edges;
      if (!fields || p != "p" || kind != "mg") throw DomainError("edge list must start with 'p mg <n> <m>'");
      continue;
    }
    int u = 0, v = 0;
    if (!(fields >> u >> v)) throw DomainError("malformed edge line: '" + line + "'");
    edges.emplace_back(u, v);
  }
  if (n_vertices < 0) throw DomainError("missing 'p mg' header");
  if (edges.size() != n_edges) throw DomainError("edge count does not match header");
  return Multigraph(n_vertices, std::move(edges));
}

nlohmann::json to_json(const CombinatorialMap& map) {
  return nlohmann::json{{"n_darts", map.dart_count()},
                        {"alpha", map.alpha_array()},
                        {"sigma", map.sigma_array()},
                        {"root", map.root()}};
}

CombinatorialMap map_from_json(const nlohmann::json& j) {
  try {
    auto alpha = j.at("alpha").get<std::vector<Dart>>();
    auto sigma = j.at("sigma").get<std::vector<Dart>>();
    const auto n = j.at("n_darts").get<std::size_t>();
    if (alpha.size() != n) throw MalformedMapError("n_darts does not match alpha length");
    return CombinatorialMap(std::move(alpha), std::move(sigma), j.at("root").get<Dart>());
  } catch (const nlohmann::json::exception& e) {
    throw MalformedMapError(std::string("bad map JSON: ") + e.what());
  }
}

}  // namespace unimap
