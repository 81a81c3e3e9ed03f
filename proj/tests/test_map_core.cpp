#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "unimap/combinatorial_map.hpp"
#include "unimap/errors.hpp"
#include "unimap/samplers.hpp"

#include <sstream>

using namespace unimap;

TEST_CASE("polygon gluing of a square") {
  // 0-1, 2-3: planar, three vertices
  const auto m = CombinatorialMap::from_polygon_gluing({1, 0, 3, 2});
  CHECK(face_count(m) == 1);
  CHECK(vertex_count(m) == 3);
  CHECK(genus(m) == 0);
  // 0-2, 1-3: the torus
  const auto t = CombinatorialMap::from_polygon_gluing({2, 3, 0, 1});
  CHECK(vertex_count(t) == 1);
  CHECK(genus(t) == 1);
  CHECK(vertex_degrees(t) == std::vector<int>{4});
}

TEST_CASE("face and vertex counts agree with an independent tracer") {
  for (int n = 1; n <= 5; ++n) {
    for_each_pairing(n, [&](const Pairing& p) {
      const auto m = CombinatorialMap::from_polygon_gluing(p);
      std::vector<int> a(p.begin(), p.end());
      CHECK(face_count(m) == 1);
      CHECK(static_cast<int>(vertex_count(m)) == oracle::gluing_vertices(a));
      CHECK(genus(m) == oracle::gluing_genus(a));
    });
  }
}

TEST_CASE("euler characteristic of a general map") {
  // two vertices joined by three edges: theta graph drawn on the sphere
  const std::vector<Dart> alpha{1, 0, 3, 2, 5, 4};
  const std::vector<Dart> sigma{2, 5, 4, 1, 0, 3};
  const CombinatorialMap m(alpha, sigma, 0);
  CHECK(vertex_count(m) == 2);
  const auto f = face_count(m);
  CHECK((2 - 2 + 3 - static_cast<int>(f)) % 2 == 0);
  std::vector<int> phi(6);
  for (int d = 0; d < 6; ++d) phi[d] = sigma[alpha[d]];
  CHECK(static_cast<int>(f) == oracle::count_cycles(phi));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(CombinatorialMap({0, 1}, {1, 0}, 0), MalformedMapError);
  CHECK_THROWS_AS(CombinatorialMap({1, 0}, {0, 0}, 0), MalformedMapError);
  CHECK_THROWS_AS(CombinatorialMap({1, 0}, {1, 0}, 5), MalformedMapError);
  CHECK_THROWS_AS(CombinatorialMap::from_polygon_gluing({1, 0, 2}), MalformedMapError);
  // two disjoint loops: not connected
  CHECK_THROWS_AS(genus(CombinatorialMap({1, 0, 3, 2}, {1, 0, 3, 2}, 0)), MalformedMapError);
}

TEST_CASE("canonical form is invariant under relabelling") {
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const auto m = sample_polygon_gluing(6, rng);
    std::vector<Dart> perm(12);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Dart> a(12), s(12);
    for (int d = 0; d < 12; ++d) {
      a[perm[d]] = perm[m.alpha(d)];
      s[perm[d]] = perm[m.sigma(d)];
    }
    const CombinatorialMap relabelled(a, s, perm[m.root()]);
    CHECK(canonical_form(relabelled) == canonical_form(m));
    CHECK(canonical_form(m) == m);
  }
}

TEST_CASE("underlying multigraph and edge list round trip") {
  const auto t = CombinatorialMap::from_polygon_gluing({2, 3, 0, 1});
  const auto g = underlying_graph(t);
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 2);
  CHECK(g.degrees() == std::vector<int>{4});
  CHECK(g.volume() == 4);
  const Multigraph h(4, {{0, 1}, {1, 1}, {2, 3}});
  CHECK_FALSE(is_connected(h));
  CHECK(connected_components(h) == std::vector<int>{0, 0, 1, 1});
  std::stringstream io;
  write_edge_list(io, h);
  CHECK(read_edge_list(io) == h);
}

TEST_CASE("json round trip") {
  Rng rng(3);
  const auto m = sample_polygon_gluing(5, rng);
  CHECK(map_from_json(to_json(m)) == m);
  CHECK(to_json(m)["n_darts"] == 10);
}
