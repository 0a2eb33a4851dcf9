#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "mstnet/error.hpp"
#include "mstnet/mst.hpp"

using namespace mstnet;
using namespace mstnet::testing;

namespace {

DistanceMatrix three_nodes() {
  DistanceMatrix d{labels(3), Matrix(3, 3, 0.0)};
  auto set = [&](std::size_t i, std::size_t j, double w) { d.d(i, j) = d.d(j, i) = w; };
  set(0, 1, 0.5);
  set(0, 2, 0.9);
  set(1, 2, 0.7);
  return d;
}

}  // namespace

TEST_CASE("three-node tree") {
  const auto d = three_nodes();
  for (const auto& t : {prim_mst(d), kruskal_mst(d), brute_force_mst(d)}) {
    CHECK(t.edges == std::vector<Edge>{{0, 1, 0.5}, {1, 2, 0.7}});
    CHECK(total_weight(t) == doctest::Approx(1.2).epsilon(1e-15));
  }
}

TEST_CASE("small and degenerate inputs") {
  DistanceMatrix two{labels(2), Matrix(2, 2, 0.0)};
  two.d(0, 1) = two.d(1, 0) = 0.3;
  CHECK(prim_mst(two).edges == std::vector<Edge>{{0, 1, 0.3}});
  CHECK(kruskal_mst(two).edges == std::vector<Edge>{{0, 1, 0.3}});
  CHECK(brute_force_mst(two).edges == std::vector<Edge>{{0, 1, 0.3}});

  DistanceMatrix flat{labels(6), Matrix(6, 6, 0.4)};
  for (std::size_t i = 0; i < 6; ++i) flat.d(i, i) = 0.0;
  const auto t = prim_mst(flat);
  CHECK(is_spanning_tree(t));
  CHECK(total_weight(t) == doctest::Approx(5 * 0.4));
  // Lexicographic tie-break makes every builder pick the star on the first label.
  CHECK(t == kruskal_mst(flat));
  CHECK(t == brute_force_mst(flat));
  CHECK(vertex_degrees(t)[0] == 5);

  DistanceMatrix hub{labels(7), Matrix(7, 7, 1.0)};
  for (std::size_t i = 0; i < 7; ++i) {
    hub.d(i, i) = 0.0;
    if (i != 4) hub.d(4, i) = hub.d(i, 4) = 0.1;
  }
  CHECK(vertex_degrees(brute_force_mst(hub))[4] == 6);
  CHECK(prim_mst(hub) == brute_force_mst(hub));

  DistanceMatrix nine{labels(9), Matrix(9, 9, 1.0)};
  try {
    brute_force_mst(nine);
    FAIL("expected SizeLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeLimit);
  }
  CHECK_THROWS_AS(prim_mst(DistanceMatrix{labels(1), Matrix(1, 1, 0.0)}), Error);
}

TEST_CASE("builders agree on random matrices") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const auto d = random_distances(n, rng, trial % 2 ? 3 : 0);
    const auto p = prim_mst(d);
    CHECK(is_spanning_tree(p));
    CHECK(p == kruskal_mst(d));
    CHECK(p == brute_force_mst(d));
  }
}

TEST_CASE("cut and ultrametric properties") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 12;
    const auto d = random_distances(n, rng);
    const auto t = prim_mst(d);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      DisjointSets sets(n);
      for (std::size_t f = 0; f < t.edges.size(); ++f) {
        if (f != e) sets.unite(t.edges[f].u, t.edges[f].v);
      }
      double best = 3.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (sets.find(i) != sets.find(j)) best = std::min(best, d.d(i, j));
        }
      }
      CHECK(t.edges[e].weight == best);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) CHECK(max_path_weight(t, i, j) <= d.d(i, j));
    }
  }
}

TEST_CASE("spanning tree checks") {
  CHECK(is_spanning_tree(chain(5)));
  CHECK(is_spanning_tree(star(5)));
  auto broken = chain(5);
  broken.edges.back() = {0, 2, 1.0};
  CHECK_FALSE(is_spanning_tree(broken));
  const auto deg = vertex_degrees(tree_with_degrees({3, 1, 2, 1, 1}));
  CHECK(deg == std::vector<int>{3, 1, 2, 1, 1});
}
