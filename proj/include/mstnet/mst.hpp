#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mstnet/correlation.hpp"

namespace mstnet {

struct Edge {
  std::size_t u = 0;  // u < v
  std::size_t v = 0;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Spanning tree over `tickers`. Edges are kept in canonical order: u < v
/// within an edge, edges sorted by (u, v).
struct Tree {
  std::vector<std::string> tickers;
  std::vector<Edge> edges;

  std::size_t size() const noexcept { return tickers.size(); }
  friend bool operator==(const Tree&, const Tree&) = default;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  /// False if `a` and `b` were already joined.
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

/// Normalises edge orientation and order.
Tree make_tree(std::vector<std::string> tickers, std::vector<Edge> edges);

/// N-1 edges, all endpoints in range, connected and acyclic.
bool is_spanning_tree(const Tree& tree);

/// Sum of edge weights taken in ascending order, so trees with the same
/// multiset of weights give bit-identical totals.
double total_weight(const Tree& tree);

std::vector<std::vector<std::size_t>> adjacency(const Tree& tree);
std::vector<int> vertex_degrees(const Tree& tree);

// All three builders resolve equal weights by the lexicographically smaller
// (ticker, ticker) pair, which makes the minimum tree unique; they therefore
// return identical trees on any input.

/// Dense O(N^2) Prim.
Tree prim_mst(const DistanceMatrix& d);

/// Kruskal over the N(N-1)/2 sorted pairs with union-find.
Tree kruskal_mst(const DistanceMatrix& d);

inline constexpr std::size_t kBruteForceMaxVertices = 8;

/// Exhaustive search over all N^(N-2) labelled trees (Pruefer sequences).
/// Test oracle; Error(SizeLimit) for N > 8.
Tree brute_force_mst(const DistanceMatrix& d);

}  // namespace mstnet
