#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mstnet/correlation.hpp"
#include "mstnet/mst.hpp"
#include "mstnet/synth.hpp"

namespace mstnet::testing {

inline std::vector<std::string> labels(std::size_t n) { return synthetic_tickers(n, "T"); }

/// Unit-weight tree on n vertices whose i-th vertex has degree deg[i].
/// Degrees must be >= 1 and sum to 2(n-1); built by Pruefer decoding.
inline Tree tree_with_degrees(const std::vector<int>& deg) {
  const std::size_t n = deg.size();
  std::vector<std::size_t> code;
  for (std::size_t v = 0; v < n; ++v) {
    for (int i = 1; i < deg[v]; ++i) code.push_back(v);
  }
  std::vector<int> remaining = deg;
  std::vector<Edge> edges;
  for (auto v : code) {
    std::size_t leaf = 0;
    while (remaining[leaf] != 1) ++leaf;
    edges.push_back({std::min(leaf, v), std::max(leaf, v), 1.0});
    remaining[leaf] = 0;
    --remaining[v];
  }
  std::vector<std::size_t> last;
  for (std::size_t v = 0; v < n; ++v) {
    if (remaining[v] == 1) last.push_back(v);
  }
  edges.push_back({last.at(0), last.at(1), 1.0});
  return make_tree(labels(n), std::move(edges));
}

/// Degree sequence from a degree -> count table, largest degrees first.
inline std::vector<int> degree_sequence(const std::map<int, int>& counts) {
  std::vector<int> deg;
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) deg.insert(deg.end(), it->second, it->first);
  return deg;
}

/// N = 142 with one lone vertex of degree 53 above a power-law body.
inline const std::map<int, int> kSuperhubCounts{{1, 100}, {2, 22}, {3, 8}, {4, 5}, {5, 2},
                                                {6, 2},   {8, 1},  {11, 1}, {53, 1}};

/// N = 274, k_max = 30, several comparable large hubs above the body.
inline const std::map<int, int> kMultiHubCounts{
    {1, 200}, {2, 41}, {3, 14}, {4, 7},  {5, 4},  {6, 2},
    {22, 1},  {26, 1}, {27, 1}, {28, 1}, {29, 1}, {30, 1}};

inline Tree star(std::size_t n, double w = 1.0) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.push_back({0, i, w});
  return make_tree(labels(n), std::move(edges));
}

inline Tree chain(std::size_t n, double w = 1.0) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, w});
  return make_tree(labels(n), std::move(edges));
}

/// Symmetric random distances; with `levels` > 0 weights are drawn from that
/// many values so ties are common.
inline DistanceMatrix random_distances(std::size_t n, std::mt19937_64& rng, int levels = 0) {
  DistanceMatrix d{labels(n), Matrix(n, n, 0.0)};
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_int_distribution<int> level(1, std::max(levels, 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = levels > 0 ? 0.25 * level(rng) : u(rng);
      d.d(i, j) = w;
      d.d(j, i) = w;
    }
  }
  return d;
}

inline std::vector<std::size_t> path_between(const Tree& tree, std::size_t a, std::size_t b,
                                             std::vector<double>* weights) {
  const auto adj = adjacency(tree);
  std::vector<std::size_t> parent(tree.size(), tree.size());
  std::vector<std::size_t> stack{a};
  parent[a] = a;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (parent[w] == tree.size()) {
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  std::map<std::pair<std::size_t, std::size_t>, double> weight;
  for (const auto& e : tree.edges) weight[{e.u, e.v}] = e.weight;
  std::vector<std::size_t> path{b};
  for (auto v = b; v != a; v = parent[v]) {
    const auto p = parent[v];
    if (weights) weights->push_back(weight.at({std::min(p, v), std::max(p, v)}));
    path.push_back(p);
  }
  return path;
}

/// Largest edge weight on the tree path between a and b.
inline double max_path_weight(const Tree& tree, std::size_t a, std::size_t b) {
  std::vector<double> w;
  path_between(tree, a, b, &w);
  return w.empty() ? 0.0 : *std::max_element(w.begin(), w.end());
}

}  // namespace mstnet::testing
