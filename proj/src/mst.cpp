#include "mstnet/mst.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "mstnet/error.hpp"

namespace mstnet {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

Tree make_tree(std::vector<std::string> tickers, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.v < e.u) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  return Tree{std::move(tickers), std::move(edges)};
}

bool is_spanning_tree(const Tree& tree) {
  const std::size_t n = tree.size();
  if (n == 0 || tree.edges.size() + 1 != n) return false;
  DisjointSets sets(n);
  for (const auto& e : tree.edges) {
    if (e.u >= n || e.v >= n || e.u == e.v) return false;
    if (!sets.unite(e.u, e.v)) return false;
  }
  return true;  // n-1 successful unions join all n vertices
}

double total_weight(const Tree& tree) {
  std::vector<double> w;
  w.reserve(tree.edges.size());
  for (const auto& e : tree.edges) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  double total = 0.0;
  for (double x : w) total += x;
  return total;
}

std::vector<std::vector<std::size_t>> adjacency(const Tree& tree) {
  std::vector<std::vector<std::size_t>> adj(tree.size());
  for (const auto& e : tree.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

std::vector<int> vertex_degrees(const Tree& tree) {
  std::vector<int> deg(tree.size(), 0);
  for (const auto& e : tree.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

namespace {

/// Strict total order on candidate edges: weight, then ticker pair.
class EdgeOrder {
 public:
  explicit EdgeOrder(const DistanceMatrix& d) : d_(d), rank_(d.size()) {
    std::vector<std::size_t> idx(d.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return d.tickers[a] < d.tickers[b]; });
    for (std::size_t r = 0; r < idx.size(); ++r) rank_[idx[r]] = r;
  }

  using Key = std::tuple<double, std::size_t, std::size_t>;

  Key key(std::size_t a, std::size_t b) const {
    const auto ra = rank_[a], rb = rank_[b];
    return {d_.d(a, b), std::min(ra, rb), std::max(ra, rb)};
  }

 private:
  const DistanceMatrix& d_;
  std::vector<std::size_t> rank_;
};

void validate(const DistanceMatrix& d) {
  const std::size_t n = d.size();
  if (n < 2) throw Error(ErrorKind::InsufficientData, "spanning tree needs at least 2 vertices");
  if (d.d.rows() != n || d.d.cols() != n) {
    throw Error(ErrorKind::Configuration, "distance matrix shape does not match ticker count");
  }
  std::set<std::string> unique(d.tickers.begin(), d.tickers.end());
  if (unique.size() != n) throw Error(ErrorKind::Configuration, "tickers are not unique");
}

Edge make_edge(const DistanceMatrix& d, std::size_t a, std::size_t b) {
  return Edge{std::min(a, b), std::max(a, b), d.d(a, b)};
}

}  // namespace

Tree prim_mst(const DistanceMatrix& d) {
  validate(d);
  const std::size_t n = d.size();
  const EdgeOrder order(d);

  std::vector<bool> in_tree(n, false);
  std::vector<std::size_t> parent(n, 0);
  std::vector<EdgeOrder::Key> best(n);
  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) best[v] = order.key(0, v);

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t next = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (next == n || best[v] < best[next])) next = v;
    }
    in_tree[next] = true;
    edges.push_back(make_edge(d, parent[next], next));
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const auto k = order.key(next, v);
      if (k < best[v]) {
        best[v] = k;
        parent[v] = next;
      }
    }
  }
  return make_tree(d.tickers, std::move(edges));
}

Tree kruskal_mst(const DistanceMatrix& d) {
  validate(d);
  const std::size_t n = d.size();
  const EdgeOrder order(d);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
    return order.key(a.first, a.second) < order.key(b.first, b.second);
  });

  DisjointSets sets(n);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (const auto& [a, b] : pairs) {
    if (sets.unite(a, b)) {
      edges.push_back(make_edge(d, a, b));
      if (edges.size() + 1 == n) break;
    }
  }
  return make_tree(d.tickers, std::move(edges));
}

Tree brute_force_mst(const DistanceMatrix& d) {
  validate(d);
  const std::size_t n = d.size();
  if (n > kBruteForceMaxVertices) {
    throw Error(ErrorKind::SizeLimit, "brute-force spanning tree limited to " +
                                          std::to_string(kBruteForceMaxVertices) +
                                          " vertices, got " + std::to_string(n));
  }
  if (n == 2) return make_tree(d.tickers, {make_edge(d, 0, 1)});

  const EdgeOrder order(d);
  const std::size_t len = n - 2;
  std::vector<std::size_t> code(len, 0);

  std::vector<Edge> best_edges;
  double best_total = std::numeric_limits<double>::infinity();
  std::vector<EdgeOrder::Key> best_keys;

  std::vector<Edge> edges(n - 1);
  std::vector<std::size_t> degree(n);
  std::vector<EdgeOrder::Key> keys(n - 1);
  std::vector<double> weights(n - 1);

  while (true) {
    // Pruefer decode, O(N^2) which is irrelevant at N <= 8.
    std::fill(degree.begin(), degree.end(), 1);
    for (std::size_t c : code) ++degree[c];
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t leaf = 0;
      while (degree[leaf] != 1) ++leaf;
      edges[k] = make_edge(d, leaf, code[k]);
      --degree[leaf];
      --degree[code[k]];
    }
    std::size_t a = n, b = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (degree[v] == 1) (a == n ? a : b) = v;
    }
    edges[n - 2] = make_edge(d, a, b);

    for (std::size_t k = 0; k + 1 < n; ++k) {
      keys[k] = order.key(edges[k].u, edges[k].v);
      weights[k] = edges[k].weight;
    }
    std::sort(keys.begin(), keys.end());
    std::sort(weights.begin(), weights.end());
    double total = 0.0;
    for (double w : weights) total += w;

    if (total < best_total || (total == best_total && keys < best_keys)) {
      best_total = total;
      best_keys = keys;
      best_edges = edges;
    }

    std::size_t pos = 0;
    while (pos < len && ++code[pos] == n) code[pos++] = 0;
    if (pos == len) break;
  }
  return make_tree(d.tickers, std::move(best_edges));
}

}  // namespace mstnet
