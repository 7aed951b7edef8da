#pragma once
// Undirected simple graphs on 0..n-1 with the small exact oracles used
// throughout: BFS distances, maximum clique and chromatic number on at most
// 64 vertices via bitset search.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <queue>
#include <vector>

#include "diaglat/errors.hpp"

namespace diaglat {

class SimpleGraph {
 public:
  explicit SimpleGraph(int n) : adjacency_(n) {}

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
      throw parse_error("edge endpoint out of range");
    if (u == v) throw parse_error("loops are not allowed");
    if (adjacent(u, v)) return;
    adjacency_[u].insert(
        std::upper_bound(adjacency_[u].begin(), adjacency_[u].end(), v), v);
    adjacency_[v].insert(
        std::upper_bound(adjacency_[v].begin(), adjacency_[v].end(), u), u);
  }

  bool adjacent(int u, int v) const {
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
  }

  const std::vector<int>& neighbors(int u) const { return adjacency_[u]; }
  int degree(int u) const { return static_cast<int>(adjacency_[u].size()); }

  long long edge_count() const {
    long long total = 0;
    for (const auto& adj : adjacency_) total += adj.size();
    return total / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < vertex_count(); ++u)
      for (int v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  std::vector<int> common_neighbors(int u, int v) const {
    std::vector<int> out;
    std::set_intersection(adjacency_[u].begin(), adjacency_[u].end(),
                          adjacency_[v].begin(), adjacency_[v].end(),
                          std::back_inserter(out));
    return out;
  }

  bool is_clique(const std::vector<int>& vertices) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (!adjacent(vertices[i], vertices[j])) return false;
    return true;
  }

  // -1 for unreachable vertices.
  std::vector<int> bfs_distances(int source) const {
    std::vector<int> dist(vertex_count(), -1);
    std::queue<int> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
      int u = frontier.front();
      frontier.pop();
      for (int v : adjacency_[u])
        if (dist[v] == -1) {
          dist[v] = dist[u] + 1;
          frontier.push(v);
        }
    }
    return dist;
  }

  bool is_connected() const {
    if (vertex_count() == 0) return true;
    auto dist = bfs_distances(0);
    return std::none_of(dist.begin(), dist.end(),
                        [](int d) { return d == -1; });
  }

 private:
  std::vector<std::vector<int>> adjacency_;
};

namespace detail {

inline void max_clique_search(const std::vector<std::uint64_t>& adj,
                              std::uint64_t candidates, int size,
                              int& best, std::uint64_t current,
                              std::uint64_t& best_set) {
  if (candidates == 0) {
    if (size > best) {
      best = size;
      best_set = current;
    }
    return;
  }
  while (candidates) {
    if (size + __builtin_popcountll(candidates) <= best) return;
    int v = __builtin_ctzll(candidates);
    candidates &= candidates - 1;
    max_clique_search(adj, candidates & adj[v], size + 1, best,
                      current | (std::uint64_t{1} << v), best_set);
  }
}

}  // namespace detail

// Exact maximum clique for graphs on at most 64 vertices.
inline std::vector<int> maximum_clique(const SimpleGraph& g) {
  int n = g.vertex_count();
  if (n > 64) throw size_limit_exceeded("clique search capped at 64 vertices");
  std::vector<std::uint64_t> adj(n, 0);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) adj[u] |= std::uint64_t{1} << v;
  int best = 0;
  std::uint64_t best_set = 0;
  std::uint64_t all = n == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << n) - 1;
  detail::max_clique_search(adj, all, 0, best, 0, best_set);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best_set & (std::uint64_t{1} << v)) out.push_back(v);
  return out;
}

namespace detail {

// Backtracking k-colorability choosing the most saturated vertex first.
inline bool k_colorable(const SimpleGraph& g, int k, std::vector<int>& color) {
  int n = g.vertex_count();
  int pick = -1, pick_sat = -1, pick_deg = -1;
  for (int v = 0; v < n; ++v) {
    if (color[v] != -1) continue;
    std::uint64_t seen = 0;
    for (int u : g.neighbors(v))
      if (color[u] != -1) seen |= std::uint64_t{1} << color[u];
    int sat = __builtin_popcountll(seen);
    if (sat > pick_sat || (sat == pick_sat && g.degree(v) > pick_deg)) {
      pick = v;
      pick_sat = sat;
      pick_deg = g.degree(v);
    }
  }
  if (pick == -1) return true;
  std::uint64_t forbidden = 0;
  int max_used = -1;
  for (int u : g.neighbors(pick))
    if (color[u] != -1) forbidden |= std::uint64_t{1} << color[u];
  for (int v = 0; v < n; ++v) max_used = std::max(max_used, color[v]);
  // trying at most one fresh color breaks color-permutation symmetry
  int limit = std::min(k - 1, max_used + 1);
  for (int c = 0; c <= limit; ++c) {
    if (forbidden & (std::uint64_t{1} << c)) continue;
    color[pick] = c;
    if (k_colorable(g, k, color)) return true;
    color[pick] = -1;
  }
  return false;
}

}  // namespace detail

// Exact proper coloring with the fewest colors, for at most 64 vertices.
inline std::vector<int> optimal_coloring(const SimpleGraph& g) {
  int n = g.vertex_count();
  if (n > 64)
    throw size_limit_exceeded("exact coloring capped at 64 vertices");
  if (n == 0) return {};
  int lower = static_cast<int>(maximum_clique(g).size());
  for (int k = lower; k <= n; ++k) {
    std::vector<int> color(n, -1);
    if (detail::k_colorable(g, k, color)) return color;
  }
  throw std::logic_error("coloring search exhausted");  // unreachable
}

inline int chromatic_number_exact(const SimpleGraph& g) {
  auto coloring = optimal_coloring(g);
  int palette = 0;
  for (int c : coloring) palette = std::max(palette, c + 1);
  return palette;
}

inline bool is_proper_coloring(const SimpleGraph& g,
                               const std::vector<int>& color) {
  for (auto [u, v] : g.edges())
    if (color[u] == color[v]) return false;
  return true;
}

struct SrgParams {
  int valency;
  int common_adjacent;      // common neighbours of an edge
  int common_non_adjacent;  // common neighbours of a non-edge
};

// Parameters (k, lambda, mu) if the graph is strongly regular; nullopt
// otherwise. Complete and empty graphs are excluded as degenerate.
inline std::optional<SrgParams> strongly_regular_parameters(
    const SimpleGraph& g) {
  int n = g.vertex_count();
  if (n < 2) return std::nullopt;
  int k = g.degree(0);
  for (int v = 1; v < n; ++v)
    if (g.degree(v) != k) return std::nullopt;
  if (k == 0 || k == n - 1) return std::nullopt;
  int lambda = -1, mu = -1;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      int c = static_cast<int>(g.common_neighbors(u, v).size());
      int& slot = g.adjacent(u, v) ? lambda : mu;
      if (slot == -1)
        slot = c;
      else if (slot != c)
        return std::nullopt;
    }
  return SrgParams{k, lambda, mu};
}

}  // namespace diaglat
