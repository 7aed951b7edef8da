#pragma once
// Cartesian decompositions of a finite set: partitions P_1..P_n, each with at
// least two parts, such that every transversal intersection p_1 ∩ .. ∩ p_n is
// a single point. The generated lattice is indexed by subsets, with
// P_J = meet over J, joins given by P_J ∨ P_K = P_{J∩K}. Hamming graphs and
// the reconstruction of a decomposition from one live here too.

#include <algorithm>
#include <map>
#include <vector>

#include "diaglat/errors.hpp"
#include "diaglat/graph.hpp"
#include "diaglat/partition.hpp"
#include "diaglat/util.hpp"

namespace diaglat {

struct CartesianDecomposition {
  int ground_size = 0;
  std::vector<Partition> partitions;  // the maximal partitions P_i

  int dimension() const { return static_cast<int>(partitions.size()); }

  std::vector<int> profile() const {
    std::vector<int> out;
    for (const auto& p : partitions) out.push_back(p.num_parts());
    return out;
  }
};

inline bool is_cartesian_decomposition(const std::vector<Partition>& parts) {
  if (parts.empty()) return false;
  int n = parts[0].ground_size();
  for (const auto& p : parts) {
    if (p.ground_size() != n)
      throw ground_mismatch("partitions live on different ground sets");
    if (p.num_parts() < 2) return false;
  }
  long long product = 1;
  for (const auto& p : parts) {
    product *= p.num_parts();
    if (product > n) return false;
  }
  if (product != n) return false;
  // counts match, so injectivity of the coordinate map settles bijectivity
  std::vector<int> radices;
  for (const auto& p : parts) radices.push_back(p.num_parts());
  MixedRadixCodec codec(radices);
  std::vector<char> seen(n, 0);
  for (int x = 0; x < n; ++x) {
    std::vector<int> tuple;
    for (const auto& p : parts) tuple.push_back(p.part_of(x));
    int code = codec.encode(tuple);
    if (seen[code]) return false;
    seen[code] = 1;
  }
  return true;
}

inline CartesianDecomposition make_cartesian_decomposition(
    std::vector<Partition> parts) {
  if (!is_cartesian_decomposition(parts))
    throw parse_error("partitions do not form a Cartesian decomposition");
  return CartesianDecomposition{parts[0].ground_size(), std::move(parts)};
}

// All 2^n partitions P_J, indexed by bitmask over the decomposition.
class CartesianLattice {
 public:
  explicit CartesianLattice(const CartesianDecomposition& d) : n_(d.dimension()) {
    if (n_ > 16)
      throw size_limit_exceeded("lattice enumeration capped at 16 factors");
    by_mask_.reserve(std::size_t{1} << n_);
    by_mask_.push_back(Partition::one_part(d.ground_size));
    for (int mask = 1; mask < (1 << n_); ++mask) {
      int low = mask & -mask;
      int rest = mask ^ low;
      int i = __builtin_ctz(static_cast<unsigned>(low));
      by_mask_.push_back(rest == 0 ? d.partitions[i]
                                   : by_mask_[rest].meet(d.partitions[i]));
    }
  }

  int dimension() const { return n_; }
  const Partition& at(int mask) const { return by_mask_.at(mask); }
  const Partition& maximal(int i) const { return by_mask_.at(1 << i); }

  // parts of the minimal partition Q_i are the lines in direction i
  const Partition& minimal(int i) const {
    return by_mask_.at(((1 << n_) - 1) ^ (1 << i));
  }

 private:
  int n_;
  std::vector<Partition> by_mask_;
};

struct HammingGraph {
  SimpleGraph graph;
  MixedRadixCodec codec;
};

// Vertices are tuples over the profile; edges join tuples differing in
// exactly one coordinate.
inline HammingGraph hamming_graph(const std::vector<int>& profile) {
  if (profile.empty()) throw parse_error("profile must be nonempty");
  for (int n : profile)
    if (n < 2) throw parse_error("every factor needs at least two values");
  MixedRadixCodec codec(profile);
  if (codec.size() > 1000000)
    throw size_limit_exceeded("Hamming graph capped at 1000000 vertices");
  SimpleGraph g(codec.size());
  for (int v = 0; v < codec.size(); ++v) {
    auto tuple = codec.decode(v);
    for (std::size_t i = 0; i < profile.size(); ++i) {
      int original = tuple[i];
      for (int c = original + 1; c < profile[i]; ++c) {
        tuple[i] = c;
        g.add_edge(v, codec.encode(tuple));
      }
      tuple[i] = original;
    }
  }
  return HammingGraph{std::move(g), std::move(codec)};
}

struct HammingRecovery {
  CartesianDecomposition decomposition;
  std::vector<Partition> minimal;  // Q_i: parts are the lines in direction i
  std::vector<int> profile;        // line sizes per direction
};

namespace detail {

// Between two disjoint cliques, same-type means the cross edges form a
// perfect matching.
inline bool lines_match(const SimpleGraph& g, const std::vector<int>& a,
                        const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (int u : a)
    if (std::binary_search(b.begin(), b.end(), u)) return false;
  std::vector<int> hits_b(b.size(), 0);
  for (int u : a) {
    int count = 0;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (g.adjacent(u, b[j])) {
        ++count;
        ++hits_b[j];
      }
    if (count != 1) return false;
  }
  return std::all_of(hits_b.begin(), hits_b.end(),
                     [](int h) { return h == 1; });
}

}  // namespace detail

// Rebuilds the Cartesian decomposition whose Hamming graph is g. The line
// through an edge is the closure of the edge under common neighbours; lines
// are grouped into directions by the perfect-matching relation.
inline HammingRecovery recover_cartesian_from_hamming(const SimpleGraph& g) {
  int n = g.vertex_count();
  if (n < 2) throw not_hamming("need at least two vertices");
  if (!g.is_connected()) throw not_hamming("graph is disconnected");
  for (int v = 1; v < n; ++v)
    if (g.degree(v) != g.degree(0)) throw not_hamming("graph is not regular");

  if (g.degree(0) == n - 1) {
    // complete graph: the one-factor decomposition into singletons
    CartesianDecomposition d{n, {Partition::singletons(n)}};
    return HammingRecovery{std::move(d), {Partition::one_part(n)}, {n}};
  }

  std::map<std::vector<int>, int> line_index;
  std::vector<std::vector<int>> lines;
  for (auto [u, v] : g.edges()) {
    std::vector<int> line = g.common_neighbors(u, v);
    line.push_back(u);
    line.push_back(v);
    std::sort(line.begin(), line.end());
    if (!g.is_clique(line))
      throw not_hamming("closure of an edge is not a clique");
    if (line_index.emplace(line, lines.size()).second)
      lines.push_back(std::move(line));
  }

  DisjointSet classes(static_cast<int>(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (detail::lines_match(g, lines[i], lines[j]))
        classes.unite(static_cast<int>(i), static_cast<int>(j));

  std::map<int, std::vector<int>> grouped;  // class root -> line ids
  for (std::size_t i = 0; i < lines.size(); ++i)
    grouped[classes.find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<std::vector<int>> directions;
  for (auto& [root, ids] : grouped) directions.push_back(std::move(ids));
  // canonical order: each direction has one line through vertex 0
  std::sort(directions.begin(), directions.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              auto zero_line = [&](const std::vector<int>& ids) {
                for (int id : ids)
                  if (lines[id][0] == 0) return lines[id];
                return std::vector<int>{};
              };
              return zero_line(a) < zero_line(b);
            });

  std::vector<Partition> minimal;
  std::vector<int> profile;
  for (const auto& ids : directions) {
    std::vector<std::vector<int>> blocks;
    int size = static_cast<int>(lines[ids[0]].size());
    for (int id : ids) {
      if (static_cast<int>(lines[id].size()) != size)
        throw not_hamming("parallel lines of different sizes");
      blocks.push_back(lines[id]);
    }
    try {
      minimal.push_back(Partition::from_blocks(n, blocks));
    } catch (const parse_error&) {
      throw not_hamming("lines of one direction do not partition the vertices");
    }
    profile.push_back(size);
  }

  long long product = 1;
  for (int size : profile) {
    product *= size;
    if (product > n) throw not_hamming("direction sizes overshoot the graph");
  }
  if (product != n) throw not_hamming("direction sizes do not multiply out");

  int m = static_cast<int>(directions.size());
  std::vector<Partition> maximal;
  for (int i = 0; i < m; ++i) {
    Partition p = Partition::one_part(n);
    bool first = true;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      p = first ? minimal[j] : p.join(minimal[j]);
      first = false;
    }
    maximal.push_back(std::move(p));
  }

  if (!is_cartesian_decomposition(maximal))
    throw not_hamming("recovered partitions are not a Cartesian decomposition");

  // faithfulness: every edge lies in exactly one line, and the line budget
  // accounts for every edge
  long long expected_edges = 0;
  for (int i = 0; i < m; ++i)
    expected_edges += static_cast<long long>(n) * (profile[i] - 1) / 2;
  if (expected_edges != g.edge_count())
    throw not_hamming("edge count does not match the recovered profile");
  for (auto [u, v] : g.edges()) {
    int within = 0;
    for (const auto& q : minimal)
      if (q.same_part(u, v)) ++within;
    if (within != 1) throw not_hamming("edge not confined to a single line");
  }

  CartesianDecomposition d{n, std::move(maximal)};
  return HammingRecovery{std::move(d), std::move(minimal), std::move(profile)};
}

}  // namespace diaglat
