#pragma once
// The graph attached to the diagonal structure on T^m: tuples are adjacent
// when they lie in a common part of one of the m+1 canonical partitions, so
// every edge carries a type. Provides construction with typed adjacency, a
// closed-form distance and diameter (with search oracles), the line/clique
// structure, proper colorings through complete mappings, the homomorphism
// that drops two coordinates, recovery of the canonical partitions from the
// bare graph, and the clique-meets-coloring certificate.

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "diaglat/cartesian.hpp"
#include "diaglat/diagonal.hpp"
#include "diaglat/errors.hpp"
#include "diaglat/graph.hpp"
#include "diaglat/group.hpp"
#include "diaglat/latin.hpp"
#include "diaglat/partition.hpp"
#include "diaglat/util.hpp"

namespace diaglat {

// Vertices are the tuples of T^m (little-endian indices). Type i >= 1 joins
// tuples differing in coordinate i-1 only; type 0 joins u to x*u for every
// non-identity x acting on all coordinates at once. For m >= 2 the two
// descriptions never overlap, so the type of an edge is well defined; for
// m = 1 they coincide and type 1 is reported.
class DiagonalGraph {
 public:
  DiagonalGraph(Group group, int dimension, MixedRadixCodec codec,
                SimpleGraph graph)
      : group_(std::move(group)),
        dimension_(dimension),
        codec_(std::move(codec)),
        graph_(std::move(graph)) {}

  const Group& group() const { return group_; }
  int dimension() const { return dimension_; }
  const MixedRadixCodec& codec() const { return codec_; }
  const SimpleGraph& graph() const { return graph_; }
  int vertex_count() const { return graph_.vertex_count(); }
  int valency() const { return (dimension_ + 1) * (group_.order() - 1); }

  int edge_type(int u, int v) const {
    if (u == v) throw parse_error("edge type: equal vertices");
    auto a = codec_.decode(u);
    auto b = codec_.decode(v);
    int differing = 0, last = -1;
    for (int i = 0; i < dimension_; ++i)
      if (a[i] != b[i]) {
        ++differing;
        last = i;
      }
    if (differing == 1) return last + 1;
    if (differing == dimension_) {
      int x = group_.op(b[0], group_.inv(a[0]));
      bool constant = true;
      for (int i = 1; i < dimension_ && constant; ++i)
        constant = b[i] == group_.op(x, a[i]);
      if (constant) return 0;
    }
    throw parse_error("edge type: vertices are not adjacent");
  }

 private:
  Group group_;
  int dimension_;
  MixedRadixCodec codec_;
  SimpleGraph graph_;
};

inline DiagonalGraph build_graph(const Group& t, int m) {
  int n = t.order();
  if (n < 2) throw degenerate_case("the graph needs a group of order >= 2");
  if (m < 1) throw dimension_too_small("the graph needs dimension >= 1");
  long long size = 1;
  for (int i = 0; i < m; ++i) {
    size *= n;
    if (size > 100000)
      throw size_limit_exceeded("graph capped at 10^5 vertices");
  }

  MixedRadixCodec codec(std::vector<int>(m, n));
  SimpleGraph g(codec.size());
  std::vector<int> image(m);
  for (int v = 0; v < codec.size(); ++v) {
    auto tuple = codec.decode(v);
    for (int dim = 0; dim < m; ++dim) {
      image = tuple;
      for (int val = 0; val < n; ++val) {
        if (val == tuple[dim]) continue;
        image[dim] = val;
        int u = codec.encode(image);
        if (v < u) g.add_edge(v, u);
      }
    }
    if (m >= 2)
      for (int x = 0; x < n; ++x) {
        if (x == t.identity()) continue;
        for (int i = 0; i < m; ++i) image[i] = t.op(x, tuple[i]);
        int u = codec.encode(image);
        if (v < u) g.add_edge(v, u);
      }
  }
  return DiagonalGraph(t, m, std::move(codec), std::move(g));
}

// d1 counts differing coordinates; d2 = m - l + 1 where l is the largest
// multiplicity of a non-identity element among the coordinatewise quotients.
// The distance is the smaller of the two.
inline int distance(const DiagonalGraph& g, int u, int v) {
  if (u == v) return 0;
  const Group& t = g.group();
  auto a = g.codec().decode(u);
  auto b = g.codec().decode(v);
  int m = g.dimension();

  int d1 = 0;
  std::vector<int> multiplicity(t.order(), 0);
  for (int i = 0; i < m; ++i) {
    if (a[i] != b[i]) ++d1;
    ++multiplicity[t.op(a[i], t.inv(b[i]))];
  }
  int best = 0;
  for (int x = 0; x < t.order(); ++x)
    if (x != t.identity()) best = std::max(best, multiplicity[x]);
  int d2 = m - best + 1;
  return std::min(d1, d2);
}

struct DiameterReport {
  int diameter = 0;
  bool searched = false;
};

// Closed form m + 1 - ceil((m+1)/|T|); with check_by_search the eccentricity
// of one vertex (the graph is vertex-transitive) must reproduce it.
inline DiameterReport diameter(const Group& t, int m,
                               bool check_by_search = false) {
  int n = t.order();
  if (n < 2) throw degenerate_case("the graph needs a group of order >= 2");
  if (m < 1) throw dimension_too_small("the graph needs dimension >= 1");
  int closed = m + 1 - (m + n) / n;
  if (!check_by_search) return DiameterReport{closed, false};

  long long size = 1;
  for (int i = 0; i < m; ++i) {
    size *= n;
    if (size > 10000)
      throw size_limit_exceeded("diameter search capped at 10^4 vertices");
  }
  auto dg = build_graph(t, m);
  auto dist = dg.graph().bfs_distances(0);
  int farthest = 0;
  for (int d : dist) {
    if (d < 0) throw hypothesis_failed("diagonal graph is not connected");
    farthest = std::max(farthest, d);
  }
  if (farthest != closed)
    throw hypothesis_failed("diameter formula disagrees with search");
  return DiameterReport{closed, true};
}

// The maximal cliques ("lines") are exactly the parts of the canonical
// partitions: group i >= 1 varies coordinate i-1, group 0 collects the
// left-factor orbits. Each group covers the vertices by |T|^(m-1) cliques
// of size |T|, so the clique number and cover number are read off directly.
struct LineSystem {
  std::vector<std::vector<std::vector<int>>> lines_by_type;
  int clique_number = 0;
  long long clique_cover_size = 0;
};

inline LineSystem lines_and_clique_number(const DiagonalGraph& g) {
  const Group& t = g.group();
  int n = t.order();
  int m = g.dimension();
  if (m < 2) throw dimension_too_small("lines need dimension >= 2");
  if (m == 2 && n == 2)
    throw degenerate_case(
        "order 2 in dimension 2 gives a complete graph on 4 vertices whose "
        "cliques are not lines");

  LineSystem out;
  out.lines_by_type.resize(m + 1);
  std::vector<int> image(m);
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto tuple = g.codec().decode(v);
    if (tuple[0] == t.identity()) {
      std::vector<int> line;
      for (int x = 0; x < n; ++x) {
        for (int i = 0; i < m; ++i) image[i] = t.op(x, tuple[i]);
        line.push_back(g.codec().encode(image));
      }
      std::sort(line.begin(), line.end());
      out.lines_by_type[0].push_back(std::move(line));
    }
    for (int dim = 0; dim < m; ++dim) {
      if (tuple[dim] != 0) continue;
      std::vector<int> line;
      image = tuple;
      for (int val = 0; val < n; ++val) {
        image[dim] = val;
        line.push_back(g.codec().encode(image));
      }
      std::sort(line.begin(), line.end());
      out.lines_by_type[dim + 1].push_back(std::move(line));
    }
  }
  for (auto& group : out.lines_by_type) std::sort(group.begin(), group.end());
  out.clique_number = n;
  out.clique_cover_size = g.vertex_count() / n;
  return out;
}

struct Coloring {
  std::vector<int> color;
  int palette = 0;
};

namespace detail {

inline void validate_coloring(const SimpleGraph& g,
                              const std::vector<int>& color) {
  for (auto [u, v] : g.edges())
    if (color[u] == color[v])
      throw hypothesis_failed("coloring leaves a monochromatic edge");
}

}  // namespace detail

inline int reduction_homomorphism(const Group& t, int m, int vertex) {
  if (m < 3) throw dimension_too_small("reduction needs dimension >= 3");
  int n = t.order();
  MixedRadixCodec source(std::vector<int>(m, n));
  if (vertex < 0 || vertex >= source.size())
    throw parse_error("reduction: vertex out of range");
  auto tuple = source.decode(vertex);
  std::vector<int> image(m - 2);
  image[0] = t.op(t.op(tuple[0], t.inv(tuple[1])), tuple[2]);
  for (int i = 3; i < m; ++i) image[i - 2] = tuple[i];
  MixedRadixCodec target(std::vector<int>(m - 2, n));
  return target.encode(image);
}

// Odd m: the alternating product t_1 t_2^{-1} t_3 ... t_m separates every
// adjacency type, giving |T| colors. Even m with a complete mapping phi:
// t_1^{-1} t_2 ... t_{m-1}^{-1} psi(t_m) with psi(x) = x*phi(x) does the
// same. Otherwise drop coordinates in pairs down to dimension 2 and lift an
// exact coloring back through the homomorphism; the palette then reports
// whatever the search used. Every result is checked edge by edge.
inline Coloring proper_coloring(const Group& t, int m) {
  int n = t.order();
  if (n < 2) throw degenerate_case("the graph needs a group of order >= 2");
  if (m < 1) throw dimension_too_small("the graph needs dimension >= 1");
  auto dg = build_graph(t, m);

  Coloring out;
  out.color.resize(dg.vertex_count());
  if (m % 2 == 1) {
    for (int v = 0; v < dg.vertex_count(); ++v) {
      auto tuple = dg.codec().decode(v);
      int acc = t.identity();
      for (int i = 0; i < m; ++i)
        acc = t.op(acc, i % 2 == 0 ? tuple[i] : t.inv(tuple[i]));
      out.color[v] = acc;
    }
    out.palette = n;
  } else if (auto phi = complete_mapping(t)) {
    std::vector<int> psi(n);
    for (int x = 0; x < n; ++x) psi[x] = t.op(x, (*phi)[x]);
    for (int v = 0; v < dg.vertex_count(); ++v) {
      auto tuple = dg.codec().decode(v);
      int acc = t.identity();
      for (int j = 0; j < m; j += 2) {
        int second = j + 2 == m ? psi[tuple[j + 1]] : tuple[j + 1];
        acc = t.op(acc, t.op(t.inv(tuple[j]), second));
      }
      out.color[v] = acc;
    }
    out.palette = n;
  } else {
    if (n * n > 64)
      throw size_limit_exceeded(
          "the fallback needs an exact coloring of the dimension 2 graph, "
          "capped at 64 vertices");
    auto base = build_graph(t, 2);
    auto base_colors = optimal_coloring(base.graph());
    for (int v = 0; v < dg.vertex_count(); ++v) {
      int w = v;
      for (int k = m; k > 2; k -= 2) w = reduction_homomorphism(t, k, w);
      out.color[v] = base_colors[w];
    }
    out.palette = 1 + *std::max_element(base_colors.begin(),
                                        base_colors.end());
  }
  detail::validate_coloring(dg.graph(), out.color);
  return out;
}

namespace detail {

// Canonical order for recovered partition families: by the part containing
// vertex 0, smallest first.
inline void sort_by_zero_part(std::vector<Partition>& partitions) {
  std::sort(partitions.begin(), partitions.end(),
            [](const Partition& a, const Partition& b) {
              std::vector<int> pa, pb;
              for (int x = 0; x < a.ground_size(); ++x) {
                if (a.part_of(x) == a.part_of(0)) pa.push_back(x);
                if (b.part_of(x) == b.part_of(0)) pb.push_back(x);
              }
              return pa < pb;
            });
}

}  // namespace detail

// Rebuilds the m+1 canonical partitions from the bare graph. Every edge
// closes into a unique line (the edge plus its common neighbours); two
// disjoint lines are parallel exactly when the edges between them form a
// perfect matching, and the components of that relation are the types. The
// five small graphs whose structure is ambiguous are refused up front, and
// dimension 2 routes through the line-graph recovery of a square.
inline std::vector<Partition> recover_semilattice_from_graph(
    const SimpleGraph& g) {
  int vcount = g.vertex_count();
  if (vcount < 4) throw not_diagonal_graph("too few vertices");
  int valency = g.degree(0);
  for (int v = 1; v < vcount; ++v)
    if (g.degree(v) != valency)
      throw not_diagonal_graph("the graph is not regular");
  if (!g.is_connected()) throw not_diagonal_graph("the graph is not connected");

  if ((vcount == 4 && valency == 3) || (vcount == 9 && valency == 6) ||
      (vcount == 16 && valency == 9) || (vcount == 8 && valency == 4))
    throw exceptional_case(
        "the (order, valency) pair belongs to a graph with extra symmetry "
        "whose canonical partitions are not determined");

  int n = -1, m = -1;
  for (int base = 2; base < vcount && n < 0; ++base) {
    long long power = base;
    int exp = 1;
    while (power < vcount) {
      power *= base;
      ++exp;
    }
    if (power == vcount && exp >= 2 &&
        static_cast<long long>(exp + 1) * (base - 1) == valency) {
      n = base;
      m = exp;
    }
  }
  if (n < 0)
    throw not_diagonal_graph(
        "order and valency fit no (group order, dimension) pair");

  if (m == 2) {
    try {
      auto rec = recover_square_from_graph(g);
      return {rec.rows, rec.columns, rec.letters};
    } catch (const not_latin_square_graph& e) {
      throw not_diagonal_graph(e.what());
    }
  }

  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> lines;
  for (auto [u, v] : g.edges()) {
    std::vector<int> line = g.common_neighbors(u, v);
    line.push_back(u);
    line.push_back(v);
    std::sort(line.begin(), line.end());
    if (static_cast<int>(line.size()) != n)
      throw not_diagonal_graph("an edge closure has the wrong size");
    if (seen.emplace(line, static_cast<int>(lines.size())).second) {
      if (!g.is_clique(line))
        throw not_diagonal_graph("an edge closure is not a clique");
      lines.push_back(std::move(line));
    }
  }
  long long expected =
      static_cast<long long>(m + 1) * vcount / n;
  if (static_cast<long long>(lines.size()) != expected)
    throw not_diagonal_graph("wrong number of lines");
  std::vector<int> incident(vcount, 0);
  for (const auto& line : lines)
    for (int v : line) ++incident[v];
  for (int v = 0; v < vcount; ++v)
    if (incident[v] != m + 1)
      throw not_diagonal_graph("a vertex lies on the wrong number of lines");

  DisjointSet types(static_cast<int>(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (detail::lines_match(g, lines[i], lines[j]))
        types.unite(static_cast<int>(i), static_cast<int>(j));

  std::map<int, std::vector<std::vector<int>>> classes;
  for (std::size_t i = 0; i < lines.size(); ++i)
    classes[types.find(static_cast<int>(i))].push_back(lines[i]);
  if (static_cast<int>(classes.size()) != m + 1)
    throw not_diagonal_graph(
        "parallel classes do not split into dimension+1 types");

  std::vector<Partition> partitions;
  for (auto& [root, blocks] : classes) {
    try {
      partitions.push_back(Partition::from_blocks(vcount, blocks));
    } catch (const parse_error&) {
      throw not_diagonal_graph("a parallel class does not cover the vertices");
    }
  }
  try {
    verify_special_set(partitions);
  } catch (const not_special& e) {
    throw not_diagonal_graph(std::string("recovered partitions fail the "
                                         "defining property: ") +
                             e.what());
  }
  detail::sort_by_zero_part(partitions);
  return partitions;
}

// A line of size |T| together with a proper |T|-coloring: a clique meeting
// the chromatic number, which is the certificate that any group preserving
// the structure fails to synchronize. Only characteristically simple groups
// of order at least 3 qualify; everything else is handled by the
// primitivity classification instead.
struct SynchronizationWitness {
  std::vector<int> clique;
  Coloring coloring;
};

inline SynchronizationWitness synchronization_witness(const Group& t, int m) {
  if (m < 2) throw dimension_too_small("the certificate needs dimension >= 2");
  if (t.order() < 3)
    throw not_applicable(
        "order 2 admits no clique meeting the chromatic number; use the "
        "primitivity classification");
  if (!is_characteristically_simple(t))
    throw not_applicable(
        "the group has a proper characteristic subgroup; imprimitivity is "
        "the witness");

  auto coloring = proper_coloring(t, m);
  if (coloring.palette != t.order())
    throw hypothesis_failed(
        "expected a coloring with one color per group element");

  MixedRadixCodec codec(std::vector<int>(m, t.order()));
  std::vector<int> tuple(m, t.identity());
  std::vector<int> clique;
  for (int x = 0; x < t.order(); ++x) {
    tuple[0] = x;
    clique.push_back(codec.encode(tuple));
  }
  std::sort(clique.begin(), clique.end());
  return SynchronizationWitness{std::move(clique), std::move(coloring)};
}

// Deterministic edge list with a one-line header.
inline std::string to_edge_list(const DiagonalGraph& g) {
  std::ostringstream out;
  out << "vertices " << g.vertex_count() << " types " << g.dimension() + 1
      << "\n";
  for (auto [u, v] : g.graph().edges())
    out << u << ' ' << v << ' ' << g.edge_type(u, v) << "\n";
  return out.str();
}

}  // namespace diaglat
