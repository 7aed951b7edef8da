#pragma once
// Latin squares viewed as row/column/letter partitions of their cell set,
// the associated strongly regular graph and its inversion, and Latin cubes:
// sort classification (LC0, LC1, LC2), regularity of LC2 cubes, cubes built
// from groups, and the reconstruction of the group from a regular cube with
// a checkable certificate.

#include <algorithm>
#include <array>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diaglat/cartesian.hpp"
#include "diaglat/errors.hpp"
#include "diaglat/graph.hpp"
#include "diaglat/group.hpp"
#include "diaglat/partition.hpp"
#include "diaglat/util.hpp"

namespace diaglat {

// A Latin square of order n on the cell set {0, ..., n^2-1}, where the cell
// in row i and column j has index i + n*j.
class LatinSquare {
 public:
  static LatinSquare from_table(CayleyTable t) { return LatinSquare(std::move(t)); }

  static LatinSquare from_indices(int n, std::vector<int> row_major,
                                  std::vector<std::string> symbols = {}) {
    return LatinSquare(
        CayleyTable::from_indices(n, std::move(row_major), std::move(symbols)));
  }

  static LatinSquare read(std::istream& in) {
    return LatinSquare(CayleyTable::read(in));
  }

  static LatinSquare parse(const std::string& text) {
    std::istringstream in(text);
    return read(in);
  }

  void write(std::ostream& out) const { table_.write(out); }
  std::string to_string() const { return table_.to_string(); }

  int order() const { return table_.order(); }
  int at(int row, int col) const { return table_.at(row, col); }
  int cell(int row, int col) const { return row + order() * col; }
  int cell_count() const { return order() * order(); }
  const CayleyTable& table() const { return table_; }

  Partition row_partition() const {
    return coordinate(
        [&](int i, int j) { (void)j; return i; });
  }

  Partition column_partition() const {
    return coordinate(
        [&](int i, int j) { (void)i; return j; });
  }

  Partition letter_partition() const {
    return coordinate(
        [&](int i, int j) { return table_.at(i, j); });
  }

  bool operator==(const LatinSquare& other) const {
    return table_ == other.table_;
  }
  bool operator!=(const LatinSquare& other) const { return !(*this == other); }

 private:
  explicit LatinSquare(CayleyTable t) : table_(std::move(t)) {}

  template <typename F>
  Partition coordinate(F&& value) const {
    int n = order();
    std::vector<int> ids(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ids[cell(i, j)] = value(i, j);
    return Partition(std::move(ids));
  }

  CayleyTable table_;
};

// Cells are adjacent when they share a row, a column or a letter.
inline SimpleGraph latin_square_graph(const LatinSquare& s) {
  int n = s.order();
  SimpleGraph g(n * n);
  auto connect = [&](const Partition& p) {
    for (const auto& part : p.parts())
      for (std::size_t x = 0; x < part.size(); ++x)
        for (std::size_t y = x + 1; y < part.size(); ++y)
          g.add_edge(part[x], part[y]);
  };
  connect(s.row_partition());
  connect(s.column_partition());
  connect(s.letter_partition());
  return g;
}

struct SquareRecovery {
  LatinSquare square;
  // partitions of the input vertex set; the three roles are recovered only
  // up to order, fixed canonically by the lines through vertex 0
  Partition rows, columns, letters;
};

namespace detail {

// The line through an edge of a Latin-square graph: the unique clique of
// size > 4 among the closures {u, v, w} + common(u, v, w). Any clique with
// at least five vertices through the edge lies inside the line, because a
// vertex outside a line is adjacent to at most two of its cells.
inline std::vector<int> line_through_edge(const SimpleGraph& g, int u, int v) {
  std::vector<int> found;
  for (int w : g.common_neighbors(u, v)) {
    std::vector<int> cand{u, v, w};
    for (int x : g.common_neighbors(u, v))
      if (x != w && g.adjacent(x, w)) cand.push_back(x);
    if (cand.size() < 5) continue;
    std::sort(cand.begin(), cand.end());
    if (!g.is_clique(cand)) continue;
    if (found.empty())
      found = std::move(cand);
    else if (found != cand)
      throw not_latin_square_graph("two large cliques through one edge");
  }
  if (found.empty())
    throw not_latin_square_graph("no line found through an edge");
  return found;
}

}  // namespace detail

// Rebuilds a Latin square from its graph. Needs order at least 5: below
// that, large cliques no longer single out the lines.
inline SquareRecovery recover_square_from_graph(const SimpleGraph& g) {
  int vertices = g.vertex_count();
  int n = 0;
  while (n * n < vertices) ++n;
  if (n * n != vertices)
    throw not_latin_square_graph("vertex count is not a square");
  if (n <= 4) throw order_too_small("recovery needs order at least 5");
  for (int v = 0; v < vertices; ++v)
    if (g.degree(v) != 3 * (n - 1))
      throw not_latin_square_graph("wrong valency");

  std::map<std::vector<int>, int> line_index;
  std::vector<std::vector<int>> lines;
  for (auto [u, v] : g.edges()) {
    auto line = detail::line_through_edge(g, u, v);
    if (static_cast<int>(line.size()) != n)
      throw not_latin_square_graph("line of the wrong size");
    if (line_index.emplace(line, lines.size()).second)
      lines.push_back(std::move(line));
  }
  if (static_cast<int>(lines.size()) != 3 * n)
    throw not_latin_square_graph("expected 3n lines");

  // lines of the same class are exactly the pairwise disjoint ones
  DisjointSet classes(static_cast<int>(lines.size()));
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      std::vector<int> overlap;
      std::set_intersection(lines[i].begin(), lines[i].end(),
                            lines[j].begin(), lines[j].end(),
                            std::back_inserter(overlap));
      if (overlap.empty())
        classes.unite(static_cast<int>(i), static_cast<int>(j));
    }
  std::map<int, std::vector<int>> grouped;
  for (std::size_t i = 0; i < lines.size(); ++i)
    grouped[classes.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  if (grouped.size() != 3)
    throw not_latin_square_graph("expected three parallel classes");

  std::vector<Partition> parts;
  std::vector<std::vector<int>> zero_lines;
  for (const auto& [root, ids] : grouped) {
    std::vector<std::vector<int>> blocks;
    for (int id : ids) blocks.push_back(lines[id]);
    try {
      parts.push_back(Partition::from_blocks(vertices, blocks));
    } catch (const parse_error&) {
      throw not_latin_square_graph("a parallel class does not partition the cells");
    }
    for (int id : ids)
      if (lines[id][0] == 0) zero_lines.push_back(lines[id]);
  }
  std::vector<int> order{0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return zero_lines[a] < zero_lines[b]; });
  Partition rows = parts[order[0]];
  Partition cols = parts[order[1]];
  Partition lets = parts[order[2]];

  std::vector<int> table(static_cast<std::size_t>(n) * n, -1);
  for (int v = 0; v < vertices; ++v) {
    int& slot = table[rows.part_of(v) * n + cols.part_of(v)];
    if (slot != -1)
      throw not_latin_square_graph("two cells share a row and a column");
    slot = lets.part_of(v);
  }
  LatinSquare square = [&] {
    try {
      return LatinSquare::from_indices(n, std::move(table));
    } catch (const not_latin&) {
      throw not_latin_square_graph("recovered letters are not Latin");
    }
  }();

  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v) {
      bool related = rows.same_part(u, v) || cols.same_part(u, v) ||
                     lets.same_part(u, v);
      if (related != g.adjacent(u, v))
        throw not_latin_square_graph("graph differs from the recovered square");
    }

  return SquareRecovery{std::move(square), std::move(rows), std::move(cols),
                        std::move(lets)};
}

// A cube of side n on the cell set {0, ..., n^3-1}: the cell with
// coordinates (a, b, c) has index a + n*b + n^2*c. Any letter assignment is
// accepted; the sort classification below sorts out which kind of Latin
// cube it is. Letter ids are canonical: first appearance in cell order.
class LatinCube {
 public:
  static LatinCube from_letters(int n, const std::vector<int>& letters,
                                const std::vector<std::string>& symbols = {}) {
    if (n <= 0) throw parse_error("cube: order must be positive");
    if (static_cast<int>(letters.size()) != n * n * n)
      throw parse_error("cube: expected n^3 letters");
    std::unordered_map<int, int> renumber;
    std::vector<int> canonical(letters.size());
    std::vector<std::string> names;
    for (std::size_t x = 0; x < letters.size(); ++x) {
      int raw = letters[x];
      if (raw < 0) throw parse_error("cube: letters must be non-negative");
      auto [it, fresh] = renumber.emplace(raw, static_cast<int>(names.size()));
      if (fresh)
        names.push_back(symbols.empty() ? std::to_string(raw)
                                        : symbols.at(raw));
      canonical[x] = it->second;
    }
    return LatinCube(n, std::move(canonical), std::move(names));
  }

  // Text format: first line n, then n blocks of n lines of n tokens; block
  // c holds the cells with third coordinate c, its line a lists the letters
  // of (a, 0, c), ..., (a, n-1, c).
  static LatinCube read(std::istream& in) {
    int n;
    if (!(in >> n) || n <= 0) throw parse_error("cube: bad order");
    MixedRadixCodec codec({n, n, n});
    std::vector<int> letters(codec.size());
    std::unordered_map<std::string, int> index;
    std::vector<std::string> names;
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          std::string tok;
          if (!(in >> tok)) throw parse_error("cube: too few entries");
          auto [it, fresh] = index.emplace(tok, static_cast<int>(names.size()));
          if (fresh) names.push_back(tok);
          letters[codec.encode({a, b, c})] = it->second;
        }
    return from_letters(n, letters, names);
  }

  static LatinCube parse(const std::string& text) {
    std::istringstream in(text);
    return read(in);
  }

  void write(std::ostream& out) const {
    out << n_ << "\n";
    for (int c = 0; c < n_; ++c) {
      out << "\n";
      for (int a = 0; a < n_; ++a) {
        for (int b = 0; b < n_; ++b)
          out << symbols_[letter(a, b, c)] << (b + 1 == n_ ? "" : " ");
        out << "\n";
      }
    }
  }

  std::string to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
  }

  int order() const { return n_; }
  int cell_count() const { return static_cast<int>(letters_.size()); }
  int num_letters() const { return static_cast<int>(symbols_.size()); }
  int cell(int a, int b, int c) const { return a + n_ * b + n_ * n_ * c; }
  int letter_at(int cell) const { return letters_[cell]; }
  int letter(int a, int b, int c) const { return letters_[cell(a, b, c)]; }
  const std::string& symbol(int letter) const { return symbols_[letter]; }

  std::array<int, 3> coordinates(int cell) const {
    return {cell % n_, (cell / n_) % n_, cell / (n_ * n_)};
  }

  // P_dim: cells with equal coordinate dim (dims are 0, 1, 2)
  Partition coordinate_partition(int dim) const {
    std::vector<int> ids(letters_.size());
    for (std::size_t x = 0; x < letters_.size(); ++x)
      ids[x] = coordinates(static_cast<int>(x))[dim];
    return Partition(std::move(ids));
  }

  // P_da meet P_db: the lines along the remaining direction
  Partition line_partition(int dim_a, int dim_b) const {
    std::vector<int> ids(letters_.size());
    for (std::size_t x = 0; x < letters_.size(); ++x) {
      auto co = coordinates(static_cast<int>(x));
      ids[x] = co[dim_a] + n_ * co[dim_b];
    }
    return Partition(std::move(ids));
  }

  Partition letter_partition() const { return Partition(letters_); }

  // L v (P_da meet P_db)
  Partition line_join(int dim_a, int dim_b) const {
    return letter_partition().join(line_partition(dim_a, dim_b));
  }

  bool operator==(const LatinCube& other) const {
    return n_ == other.n_ && letters_ == other.letters_;
  }
  bool operator!=(const LatinCube& other) const { return !(*this == other); }

 private:
  LatinCube(int n, std::vector<int> letters, std::vector<std::string> symbols)
      : n_(n), letters_(std::move(letters)), symbols_(std::move(symbols)) {}

  int n_;
  std::vector<int> letters_;
  std::vector<std::string> symbols_;
};

// The new cube's letter at (p1(a), p2(b), p3(c)) is letter_perm applied to
// the old letter at (a, b, c).
inline LatinCube relabel_cube(const LatinCube& cube, const std::vector<int>& p1,
                              const std::vector<int>& p2,
                              const std::vector<int>& p3,
                              const std::vector<int>& letter_perm) {
  int n = cube.order();
  auto check_perm = [](const std::vector<int>& p, int size) {
    if (static_cast<int>(p.size()) != size)
      throw parse_error("relabelling has the wrong size");
    std::vector<char> used(size, 0);
    for (int v : p) {
      if (v < 0 || v >= size || used[v])
        throw parse_error("relabelling is not a permutation");
      used[v] = 1;
    }
  };
  check_perm(p1, n);
  check_perm(p2, n);
  check_perm(p3, n);
  check_perm(letter_perm, cube.num_letters());
  std::vector<int> letters(cube.cell_count());
  std::vector<std::string> symbols(cube.num_letters());
  for (int x = 0; x < cube.num_letters(); ++x)
    symbols[letter_perm[x]] = cube.symbol(x);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        letters[cube.cell(p1[a], p2[b], p3[c])] =
            letter_perm[cube.letter(a, b, c)];
  return LatinCube::from_letters(n, letters, symbols);
}

enum class CubeSort { LC0, LC1, LC2, none };

inline const char* to_string(CubeSort sort) {
  switch (sort) {
    case CubeSort::LC0: return "LC0";
    case CubeSort::LC1: return "LC1";
    case CubeSort::LC2: return "LC2";
    default: return "none";
  }
}

namespace detail {

// letters once per line, in every direction
inline bool cube_is_lc0(const LatinCube& cube) {
  int n = cube.order();
  if (cube.num_letters() != n) return false;
  for (int dir = 0; dir < 3; ++dir) {
    int da = dir == 0 ? 1 : 0, db = dir == 2 ? 1 : 2;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        std::vector<char> seen(n, 0);
        for (int w = 0; w < n; ++w) {
          std::array<int, 3> co;
          co[dir] = w;
          co[da] = u;
          co[db] = v;
          int letter = cube.letter(co[0], co[1], co[2]);
          if (seen[letter]) return false;
          seen[letter] = 1;
        }
      }
  }
  return true;
}

// per-layer letter counts must all equal the given target
inline bool cube_layers_hit(const LatinCube& cube, int target) {
  int n = cube.order();
  for (int dim = 0; dim < 3; ++dim)
    for (int v = 0; v < n; ++v) {
      std::vector<int> count(cube.num_letters(), 0);
      for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
          std::array<int, 3> co;
          co[dim] = v;
          co[(dim + 1) % 3] = u;
          co[(dim + 2) % 3] = w;
          ++count[cube.letter(co[0], co[1], co[2])];
        }
      for (int x : count)
        if (x != target) return false;
    }
  return true;
}

}  // namespace detail

inline CubeSort classify_sort(const LatinCube& cube) {
  int n = cube.order();
  if (cube.num_letters() == n) {
    if (detail::cube_is_lc0(cube)) return CubeSort::LC0;
    if (detail::cube_layers_hit(cube, n)) return CubeSort::LC1;
  }
  if (cube.num_letters() == n * n && detail::cube_layers_hit(cube, 1))
    return CubeSort::LC2;
  return CubeSort::none;
}

struct IrregularityWitness {
  int dim_a, dim_b;    // direction pair of the two lines
  int cell_a, cell_b;  // base cells (third coordinate zero)
  std::vector<int> letters_a, letters_b;  // sorted, neither equal nor disjoint
};

namespace detail {

inline std::vector<IrregularityWitness> collect_irregular(
    const LatinCube& cube, int dim_a, int dim_b, std::size_t max_count) {
  int n = cube.order();
  int dir = 3 - dim_a - dim_b;  // the direction the lines run along
  std::vector<std::vector<int>> letter_sets;
  std::vector<int> base_cells;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      std::array<int, 3> co;
      co[dim_a] = u;
      co[dim_b] = v;
      co[dir] = 0;
      base_cells.push_back(cube.cell(co[0], co[1], co[2]));
      std::vector<int> set;
      for (int w = 0; w < n; ++w) {
        co[dir] = w;
        set.push_back(cube.letter(co[0], co[1], co[2]));
      }
      std::sort(set.begin(), set.end());
      letter_sets.push_back(std::move(set));
    }
  std::vector<IrregularityWitness> out;
  for (std::size_t i = 0; i < letter_sets.size() && out.size() < max_count; ++i)
    for (std::size_t j = i + 1; j < letter_sets.size() && out.size() < max_count;
         ++j) {
      if (letter_sets[i] == letter_sets[j]) continue;
      std::vector<int> shared;
      std::set_intersection(letter_sets[i].begin(), letter_sets[i].end(),
                            letter_sets[j].begin(), letter_sets[j].end(),
                            std::back_inserter(shared));
      if (shared.empty()) continue;
      out.push_back(IrregularityWitness{dim_a, dim_b, base_cells[i],
                                        base_cells[j], letter_sets[i],
                                        letter_sets[j]});
    }
  return out;
}

inline std::optional<IrregularityWitness> pair_irregularity(
    const LatinCube& cube, int dim_a, int dim_b) {
  auto found = collect_irregular(cube, dim_a, dim_b, 1);
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace detail

// All offending line pairs for one direction pair, in line order.
inline std::vector<IrregularityWitness> irregular_line_pairs(
    const LatinCube& cube, int dim_a, int dim_b) {
  if (classify_sort(cube) != CubeSort::LC2)
    throw wrong_sort("regularity is defined for cubes of sort LC2");
  return detail::collect_irregular(cube, dim_a, dim_b,
                                   std::numeric_limits<std::size_t>::max());
}

// Lines here are the parts of P_dim_a meet P_dim_b. Defined for sort LC2.
inline std::optional<IrregularityWitness> irregularity_witness(
    const LatinCube& cube, int dim_a, int dim_b) {
  if (classify_sort(cube) != CubeSort::LC2)
    throw wrong_sort("regularity is defined for cubes of sort LC2");
  return detail::pair_irregularity(cube, dim_a, dim_b);
}

inline std::optional<IrregularityWitness> irregularity_witness(
    const LatinCube& cube) {
  if (classify_sort(cube) != CubeSort::LC2)
    throw wrong_sort("regularity is defined for cubes of sort LC2");
  for (auto [da, db] : {std::pair{0, 1}, {0, 2}, {1, 2}})
    if (auto w = detail::pair_irregularity(cube, da, db)) return w;
  return std::nullopt;
}

inline bool is_pair_regular(const LatinCube& cube, int dim_a, int dim_b) {
  return !irregularity_witness(cube, dim_a, dim_b).has_value();
}

inline bool is_regular(const LatinCube& cube) {
  return !irregularity_witness(cube).has_value();
}

// The letter of (t1, t2, t3) is the pair (t1^-1 t2, t1^-1 t3); the result
// is a regular cube of sort LC2.
inline LatinCube cube_from_group(const Group& t) {
  int n = t.order();
  std::vector<int> letters(static_cast<std::size_t>(n) * n * n);
  std::vector<std::string> symbols(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      symbols[x + n * y] =
          "(" + t.table().symbol(x) + "," + t.table().symbol(y) + ")";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int x = t.op(t.inv(a), b);
        int y = t.op(t.inv(a), c);
        letters[a + n * b + n * n * c] = x + n * y;
      }
  return LatinCube::from_letters(n, letters, symbols);
}

// The letter of (a, b, c) is the pair (q(a, b), r(a, c)): always a cube of
// sort LC2, and regular exactly when both squares linearise over one group.
inline LatinCube cube_from_squares(const LatinSquare& q, const LatinSquare& r) {
  int n = q.order();
  if (r.order() != n)
    throw ground_mismatch("the two squares have different orders");
  std::vector<int> letters(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        letters[a + n * b + n * n * c] = q.at(a, b) + n * r.at(a, c);
  return LatinCube::from_letters(n, letters);
}

// Everything needed to check the reconstruction by hand: the group, the
// three coordinate labellings, and the alignment of the three join tables.
struct ReconstructionCertificate {
  Group group;
  std::vector<int> lambda1, lambda2, lambda3;  // coordinates -> group elements
  // letter id -> (lambda1(a)^-1 lambda2(b), lambda1(a)^-1 lambda3(c))
  std::vector<std::pair<int, int>> letter_pair;
  CayleyTable f12;      // join part of the line (a, b, .): row a, column b
  CayleyTable f13;      // join part of the line (a, ., c): row c, column a
  CayleyTable f23;      // join part of the line (., b, c): row b, column c
  std::vector<int> mu12, mu13;  // join labels -> group elements
  std::vector<int> sigma;       // c -> the f13 label at column a = 0
};

// Rebuilds the group from a regular cube of sort LC2: the letters must be,
// up to relabelling, the pairs (t1^-1 t2, t1^-1 t3) over a group. Throws
// wrong_sort or not_regular when the hypotheses fail outright, and
// hypothesis_failed when the join tables cannot be aligned over any group.
inline ReconstructionCertificate group_from_regular_cube(const LatinCube& cube) {
  int n = cube.order();
  if (classify_sort(cube) != CubeSort::LC2)
    throw wrong_sort("reconstruction needs a cube of sort LC2");
  if (auto w = irregularity_witness(cube))
    throw not_regular("cube is not regular: lines through cells " +
                      std::to_string(w->cell_a) + " and " +
                      std::to_string(w->cell_b) + " have overlapping letters");

  Partition letters = cube.letter_partition();
  Partition j12 = letters.join(cube.line_partition(0, 1));
  Partition j13 = letters.join(cube.line_partition(0, 2));
  Partition j23 = letters.join(cube.line_partition(1, 2));
  for (const Partition* j : {&j12, &j13, &j23})
    if (j->num_parts() != n)
      throw hypothesis_failed("a letter/line join does not have n parts");

  auto to_table = [&](const Partition& join, auto&& cell_of) {
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col)
        table[r * n + col] = join.part_of(cell_of(r, col));
    try {
      return CayleyTable::from_indices(n, std::move(table));
    } catch (const not_latin&) {
      throw hypothesis_failed("a letter/line join table is not Latin");
    }
  };
  CayleyTable f12 =
      to_table(j12, [&](int a, int b) { return cube.cell(a, b, 0); });
  CayleyTable f13 =
      to_table(j13, [&](int c, int a) { return cube.cell(a, 0, c); });
  CayleyTable f23 =
      to_table(j23, [&](int b, int c) { return cube.cell(0, b, c); });

  Group group = [&] {
    try {
      return group_from_quasigroup(f23);
    } catch (const not_group_isotopic&) {
      throw hypothesis_failed("the (2,3) join table is not isotopic to a group");
    }
  }();

  // f23(b, c) = alpha(b) * beta(c) in the group, so lambda2 = inv(alpha)
  // and lambda3 = beta give f23(b, c) = lambda2(b)^-1 lambda3(c)
  std::vector<int> lambda2(n), lambda3(n);
  for (int b = 0; b < n; ++b) lambda2[b] = group.inv(f23.at(b, 0));
  for (int c = 0; c < n; ++c) lambda3[c] = f23.at(0, c);

  // align the (1,2) labels so that circ(0, b) = lambda2(b)
  std::vector<int> mu12(n);
  for (int b = 0; b < n; ++b) mu12[f12.at(0, b)] = lambda2[b];
  auto circ = [&](int a, int b) { return mu12[f12.at(a, b)]; };

  // align the (1,3) labels so that star(c, 0) = lambda3(c)
  std::vector<int> sigma(n), mu13(n);
  for (int c = 0; c < n; ++c) {
    sigma[c] = f13.at(c, 0);
    mu13[sigma[c]] = lambda3[c];
  }
  auto star = [&](int c, int a) { return mu13[f13.at(c, a)]; };

  // the key identity: f23(b, c) = circ(a, b)^-1 star(c, a) for every a
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (f23.at(b, c) != group.op(group.inv(circ(a, b)), star(c, a)))
          throw hypothesis_failed("join tables do not cohere over the group");

  int b_id = -1;
  for (int b = 0; b < n; ++b)
    if (lambda2[b] == group.identity()) b_id = b;
  std::vector<int> lambda1(n);
  for (int a = 0; a < n; ++a) lambda1[a] = group.inv(circ(a, b_id));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (circ(a, b) != group.op(group.inv(lambda1[a]), lambda2[b]))
        throw hypothesis_failed("row labelling does not linearise the (1,2) table");
  for (int c = 0; c < n; ++c)
    for (int a = 0; a < n; ++a)
      if (star(c, a) != group.op(group.inv(lambda1[a]), lambda3[c]))
        throw hypothesis_failed("row labelling does not linearise the (1,3) table");

  // the letters must be exactly the fibres of the pair map
  std::vector<int> fiber(cube.cell_count());
  std::vector<std::pair<int, int>> letter_pair(cube.num_letters(), {-1, -1});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int x = group.op(group.inv(lambda1[a]), lambda2[b]);
        int y = group.op(group.inv(lambda1[a]), lambda3[c]);
        int cell = cube.cell(a, b, c);
        fiber[cell] = x + n * y;
        letter_pair[cube.letter_at(cell)] = {x, y};
      }
  if (Partition(fiber) != cube.letter_partition())
    throw hypothesis_failed("letters are not the fibres of the group pair map");

  return ReconstructionCertificate{std::move(group),
                                   std::move(lambda1),
                                   std::move(lambda2),
                                   std::move(lambda3),
                                   std::move(letter_pair),
                                   std::move(f12),
                                   std::move(f13),
                                   std::move(f23),
                                   std::move(mu12),
                                   std::move(mu13),
                                   std::move(sigma)};
}

}  // namespace diaglat
