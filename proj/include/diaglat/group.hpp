#pragma once
// Finite quasigroups and groups presented by multiplication tables.
// Covers table validation, the quadrangle criterion, normalization of a
// group-isotopic table to a group, isomorphism and automorphism search,
// subgroup and coset machinery, complete mappings and the parity/Sylow
// predicate governing their existence.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diaglat/errors.hpp"
#include "diaglat/partition.hpp"

namespace diaglat {

// An n x n table over element indices in which every row and every column is
// a permutation: the multiplication table of a quasigroup. Tokens are kept
// for I/O; all computation uses indices.
class CayleyTable {
 public:
  static CayleyTable from_indices(int n, std::vector<int> table,
                                  std::vector<std::string> symbols = {}) {
    if (symbols.empty())
      for (int i = 0; i < n; ++i) symbols.push_back(std::to_string(i));
    return CayleyTable(n, std::move(table), std::move(symbols));
  }

  // Tokens are assigned indices by first appearance, reading row-major.
  static CayleyTable from_tokens(const std::vector<std::vector<std::string>>& raw) {
    int n = static_cast<int>(raw.size());
    std::unordered_map<std::string, int> index;
    std::vector<std::string> symbols;
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& row : raw) {
      if (static_cast<int>(row.size()) != n)
        throw parse_error("table is not square");
      for (const auto& tok : row) {
        auto it = index.find(tok);
        if (it == index.end()) {
          if (static_cast<int>(symbols.size()) == n)
            throw not_latin("more than n distinct tokens in the table");
          it = index.emplace(tok, static_cast<int>(symbols.size())).first;
          symbols.push_back(tok);
        }
        table.push_back(it->second);
      }
    }
    return CayleyTable(n, std::move(table), std::move(symbols));
  }

  int order() const { return n_; }
  int at(int row, int col) const { return table_[row * n_ + col]; }
  const std::string& symbol(int i) const { return symbols_[i]; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::vector<int>& raw() const { return table_; }

  // Unique solutions of a*x = b and y*a = b.
  int solve_right(int a, int b) const { return right_[a * n_ + b]; }
  int solve_left(int a, int b) const { return left_[a * n_ + b]; }

  // Text format: first line n, then n rows of n whitespace-separated tokens.
  static CayleyTable read(std::istream& in) {
    int n;
    if (!(in >> n) || n <= 0) throw parse_error("table: bad order");
    std::vector<std::vector<std::string>> raw(n, std::vector<std::string>(n));
    for (auto& row : raw)
      for (auto& tok : row)
        if (!(in >> tok)) throw parse_error("table: too few entries");
    return from_tokens(raw);
  }

  static CayleyTable parse(const std::string& text) {
    std::istringstream in(text);
    return read(in);
  }

  void write(std::ostream& out) const {
    out << n_ << "\n";
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j)
        out << symbols_[at(i, j)] << (j + 1 == n_ ? "" : " ");
      out << "\n";
    }
  }

  std::string to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
  }

  bool operator==(const CayleyTable& other) const {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  CayleyTable(int n, std::vector<int> table, std::vector<std::string> symbols)
      : n_(n), table_(std::move(table)), symbols_(std::move(symbols)) {
    if (static_cast<int>(table_.size()) != n_ * n_)
      throw parse_error("table size mismatch");
    if (static_cast<int>(symbols_.size()) != n_)
      throw parse_error("symbol count mismatch");
    for (int v : table_)
      if (v < 0 || v >= n_) throw parse_error("table entry out of range");
    right_.assign(static_cast<std::size_t>(n_) * n_, -1);
    left_.assign(static_cast<std::size_t>(n_) * n_, -1);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        int v = at(i, j);
        if (right_[i * n_ + v] != -1)
          throw not_latin("row " + std::to_string(i) + " repeats token " +
                          symbols_[v]);
        right_[i * n_ + v] = j;
        if (left_[j * n_ + v] != -1)
          throw not_latin("column " + std::to_string(j) + " repeats token " +
                          symbols_[v]);
        left_[j * n_ + v] = i;
      }
    }
  }

  int n_;
  std::vector<int> table_;
  std::vector<std::string> symbols_;
  std::vector<int> right_;  // right_[a*n+b] = x with a*x = b
  std::vector<int> left_;   // left_[a*n+b] = y with y*a = b
};

inline CayleyTable validate_quasigroup(
    const std::vector<std::vector<std::string>>& raw) {
  return CayleyTable::from_tokens(raw);
}

// Row, column and letter relabellings applied together.
inline CayleyTable apply_isotopy(const CayleyTable& t,
                                 const std::vector<int>& row_perm,
                                 const std::vector<int>& col_perm,
                                 const std::vector<int>& letter_perm) {
  int n = t.order();
  std::vector<int> out(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[row_perm[i] * n + col_perm[j]] = letter_perm[t.at(i, j)];
  return CayleyTable::from_indices(n, std::move(out));
}

struct QuadrangleWitness {
  // Rows i1, i2, i1p, i2p and columns j1, j2, j1p, j2p with the first three
  // letter equalities holding and the fourth failing.
  int i1, i2, i1p, i2p, j1, j2, j1p, j2p;
};

// Searches for rows/columns violating the four-cell closure condition:
// whenever t[i1][j1] = t[i1'][j1'], t[i1][j2] = t[i1'][j2'] and
// t[i2][j1] = t[i2'][j1'], the letters t[i2][j2] and t[i2'][j2'] must agree.
// Row and column uniqueness pin j1', j2', i2' once i1, j1, i1', j2, i2 are
// chosen, so the scan is quintic in the order.
inline std::optional<QuadrangleWitness> quadrangle_counterexample(
    const CayleyTable& t) {
  int n = t.order();
  for (int i1 = 0; i1 < n; ++i1)
    for (int j1 = 0; j1 < n; ++j1) {
      int a1 = t.at(i1, j1);
      for (int i1p = 0; i1p < n; ++i1p) {
        int j1p = t.solve_right(i1p, a1);
        for (int j2 = 0; j2 < n; ++j2) {
          int j2p = t.solve_right(i1p, t.at(i1, j2));
          for (int i2 = 0; i2 < n; ++i2) {
            int i2p = t.solve_left(j1p, t.at(i2, j1));
            if (t.at(i2, j2) != t.at(i2p, j2p))
              return QuadrangleWitness{i1, i2, i1p, i2p, j1, j2, j1p, j2p};
          }
        }
      }
    }
  return std::nullopt;
}

inline bool quadrangle_criterion(const CayleyTable& t) {
  return !quadrangle_counterexample(t).has_value();
}

// A group: a quasigroup table that is associative. Identity and inverses
// follow from associativity plus the Latin property, so validation only has
// to check associativity.
class Group {
 public:
  static Group from_table(CayleyTable t) {
    int n = t.order();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (t.at(t.at(a, b), c) != t.at(a, t.at(b, c)))
            throw not_associative("(" + t.symbol(a) + " " + t.symbol(b) +
                                  ") " + t.symbol(c) + " differs from " +
                                  t.symbol(a) + " (" + t.symbol(b) + " " +
                                  t.symbol(c) + ")");
    return Group(std::move(t));
  }

  static Group read(std::istream& in) { return from_table(CayleyTable::read(in)); }

  static Group parse(const std::string& text) {
    std::istringstream in(text);
    return read(in);
  }

  static Group cyclic(int n) {
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) table[i * n + j] = (i + j) % n;
    return Group(CayleyTable::from_indices(n, std::move(table)));
  }

  // Pairs (a, b) with a varying fastest: index = a + |A| * b.
  static Group direct_product(const Group& a, const Group& b) {
    int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    std::vector<std::string> ordered(n);
    for (int y = 0; y < nb; ++y)
      for (int x = 0; x < na; ++x)
        ordered[x + na * y] = "(" + a.table().symbol(x) + "," +
                              b.table().symbol(y) + ")";
    for (int x1 = 0; x1 < na; ++x1)
      for (int y1 = 0; y1 < nb; ++y1)
        for (int x2 = 0; x2 < na; ++x2)
          for (int y2 = 0; y2 < nb; ++y2)
            table[(x1 + na * y1) * n + (x2 + na * y2)] =
                a.op(x1, x2) + na * b.op(y1, y2);
    return Group(CayleyTable::from_indices(n, std::move(table),
                                           std::move(ordered)));
  }

  // All k! permutations of {0..k-1} in lexicographic one-line order,
  // composed left-to-right (apply the first, then the second).
  static Group symmetric(int k) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(k);
    for (int i = 0; i < k; ++i) p[i] = i;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = static_cast<int>(perms.size());
    if (n > 720) throw size_limit_exceeded("symmetric group capped at k=6");
    auto find = [&](const std::vector<int>& q) {
      return static_cast<int>(
          std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<int> table(static_cast<std::size_t>(n) * n);
    std::vector<std::string> symbols(n);
    for (int i = 0; i < n; ++i) {
      std::string name;
      for (int x : perms[i]) name += std::to_string(x);
      symbols[i] = name;
      for (int j = 0; j < n; ++j) {
        std::vector<int> comp(k);
        for (int x = 0; x < k; ++x) comp[x] = perms[j][perms[i][x]];
        table[i * n + j] = find(comp);
      }
    }
    return Group(CayleyTable::from_indices(n, std::move(table),
                                           std::move(symbols)));
  }

  static Group symmetric3() {
    Group s3 = symmetric(3);
    std::vector<std::string> symbols = {"e",     "(12)",  "(01)",
                                        "(012)", "(021)", "(02)"};
    return Group(CayleyTable::from_indices(6, s3.table().raw(),
                                           std::move(symbols)));
  }

  // Units {1, -1, i, -i, j, -j, k, -k} with index 2u + s, s = 1 for the
  // negative of unit u.
  static Group quaternion8() {
    auto mul_units = [](int u, int v, int& sign) {
      // units 0=1, 1=i, 2=j, 3=k
      static const int prod[4][4] = {
          {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
      static const int sgn[4][4] = {
          {+1, +1, +1, +1}, {+1, -1, +1, -1}, {+1, -1, -1, +1}, {+1, +1, -1, -1}};
      sign = sgn[u][v];
      return prod[u][v];
    };
    int n = 8;
    std::vector<int> table(64);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int ua = a / 2, sa = a % 2, ub = b / 2, sb = b % 2;
        int sign;
        int u = mul_units(ua, ub, sign);
        int s = (sa ^ sb) ^ (sign < 0 ? 1 : 0);
        table[a * n + b] = 2 * u + s;
      }
    std::vector<std::string> symbols = {"1", "-1", "i", "-i",
                                        "j", "-j", "k", "-k"};
    return Group(CayleyTable::from_indices(n, std::move(table),
                                           std::move(symbols)));
  }

  // Order 2n: rotations r^a then reflections r^a s, index a + n*b.
  static Group dihedral(int n) {
    int order = 2 * n;
    std::vector<int> table(static_cast<std::size_t>(order) * order);
    std::vector<std::string> symbols;
    for (int b = 0; b < 2; ++b)
      for (int a = 0; a < n; ++a)
        symbols.push_back((b ? "r" + std::to_string(a) + "s"
                             : "r" + std::to_string(a)));
    for (int a1 = 0; a1 < n; ++a1)
      for (int b1 = 0; b1 < 2; ++b1)
        for (int a2 = 0; a2 < n; ++a2)
          for (int b2 = 0; b2 < 2; ++b2) {
            int a = b1 ? (a1 - a2 + n) % n : (a1 + a2) % n;
            int b = b1 ^ b2;
            table[(a1 + n * b1) * order + (a2 + n * b2)] = a + n * b;
          }
    return Group(CayleyTable::from_indices(order, std::move(table),
                                           std::move(symbols)));
  }

  const CayleyTable& table() const { return table_; }
  int order() const { return table_.order(); }
  int op(int a, int b) const { return table_.at(a, b); }
  int identity() const { return identity_; }
  int inv(int a) const { return inverse_[a]; }

  int element_order(int a) const {
    int x = a, k = 1;
    while (x != identity_) {
      x = op(x, a);
      ++k;
    }
    return k;
  }

  bool is_abelian() const {
    for (int a = 0; a < order(); ++a)
      for (int b = a + 1; b < order(); ++b)
        if (op(a, b) != op(b, a)) return false;
    return true;
  }

  // Returns p if every non-identity element has order p for a single prime
  // p and the group is abelian.
  std::optional<int> elementary_abelian_prime() const {
    if (order() == 1 || !is_abelian()) return std::nullopt;
    int p = element_order(identity_ == 0 ? 1 : 0);
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) return std::nullopt;
    for (int a = 0; a < order(); ++a)
      if (a != identity_ && element_order(a) != p) return std::nullopt;
    return p;
  }

  std::vector<int> closure(std::vector<int> seed) const {
    std::vector<char> in(order(), 0);
    std::vector<int> elems;
    auto add = [&](int x) {
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    };
    add(identity_);
    for (int x : seed) add(x);
    // products in both orders so pairs stay covered as the list grows
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        add(op(elems[i], elems[j]));
        add(op(elems[j], elems[i]));
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  // Greedy generating sequence: repeatedly adjoin the smallest element
  // outside the current closure.
  std::vector<int> generating_sequence() const {
    std::vector<int> gens;
    std::vector<int> span = closure({});
    while (static_cast<int>(span.size()) < order()) {
      int next = 0;
      while (std::binary_search(span.begin(), span.end(), next)) ++next;
      gens.push_back(next);
      span = closure(gens);
    }
    return gens;
  }

 private:
  explicit Group(CayleyTable t) : table_(std::move(t)) {
    int n = table_.order();
    // e with e*a = a for one a is two-sided by associativity.
    identity_ = table_.solve_left(0, 0);
    for (int x = 0; x < n; ++x)
      if (table_.at(identity_, x) != x || table_.at(x, identity_) != x)
        throw not_associative("derived identity is not two-sided");
    inverse_.resize(n);
    for (int x = 0; x < n; ++x) inverse_[x] = table_.solve_right(x, identity_);
  }

  CayleyTable table_;
  int identity_;
  std::vector<int> inverse_;
};

// Principal loop isotope at cell (0,0): relabel rows by the letters of
// column 0 and columns by the letters of row 0. The result has two-sided
// identity t[0][0]; if the quadrangle criterion holds it is associative and
// hence a group isotopic to the input.
inline Group group_from_quasigroup(const CayleyTable& t) {
  if (auto witness = quadrangle_counterexample(t)) {
    const auto& w = *witness;
    int arr[8] = {w.i1, w.i2, w.i1p, w.i2p, w.j1, w.j2, w.j1p, w.j2p};
    throw not_group_isotopic("table fails the quadrangle criterion", arr);
  }
  int n = t.order();
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    int row = t.solve_left(0, x);  // t[row][0] = x
    for (int y = 0; y < n; ++y) {
      int col = t.solve_right(0, y);  // t[0][col] = y
      table[x * n + y] = t.at(row, col);
    }
  }
  CayleyTable loop =
      CayleyTable::from_indices(n, std::move(table), t.symbols());
  // from_table re-checks associativity; failure here would contradict the
  // quadrangle criterion and is a genuine internal error.
  return Group::from_table(std::move(loop));
}

namespace detail {

// Extends the partial map src -> dst by image[g] = h and propagates
// homomorphism constraints over all currently mapped elements. Returns
// false on any conflict (the map is left dirty; callers work on copies).
inline bool extend_homomorphism(const Group& src, const Group& dst,
                                std::vector<int>& image,
                                std::vector<char>& used, int g, int h) {
  if (image[g] != -1) return image[g] == h;
  if (used[h]) return false;
  std::vector<int> known;
  for (int x = 0; x < src.order(); ++x)
    if (image[x] != -1) known.push_back(x);
  std::vector<int> queue{g};
  image[g] = h;
  used[h] = 1;
  known.push_back(g);
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (std::size_t i = 0; i < known.size(); ++i) {
      int y = known[i];
      for (auto [a, b] : {std::pair{x, y}, std::pair{y, x}}) {
        int c = src.op(a, b);
        int hc = dst.op(image[a], image[b]);
        if (image[c] == -1) {
          if (used[hc]) return false;
          image[c] = hc;
          used[hc] = 1;
          known.push_back(c);
          queue.push_back(c);
        } else if (image[c] != hc) {
          return false;
        }
      }
    }
  }
  return true;
}

inline void isomorphism_search(const Group& src, const Group& dst,
                               const std::vector<int>& gens, std::size_t depth,
                               std::vector<int>& image,
                               std::vector<char>& used,
                               std::vector<std::vector<int>>& out,
                               bool first_only) {
  if (first_only && !out.empty()) return;
  if (depth == gens.size()) {
    for (int x = 0; x < src.order(); ++x)
      if (image[x] == -1) return;  // gens should span; defensive
    out.push_back(image);
    return;
  }
  int g = gens[depth];
  int g_order = src.element_order(g);
  for (int h = 0; h < dst.order(); ++h) {
    if (used[h] || dst.element_order(h) != g_order) continue;
    std::vector<int> image_copy = image;
    std::vector<char> used_copy = used;
    if (extend_homomorphism(src, dst, image_copy, used_copy, g, h))
      isomorphism_search(src, dst, gens, depth + 1, image_copy, used_copy, out,
                         first_only);
    if (first_only && !out.empty()) return;
  }
}

inline std::vector<std::vector<int>> isomorphisms(const Group& src,
                                                  const Group& dst,
                                                  bool first_only) {
  std::vector<std::vector<int>> out;
  if (src.order() != dst.order()) return out;
  std::vector<int> image(src.order(), -1);
  std::vector<char> used(dst.order(), 0);
  image[src.identity()] = dst.identity();
  used[dst.identity()] = 1;
  std::vector<int> gens = src.generating_sequence();
  if (gens.empty()) {
    out.push_back(image);  // both trivial
    return out;
  }
  isomorphism_search(src, dst, gens, 0, image, used, out, first_only);
  return out;
}

}  // namespace detail

// Bijective homomorphism as an index map, if one exists.
inline std::optional<std::vector<int>> are_isomorphic(const Group& g,
                                                      const Group& h) {
  auto found = detail::isomorphisms(g, h, /*first_only=*/true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

inline std::vector<std::vector<int>> automorphisms(const Group& g) {
  if (g.order() > 60)
    throw size_limit_exceeded("automorphism search capped at order 60");
  return detail::isomorphisms(g, g, /*first_only=*/false);
}

// All subgroups as sorted element lists, by closing each reachable subgroup
// under one extra generator until nothing new appears.
inline std::vector<std::vector<int>> all_subgroups(const Group& g) {
  int n = g.order();
  if (n > 60) throw size_limit_exceeded("subgroup enumeration capped at order 60");
  std::vector<std::vector<int>> found{g.closure({})};
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::vector<int> current = found[i];
    for (int x = 0; x < n; ++x) {
      if (std::binary_search(current.begin(), current.end(), x)) continue;
      std::vector<int> seed = current;
      seed.push_back(x);
      std::vector<int> bigger = g.closure(seed);
      if (std::find(found.begin(), found.end(), bigger) == found.end())
        found.push_back(bigger);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.size() != b.size() ? a.size() < b.size() : a < b;
            });
  return found;
}

// The subgroup as a group in its own right: elements reindexed by their
// position in the sorted element list, symbols carried over.
inline Group subgroup_group(const Group& g, const std::vector<int>& h) {
  int hn = static_cast<int>(h.size());
  std::vector<int> pos(g.order(), -1);
  for (int i = 0; i < hn; ++i) pos[h[i]] = i;
  std::vector<int> table(static_cast<std::size_t>(hn) * hn);
  std::vector<std::string> symbols;
  symbols.reserve(hn);
  for (int x : h) symbols.push_back(g.table().symbol(x));
  for (int i = 0; i < hn; ++i)
    for (int j = 0; j < hn; ++j) {
      int prod = g.op(h[i], h[j]);
      if (pos[prod] == -1)
        throw parse_error("element set is not closed under the product");
      table[i * hn + j] = pos[prod];
    }
  return Group::from_table(
      CayleyTable::from_indices(hn, std::move(table), std::move(symbols)));
}

// The unique subgroup of order 12 in the symmetric group on 4 points.
inline Group alternating4() {
  Group s4 = Group::symmetric(4);
  std::vector<int> evens{s4.identity()};
  for (int x = 0; x < 24; ++x)
    if (s4.element_order(x) == 3) evens.push_back(x);
  return subgroup_group(s4, s4.closure(evens));
}

// A subgroup is characteristic when every automorphism maps it onto itself.
inline bool is_characteristically_simple(const Group& g) {
  auto autos = automorphisms(g);
  for (const auto& h : all_subgroups(g)) {
    if (static_cast<int>(h.size()) == 1 ||
        static_cast<int>(h.size()) == g.order())
      continue;
    bool characteristic = true;
    for (const auto& phi : autos) {
      std::vector<int> image;
      image.reserve(h.size());
      for (int x : h) image.push_back(phi[x]);
      std::sort(image.begin(), image.end());
      if (image != h) {
        characteristic = false;
        break;
      }
    }
    if (characteristic) return false;
  }
  return true;
}

// Right cosets Hg: x and y share a part exactly when x * y^{-1} lies in H.
inline Partition coset_partition(const Group& g, const std::vector<int>& h) {
  int n = g.order();
  std::vector<char> in_h(n, 0);
  for (int x : h) in_h[x] = 1;
  std::vector<int> ids(n, -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    if (ids[x] != -1) continue;
    for (int y = x; y < n; ++y)
      if (ids[y] == -1 && in_h[g.op(x, g.inv(y))]) ids[y] = next;
    ++next;
  }
  return Partition(std::move(ids));
}

struct CosetLatticeReport {
  Partition p_h, p_k;
  Partition p_intersection;  // cosets of H ∩ K
  Partition p_generated;     // cosets of <H, K>
  bool meet_matches;         // meet(P_H, P_K) == P_{H∩K}
  bool join_matches;         // join(P_H, P_K) == P_{<H,K>}
};

inline CosetLatticeReport coset_lattice_check(const Group& g,
                                              const std::vector<int>& h,
                                              const std::vector<int>& k) {
  std::vector<int> intersection;
  std::set_intersection(h.begin(), h.end(), k.begin(), k.end(),
                        std::back_inserter(intersection));
  std::vector<int> both = h;
  both.insert(both.end(), k.begin(), k.end());
  std::vector<int> generated = g.closure(both);
  Partition p_h = coset_partition(g, h);
  Partition p_k = coset_partition(g, k);
  Partition p_int = coset_partition(g, intersection);
  Partition p_gen = coset_partition(g, generated);
  bool meet_ok = p_h.meet(p_k) == p_int;
  bool join_ok = p_h.join(p_k) == p_gen;
  return CosetLatticeReport{std::move(p_h),   std::move(p_k),
                            std::move(p_int), std::move(p_gen),
                            meet_ok,          join_ok};
}

namespace detail {

inline bool complete_mapping_search(const Group& g, int depth,
                                    std::vector<int>& phi,
                                    std::vector<char>& phi_used,
                                    std::vector<char>& psi_used,
                                    long long* count,
                                    std::vector<int>* witness) {
  int n = g.order();
  if (depth == n) {
    if (count) {
      ++*count;
      return false;  // keep searching
    }
    *witness = phi;
    return true;
  }
  for (int v = 0; v < n; ++v) {
    if (phi_used[v]) continue;
    int w = g.op(depth, v);
    if (psi_used[w]) continue;
    phi[depth] = v;
    phi_used[v] = 1;
    psi_used[w] = 1;
    if (complete_mapping_search(g, depth + 1, phi, phi_used, psi_used, count,
                                witness))
      return true;
    phi_used[v] = 0;
    psi_used[w] = 0;
  }
  return false;
}

}  // namespace detail

// First complete mapping in lexicographic order: a bijection phi for which
// x -> x * phi(x) is also a bijection.
inline std::optional<std::vector<int>> complete_mapping(const Group& g) {
  int n = g.order();
  std::vector<int> phi(n, -1), witness;
  std::vector<char> phi_used(n, 0), psi_used(n, 0);
  if (detail::complete_mapping_search(g, 0, phi, phi_used, psi_used, nullptr,
                                      &witness))
    return witness;
  return std::nullopt;
}

inline long long count_complete_mappings(const Group& g) {
  int n = g.order();
  std::vector<int> phi(n, -1);
  std::vector<char> phi_used(n, 0), psi_used(n, 0);
  long long count = 0;
  detail::complete_mapping_search(g, 0, phi, phi_used, psi_used, &count,
                                  nullptr);
  return count;
}

// True iff the order is odd or the Sylow 2-subgroups are non-cyclic. A
// Sylow 2-subgroup is cyclic exactly when some element's order equals the
// full 2-part of the group order.
inline bool hall_paige_predicate(const Group& g) {
  int n = g.order();
  if (n % 2 == 1) return true;
  int two_part = 1;
  while (n % 2 == 0) {
    n /= 2;
    two_part *= 2;
  }
  for (int x = 0; x < g.order(); ++x)
    if (g.element_order(x) == two_part) return false;
  return true;
}

}  // namespace diaglat
