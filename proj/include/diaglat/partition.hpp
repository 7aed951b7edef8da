#pragma once
// Partitions of a finite ground set {0, ..., n-1} with the refinement order,
// meet and join, uniformity, and the commuting/compatibility tests for the
// associated equivalence relations.

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "diaglat/errors.hpp"
#include "diaglat/util.hpp"

namespace diaglat {

class Partition {
 public:
  // Accepts any labelling; part ids are renumbered canonically so that the
  // first element of each part (in ground-set order) determines its id.
  explicit Partition(std::vector<int> part_of) : part_of_(std::move(part_of)) {
    canonicalize();
  }

  static Partition singletons(int n) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    return Partition(std::move(ids));
  }

  static Partition one_part(int n) { return Partition(std::vector<int>(n, 0)); }

  static Partition from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> ids(n, -1);
    int next = 0;
    for (const auto& block : blocks) {
      for (int x : block) {
        if (x < 0 || x >= n) throw parse_error("block element out of range");
        if (ids[x] != -1) throw parse_error("blocks overlap");
        ids[x] = next;
      }
      ++next;
    }
    for (int x = 0; x < n; ++x)
      if (ids[x] == -1) throw parse_error("blocks do not cover the ground set");
    return Partition(std::move(ids));
  }

  int ground_size() const { return static_cast<int>(part_of_.size()); }
  int num_parts() const { return num_parts_; }
  int part_of(int x) const { return part_of_[x]; }
  const std::vector<int>& labels() const { return part_of_; }

  std::vector<std::vector<int>> parts() const {
    std::vector<std::vector<int>> out(num_parts_);
    for (int x = 0; x < ground_size(); ++x) out[part_of_[x]].push_back(x);
    return out;
  }

  std::vector<int> part_sizes() const {
    std::vector<int> sizes(num_parts_, 0);
    for (int id : part_of_) ++sizes[id];
    return sizes;
  }

  bool same_part(int x, int y) const { return part_of_[x] == part_of_[y]; }

  bool is_singletons() const { return num_parts_ == ground_size(); }
  bool is_one_part() const { return num_parts_ <= 1; }

  // All parts the same size.
  bool is_uniform() const {
    auto sizes = part_sizes();
    return std::all_of(sizes.begin(), sizes.end(),
                       [&](int s) { return s == sizes[0]; });
  }

  // this ≼ other: every part of this lies inside a part of other.
  bool refines(const Partition& other) const {
    check_same_ground(other);
    std::vector<int> image(num_parts_, -1);
    for (int x = 0; x < ground_size(); ++x) {
      int& img = image[part_of_[x]];
      if (img == -1)
        img = other.part_of_[x];
      else if (img != other.part_of_[x])
        return false;
    }
    return true;
  }

  // Coarsest common refinement: parts are the non-empty pairwise
  // intersections.
  Partition meet(const Partition& other) const {
    check_same_ground(other);
    std::map<std::pair<int, int>, int> ids;
    std::vector<int> out(ground_size());
    for (int x = 0; x < ground_size(); ++x) {
      auto key = std::make_pair(part_of_[x], other.part_of_[x]);
      out[x] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
    }
    return Partition(std::move(out));
  }

  // Finest common coarsening: parts are the connected components of the
  // union of the two equivalence relations.
  Partition join(const Partition& other) const {
    check_same_ground(other);
    DisjointSet dsu(ground_size());
    std::vector<int> first_seen(std::max(num_parts_, other.num_parts_), -1);
    for (int x = 0; x < ground_size(); ++x) {
      int& f = first_seen[part_of_[x]];
      if (f == -1)
        f = x;
      else
        dsu.unite(f, x);
    }
    std::fill(first_seen.begin(), first_seen.end(), -1);
    for (int x = 0; x < ground_size(); ++x) {
      int& f = first_seen[other.part_of_[x]];
      if (f == -1)
        f = x;
      else
        dsu.unite(f, x);
    }
    std::vector<int> out(ground_size());
    for (int x = 0; x < ground_size(); ++x) out[x] = dsu.find(x);
    return Partition(std::move(out));
  }

  // The equivalence relations commute iff for all points x, y:
  // P[x] meets Q[y] exactly when Q[x] meets P[y]. Points with the same
  // (P-part, Q-part) signature are interchangeable, so it suffices to
  // compare occupied signatures via the co-occurrence matrix.
  bool relations_commute(const Partition& other) const {
    check_same_ground(other);
    std::vector<std::vector<char>> meets(
        num_parts_, std::vector<char>(other.num_parts_, 0));
    for (int x = 0; x < ground_size(); ++x)
      meets[part_of_[x]][other.part_of_[x]] = 1;
    std::vector<std::pair<int, int>> occupied;
    for (int p = 0; p < num_parts_; ++p)
      for (int q = 0; q < other.num_parts_; ++q)
        if (meets[p][q]) occupied.emplace_back(p, q);
    for (auto [p, q] : occupied)
      for (auto [p2, q2] : occupied)
        if (meets[p][q2] != meets[p2][q]) return false;
    return true;
  }

  // Compatibility is defined for uniform partitions only: the relations must
  // commute and the meet must be uniform as well.
  bool are_compatible(const Partition& other) const {
    check_same_ground(other);
    if (!is_uniform() || !other.is_uniform())
      throw std::invalid_argument("compatibility requires uniform partitions");
    return relations_commute(other) && meet(other).is_uniform();
  }

  bool operator==(const Partition& other) const {
    return part_of_ == other.part_of_;
  }
  bool operator!=(const Partition& other) const { return !(*this == other); }

  // Text format: first line the ground-set size, second line the part ids.
  static Partition read(std::istream& in) {
    int n;
    if (!(in >> n) || n < 0) throw parse_error("partition: bad ground size");
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i)
      if (!(in >> ids[i])) throw parse_error("partition: too few part ids");
    return Partition(std::move(ids));
  }

  static Partition parse(const std::string& text) {
    std::istringstream in(text);
    return read(in);
  }

  void write(std::ostream& out) const {
    out << ground_size() << "\n";
    for (int x = 0; x < ground_size(); ++x)
      out << part_of_[x] << (x + 1 == ground_size() ? "" : " ");
    out << "\n";
  }

  std::string to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
  }

 private:
  void canonicalize() {
    std::unordered_map<int, int> renumber;
    renumber.reserve(part_of_.size());
    for (int& id : part_of_)
      id = renumber.emplace(id, static_cast<int>(renumber.size())).first->second;
    num_parts_ = static_cast<int>(renumber.size());
  }

  void check_same_ground(const Partition& other) const {
    if (ground_size() != other.ground_size())
      throw ground_mismatch("partitions live on different ground sets");
  }

  std::vector<int> part_of_;
  int num_parts_ = 0;
};

}  // namespace diaglat
