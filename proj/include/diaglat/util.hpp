#pragma once
// Small shared utilities: disjoint-set union and a mixed-radix codec for
// flattening coordinate tuples into dense indices.

#include <cstdint>
#include <numeric>
#include <vector>

#include "diaglat/errors.hpp"

namespace diaglat {

class DisjointSet {
 public:
  explicit DisjointSet(int n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Bijection between tuples (x_1, ..., x_m) with 0 <= x_i < radix[i] and the
// range [0, prod radix). Coordinate 1 varies fastest:
//   index = x_1 + x_2 * r_1 + x_3 * r_1 r_2 + ...
class MixedRadixCodec {
 public:
  explicit MixedRadixCodec(std::vector<int> radices)
      : radices_(std::move(radices)) {
    std::int64_t total = 1;
    for (int r : radices_) {
      if (r <= 0) throw parse_error("mixed radix: radices must be positive");
      total *= r;
      if (total > (std::int64_t{1} << 31))
        throw size_limit_exceeded("mixed radix: index space too large");
    }
    total_ = static_cast<int>(total);
  }

  int size() const { return total_; }
  int arity() const { return static_cast<int>(radices_.size()); }
  int radix(int i) const { return radices_[i]; }

  int encode(const std::vector<int>& tuple) const {
    int index = 0;
    for (int i = arity() - 1; i >= 0; --i) index = index * radices_[i] + tuple[i];
    return index;
  }

  std::vector<int> decode(int index) const {
    std::vector<int> tuple(arity());
    for (int i = 0; i < arity(); ++i) {
      tuple[i] = index % radices_[i];
      index /= radices_[i];
    }
    return tuple;
  }

 private:
  std::vector<int> radices_;
  int total_ = 1;
};

}  // namespace diaglat
