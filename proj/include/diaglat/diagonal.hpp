#pragma once
// Diagonal structures over a finite group T. The ground set is T^m; the
// m+1 canonical partitions are the coset partitions of the m coordinate
// subgroups together with the partition induced by common left factors.
// Provides the join-semilattice these generate, the permutation action
// preserving it, quotients, verification of the defining property for
// arbitrary partition families, group extraction, and the primitivity
// classification of the action.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "diaglat/cartesian.hpp"
#include "diaglat/errors.hpp"
#include "diaglat/group.hpp"
#include "diaglat/latin.hpp"
#include "diaglat/partition.hpp"
#include "diaglat/util.hpp"

namespace diaglat {

namespace detail {

inline int popcount(unsigned mask) {
  int count = 0;
  for (; mask; mask &= mask - 1) ++count;
  return count;
}

// p restricted to the parts of q; requires q to refine p.
inline Partition quotient_partition(const Partition& p, const Partition& q) {
  std::vector<int> labels(q.num_parts(), -1);
  for (int x = 0; x < q.ground_size(); ++x)
    if (labels[q.part_of(x)] == -1) labels[q.part_of(x)] = p.part_of(x);
  return Partition(std::move(labels));
}

}  // namespace detail

// A family of m+1 partitions of a common ground set in which every m
// members are the minimal non-trivial partitions of a Cartesian lattice.
struct SpecialSet {
  int ground_size = 0;
  std::vector<Partition> partitions;

  int dimension() const { return static_cast<int>(partitions.size()) - 1; }
};

// Checks the defining property subset by subset: the joins of all-but-one
// member must form a Cartesian decomposition whose pairwise-but-one meets
// recover the members.
inline SpecialSet verify_special_set(const std::vector<Partition>& candidate) {
  int m = static_cast<int>(candidate.size()) - 1;
  if (m < 2) throw not_special("a special set needs at least 3 partitions");
  int ground = candidate.front().ground_size();
  for (const Partition& p : candidate)
    if (p.ground_size() != ground)
      throw ground_mismatch("special-set members disagree on the ground set");
  if (ground < 2) throw not_special("ground set must have at least 2 points");

  for (int omit = 0; omit <= m; ++omit) {
    std::vector<int> chosen;
    for (int i = 0; i <= m; ++i)
      if (i != omit) chosen.push_back(i);

    std::vector<Partition> maximal;
    for (int i : chosen) {
      std::optional<Partition> join;
      for (int j : chosen)
        if (j != i) join = join ? join->join(candidate[j]) : candidate[j];
      maximal.push_back(*join);
    }
    if (!is_cartesian_decomposition(maximal))
      throw not_special("joins omitting member " + std::to_string(omit) +
                        " do not form a Cartesian decomposition");
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      std::optional<Partition> meet;
      for (std::size_t j = 0; j < chosen.size(); ++j)
        if (j != i) meet = meet ? meet->meet(maximal[j]) : maximal[j];
      if (*meet != candidate[chosen[i]])
        throw not_special("member " + std::to_string(chosen[i]) +
                          " is not minimal in the lattice omitting member " +
                          std::to_string(omit));
    }
  }
  return SpecialSet{ground, candidate};
}

// The join-semilattice generated by the m+1 canonical partitions of T^m.
// Tuples are encoded little-endian: coordinate 0 varies fastest.
struct DiagonalSemilattice {
  Group group;
  int dimension;
  MixedRadixCodec codec;
  std::vector<Partition> minimal;        // index 0 is the left-factor member
  std::map<unsigned, Partition> suprema; // subsets of fewer than m members
  Partition top;

  // Join over the subset encoded by mask; every subset of at least m
  // members joins to the top.
  const Partition& at(unsigned mask) const {
    if (detail::popcount(mask) >= dimension) return top;
    return suprema.at(mask);
  }

  bool contains(const Partition& p) const {
    if (p == top) return true;
    for (const auto& [mask, q] : suprema)
      if (p == q) return true;
    return false;
  }
};

inline DiagonalSemilattice build_semilattice(const Group& t, int m) {
  if (t.order() < 2) throw degenerate_case("the group must be non-trivial");
  if (m < 2) throw dimension_too_small("the dimension must be at least 2");
  int n = t.order();
  long long size = 1;
  for (int i = 0; i < m; ++i) {
    size *= n;
    if (size > 1000000)
      throw size_limit_exceeded("ground set capped at 10^6 points");
  }
  int ground = static_cast<int>(size);
  MixedRadixCodec codec(std::vector<int>(m, n));

  std::vector<Partition> minimal;
  {
    std::vector<int> labels(ground);
    for (int x = 0; x < ground; ++x) {
      std::vector<int> tuple = codec.decode(x);
      int shift = t.inv(tuple[0]);
      for (int& v : tuple) v = t.op(shift, v);
      labels[x] = codec.encode(tuple);
    }
    minimal.emplace_back(std::move(labels));
  }
  for (int dim = 0; dim < m; ++dim) {
    std::vector<int> labels(ground);
    for (int x = 0; x < ground; ++x) {
      std::vector<int> tuple = codec.decode(x);
      tuple[dim] = 0;
      labels[x] = codec.encode(tuple);
    }
    minimal.emplace_back(std::move(labels));
  }

  verify_special_set(minimal);

  std::map<unsigned, Partition> suprema;
  suprema.emplace(0u, Partition::singletons(ground));
  unsigned full = (1u << (m + 1)) - 1;
  for (unsigned mask = 1; mask <= full; ++mask) {
    if (detail::popcount(mask) >= m) continue;
    unsigned low = mask & (mask - 1u);
    int bit = 0;
    while (!((mask >> bit) & 1u)) ++bit;
    suprema.emplace(mask, suprema.at(low).join(minimal[bit]));
  }

  return DiagonalSemilattice{t,
                             m,
                             std::move(codec),
                             std::move(minimal),
                             std::move(suprema),
                             Partition::one_part(ground)};
}

// Two members whose meet escapes the semilattice; exists whenever m >= 3.
struct MeetClosureWitness {
  Partition member_a;  // join of members 0 and 1
  Partition member_b;  // join of members 2 and 3
  Partition meet;      // not contained in the semilattice
};

inline MeetClosureWitness verify_not_meet_closed(
    const DiagonalSemilattice& s) {
  if (s.dimension < 3)
    throw dimension_too_small(
        "meet-closure fails only from dimension 3 upward");
  Partition a = s.at(0b0011u);
  Partition b = s.at(0b1100u);
  Partition meet = a.meet(b);
  if (s.contains(meet))
    throw hypothesis_failed("witness meet unexpectedly lies in the lattice");
  return MeetClosureWitness{std::move(a), std::move(b), std::move(meet)};
}

// Partitions above q, re-read as partitions of the parts of q.
inline std::vector<Partition> quotient(const std::vector<Partition>& members,
                                       const Partition& q) {
  if (std::find(members.begin(), members.end(), q) == members.end())
    throw parse_error("the quotient partition must be one of the members");
  std::vector<Partition> out;
  for (const Partition& p : members)
    if (q.refines(p)) out.push_back(detail::quotient_partition(p, q));
  return out;
}

enum class GeneratorKind {
  right_translation,   // multiply one coordinate on the right
  left_translation,    // multiply every coordinate on the left by an inverse
  automorphism_map,    // apply a group automorphism to every coordinate
  coordinate_swap,     // exchange two adjacent coordinates
  flip,                // invert the first coordinate into the others
};

inline const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::right_translation: return "right-translation";
    case GeneratorKind::left_translation: return "left-translation";
    case GeneratorKind::automorphism_map: return "automorphism";
    case GeneratorKind::coordinate_swap: return "coordinate-swap";
    case GeneratorKind::flip: return "flip";
  }
  return "?";
}

struct TaggedPermutation {
  std::vector<int> image;
  GeneratorKind kind;
};

struct PermutationSet {
  int degree = 0;
  std::vector<TaggedPermutation> generators;
};

namespace detail {

// Greedy reduction of the full automorphism list to a generating subset.
inline std::vector<std::vector<int>> automorphism_generators(const Group& t) {
  std::vector<std::vector<int>> all = automorphisms(t);
  std::vector<int> identity(t.order());
  for (int i = 0; i < t.order(); ++i) identity[i] = i;

  std::vector<std::vector<int>> gens;
  std::set<std::vector<int>> span{identity};
  for (const auto& phi : all) {
    if (span.count(phi)) continue;
    gens.push_back(phi);
    std::vector<std::vector<int>> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& a : frontier)
        for (const auto& g : gens) {
          std::vector<int> prod(a.size());
          for (std::size_t x = 0; x < a.size(); ++x) prod[x] = g[a[x]];
          if (span.insert(prod).second) next.push_back(std::move(prod));
        }
      frontier = std::move(next);
    }
    if (span.size() == all.size()) break;
  }
  return gens;
}

}  // namespace detail

inline PermutationSet diagonal_group_generators(const Group& t, int m) {
  if (t.order() < 2) throw degenerate_case("the group must be non-trivial");
  if (m < 2) throw dimension_too_small("the dimension must be at least 2");
  long long size = 1;
  for (int i = 0; i < m; ++i) {
    size *= t.order();
    if (size > 100000)
      throw size_limit_exceeded("permutation degree capped at 10^5");
  }
  int degree = static_cast<int>(size);
  MixedRadixCodec codec(std::vector<int>(m, t.order()));

  PermutationSet out;
  out.degree = degree;
  auto emit = [&](GeneratorKind kind, auto&& act) {
    std::vector<int> image(degree);
    for (int x = 0; x < degree; ++x) {
      std::vector<int> tuple = codec.decode(x);
      act(tuple);
      image[x] = codec.encode(tuple);
    }
    out.generators.push_back({std::move(image), kind});
  };

  for (int dim = 0; dim < m; ++dim)
    for (int g : t.generating_sequence())
      emit(GeneratorKind::right_translation,
           [&](std::vector<int>& tuple) { tuple[dim] = t.op(tuple[dim], g); });
  for (int g : t.generating_sequence())
    emit(GeneratorKind::left_translation, [&](std::vector<int>& tuple) {
      for (int& v : tuple) v = t.op(t.inv(g), v);
    });
  for (const auto& phi : detail::automorphism_generators(t))
    emit(GeneratorKind::automorphism_map, [&](std::vector<int>& tuple) {
      for (int& v : tuple) v = phi[v];
    });
  for (int dim = 0; dim + 1 < m; ++dim)
    emit(GeneratorKind::coordinate_swap, [&](std::vector<int>& tuple) {
      std::swap(tuple[dim], tuple[dim + 1]);
    });
  emit(GeneratorKind::flip, [&](std::vector<int>& tuple) {
    int shift = t.inv(tuple[0]);
    for (int& v : tuple) v = t.op(shift, v);
    tuple[0] = shift;
  });
  return out;
}

struct GroupOrderReport {
  long long order = 0;
  bool brute_forced = false;  // set when the closure oracle confirmed it
};

inline GroupOrderReport diagonal_group_order(const Group& t, int m,
                                             bool brute_force = false) {
  if (t.order() < 2) throw degenerate_case("the group must be non-trivial");
  if (m < 2) throw dimension_too_small("the dimension must be at least 2");
  if (m > 12) throw size_limit_exceeded("order formula capped at m = 12");
  long long order = 1;
  for (int i = 0; i < m; ++i) {
    order *= t.order();
    if (order > 1000000000) throw size_limit_exceeded("order exceeds 10^9");
  }
  order *= static_cast<long long>(automorphisms(t).size());
  for (int k = 2; k <= m + 1; ++k) order *= k;

  if (!brute_force) return GroupOrderReport{order, false};

  PermutationSet gens = diagonal_group_generators(t, m);
  if (gens.degree > 10000)
    throw size_limit_exceeded("closure oracle capped at degree 10^4");
  std::vector<int> identity(gens.degree);
  for (int i = 0; i < gens.degree; ++i) identity[i] = i;
  std::set<std::vector<int>> closed{identity};
  std::vector<std::vector<int>> frontier{identity};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& a : frontier)
      for (const auto& g : gens.generators) {
        std::vector<int> prod(a.size());
        for (std::size_t x = 0; x < a.size(); ++x) prod[x] = g.image[a[x]];
        if (closed.insert(prod).second) next.push_back(std::move(prod));
      }
    frontier = std::move(next);
  }
  if (static_cast<long long>(closed.size()) != order)
    throw hypothesis_failed("generator closure disagrees with the formula");
  return GroupOrderReport{order, true};
}

namespace detail {

// Reads a 4-member special set as a cube: one member supplies the letters,
// the other three are the line partitions, and their pairwise joins give
// the coordinate axes.
inline Group group_from_special_base(const std::vector<Partition>& parts,
                                     bool letters_first) {
  const Partition& letters = letters_first ? parts[0] : parts[3];
  std::vector<Partition> lines;
  for (int i = 0; i < 4; ++i)
    if (&parts[i] != &letters) lines.push_back(parts[i]);

  std::vector<Partition> axes;
  for (int i = 0; i < 3; ++i) {
    std::optional<Partition> join;
    for (int j = 0; j < 3; ++j)
      if (j != i) join = join ? join->join(lines[j]) : lines[j];
    axes.push_back(*join);
  }
  int n = axes[0].num_parts();
  int ground = letters.ground_size();
  if (axes[1].num_parts() != n || axes[2].num_parts() != n ||
      n * n * n != ground)
    throw hypothesis_failed("axis joins are not aligned with the ground size");

  std::vector<int> cube_letters(ground, -1);
  for (int x = 0; x < ground; ++x) {
    int cell = axes[0].part_of(x) + n * axes[1].part_of(x) +
               n * n * axes[2].part_of(x);
    cube_letters[cell] = letters.part_of(x);
  }
  return group_from_regular_cube(LatinCube::from_letters(n, cube_letters))
      .group;
}

inline Group extract_group_along(std::vector<Partition> parts,
                                 bool low_route) {
  while (parts.size() > 4) {
    std::size_t pivot = low_route ? 0 : parts.size() - 1;
    Partition q = parts[pivot];
    std::vector<Partition> next;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (i != pivot) next.push_back(quotient_partition(parts[i].join(q), q));
    parts = std::move(next);
  }
  return group_from_special_base(parts, /*letters_first=*/!low_route);
}

}  // namespace detail

// The group behind a special set of dimension at least 3, unique up to
// isomorphism. Extracted twice along different reduction routes as a
// consistency check.
inline Group extract_group(const SpecialSet& s) {
  if (s.dimension() < 3)
    throw dimension_too_small(
        "dimension 2 special sets need not come from a group");
  Group primary = detail::extract_group_along(s.partitions, false);
  Group cross = detail::extract_group_along(s.partitions, true);
  if (!are_isomorphic(primary, cross))
    throw hypothesis_failed("reduction routes extracted different groups");
  return primary;
}

enum class Primitivity { primitive, not_quasiprimitive };

struct PrimitivityReport {
  Primitivity verdict;
  std::string reason;
};

// The action on T^m is primitive exactly when it is quasiprimitive, which
// happens exactly when T is characteristically simple and, for elementary
// abelian T of exponent p, p does not divide m+1.
inline PrimitivityReport classify_primitivity(const Group& t, int m) {
  if (t.order() < 2) throw degenerate_case("the group must be non-trivial");
  if (m < 2) throw dimension_too_small("the dimension must be at least 2");
  if (!is_characteristically_simple(t))
    return {Primitivity::not_quasiprimitive,
            "the group has a proper characteristic subgroup"};
  if (auto p = t.elementary_abelian_prime(); p && (m + 1) % *p == 0)
    return {Primitivity::not_quasiprimitive,
            "elementary abelian exponent " + std::to_string(*p) +
                " divides " + std::to_string(m + 1)};
  return {Primitivity::primitive,
          "characteristically simple with admissible exponent"};
}

// True when no non-trivial block system survives; the finest congruence
// welding 0 to each other point is grown to a fixpoint.
inline bool primitivity_oracle(const PermutationSet& gens) {
  int n = gens.degree;
  if (n > 64) throw size_limit_exceeded("block search capped at degree 64");
  if (n < 1) throw degenerate_case("empty ground set");

  std::vector<char> seen(n, 0);
  std::vector<int> orbit{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (const auto& g : gens.generators)
      if (!seen[g.image[orbit[i]]]) {
        seen[g.image[orbit[i]]] = 1;
        orbit.push_back(g.image[orbit[i]]);
      }
  if (static_cast<int>(orbit.size()) != n)
    throw not_transitive("the generators do not act transitively");

  for (int beta = 1; beta < n; ++beta) {
    DisjointSet blocks(n);
    blocks.unite(0, beta);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& g : gens.generators)
        for (int x = 0; x < n; ++x) {
          int r = blocks.find(x);
          if (r != x && blocks.unite(g.image[x], g.image[r])) changed = true;
        }
    }
    int classes = 0;
    for (int x = 0; x < n; ++x)
      if (blocks.find(x) == x) ++classes;
    if (classes > 1) return false;
  }
  return true;
}

}  // namespace diaglat
