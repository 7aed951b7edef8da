#include "diaglat/partition.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <set>
#include <sstream>

#include "oracles.hpp"

using diaglat::Partition;

namespace {

Partition load(const std::string& relative) {
  std::ifstream in(std::string(DIAGLAT_FIXTURES) + "/" + relative);
  REQUIRE(in.good());
  return Partition::read(in);
}

// Product condition per join part: the number of P-parts inside the join
// part times the number of Q-parts equals the number of meet parts. Holds
// exactly when the relations commute, which makes it a second oracle.
bool grid_identity(const Partition& p, const Partition& q) {
  Partition join = p.join(q);
  Partition meet = p.meet(q);
  for (int b = 0; b < join.num_parts(); ++b) {
    std::set<int> p_parts, q_parts, meet_parts;
    for (int x = 0; x < p.ground_size(); ++x) {
      if (join.part_of(x) != b) continue;
      p_parts.insert(p.part_of(x));
      q_parts.insert(q.part_of(x));
      meet_parts.insert(meet.part_of(x));
    }
    if (p_parts.size() * q_parts.size() != meet_parts.size()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("trivial partitions") {
  Partition e = Partition::singletons(5);
  Partition u = Partition::one_part(5);
  CHECK(e.num_parts() == 5);
  CHECK(u.num_parts() == 1);
  CHECK(e.is_singletons());
  CHECK(u.is_one_part());
  CHECK(e.is_uniform());
  CHECK(u.is_uniform());
  CHECK(e.refines(u));
  CHECK_FALSE(u.refines(e));
  CHECK(e.refines(e));

  Partition p({0, 0, 1, 1, 2});
  CHECK(e.refines(p));
  CHECK(p.refines(u));
  CHECK_FALSE(p.refines(e));
  CHECK_FALSE(u.refines(p));
  CHECK(p.meet(e) == e);
  CHECK(p.join(e) == p);
  CHECK(p.meet(u) == p);
  CHECK(p.join(u) == u);
}

TEST_CASE("canonical labels") {
  Partition p({7, 7, 3, 9});
  CHECK(p.labels() == std::vector<int>{0, 0, 1, 2});
  CHECK(p == Partition({5, 5, 0, 2}));
  CHECK(p != Partition({5, 0, 5, 2}));
  CHECK(p.num_parts() == 3);
  CHECK(p.part_sizes() == std::vector<int>{2, 1, 1});
  CHECK_FALSE(p.is_uniform());
}

TEST_CASE("from_blocks") {
  Partition p = Partition::from_blocks(4, {{2, 3}, {0}, {1}});
  CHECK(p.labels() == std::vector<int>{0, 1, 2, 2});
  CHECK(p.same_part(2, 3));
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}}), diaglat::parse_error);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}),
                  diaglat::parse_error);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {2, 3}}),
                  diaglat::parse_error);
}

TEST_CASE("meet and join by hand") {
  // Ground set 0..5. P = {012|345}, Q = {01|23|45}.
  Partition p({0, 0, 0, 1, 1, 1});
  Partition q({0, 0, 1, 1, 2, 2});
  Partition meet = p.meet(q);
  CHECK(meet.labels() == std::vector<int>{0, 0, 1, 2, 3, 3});
  Partition join = p.join(q);
  CHECK(join == Partition::one_part(6));
  CHECK(meet.refines(p));
  CHECK(meet.refines(q));
  CHECK(p.refines(join));
  CHECK(q.refines(join));
}

TEST_CASE("rows and columns of a 3x3 grid") {
  // Cell (r, c) has index 3r + c.
  Partition rows({0, 0, 0, 1, 1, 1, 2, 2, 2});
  Partition cols({0, 1, 2, 0, 1, 2, 0, 1, 2});
  CHECK(rows.meet(cols) == Partition::singletons(9));
  CHECK(rows.join(cols) == Partition::one_part(9));
  CHECK(rows.relations_commute(cols));
  CHECK(rows.are_compatible(cols));
  CHECK(grid_identity(rows, cols));
}

TEST_CASE("ground mismatch is an error") {
  Partition p = Partition::singletons(3);
  Partition q = Partition::singletons(4);
  CHECK_THROWS_AS(p.meet(q), diaglat::ground_mismatch);
  CHECK_THROWS_AS(p.join(q), diaglat::ground_mismatch);
  CHECK_THROWS_AS(p.refines(q), diaglat::ground_mismatch);
  CHECK_THROWS_AS(p.relations_commute(q), diaglat::ground_mismatch);
}

TEST_CASE("compatibility requires uniform inputs") {
  Partition uneven({0, 0, 0, 1});
  Partition even({0, 0, 1, 1});
  CHECK_THROWS_AS(uneven.are_compatible(even), std::invalid_argument);
  CHECK_THROWS_AS(even.are_compatible(uneven), std::invalid_argument);
}

TEST_CASE("three squares: commuting without compatible join") {
  // Three 2x2 squares side by side, 12 cells, cell (r, c) at index 6r + c.
  // The first square repeats its two letters diagonally; the other two
  // squares share one letter set between them.
  Partition rows = load("partitions/three-squares-rows.part");
  Partition cols = load("partitions/three-squares-cols.part");
  Partition letters = load("partitions/three-squares-letters.part");

  REQUIRE(rows.ground_size() == 12);
  CHECK(rows.num_parts() == 6);
  CHECK(cols.num_parts() == 6);
  CHECK(letters.num_parts() == 6);
  CHECK(rows.is_uniform());
  CHECK(cols.is_uniform());
  CHECK(letters.is_uniform());

  // All three pairwise meets are the singleton partition, hence uniform.
  Partition e = Partition::singletons(12);
  CHECK(rows.meet(cols) == e);
  CHECK(rows.meet(letters) == e);
  CHECK(cols.meet(letters) == e);

  // All three pairs commute, so they are pairwise compatible.
  CHECK(rows.relations_commute(cols));
  CHECK(rows.relations_commute(letters));
  CHECK(cols.relations_commute(letters));
  CHECK(rows.are_compatible(cols));
  CHECK(rows.are_compatible(letters));
  CHECK(cols.are_compatible(letters));

  // The join of rows and columns recovers the three squares.
  Partition squares = rows.join(cols);
  CHECK(squares ==
        Partition({0, 0, 1, 1, 2, 2, 0, 0, 1, 1, 2, 2}));

  // Compatibility does not extend to the join: squares and letters commute,
  // but their meet has parts of size two in the first square and singletons
  // elsewhere, so it is not uniform.
  CHECK(squares.relations_commute(letters));
  CHECK_FALSE(squares.meet(letters).is_uniform());
  CHECK_FALSE(squares.are_compatible(letters));
}

TEST_CASE("text round trip") {
  Partition p({0, 1, 1, 0, 2});
  Partition q = Partition::parse(p.to_string());
  CHECK(p == q);
  CHECK(Partition::parse("4\n7 7 3 9").labels() ==
        std::vector<int>{0, 0, 1, 2});
  CHECK(Partition::parse("0\n") == Partition(std::vector<int>{}));
  CHECK_THROWS_AS(Partition::parse("3\n0 1"), diaglat::parse_error);
  CHECK_THROWS_AS(Partition::parse("-1\n"), diaglat::parse_error);
  CHECK_THROWS_AS(Partition::parse("x"), diaglat::parse_error);
}

TEST_CASE("lattice laws on random partitions") {
  std::mt19937 rng(20260819);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    Partition p = oracles::random_partition(n, 1 + rng() % 5, rng);
    Partition q = oracles::random_partition(n, 1 + rng() % 5, rng);
    Partition r = oracles::random_partition(n, 1 + rng() % 5, rng);

    CHECK(p.meet(q) == q.meet(p));
    CHECK(p.join(q) == q.join(p));
    CHECK(p.meet(q).meet(r) == p.meet(q.meet(r)));
    CHECK(p.join(q).join(r) == p.join(q.join(r)));
    CHECK(p.meet(p.join(q)) == p);
    CHECK(p.join(p.meet(q)) == p);
    CHECK(p.meet(p) == p);
    CHECK(p.join(p) == p);

    CHECK(p.refines(q) == (p.meet(q) == p));
    CHECK(p.refines(q) == (p.join(q) == q));
  }
}

TEST_CASE("join matches the search oracle") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    Partition p = oracles::random_partition(n, 1 + rng() % 6, rng);
    Partition q = oracles::random_partition(n, 1 + rng() % 6, rng);
    CHECK(p.join(q) == oracles::join_bfs(p, q));
  }
}

TEST_CASE("commuting matches the composition oracle") {
  std::mt19937 rng(7071);
  int commuting = 0, total = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 10);
    Partition p = oracles::random_partition(n, 1 + rng() % 4, rng);
    Partition q = oracles::random_partition(n, 1 + rng() % 4, rng);
    bool fast = p.relations_commute(q);
    CHECK(fast == oracles::commute_by_composition(p, q));
    CHECK(fast == grid_identity(p, q));
    ++total;
    if (fast) ++commuting;
  }
  // Make sure the sample exercises both outcomes.
  CHECK(commuting > 0);
  CHECK(commuting < total);
}

TEST_CASE("compatibility on random uniform partitions") {
  std::mt19937 rng(90210);
  for (int trial = 0; trial < 200; ++trial) {
    int block_p = 1 + static_cast<int>(rng() % 3);
    int block_q = 1 + static_cast<int>(rng() % 3);
    int n = 12;
    Partition p = oracles::random_uniform_partition(n, block_p, rng);
    Partition q = oracles::random_uniform_partition(n, block_q, rng);
    bool compatible = p.are_compatible(q);
    CHECK(compatible ==
          (oracles::commute_by_composition(p, q) && p.meet(q).is_uniform()));
  }
}
