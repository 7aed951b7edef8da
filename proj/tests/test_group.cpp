#include "diaglat/group.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <fstream>
#include <set>

#include "oracles.hpp"

using diaglat::CayleyTable;
using diaglat::Group;
using diaglat::Partition;

namespace {

Group load_group(const std::string& name) {
  std::ifstream in(std::string(DIAGLAT_FIXTURES) + "/groups/" + name +
                   ".group");
  REQUIRE(in.good());
  return Group::read(in);
}

// The order-5 Latin square frozen from a random search; it violates the
// quadrangle criterion, so it is not isotopic to any group.
const char* kNonGroupSquare =
    "5\n"
    "3 0 1 2 4\n"
    "2 3 0 4 1\n"
    "0 2 4 1 3\n"
    "1 4 2 3 0\n"
    "4 1 3 0 2\n";

std::vector<Group> bundled_groups() {
  std::vector<Group> out;
  for (const char* name : {"c2", "c3", "c4", "v4", "c5", "c6", "s3",
                           "c2c2c2", "q8", "d4"})
    out.push_back(load_group(name));
  return out;
}

// All thirteen isomorphism types of orders 2..8.
std::vector<std::pair<std::string, Group>> small_groups() {
  Group c2 = Group::cyclic(2);
  return {
      {"C2", c2},
      {"C3", Group::cyclic(3)},
      {"C4", Group::cyclic(4)},
      {"C2xC2", Group::direct_product(c2, c2)},
      {"C5", Group::cyclic(5)},
      {"C6", Group::cyclic(6)},
      {"S3", Group::symmetric3()},
      {"C7", Group::cyclic(7)},
      {"C8", Group::cyclic(8)},
      {"C2xC4", Group::direct_product(c2, Group::cyclic(4))},
      {"C2xC2xC2", Group::direct_product(c2, Group::direct_product(c2, c2))},
      {"D4", Group::dihedral(4)},
      {"Q8", Group::quaternion8()},
  };
}

bool is_homomorphism_bijection(const Group& g, const Group& h,
                               const std::vector<int>& map) {
  std::set<int> image(map.begin(), map.end());
  if (static_cast<int>(image.size()) != g.order()) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (map[g.op(a, b)] != h.op(map[a], map[b])) return false;
  return true;
}

std::set<int> set_product(const Group& g, const std::vector<int>& a,
                          const std::vector<int>& b) {
  std::set<int> out;
  for (int x : a)
    for (int y : b) out.insert(g.op(x, y));
  return out;
}

}  // namespace

TEST_CASE("quasigroup validation") {
  CHECK_NOTHROW(diaglat::validate_quasigroup({{"a", "b"}, {"b", "a"}}));
  CHECK_THROWS_AS(diaglat::validate_quasigroup({{"a", "b"}, {"a", "b"}}),
                  diaglat::not_latin);
  CHECK_NOTHROW(CayleyTable::parse("3\n0 1 2\n1 2 0\n2 0 1\n"));
  CHECK_THROWS_AS(CayleyTable::parse("2\na b\nb c\n"), diaglat::not_latin);
  CHECK_THROWS_AS(CayleyTable::parse("2\na b\n"), diaglat::parse_error);
}

TEST_CASE("token indexing is first-seen order") {
  CayleyTable t = CayleyTable::parse("3\nz x y\nx y z\ny z x\n");
  CHECK(t.symbol(0) == "z");
  CHECK(t.symbol(1) == "x");
  CHECK(t.symbol(2) == "y");
  CHECK(t.at(0, 0) == 0);
  CHECK(t.at(1, 0) == 1);
  std::istringstream round(t.to_string());
  CHECK(CayleyTable::read(round) == t);
}

TEST_CASE("bundled group fixtures validate") {
  auto groups = bundled_groups();
  std::vector<int> expected_orders = {2, 3, 4, 4, 5, 6, 6, 8, 8, 8};
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(groups[i].order() == expected_orders[i]);
    CHECK(groups[i].identity() == 0);
  }
  // s3 and d4 and q8 non-abelian, rest abelian
  CHECK(groups[0].is_abelian());
  CHECK_FALSE(groups[6].is_abelian());
  CHECK_FALSE(groups[8].is_abelian());
  CHECK_FALSE(groups[9].is_abelian());
}

TEST_CASE("group validation rejects non-associative tables") {
  CayleyTable t = CayleyTable::parse(kNonGroupSquare);
  CHECK_THROWS_AS(Group::from_table(t), diaglat::not_associative);
}

TEST_CASE("element orders and inverses") {
  Group q8 = Group::quaternion8();
  CHECK(q8.element_order(0) == 1);   // 1
  CHECK(q8.element_order(1) == 2);   // -1
  CHECK(q8.element_order(2) == 4);   // i
  CHECK(q8.inv(2) == 3);             // i^{-1} = -i
  CHECK(q8.op(2, 4) == 6);           // i j = k
  CHECK(q8.op(4, 2) == 7);           // j i = -k
  Group c6 = Group::cyclic(6);
  CHECK(c6.element_order(1) == 6);
  CHECK(c6.element_order(2) == 3);
  CHECK(c6.element_order(3) == 2);
  CHECK(c6.inv(1) == 5);
}

TEST_CASE("elementary abelian recognition") {
  CHECK(Group::cyclic(2).elementary_abelian_prime() == 2);
  CHECK(Group::cyclic(3).elementary_abelian_prime() == 3);
  CHECK(Group::cyclic(4).elementary_abelian_prime() == std::nullopt);
  CHECK(Group::direct_product(Group::cyclic(2), Group::cyclic(2))
            .elementary_abelian_prime() == 2);
  CHECK(Group::direct_product(Group::cyclic(3), Group::cyclic(3))
            .elementary_abelian_prime() == 3);
  CHECK(Group::symmetric3().elementary_abelian_prime() == std::nullopt);
  CHECK(Group::cyclic(5).elementary_abelian_prime() == 5);
}

TEST_CASE("quadrangle criterion on groups and isotopes") {
  for (auto& [name, g] : small_groups()) {
    INFO(name);
    CHECK(diaglat::quadrangle_criterion(g.table()));
  }
  // a^{-1} b table of S3 is an isotope of a group
  Group s3 = Group::symmetric3();
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a * 6 + b] = s3.op(s3.inv(a), b);
  CHECK(diaglat::quadrangle_criterion(CayleyTable::from_indices(6, t)));
}

TEST_CASE("quadrangle criterion fails on the frozen order-5 square") {
  CayleyTable t = CayleyTable::parse(kNonGroupSquare);
  auto witness = diaglat::quadrangle_counterexample(t);
  REQUIRE(witness.has_value());
  // the witness must satisfy three letter equalities and break the fourth
  CHECK(t.at(witness->i1, witness->j1) == t.at(witness->i1p, witness->j1p));
  CHECK(t.at(witness->i1, witness->j2) == t.at(witness->i1p, witness->j2p));
  CHECK(t.at(witness->i2, witness->j1) == t.at(witness->i2p, witness->j1p));
  CHECK(t.at(witness->i2, witness->j2) != t.at(witness->i2p, witness->j2p));
}

TEST_CASE("loop normalization recovers groups from isotopes") {
  // rows of the C3 table cyclically shifted
  CayleyTable shifted = CayleyTable::parse("3\n1 2 0\n2 0 1\n0 1 2\n");
  Group g = diaglat::group_from_quasigroup(shifted);
  CHECK(diaglat::are_isomorphic(g, Group::cyclic(3)).has_value());

  // x * y = x^{-1} y on C4
  std::vector<int> inv_table(16);
  Group c4 = Group::cyclic(4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) inv_table[x * 4 + y] = c4.op(c4.inv(x), y);
  Group h =
      diaglat::group_from_quasigroup(CayleyTable::from_indices(4, inv_table));
  CHECK(diaglat::are_isomorphic(h, c4).has_value());

  CHECK_THROWS_AS(
      diaglat::group_from_quasigroup(CayleyTable::parse(kNonGroupSquare)),
      diaglat::not_group_isotopic);
}

TEST_CASE("random isotopes of small groups normalize back") {
  std::mt19937 rng(20260819);
  for (auto& [name, g] : small_groups()) {
    INFO(name);
    for (int trial = 0; trial < 20; ++trial) {
      int n = g.order();
      CayleyTable iso = diaglat::apply_isotopy(
          g.table(), oracles::random_permutation(n, rng),
          oracles::random_permutation(n, rng),
          oracles::random_permutation(n, rng));
      Group back = diaglat::group_from_quasigroup(iso);
      CHECK(diaglat::are_isomorphic(back, g).has_value());
    }
  }
}

TEST_CASE("quadrangle criterion is equivalent to normalizability") {
  std::mt19937 rng(555);
  int failures_seen = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 3);  // orders 4..6
    CayleyTable t =
        CayleyTable::from_indices(n, oracles::random_latin_square(n, rng));
    bool criterion = diaglat::quadrangle_criterion(t);
    bool normalized = true;
    try {
      diaglat::group_from_quasigroup(t);
    } catch (const diaglat::not_group_isotopic&) {
      normalized = false;
    }
    CHECK(criterion == normalized);
    if (!criterion) ++failures_seen;
  }
  CHECK(failures_seen > 0);
}

TEST_CASE("isomorphism search") {
  Group c4 = Group::cyclic(4);
  Group v4 = Group::direct_product(Group::cyclic(2), Group::cyclic(2));
  Group c6 = Group::cyclic(6);
  Group c2xc3 = Group::direct_product(Group::cyclic(2), Group::cyclic(3));
  Group s3 = Group::symmetric3();

  CHECK_FALSE(diaglat::are_isomorphic(c4, v4).has_value());
  CHECK_FALSE(diaglat::are_isomorphic(s3, c6).has_value());

  auto witness = diaglat::are_isomorphic(c6, c2xc3);
  REQUIRE(witness.has_value());
  CHECK(is_homomorphism_bijection(c6, c2xc3, *witness));

  auto self = diaglat::are_isomorphic(s3, s3);
  REQUIRE(self.has_value());
  CHECK(is_homomorphism_bijection(s3, s3, *self));

  CHECK_FALSE(
      diaglat::are_isomorphic(Group::dihedral(4), Group::quaternion8())
          .has_value());
}

TEST_CASE("automorphism groups of small groups") {
  auto count = [](const Group& g) {
    auto autos = diaglat::automorphisms(g);
    for (const auto& phi : autos) REQUIRE(is_homomorphism_bijection(g, g, phi));
    return autos.size();
  };
  CHECK(count(Group::cyclic(2)) == 1);
  CHECK(count(Group::cyclic(3)) == 2);
  CHECK(count(Group::cyclic(4)) == 2);
  CHECK(count(Group::direct_product(Group::cyclic(2), Group::cyclic(2))) == 6);
  CHECK(count(Group::cyclic(5)) == 4);
  CHECK(count(Group::cyclic(6)) == 2);
  CHECK(count(Group::symmetric3()) == 6);
  CHECK(count(Group::cyclic(8)) == 4);
  CHECK(count(Group::dihedral(4)) == 8);
  CHECK(count(Group::quaternion8()) == 24);
  CHECK(count(Group::direct_product(
            Group::cyclic(2),
            Group::direct_product(Group::cyclic(2), Group::cyclic(2)))) ==
        168);
}

TEST_CASE("subgroup enumeration") {
  auto subgroup_count = [](const Group& g) {
    auto subs = diaglat::all_subgroups(g);
    for (const auto& h : subs) {
      // closed under product and inverse, contains identity
      CHECK(g.closure(h) == h);
    }
    return subs.size();
  };
  CHECK(subgroup_count(Group::cyclic(6)) == 4);
  CHECK(subgroup_count(Group::direct_product(Group::cyclic(2),
                                             Group::cyclic(2))) == 5);
  CHECK(subgroup_count(Group::symmetric3()) == 6);
  CHECK(subgroup_count(Group::quaternion8()) == 6);
  CHECK(subgroup_count(Group::dihedral(4)) == 10);
  CHECK(subgroup_count(Group::cyclic(12)) == 6);
}

TEST_CASE("subgroup as standalone group") {
  Group s3 = Group::symmetric3();
  auto subs = diaglat::all_subgroups(s3);
  bool saw_c3 = false;
  for (const auto& h : subs)
    if (h.size() == 3) {
      Group sub = diaglat::subgroup_group(s3, h);
      CHECK(diaglat::are_isomorphic(sub, Group::cyclic(3)).has_value());
      saw_c3 = true;
    }
  CHECK(saw_c3);
  Group a4 = diaglat::alternating4();
  CHECK(a4.order() == 12);
  CHECK_FALSE(a4.is_abelian());
  // A4 has no subgroup of order 6
  for (const auto& h : diaglat::all_subgroups(a4)) CHECK(h.size() != 6);
}

TEST_CASE("characteristic simplicity") {
  CHECK(diaglat::is_characteristically_simple(Group::cyclic(2)));
  CHECK(diaglat::is_characteristically_simple(Group::cyclic(3)));
  CHECK(diaglat::is_characteristically_simple(Group::cyclic(5)));
  CHECK_FALSE(diaglat::is_characteristically_simple(Group::cyclic(4)));
  CHECK_FALSE(diaglat::is_characteristically_simple(Group::cyclic(6)));
  CHECK(diaglat::is_characteristically_simple(
      Group::direct_product(Group::cyclic(2), Group::cyclic(2))));
  CHECK(diaglat::is_characteristically_simple(
      Group::direct_product(Group::cyclic(3), Group::cyclic(3))));
  CHECK_FALSE(diaglat::is_characteristically_simple(Group::symmetric3()));
  CHECK_FALSE(diaglat::is_characteristically_simple(Group::quaternion8()));
  CHECK_FALSE(diaglat::is_characteristically_simple(Group::dihedral(4)));
  CHECK_FALSE(diaglat::is_characteristically_simple(diaglat::alternating4()));
}

TEST_CASE("coset partitions") {
  Group c6 = Group::cyclic(6);
  CHECK(diaglat::coset_partition(c6, c6.closure({})) ==
        Partition::singletons(6));
  CHECK(diaglat::coset_partition(c6, c6.closure({1})) ==
        Partition::one_part(6));
  Partition p = diaglat::coset_partition(c6, c6.closure({2}));
  CHECK(p.num_parts() == 2);
  CHECK(p.is_uniform());
  CHECK(p.part_sizes() == std::vector<int>{3, 3});
  CHECK(p.same_part(0, 2));
  CHECK(p.same_part(1, 3));
  CHECK_FALSE(p.same_part(0, 1));
}

TEST_CASE("coset partitions in a non-abelian group") {
  Group s3 = Group::symmetric3();
  // the subgroup generated by a transposition has right cosets Hg
  std::vector<int> h = s3.closure({1});
  REQUIRE(h.size() == 2);
  Partition p = diaglat::coset_partition(s3, h);
  CHECK(p.num_parts() == 3);
  CHECK(p.is_uniform());
  // x, y share a coset iff x y^{-1} lies in H
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) {
      bool in_h = std::binary_search(h.begin(), h.end(), s3.op(x, s3.inv(y)));
      CHECK(p.same_part(x, y) == in_h);
    }
}

TEST_CASE("coset lattice identities") {
  Group c6 = Group::cyclic(6);
  auto report =
      diaglat::coset_lattice_check(c6, c6.closure({2}), c6.closure({3}));
  CHECK(report.meet_matches);
  CHECK(report.join_matches);
  CHECK(report.p_intersection == Partition::singletons(6));
  CHECK(report.p_generated == Partition::one_part(6));

  // H = K
  auto same =
      diaglat::coset_lattice_check(c6, c6.closure({2}), c6.closure({2}));
  CHECK(same.meet_matches);
  CHECK(same.join_matches);
  CHECK(same.p_intersection == same.p_h);
  CHECK(same.p_generated == same.p_h);

  // the two factors of C2 x C2
  Group v4 = Group::direct_product(Group::cyclic(2), Group::cyclic(2));
  auto factors =
      diaglat::coset_lattice_check(v4, v4.closure({1}), v4.closure({2}));
  CHECK(factors.meet_matches);
  CHECK(factors.join_matches);
  CHECK(factors.p_intersection == Partition::singletons(4));
  CHECK(factors.p_generated == Partition::one_part(4));
}

TEST_CASE("coset lattice identities hold across small groups") {
  std::vector<Group> groups = {Group::symmetric3(), Group::quaternion8(),
                               Group::dihedral(4), Group::cyclic(12),
                               diaglat::alternating4()};
  for (const Group& g : groups) {
    auto subs = diaglat::all_subgroups(g);
    for (const auto& h : subs)
      for (const auto& k : subs) {
        auto report = diaglat::coset_lattice_check(g, h, k);
        CHECK(report.meet_matches);
        CHECK(report.join_matches);
      }
  }
}

TEST_CASE("coset compatibility matches set products") {
  // P_H and P_K are compatible exactly when HK = KH elementwise.
  std::vector<Group> groups = {
      Group::cyclic(16),
      Group::direct_product(Group::cyclic(4), Group::cyclic(4)),
      Group::direct_product(Group::cyclic(2), Group::cyclic(8)),
      Group::dihedral(8),
      Group::direct_product(Group::cyclic(2), Group::quaternion8()),
      Group::symmetric3(),
      Group::dihedral(4),
      diaglat::alternating4(),
  };
  for (const Group& g : groups) {
    auto subs = diaglat::all_subgroups(g);
    for (const auto& h : subs)
      for (const auto& k : subs) {
        Partition ph = diaglat::coset_partition(g, h);
        Partition pk = diaglat::coset_partition(g, k);
        bool compatible = ph.are_compatible(pk);
        bool products_equal = set_product(g, h, k) == set_product(g, k, h);
        CHECK(compatible == products_equal);
      }
  }
}

TEST_CASE("complete mappings") {
  CHECK_FALSE(diaglat::complete_mapping(Group::cyclic(2)).has_value());
  CHECK_FALSE(diaglat::complete_mapping(Group::cyclic(4)).has_value());
  CHECK_FALSE(diaglat::complete_mapping(Group::cyclic(6)).has_value());

  auto c3_witness = diaglat::complete_mapping(Group::cyclic(3));
  REQUIRE(c3_witness.has_value());
  // the identity map works for C3 and is lexicographically least
  CHECK(*c3_witness == std::vector<int>{0, 1, 2});

  auto v4_witness = diaglat::complete_mapping(
      Group::direct_product(Group::cyclic(2), Group::cyclic(2)));
  CHECK(v4_witness.has_value());

  // counts: C2 has 0; C3 has 3 (each translate of the identity map)
  CHECK(diaglat::count_complete_mappings(Group::cyclic(2)) == 0);
  CHECK(diaglat::count_complete_mappings(Group::cyclic(3)) == 3);
}

TEST_CASE("complete mapping witnesses are valid") {
  std::vector<Group> groups = {Group::cyclic(3), Group::cyclic(5),
                               Group::quaternion8(), Group::dihedral(4)};
  for (const Group& g : groups) {
    auto phi = diaglat::complete_mapping(g);
    REQUIRE(phi.has_value());
    std::set<int> phi_values(phi->begin(), phi->end());
    CHECK(static_cast<int>(phi_values.size()) == g.order());
    std::set<int> psi_values;
    for (int x = 0; x < g.order(); ++x) psi_values.insert(g.op(x, (*phi)[x]));
    CHECK(static_cast<int>(psi_values.size()) == g.order());
  }
}

TEST_CASE("parity and Sylow predicate") {
  CHECK(diaglat::hall_paige_predicate(Group::cyclic(3)));
  CHECK_FALSE(diaglat::hall_paige_predicate(Group::cyclic(2)));
  CHECK_FALSE(diaglat::hall_paige_predicate(Group::symmetric3()));
  CHECK_FALSE(diaglat::hall_paige_predicate(Group::cyclic(4)));
  CHECK(diaglat::hall_paige_predicate(
      Group::direct_product(Group::cyclic(2), Group::cyclic(2))));
  CHECK(diaglat::hall_paige_predicate(Group::quaternion8()));
  CHECK(diaglat::hall_paige_predicate(Group::dihedral(4)));
  CHECK(diaglat::hall_paige_predicate(diaglat::alternating4()));
  CHECK_FALSE(diaglat::hall_paige_predicate(Group::cyclic(12)));
}

TEST_CASE("predicate matches exhaustive search up to order 12") {
  Group c2 = Group::cyclic(2);
  Group c3 = Group::cyclic(3);
  std::vector<std::pair<std::string, Group>> groups = small_groups();
  groups.emplace_back("C9", Group::cyclic(9));
  groups.emplace_back("C3xC3", Group::direct_product(c3, c3));
  groups.emplace_back("C10", Group::cyclic(10));
  groups.emplace_back("D5", Group::dihedral(5));
  groups.emplace_back("C11", Group::cyclic(11));
  groups.emplace_back("C12", Group::cyclic(12));
  groups.emplace_back("C2xC6", Group::direct_product(c2, Group::cyclic(6)));
  groups.emplace_back("D6", Group::dihedral(6));
  groups.emplace_back("A4", diaglat::alternating4());
  for (auto& [name, g] : groups) {
    INFO(name);
    CHECK(diaglat::hall_paige_predicate(g) ==
          diaglat::complete_mapping(g).has_value());
  }
}

TEST_CASE("greedy generating sequences") {
  CHECK(Group::cyclic(6).generating_sequence() == std::vector<int>{1});
  CHECK(Group::direct_product(Group::cyclic(2), Group::cyclic(2))
            .generating_sequence() == std::vector<int>{1, 2});
  Group q8 = Group::quaternion8();
  auto gens = q8.generating_sequence();
  CHECK(gens == std::vector<int>{1, 2, 4});
  CHECK(q8.closure(gens).size() == 8);
  CHECK(Group::cyclic(1).generating_sequence().empty());
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(diaglat::automorphisms(Group::symmetric(5)),
                  diaglat::size_limit_exceeded);
  CHECK_THROWS_AS(diaglat::all_subgroups(Group::symmetric(5)),
                  diaglat::size_limit_exceeded);
}
