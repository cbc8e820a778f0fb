#include <numeric>

#include "doctest.h"
#include "pzeta/canonical.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/groups.hpp"
#include "pzeta/zeta.hpp"

using namespace pzeta;

namespace {

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

Rational q(long p, long r = 1) { return make_rational(big(p), big(r)); }

DirichletSeries series(std::initializer_list<std::pair<long, long>> terms) {
  DirichletSeries s;
  for (auto [base, c] : terms) s.add_term(q(base), big(c));
  return s;
}

std::vector<FiniteGroup> small_groups() {
  return {cyclic(1), cyclic(2), cyclic(3), cyclic(4), cyclic(6), cyclic(8), cyclic(12), symmetric(3),
          dihedral(4), dihedral(5), dihedral(6), direct_product(cyclic(2), cyclic(2)),
          direct_product(cyclic(2), cyclic(4)), direct_product(cyclic(2), cyclic(6)), symmetric(4)};
}

// Independent count: generated subgroup by repeated products of all pairs.
GroupMask naive_closure(const FiniteGroup& g, GroupMask m) {
  m |= GroupMask{1} << g.identity();
  while (true) {
    GroupMask next = m;
    for (std::uint32_t a = 0; a < g.order(); ++a)
      for (std::uint32_t b = 0; b < g.order(); ++b)
        if ((m >> a & 1) && (m >> b & 1)) next |= GroupMask{1} << g.mul(a, b);
    if (next == m) return m;
    m = next;
  }
}

}  // namespace

TEST_CASE("constructions") {
  CHECK(symmetric(3).order() == 6);
  CHECK(dihedral(4).order() == 8);
  CHECK(is_isomorphic(subgroup_lattice(direct_product(cyclic(2), cyclic(3))), subgroup_lattice(cyclic(6))));
  CHECK(error_of([] { symmetric(5); }) == ErrorCode::OrderLimitExceeded);
  CHECK(error_of([] { direct_product(cyclic(8), cyclic(9)); }) == ErrorCode::OrderLimitExceeded);
  CHECK(error_of([] { group_from_table(2, {0, 1, 1, 1}); }) == ErrorCode::NotAGroup);
  // A Latin square that is not associative.
  std::vector<std::uint32_t> quasi{0, 1, 2, 1, 2, 0, 2, 0, 1};
  CHECK_NOTHROW(group_from_table(3, quasi));
  std::vector<std::uint32_t> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
  CHECK(error_of([&] { group_from_table(5, loop); }) == ErrorCode::NotAGroup);
}

TEST_CASE("group specs") {
  CHECK(parse_group("cyclic:6").order() == 6);
  CHECK(parse_group("sym:3").order() == 6);
  CHECK(parse_group("dihedral:4").order() == 8);
  CHECK(parse_group("prod:cyclic:2,prod:cyclic:2,cyclic:3").order() == 12);
  CHECK(error_of([] { parse_group("cyclic"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_group("cyclic:3x"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_group("free:2"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_group("prod:cyclic:2"); }) == ErrorCode::ParseError);
}

TEST_CASE("subgroups") {
  CHECK(subgroups(cyclic(6)).size() == 4);
  CHECK(is_isomorphic(subgroup_lattice(cyclic(6)), boolean_lattice(2)));
  CHECK(subgroups(symmetric(3)).size() == 6);
  CHECK(subgroups(cyclic(7)).size() == 2);
  CHECK(subgroups(symmetric(4)).size() == 30);
  CHECK(subgroups(dihedral(4)).size() == 10);
  // Closure agrees with the naive product closure, and every subgroup found
  // is closed.
  for (const auto& g : small_groups()) {
    for (auto h : subgroups(g)) CHECK(naive_closure(g, h) == h);
    for (std::uint32_t a = 0; a < g.order(); ++a)
      for (std::uint32_t b = 0; b < g.order(); ++b) {
        const GroupMask m = (GroupMask{1} << a) | (GroupMask{1} << b);
        CHECK(generated_subgroup(g, m) == naive_closure(g, m));
      }
  }
}

TEST_CASE("group zeta functions") {
  CHECK(group_zeta(cyclic(5)) == series({{1, 1}, {5, -1}}));
  CHECK(group_zeta(cyclic(6)) == series({{1, 1}, {2, -1}, {3, -1}, {6, 1}}));
  CHECK(group_zeta(symmetric(3)) == series({{1, 1}, {2, -1}, {3, -3}, {6, 3}}));
  CHECK(tuple_generation_probability(cyclic(2), 1) == q(1, 2));
  CHECK(tuple_generation_probability(cyclic(6), 1) == q(1, 3));
  CHECK(tuple_generation_probability(symmetric(3), 2) == q(1, 2));
  CHECK(error_of([] { tuple_generation_probability(symmetric(4), 6, 1000); }) == ErrorCode::BudgetExceeded);
  for (const auto& g : small_groups()) {
    if (g.order() > 12) continue;
    const auto z = group_zeta(g);
    CHECK(is_ordinary(z));
    for (unsigned s = 1; s <= 3; ++s) CHECK(tuple_generation_probability(g, s) == evaluate_exact(z, s));
  }
}

TEST_CASE("coset lattices") {
  CHECK(coset_lattice(cyclic(6)).lattice.size() == 13);
  CHECK(coset_lattice(symmetric(3)).lattice.size() == 19);
  CHECK(coset_lattice(cyclic(8)).lattice.size() == 16);
  CHECK(coset_lattice(cyclic(12)).lattice.size() == 29);
  CHECK(coset_lattice(dihedral(4)).lattice.size() == 36);
  auto z2_4 = direct_product(direct_product(cyclic(2), cyclic(2)), direct_product(cyclic(2), cyclic(2)));
  CHECK(coset_lattice(z2_4).lattice.size() == 308);
  LatticeOptions tiny;
  tiny.max_elements = 100;
  CHECK(error_of([&] { coset_lattice(z2_4, tiny); }) == ErrorCode::SizeLimitExceeded);

  for (const auto& g : small_groups()) {
    auto c = coset_lattice(g);
    auto j = join_irreducibles(c.lattice);
    CHECK(j.size() == g.order());
    for (auto x : j) CHECK(std::popcount(c.members[x]) == 1);
    for (std::uint32_t a = 0; a < g.order(); ++a) CHECK(c.members[c.singleton(a)] == GroupMask{1} << a);
    for (Element x = 0; x < c.lattice.size(); ++x)
      for (Element y = 0; y < c.lattice.size(); ++y) {
        CHECK(coset_join(g, c, x, y) == c.lattice.join(x, y));
        CHECK(c.members[c.lattice.meet(x, y)] == (c.members[x] & c.members[y]));
      }
  }
}

TEST_CASE("Brown identity") {
  auto rec = verify_brown_identity(cyclic(2), 3);
  CHECK(rec.lhs_series == series({{1, 1}, {2, -2}}));
  for (const auto& g : small_groups()) {
    if (g.order() > 12) continue;
    CHECK(verify_brown_identity(g, 4).all_equal());
  }
  DirichletSeries bad;
  bad.add_term(q(5, 3), big(3));
  CHECK(error_of([&] { shift_exponent_down(bad); }) == ErrorCode::MismatchDetected);
}

TEST_CASE("coprime products") {
  CHECK(verify_coprime_product(cyclic(2), cyclic(3), 3).series.all_equal());
  auto rec = verify_coprime_product(cyclic(4), cyclic(3), 3);
  CHECK(rec.coset_lattices_isomorphic);
  CHECK(verify_coprime_product(symmetric(3), cyclic(5), 2).coset_lattices_isomorphic);
  CHECK(error_of([] { verify_coprime_product(cyclic(2), cyclic(2), 2); }) == ErrorCode::NotCoprimeOrders);
}

TEST_CASE("named sublattices of coset lattices") {
  auto g6 = cyclic(6);
  auto c6 = coset_lattice(g6);
  std::vector<Element> gens{c6.singleton(0), c6.singleton(3), c6.find(0b010010)};
  auto sub = sublattice_generated(c6.lattice, gens);
  CHECK(sub.lattice.size() == 6);
  CHECK_FALSE(zeta_series(sub.lattice).is_ordinary);
  auto check6 = is_good_sublattice(g6, c6, sub.to_ambient, 0b001001);
  CHECK(check6.normal_action);
  CHECK_FALSE(check6.singleton_irreducibles);
  CHECK_FALSE(check6.good());

  auto g8 = cyclic(8);
  auto c8 = coset_lattice(g8);
  std::vector<Element> gens8;
  for (std::uint32_t a : {0u, 1u, 2u, 4u, 5u, 6u}) gens8.push_back(c8.singleton(a));
  auto sub8 = sublattice_generated(c8.lattice, gens8);
  CHECK(join_irreducibles(sub8.lattice).size() == 6);
  auto r8 = zeta_series(sub8.lattice);
  CHECK_FALSE(r8.is_strongly_coset_like);
  auto check8 = is_good_sublattice(g8, c8, sub8.to_ambient, 0b00010001);
  CHECK(check8.normal_action);
  CHECK(check8.singleton_irreducibles);
  CHECK_FALSE(check8.at_most_two_cosets);

  std::vector<Element> everything(c6.lattice.size());
  std::iota(everything.begin(), everything.end(), 0);
  CHECK(sublattice_generated(c6.lattice, everything).lattice.size() == c6.lattice.size());
  CHECK(is_good_sublattice(g6, c6, everything, g6.all()).good());
}

TEST_CASE("partition lattice on 4 points is no coset lattice of order 6") {
  auto pi4 = partition_lattice(4).lattice;
  CHECK_FALSE(is_isomorphic(pi4, coset_lattice(cyclic(6)).lattice));
  CHECK_FALSE(is_isomorphic(pi4, coset_lattice(symmetric(3)).lattice));
}

TEST_CASE("good sublattices are strongly coset-like") {
  for (const auto& g : {cyclic(6), symmetric(3), cyclic(8), dihedral(4), direct_product(cyclic(2), cyclic(4))}) {
    auto scan = scan_good_sublattices(g, 8);
    CHECK(scan.examined > 0);
    CHECK_FALSE(scan.good.empty());
    for (const auto& f : scan.good) CHECK(f.strongly_coset_like);
  }
}
