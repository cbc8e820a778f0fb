#include <random>

#include "doctest.h"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/zeta.hpp"
#include "support.hpp"

using namespace pzeta;

namespace {

Rational q(long p, long r = 1) { return make_rational(big(p), big(r)); }

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

DirichletSeries pi5_series() {
  auto s = DirichletSeries::constant(1);
  s.add_term(q(5, 3), big(-5));
  s.add_term(q(5, 2), big(-10));
  s.add_term(q(10, 3), big(20));
  s.add_term(q(5), big(30));
  s.add_term(q(10), big(-60));
  return s;
}

}  // namespace

TEST_CASE("series of named lattices") {
  auto r = zeta_series(partition_lattice(5).lattice);
  CHECK(r.series == pi5_series());
  CHECK_FALSE(r.is_ordinary);
  // No shape of 5 has sum C(part, 2) = 5, so ratio 2 is never realized.
  CHECK(r.local_sums.count(q(2)) == 0);
  CHECK(r.local_sums.size() == 6);
  CHECK(zeta_series(chain(2)).series == DirichletSeries::constant(1));
  auto c3 = DirichletSeries::constant(1);
  c3.add_term(q(2), big(-1));
  CHECK(zeta_series(chain(3)).series == c3);
}

TEST_CASE("atom-based series") {
  auto pi4 = partition_lattice(4).lattice;
  CHECK(zeta_series_atom_based(pi4) == zeta_series(pi4).series);
  CHECK_FALSE(zeta_series_atom_based(chain(3)).has_value());
  CHECK_FALSE(zeta_series_atom_based(divisibility_lattice(12)).has_value());
}

TEST_CASE("brute-force probability") {
  auto b2 = boolean_lattice(2);
  CHECK(brute_force_probability(b2, b2.top(), 2) == q(1, 2));
  auto s22 = subspace_lattice(2, 2).lattice;
  CHECK(brute_force_probability(s22, s22.top(), 2) == q(2, 3));
  CHECK(brute_force_probability(b2, b2.top(), 0) == 0);
  CHECK(error_of([&] { brute_force_probability(b2, b2.bottom(), 2); }) == ErrorCode::BottomHasNoIrreducibles);
  OracleOptions tight;
  tight.tuple_budget = 10;
  CHECK(error_of([&] { direct_tuple_probability(b2, b2.top(), 4, tight); }) == ErrorCode::BudgetExceeded);
  CHECK(brute_force_probability(b2, b2.top(), 4, tight) == q(7, 8));
}

TEST_CASE("oracle equivalence on families and random lattices") {
  auto check = [](const Lattice& L, unsigned smax) {
    auto rec = verify_series_against_oracle(L, smax);
    CHECK(rec.all_equal());
    for (unsigned s = 1; s <= smax; ++s) {
      OracleOptions serial;
      serial.exec = Exec::Serial;
      CHECK(direct_tuple_probability(L, L.top(), s, serial) == inclusion_exclusion_probability(L, L.top(), s));
    }
  };
  check(partition_lattice(4).lattice, 4);
  check(chain(2), 3);
  check(divisibility_lattice(360), 3);
  check(subspace_lattice(2, 3).lattice, 3);
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) check(testsupport::random_lattice(5, 4, rng), 3);
}

TEST_CASE("report invariants") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto L = testsupport::random_lattice(6, 5, rng);
    auto r = zeta_series(L);
    CHECK(r.series.coefficient(Rational(1)) == 1);
    CHECK(evaluate_exact(r.series, 0) == Rational(-r.mobius_top[L.bottom()]));
    for (const auto& [base, sum] : r.local_sums) CHECK(r.series.coefficient(base) == sum);
    if (is_atomistic(L)) CHECK(zeta_series_atom_based(L) == r.series);
  }
}

TEST_CASE("product law for atomistic left factors") {
  std::mt19937 rng(12);
  std::vector<Lattice> corpus{boolean_lattice(2), partition_lattice(4).lattice, subspace_lattice(2, 2).lattice,
                              chain(3), divisibility_lattice(12)};
  for (int i = 0; i < 10; ++i) corpus.push_back(testsupport::random_lattice(4, 3, rng));
  for (const auto& L : corpus) {
    if (!is_atomistic(L)) continue;
    for (const auto& K : corpus) {
      if (L.size() * K.size() > 400) continue;
      CHECK(zeta_series(lower_reduced_product(L, K)).series == zeta_series(L).series * zeta_series(K).series);
    }
  }
}

TEST_CASE("report document") {
  auto L = boolean_lattice(2);
  auto doc = report_json(L, zeta_series(L));
  CHECK(doc.find("\"isStronglyCosetLike\":true") != std::string::npos);
  CHECK(doc.find("\"canonical\"") != std::string::npos);
}
