#include <random>

#include "doctest.h"
#include "pzeta/canonical.hpp"
#include "pzeta/cosetlike.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/groups.hpp"
#include "pzeta/kernels.hpp"
#include "pzeta/numbers.hpp"
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

bool has_ratio(const ZetaReport& r, const Rational& ratio) {
  for (std::size_t x = 0; x < r.j_below.size(); ++x)
    if (r.j_below[x] && make_rational(BigInt(static_cast<unsigned long>(r.j_count)),
                                      BigInt(static_cast<unsigned long>(r.j_below[x]))) == ratio)
      return true;
  return false;
}

}  // namespace

TEST_CASE("fixtures") {
  for (const auto& name : fixture_names()) {
    auto L = load_fixture(name);
    auto c = classify(L);
    CHECK(c.weak);
    CHECK_FALSE(c.strong);
    CHECK(has_ratio(c.report, q(8, 3)));
    CHECK(c.report.j_count == 8);
  }
  auto eleven = classify(load_fixture("eleven_point"));
  CHECK(eleven.report.local_sums.at(q(8, 3)) == 0);
  CHECK(error_of([] { load_fixture("twelve_point"); }) == ErrorCode::UnknownFixture);
}

TEST_CASE("adjoining atoms to the fixtures") {
  for (const auto& name : fixture_names()) {
    auto base = load_fixture(name);
    // Bases become (8 + k) / |J_x| with |J_x| in {1, 2, 3, 4}, and the ratio-3
    // local sum is zero: weak iff 4 | 8 + k, strong iff 12 | 8 + k.
    for (std::size_t k = 0; k <= 16; ++k) {
      auto c = classify(adjoin_atoms(base, k));
      CHECK(c.report.j_count == 8 + k);
      CHECK(c.weak == (k % 4 == 0));
      CHECK(c.strong == ((8 + k) % 12 == 0));
      if (k % 4 == 0 && k % 3 != 1) CHECK((c.weak && !c.strong));
    }
  }
}

TEST_CASE("classification on named lattices") {
  for (auto g : {cyclic(6), symmetric(3), dihedral(4)}) CHECK(classify(coset_lattice(g).lattice).strong);
  auto b3 = boolean_lattice(3);
  // Coatoms of B3 carry two irreducibles and 2 does not divide 3.
  auto wb = coatom_criterion(b3);
  REQUIRE(wb.has_value());
  CHECK(below_irreducible_counts(b3)[*wb] == 2);
  CHECK_FALSE(classify(b3).weak);
  CHECK_FALSE(coatom_criterion(load_fixture("ten_point")).has_value());
  auto p5 = partition_lattice(5);
  auto w = coatom_criterion(p5.lattice);
  REQUIRE(w.has_value());
  CHECK(below_irreducible_counts(p5.lattice)[*w] == 6);
  CHECK_FALSE(classify(p5.lattice).weak);
}

TEST_CASE("strong implies weak and the coatom criterion implies not weak") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    auto L = testsupport::random_lattice(6, 2 + trial % 6, rng);
    auto c = classify(L);
    if (c.strong) CHECK(c.weak);
    if (coatom_criterion(L)) CHECK_FALSE(c.weak);
    CHECK(c.weak == is_ordinary(c.report.series));
  }
}

TEST_CASE("partition lattices: shape level against full lattices") {
  for (unsigned n = 2; n <= 7; ++n) {
    auto full = classify(partition_lattice(n).lattice);
    CHECK(partition_strong_check(n).strong == full.strong);
    CHECK(full.strong == (n <= 4));
    CHECK(full.weak == (n <= 4));
  }
  auto p5 = partition_strong_check(5);
  CHECK(p5.failing_shape == std::vector<unsigned>{4, 1});
  CHECK(partition_strong_check(2).strong);
  for (unsigned n = 5; n <= 30; ++n) CHECK_FALSE(partition_strong_check(n).strong);
}

TEST_CASE("d-divisible lattices: shape level") {
  for (unsigned n = 2; n <= 30; ++n) CHECK(ddiv_strong_check(2, n).strong == (n == 2 || n == 3 || n == 5));
  auto f = ddiv_strong_check(2, 4);
  CHECK(f.failing_shape == std::vector<unsigned>{2, 2});
  CHECK(f.failing_j_below == 9);
  CHECK(f.j_count == 105);
  for (auto [d, n] : {std::pair{2u, 2u}, {2u, 3u}, {2u, 4u}, {3u, 2u}, {3u, 3u}, {4u, 2u}})
    CHECK(ddiv_strong_check(d, n).strong == classify(d_divisible_partition_lattice(d, n).lattice).strong);
}

TEST_CASE("binomial divisibility checks") {
  CHECK(central_binomial_check(2));
  CHECK(central_binomial_check(3));
  CHECK_FALSE(central_binomial_check(1));
  CHECK(odd_case_check(3));
  CHECK(odd_case_check(4));
  CHECK(odd_case_check(15, DivisibilityMethod::Legendre));
  // Exact and multiplicity paths agree where both are cheap.
  for (std::uint64_t m = 1; m <= 400; ++m) {
    CHECK(central_binomial_check(m, DivisibilityMethod::Exact) == central_binomial_check(m, DivisibilityMethod::Legendre));
    CHECK(odd_case_check(m, DivisibilityMethod::Exact) == odd_case_check(m, DivisibilityMethod::Legendre));
  }
  for (std::uint64_t m : {2499u, 2500u, 2501u, 3000u}) {
    CHECK(central_binomial_check(m, DivisibilityMethod::Exact) == central_binomial_check(m));
    CHECK(odd_case_check(m, DivisibilityMethod::Exact) == odd_case_check(m));
  }
}

TEST_CASE("Nagura primes") {
  CHECK(nagura_prime(25) == std::optional<std::uint64_t>{29});
  CHECK_FALSE(nagura_prime(24).has_value());
  CHECK(nagura_prime(100) == std::optional<std::uint64_t>{101});
  CHECK_FALSE(kernels::first_nagura_gap(25, 20000, Exec::Serial).has_value());
  CHECK(kernels::first_nagura_gap(1, 100, Exec::Parallel) == kernels::first_nagura_gap(1, 100, Exec::Serial));
  for (std::uint64_t n = 1; n <= 2000; ++n)
    CHECK(nagura_prime(n).has_value() == !kernels::first_nagura_gap(n, n, Exec::Serial).has_value());
}

TEST_CASE("witness primes") {
  auto w = mainthm_witness(3, 20);
  CHECK(w.interval_low == q(80, 3));
  CHECK(w.interval_high == q(30));
  CHECK(w.prime == std::optional<std::uint64_t>{29});
  CHECK(w.confirmed());
  auto w4 = mainthm_witness(4, 10);
  CHECK(w4.prime == std::optional<std::uint64_t>{19});
  CHECK(w4.square_exceeds);
  CHECK_FALSE(mainthm_witness(3, 1).prime.has_value());
  // Confirmed witnesses really break divisibility.
  for (unsigned d : {3u, 4u, 5u})
    for (std::uint64_t m = 1; m <= 40; ++m)
      if (mainthm_witness(d, m).confirmed()) CHECK(binomial(2 * d * m, d * m) % binomial(2 * m, m) != 0);
  // Observed thresholds. For d = 5, m = 76 the interval (1520/13, 380/3) holds no prime.
  const std::pair<unsigned, std::uint64_t> observed[] = {{3, 25}, {4, 19}, {5, 77}};
  for (auto [d, expected] : observed) {
    auto m0 = mainthm_threshold(d, 500);
    REQUIRE(m0.has_value());
    CHECK(*m0 == expected);
    CHECK(mainthm_threshold(d, 500, Exec::Serial) == m0);
  }
  CHECK_FALSE(mainthm_witness(5, 76).prime.has_value());
}

TEST_CASE("consecutive products") {
  CHECK(p0prime_divisibility(4, 3));
  for (unsigned d = 2; d <= 12; ++d)
    for (std::uint64_t n = 2; n <= 200; ++n) CHECK(p0prime_divisibility(d, n));
}
