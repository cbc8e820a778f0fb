#include <set>

#include "doctest.h"
#include "pzeta/canonical.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/numbers.hpp"
#include "pzeta/zeta.hpp"
#include "support.hpp"

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

}  // namespace

TEST_CASE("small family shapes") {
  CHECK(is_isomorphic(boolean_lattice(1), chain(2)));
  CHECK(divisibility_lattice(12).size() == 6);
  CHECK(boolean_lattice(4).size() == 16);
  CHECK(error_of([] { chain(1); }) == ErrorCode::DegenerateLattice);
  LatticeOptions tiny;
  tiny.max_elements = 10;
  CHECK(error_of([&] { boolean_lattice(4, tiny); }) == ErrorCode::SizeLimitExceeded);
}

TEST_CASE("finite fields satisfy the field axioms") {
  for (unsigned qq : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto f = finite_field(qq);
    for (unsigned a = 0; a < qq; ++a) {
      CHECK(f.plus(a, 0) == a);
      CHECK(f.times(a, 1) == a);
      bool has_neg = false, has_inv = a == 0;
      for (unsigned b = 0; b < qq; ++b) {
        has_neg |= f.plus(a, b) == 0;
        has_inv |= f.times(a, b) == 1;
        CHECK(f.times(a, b) == f.times(b, a));
        for (unsigned c = 0; c < qq; ++c) {
          CHECK(f.times(a, f.plus(b, c)) == f.plus(f.times(a, b), f.times(a, c)));
          CHECK(f.times(a, f.times(b, c)) == f.times(f.times(a, b), c));
          CHECK(f.plus(a, f.plus(b, c)) == f.plus(f.plus(a, b), c));
        }
      }
      CHECK(has_neg);
      CHECK(has_inv);
    }
  }
  CHECK(error_of([] { finite_field(6); }) == ErrorCode::NotAPrimePower);
  CHECK(error_of([] { finite_field(1); }) == ErrorCode::NotAPrimePower);
}

TEST_CASE("subspace lattices") {
  auto s22 = subspace_lattice(2, 2);
  CHECK(s22.lattice.size() == 5);
  CHECK(atoms(subspace_lattice(3, 2).lattice).size() == 4);
  CHECK(is_isomorphic(subspace_lattice(5, 1).lattice, chain(2)));
  // Subspace counts by dimension are Gaussian binomials.
  for (auto [qq, n] : {std::pair{2u, 3u}, {2u, 4u}, {3u, 3u}, {4u, 2u}, {8u, 2u}, {9u, 2u}}) {
    auto s = subspace_lattice(qq, n);
    std::vector<BigInt> by_dim(n + 1, 0);
    for (auto d : s.dimension) by_dim[d] += 1;
    for (unsigned k = 0; k <= n; ++k) CHECK(by_dim[k] == gaussian_binomial(n, k, qq));
    auto mu = mobius_vector(s.lattice, s.lattice.top());
    for (Element x = 0; x < s.lattice.size(); ++x) {
      const unsigned c = n - s.dimension[x];
      BigInt expect = pow(BigInt(static_cast<unsigned long>(qq)), c * (c - (c ? 1 : 0)) / 2);
      if (c % 2) expect = -expect;
      CHECK(mu[x] == expect);
    }
  }
  CHECK(error_of([] { subspace_lattice(6, 2); }) == ErrorCode::NotAPrimePower);
}

TEST_CASE("closed forms match the generic engine") {
  for (std::uint64_t n : {4, 6, 8, 12, 30, 360, 210, 1024}) {
    auto L = divisibility_lattice(n);
    CHECK(zeta_series(L).series == divisibility_zeta_closed(n));
    auto mu = mobius_vector(L, L.top());
    auto divs = divisors(n);
    for (Element x = 0; x < L.size(); ++x) CHECK(mu[x] == number_mobius(n / divs[x]));
  }
  for (unsigned r = 1; r <= 6; ++r) CHECK(zeta_series(boolean_lattice(r)).series == boolean_zeta_closed(r));
  CHECK(divisibility_zeta_closed(30) == boolean_zeta_closed(3));
  for (auto [qq, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {4u, 2u}, {2u, 4u}, {3u, 3u}})
    CHECK(zeta_series(subspace_lattice(qq, n).lattice).series == subspace_zeta_closed(qq, n));
  for (unsigned n = 2; n <= 6; ++n) {
    auto P = partition_lattice(n);
    CHECK(zeta_series(P.lattice).series == partition_zeta_closed(n));
    auto mu = mobius_vector(P.lattice, P.lattice.top());
    for (Element x = 0; x < P.lattice.size(); ++x) {
      const unsigned k = *std::max_element(P.blocks[x].begin(), P.blocks[x].end()) + 1u;
      BigInt expect = factorial(k - 1);
      if ((k - 1) % 2) expect = -expect;
      CHECK(mu[x] == expect);
    }
  }
}

TEST_CASE("closed form spot values") {
  auto s22 = DirichletSeries::constant(1);
  s22.add_term(q(3), big(-3));
  CHECK(subspace_zeta_closed(2, 2) == s22);
  CHECK(evaluate_exact(boolean_zeta_closed(2), 2) == q(1, 2));
  CHECK(evaluate_exact(boolean_zeta_closed(3), 3) == q(2, 9));
  CHECK(boolean_zeta_closed(1) == DirichletSeries::constant(1));
  CHECK(partition_zeta_closed(2) == DirichletSeries::constant(1));
  for (unsigned r = 1; r <= 5; ++r)
    for (unsigned s = 1; s <= 9; ++s)
      CHECK(evaluate_exact(boolean_zeta_closed(r), s) * Rational(pow(BigInt(static_cast<unsigned long>(r)), s)) ==
            Rational(factorial(r) * stirling2(s, r)));
}

TEST_CASE("divisibility series counts tuples covering a fixed subset") {
  // Omega^s * P(O_n, s) = # s-tuples over an Omega-set containing a fixed
  // r-subset (one representative per prime).
  for (std::uint64_t n : {12, 24, 360}) {
    const auto f = factorize(n);
    const unsigned omega = f.big_omega();
    const unsigned r = static_cast<unsigned>(f.distinct_primes());
    for (unsigned s = 1; s <= 5; ++s) {
      std::uint64_t count = 0, total = 1;
      for (unsigned i = 0; i < s; ++i) total *= omega;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t seen = 0, c = code;
        for (unsigned i = 0; i < s; ++i, c /= omega) seen |= std::uint64_t{1} << (c % omega);
        if ((seen & ((std::uint64_t{1} << r) - 1)) == (std::uint64_t{1} << r) - 1) ++count;
      }
      CHECK(evaluate_exact(divisibility_zeta_closed(n), s) * Rational(pow(BigInt(omega), s)) ==
            Rational(BigInt(static_cast<unsigned long>(count))));
    }
  }
}

TEST_CASE("q to 1 limit") {
  for (unsigned n : {2u, 3u})
    for (unsigned s = 1; s <= 4; ++s) CHECK(q_to_one_limit_check(n, s, 1e-6L) < 1e-3L);
  CHECK(error_of([] { q_to_one_limit_check(2, 2, 0); }) == ErrorCode::SingularInput);
}

TEST_CASE("partition lattices") {
  CHECK(partition_lattice(4).lattice.size() == 15);
  auto p5 = partition_lattice(5);
  CHECK(join_irreducibles(p5.lattice).size() == 10);
  auto counts = below_irreducible_counts(p5.lattice);
  for (Element x = 0; x < p5.lattice.size(); ++x) {
    std::vector<unsigned> sizes(5, 0);
    for (auto b : p5.blocks[x]) ++sizes[b];
    std::size_t expect = 0;
    for (auto sz : sizes) expect += sz * (sz ? sz - 1 : 0) / 2;
    CHECK(counts[x] == expect);
  }
  CHECK(error_of([] { partition_lattice(9); }) == ErrorCode::SizeLimitExceeded);
}

TEST_CASE("d-divisible partition lattices") {
  auto p22 = d_divisible_partition_lattice(2, 2);
  CHECK(p22.lattice.size() == 5);
  CHECK(join_irreducibles(p22.lattice).size() == 3);
  auto series = DirichletSeries::constant(1);
  series.add_term(q(3), big(-3));
  CHECK(zeta_series(p22.lattice).series == series);
  auto p23 = d_divisible_partition_lattice(2, 3);
  CHECK(join_irreducibles(p23.lattice).size() == 15);
  CHECK(d_divisible_total_j(2, 3) == 15);
  CHECK(d_divisible_j_count(2, {4, 4}) == 9);
  CHECK(d_divisible_j_count(2, {8}) == 105);
  CHECK(d_divisible_j_count(3, {3}) == 1);
  CHECK(error_of([] { d_divisible_j_count(2, {3}); }) == ErrorCode::PartNotDivisible);
  // |J_P| from the lattice equals the product formula.
  for (auto [d, n] : {std::pair{2u, 4u}, {3u, 3u}, {2u, 5u}}) {
    auto P = d_divisible_partition_lattice(d, n);
    auto counts = below_irreducible_counts(P.lattice);
    CHECK(counts[P.lattice.top()] == d_divisible_total_j(d, n));
    for (Element x = 1; x < P.lattice.size(); ++x) {
      std::vector<unsigned> sizes(d * n, 0);
      for (auto b : P.blocks[x]) ++sizes[b];
      std::vector<unsigned> parts;
      for (auto sz : sizes)
        if (sz) parts.push_back(sz);
      CHECK(BigInt(static_cast<unsigned long>(counts[x])) == d_divisible_j_count(d, parts));
    }
  }
  CHECK(error_of([] { d_divisible_partition_lattice(2, 7); }) == ErrorCode::SizeLimitExceeded);
}

TEST_CASE("family specs") {
  auto spec = parse_family("subspace:2,3");
  CHECK(spec.kind == "subspace");
  CHECK(spec.params == std::vector<std::uint64_t>{2, 3});
  CHECK(spec.text() == "subspace:2,3");
  CHECK(build_family(parse_family("ddiv:2,2")).size() == 5);
  CHECK(family_closed_form(parse_family("boolean:3")) == boolean_zeta_closed(3));
  CHECK_FALSE(family_closed_form(parse_family("chain:4")).has_value());
  CHECK(error_of([] { parse_family("boolean"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_family("boolean:x"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_family("torus:3"); }) == ErrorCode::ParseError);
  CHECK(error_of([] { parse_family("subspace:2"); }) == ErrorCode::ParseError);
}
