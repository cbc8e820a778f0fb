#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pzeta/bigint.hpp"
#include "pzeta/lattice.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

struct StrongFailure {
  Element element = 0;
  std::size_t j_below = 0;
  std::size_t j_count = 0;
};

struct Classification {
  bool strong = false;
  bool weak = false;
  std::vector<StrongFailure> strong_failures;
  /// Bases with nonzero local sum that are not integers.
  std::vector<Rational> non_integer_bases;
  ZetaReport report;
};

/// strong: |J_x| divides |J| for every x above the bottom.
/// weak: every nonzero local sum sits at an integer base.
Classification classify(const Lattice& lattice, Exec exec = Exec::Parallel);

/// An element of maximal |J_x| among L minus {bottom, top} whose |J_x| does
/// not divide |J|. When present the lattice is not weakly coset-like.
std::optional<Element> coatom_criterion(const Lattice& lattice);

std::string classification_json(const Lattice& lattice, const Classification& c);

// Shape-level checks -----------------------------------------------------------

struct ShapeCheck {
  bool strong = true;
  std::size_t shapes_checked = 0;
  /// First failing shape in decreasing lexicographic order, with its |J_P| and |J|.
  std::optional<std::vector<unsigned>> failing_shape;
  BigInt failing_j_below = 0;
  BigInt j_count = 0;
};

/// Pi_n: for every shape other than all singletons, sum C(part, 2) divides C(n, 2).
ShapeCheck partition_strong_check(unsigned n);
/// Pi^d_dn: for every shape p of n, prod (d p_i)!/((d!)^p_i p_i!) divides the
/// atom count of the whole lattice.
ShapeCheck ddiv_strong_check(unsigned d, unsigned n);

// Divisibility witnesses --------------------------------------------------------

enum class DivisibilityMethod { Auto, Exact, Legendre };

/// Arguments above this use prime multiplicities under Auto.
constexpr std::uint64_t kExactArgumentLimit = 10'000;

/// C(2m, m) does not divide C(4m, 2m).
bool central_binomial_check(std::uint64_t m, DivisibilityMethod method = DivisibilityMethod::Auto);
/// (2m+1) C(2m, m) does not divide (4m+1) C(4m, 2m).
bool odd_case_check(std::uint64_t m, DivisibilityMethod method = DivisibilityMethod::Auto);

/// Smallest prime p with n < p < 6n/5.
std::optional<std::uint64_t> nagura_prime(std::uint64_t n);

struct WitnessPrime {
  unsigned d = 0;
  std::uint64_t m = 0;
  Rational delta;
  /// Open interval (2dm / (2 delta + 1/2), dm / delta).
  Rational interval_low, interval_high;
  std::optional<std::uint64_t> prime;
  bool square_exceeds = false;        // p^2 > 2dm
  bool binomial_fails = false;        // v_p(C(2m,m)) > v_p(C(2dm,dm))
  bool odd_product_coprime = false;   // p does not divide prod_{s=1}^{d-1} (2dm + s)
  bool confirmed() const { return prime && square_exceeds && binomial_fails && odd_product_coprime; }
};

/// Scans the interval upwards and returns the first prime meeting all three
/// conditions, else the first prime in the interval, else no prime.
WitnessPrime mainthm_witness(unsigned d, std::uint64_t m);

/// Least m0 in [1, m_max] such that mainthm_witness(d, m) is confirmed for
/// every m in [m0, m_max]; absent when m_max itself fails.
std::optional<std::uint64_t> mainthm_threshold(unsigned d, std::uint64_t m_max, Exec exec = Exec::Parallel);

/// (d-1)! divides (dn-1)(dn-2)...(dn-d+1).
bool p0prime_divisibility(unsigned d, std::uint64_t n);

// Fixtures ----------------------------------------------------------------------

/// "ten_point" or "eleven_point"; validated against their known series.
Lattice load_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace pzeta
