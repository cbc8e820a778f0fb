#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pzeta/dirichlet.hpp"
#include "pzeta/lattice.hpp"

namespace pzeta {

// Boolean, divisibility, chain ---------------------------------------------

/// Subsets of {0..r-1}; the element id is the subset bitmask.
Lattice boolean_lattice(unsigned r, const LatticeOptions& options = {});
/// Divisors of n in increasing order; element i is divisors(n)[i].
Lattice divisibility_lattice(std::uint64_t n, const LatticeOptions& options = {});
/// 0 < 1 < ... < k-1.
Lattice chain(unsigned k, const LatticeOptions& options = {});

DirichletSeries boolean_zeta_closed(unsigned r);
DirichletSeries divisibility_zeta_closed(std::uint64_t n);

// Subspace lattices ----------------------------------------------------------

/// Addition/multiplication tables of F_q. Prime q uses modular arithmetic;
/// q in {4, 8, 9} uses tables from a fixed irreducible polynomial.
struct FiniteField {
  unsigned q = 0;
  std::vector<std::uint8_t> add;  // q*q
  std::vector<std::uint8_t> mul;  // q*q

  unsigned plus(unsigned a, unsigned b) const { return add[a * q + b]; }
  unsigned times(unsigned a, unsigned b) const { return mul[a * q + b]; }
};

FiniteField finite_field(unsigned q);

struct SubspaceLattice {
  Lattice lattice;
  /// Dimension of each element.
  std::vector<unsigned> dimension;
};

/// Subspaces of F_q^n ordered by inclusion; id 0 is the zero subspace.
SubspaceLattice subspace_lattice(unsigned q, unsigned n, const LatticeOptions& options = {});
DirichletSeries subspace_zeta_closed(unsigned q, unsigned n);

/// |closed form of P(S(F_{1+h}^n), s) - P(B_n, s)| evaluated in floating point.
long double q_to_one_limit_check(unsigned n, unsigned s, long double h);

// Partition lattices ---------------------------------------------------------

struct PartitionLattice {
  Lattice lattice;
  /// Block label of each point 0..N-1 for every element, as a restricted
  /// growth string. The artificial bottom of a d-divisible lattice has an
  /// empty vector.
  std::vector<std::vector<std::uint8_t>> blocks;
};

/// Set partitions of {0..n-1} under refinement; default budget n <= 8.
PartitionLattice partition_lattice(unsigned n, const LatticeOptions& options = {}, unsigned max_n = 8);
DirichletSeries partition_zeta_closed(unsigned n);

/// Partitions of {0..dn-1} into blocks of size divisible by d, plus an
/// artificial bottom (id 0); default budget dn <= 12.
PartitionLattice d_divisible_partition_lattice(unsigned d, unsigned n, const LatticeOptions& options = {},
                                               unsigned max_points = 12);
/// Number of atoms below a partition whose block sizes are the given parts
/// (each a multiple of d): prod (d p_i)! / ((d!)^p_i p_i!).
BigInt d_divisible_j_count(unsigned d, const std::vector<unsigned>& parts);
/// (dn)! / ((d!)^n n!), the atom count of the whole lattice.
BigInt d_divisible_total_j(unsigned d, unsigned n);

// Family specs used by the CLI ----------------------------------------------

struct FamilySpec {
  std::string kind;  // boolean, divisor, subspace, partition, ddiv, chain
  std::vector<std::uint64_t> params;
  std::string text() const;
};

/// Parses "boolean:r", "divisor:n", "subspace:q,n", "partition:n", "ddiv:d,n", "chain:k".
FamilySpec parse_family(const std::string& text);
Lattice build_family(const FamilySpec& spec, const LatticeOptions& options = {});
/// Closed-form series when the family has one.
std::optional<DirichletSeries> family_closed_form(const FamilySpec& spec);

}  // namespace pzeta
