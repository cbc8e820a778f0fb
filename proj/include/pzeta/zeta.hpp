#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pzeta/dirichlet.hpp"
#include "pzeta/lattice.hpp"

namespace pzeta {

/// Everything the zeta computation learns about one lattice.
struct ZetaReport {
  DirichletSeries series;
  std::size_t j_count = 0;
  /// |J_x| per element id (0 at the bottom).
  std::vector<std::size_t> j_below;
  /// mu(x, top) per element id.
  std::vector<BigInt> mobius_top;
  /// S(q) for every ratio |J|/|J_x| realized by a non-bottom element,
  /// including ratios whose sum cancels to zero.
  std::map<Rational, BigInt> local_sums;
  bool is_ordinary = false;
  bool is_strongly_coset_like = false;
};

/// P(L, s) = sum over x > bottom of mu(x, top) / [J : J_x]^s.
ZetaReport zeta_series(const Lattice& lattice, Exec exec = Exec::Parallel);

/// Same pipeline with J replaced by the atoms. Empty when the atoms do not
/// join to the top (no tuple of atoms generates the lattice).
std::optional<DirichletSeries> zeta_series_atom_based(const Lattice& lattice, Exec exec = Exec::Parallel);

std::map<Rational, BigInt> local_sums(const Lattice& lattice);

struct OracleOptions {
  /// Direct enumeration is used while |J_x|^s stays within this many tuples.
  std::size_t tuple_budget = 50'000'000;
  Exec exec = Exec::Parallel;
};

/// Counts s-tuples of J_x whose join is exactly x, by direct enumeration.
/// Throws BudgetExceeded when |J_x|^s exceeds the budget.
Rational direct_tuple_probability(const Lattice& lattice, Element x, unsigned s,
                                  const OracleOptions& options = {});
/// Same probability by Moebius inversion of |J_y|^s over the interval [bottom, x].
Rational inclusion_exclusion_probability(const Lattice& lattice, Element x, unsigned s);
/// Direct enumeration within budget, inclusion-exclusion beyond it.
Rational brute_force_probability(const Lattice& lattice, Element x, unsigned s,
                                 const OracleOptions& options = {});

struct OracleComparison {
  unsigned s = 0;
  Rational series_value;
  Rational oracle_value;
  bool equal = false;
};

struct OracleRecord {
  std::vector<OracleComparison> rows;
  bool all_equal() const;
};

/// Compares evaluate_exact(series, s) with brute_force_probability(L, top, s)
/// for s = 1..s_max; throws MismatchDetected on the first disagreement.
OracleRecord verify_series_against_oracle(const Lattice& lattice, unsigned s_max,
                                          const OracleOptions& options = {});

/// Structured document for a report, including the series document.
std::string report_json(const Lattice& lattice, const ZetaReport& report);

}  // namespace pzeta
