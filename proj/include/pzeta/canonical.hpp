#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pzeta/lattice.hpp"

namespace pzeta {

/// Finite poset given by its cover digraph and full order relation.
/// Works for any poset, not only lattices; the search enumerator uses it on
/// lattices with the bottom removed.
struct PosetGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> up;    // upper covers
  std::vector<std::vector<std::uint32_t>> down;  // lower covers
  std::vector<std::vector<bool>> leq;
};

PosetGraph poset_graph(const Lattice& lattice);
/// Builds the cover digraph from a reflexive, transitive relation.
PosetGraph poset_graph_from_order(std::size_t n, const std::vector<std::vector<bool>>& leq);

struct CanonicalLabeling {
  /// element -> canonical label; labels form a linear extension.
  std::vector<std::uint32_t> label;
  /// Upper-triangular order bits in label order, packed MSB-first; when
  /// vertex colors were supplied they follow, one word per label.
  std::vector<std::uint64_t> code;
};

/// Refinement by (height, colors of upper/lower covers) to an equitable
/// partition, then individualization-refinement backtracking with
/// automorphism pruning. colors, when non-empty, must be invariant data the
/// caller wants preserved (e.g. a marked vertex).
CanonicalLabeling canonical_labeling(const PosetGraph& poset, std::span<const std::uint32_t> colors = {});

struct CanonicalForm {
  std::size_t n = 0;
  std::string hex;

  auto operator<=>(const CanonicalForm&) const = default;
};

CanonicalForm canonical_form(const Lattice& lattice);
CanonicalForm canonical_form(const PosetGraph& poset);
bool is_isomorphic(const Lattice& a, const Lattice& b);

/// Hex of the upper-triangular bit string (n(n-1)/2 bits, MSB first).
std::string order_bits_hex(std::size_t n, std::span<const std::uint64_t> code);
/// Inverse of canonical_form: the lattice whose canonical order matrix is hex,
/// with element ids equal to canonical labels.
Lattice lattice_from_canonical(const CanonicalForm& form, const LatticeOptions& options = {});

}  // namespace pzeta
