#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "pzeta/bigint.hpp"
#include "pzeta/bitmatrix.hpp"
#include "pzeta/exec.hpp"

namespace pzeta {

using Element = std::uint32_t;
using Cover = std::pair<Element, Element>;  // (lower, upper)

struct LatticeOptions {
  /// Constructions above this many elements fail with SizeLimitExceeded.
  std::size_t max_elements = 20000;
  /// Join/meet tables are stored only up to this size; above it they are
  /// recomputed from the order bit-matrix on every query.
  std::size_t eager_table_threshold = 5000;
  Exec exec = Exec::Parallel;
};

/// A validated finite lattice with distinct bottom and top.
///
/// Element ids are the dense ids the caller supplied. Internally every
/// element also has a position in a fixed linear extension (bottom at 0,
/// top at n-1); the order bit-matrices are indexed by position so that the
/// least element of an up-set is its lowest set bit.
class Lattice {
 public:
  std::size_t size() const noexcept { return n_; }
  Element bottom() const noexcept { return bottom_; }
  Element top() const noexcept { return top_; }

  bool leq(Element x, Element y) const;
  bool less(Element x, Element y) const { return x != y && leq(x, y); }
  Element join(Element x, Element y) const;
  Element meet(Element x, Element y) const;
  bool has_tables() const noexcept { return !join_.empty(); }

  /// Transitive reduction, sorted lexicographically.
  const std::vector<Cover>& covers() const noexcept { return covers_; }
  std::span<const Element> upper_covers(Element x) const;
  std::span<const Element> lower_covers(Element x) const;

  /// Elements in the internal linear extension (bottom first).
  std::span<const Element> linear_extension() const noexcept { return order_; }
  std::size_t position(Element x) const { return pos_[x]; }

  /// Up-set / down-set of x as bit rows in position space.
  std::span<const std::uint64_t> up_row(Element x) const { return up_.row(pos_[x]); }
  std::span<const std::uint64_t> down_row(Element x) const { return down_.row(pos_[x]); }
  const BitMatrix& up_matrix() const noexcept { return up_; }
  const BitMatrix& down_matrix() const noexcept { return down_; }

  /// Length of the longest chain from bottom to x.
  std::size_t height(Element x) const { return height_[x]; }

  void check_element(Element x) const;

 private:
  friend Lattice lattice_from_covers(std::size_t, std::span<const Cover>, const LatticeOptions&);

  std::size_t n_ = 0;
  Element bottom_ = 0;
  Element top_ = 0;
  std::vector<Element> order_;
  std::vector<std::uint32_t> pos_;
  BitMatrix up_;
  BitMatrix down_;
  std::vector<Cover> covers_;
  std::vector<std::size_t> up_offsets_, down_offsets_;
  std::vector<Element> up_adj_, down_adj_;
  std::vector<std::size_t> height_;
  std::vector<Element> join_;
  std::vector<Element> meet_;
};

/// Builds and validates a lattice from (lower, upper) pairs. Redundant pairs
/// are allowed; the stored covers are re-derived as the transitive reduction.
Lattice lattice_from_covers(std::size_t n, std::span<const Cover> covers,
                            const LatticeOptions& options = {});

/// Builds a lattice from an order predicate leq(a, b) on [0, n).
Lattice lattice_from_order(std::size_t n, const std::function<bool(Element, Element)>& leq,
                           const LatticeOptions& options = {});

/// mu(x, target) for every x (zero where x is not below target).
struct MobiusVector {
  Element target = 0;
  std::vector<BigInt> values;

  const BigInt& operator[](Element x) const { return values[x]; }
};

MobiusVector mobius_vector(const Lattice& lattice, Element target, Exec exec = Exec::Parallel);

/// Memoizes one MobiusVector per target. Not thread-safe; confine to one
/// thread and share the lattice, not the cache.
class MobiusCache {
 public:
  explicit MobiusCache(const Lattice& lattice, Exec exec = Exec::Parallel)
      : lattice_(&lattice), exec_(exec) {}

  const MobiusVector& column(Element target);
  const BigInt& operator()(Element x, Element y);

 private:
  const Lattice* lattice_;
  Exec exec_;
  std::vector<std::optional<MobiusVector>> columns_;
};

/// mu(x, y); throws NotComparable unless x <= y.
BigInt mobius(const Lattice& lattice, Element x, Element y);

std::vector<Element> join_irreducibles(const Lattice& lattice);
/// J_x; throws BottomHasNoIrreducibles for the bottom.
std::vector<Element> below_irreducibles(const Lattice& lattice, Element x);
/// |J_x| for every element (0 at the bottom).
std::vector<std::size_t> below_irreducible_counts(const Lattice& lattice);
std::vector<Element> atoms(const Lattice& lattice);
std::vector<Element> coatoms(const Lattice& lattice);
bool is_atomistic(const Lattice& lattice);

/// Pair (x, y) gets id x * |K| + y.
Lattice cartesian_product(const Lattice& left, const Lattice& right,
                          const LatticeOptions& options = {});

/// Non-bottom pairs plus a fresh bottom. The bottom gets id 0 and the pair
/// (x, y) of non-bottom elements gets id 1 + rank_L(x) * (|K| - 1) + rank_K(y),
/// where rank counts non-bottom elements in id order.
Lattice lower_reduced_product(const Lattice& left, const Lattice& right,
                              const LatticeOptions& options = {});
/// Component ids of each element of lower_reduced_product(left, right); the
/// bottom maps to (left.bottom(), right.bottom()).
std::vector<std::pair<Element, Element>> lower_reduced_product_components(const Lattice& left,
                                                                          const Lattice& right);

/// New atoms get ids n .. n + k - 1.
Lattice adjoin_atoms(const Lattice& lattice, std::size_t k, const LatticeOptions& options = {});

struct Sublattice {
  Lattice lattice;
  /// Sublattice element id -> ambient element id, ascending.
  std::vector<Element> to_ambient;
};

/// Closure of generators together with bottom and top under join and meet.
Sublattice sublattice_generated(const Lattice& ambient, std::span<const Element> generators,
                                const LatticeOptions& options = {});

}  // namespace pzeta
