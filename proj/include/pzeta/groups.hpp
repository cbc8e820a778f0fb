#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pzeta/dirichlet.hpp"
#include "pzeta/lattice.hpp"

namespace pzeta {

/// Subsets of a group of order <= 64 as bitmasks over element ids.
using GroupMask = std::uint64_t;

constexpr std::size_t kMaxGroupOrder = 64;

/// A finite group given by its Cayley table; elements are 0..order-1.
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  std::uint32_t identity() const noexcept { return identity_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order_ + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  const std::string& name() const noexcept { return name_; }
  const std::string& label(std::uint32_t a) const { return labels_[a]; }
  GroupMask all() const noexcept { return order_ == 64 ? ~GroupMask{0} : (GroupMask{1} << order_) - 1; }

 private:
  friend FiniteGroup group_from_table(std::size_t, std::vector<std::uint32_t>, std::string,
                                      std::vector<std::string>);
  std::size_t order_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::string name_;
  std::vector<std::string> labels_;
};

/// Validates closure, associativity (exhaustively), identity and inverses.
/// Throws OrderLimitExceeded above order 64 and NotAGroup on failure.
FiniteGroup group_from_table(std::size_t order, std::vector<std::uint32_t> table, std::string name = "",
                             std::vector<std::string> labels = {});

FiniteGroup cyclic(std::size_t n);
/// Symmetric group on n <= 4 points; elements in lexicographic order of
/// one-line notation, identity first.
FiniteGroup symmetric(std::size_t n);
/// Dihedral group of order 2n: ids 0..n-1 are r^i, ids n..2n-1 are s r^i.
FiniteGroup dihedral(std::size_t n);
/// Pair (g, h) gets id g * |H| + h.
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Parses "cyclic:n", "sym:n", "dihedral:n", "prod:<spec>,<spec>".
FiniteGroup parse_group(const std::string& spec);

/// Subgroup generated by a set of elements.
GroupMask generated_subgroup(const FiniteGroup& g, GroupMask generators);
/// Left coset a * H as a mask.
GroupMask left_translate(const FiniteGroup& g, std::uint32_t a, GroupMask set);
bool is_normal(const FiniteGroup& g, GroupMask subgroup);

/// All subgroups sorted by (size, mask); the trivial subgroup is first and
/// the whole group last.
std::vector<GroupMask> subgroups(const FiniteGroup& g);
/// Subgroup lattice with element i = subgroups(g)[i].
Lattice subgroup_lattice(const FiniteGroup& g, const LatticeOptions& options = {});

/// sum over H <= G of mu(H, G) / [G:H]^s.
DirichletSeries group_zeta(const FiniteGroup& g);
/// Fraction of s-tuples of G generating G, by direct count; BudgetExceeded
/// when |G|^s exceeds the budget.
Rational tuple_generation_probability(const FiniteGroup& g, unsigned s, std::uint64_t budget = 50'000'000);

struct CosetLattice {
  Lattice lattice;
  /// Members of each element; element 0 is the empty set.
  std::vector<GroupMask> members;
  /// Index into `subgroups` of the subgroup of each coset (-1 for the empty set).
  std::vector<int> subgroup;
  std::vector<GroupMask> subgroups;
  /// Human-readable coset descriptions.
  std::vector<std::string> legend;
  /// (mask, id) sorted by mask.
  std::vector<std::pair<GroupMask, Element>> by_mask;

  /// Element id holding exactly this member set, or size() when absent.
  Element find(GroupMask mask) const;
  /// Id of the singleton coset {a}.
  Element singleton(std::uint32_t a) const { return find(GroupMask{1} << a); }
};

/// All left cosets of all subgroups plus the empty set, ordered by inclusion.
/// Element 0 is the empty set and element 1 + a is the singleton {a}.
CosetLattice coset_lattice(const FiniteGroup& g, const LatticeOptions& options = {});

/// Join of two cosets x1 H1 and x2 H2 as x1 <x1^-1 x2, H1, H2>.
Element coset_join(const FiniteGroup& g, const CosetLattice& c, Element a, Element b);

/// Replaces c / q^(s+1) by (c/q) / q^s; MismatchDetected when some base is
/// not an integer dividing its coefficient.
DirichletSeries shift_exponent_down(const DirichletSeries& series);

struct IdentityRow {
  unsigned s = 0;
  Rational lhs, rhs;
  bool equal = false;
};

struct IdentityRecord {
  DirichletSeries lhs_series, rhs_series;
  bool series_equal = false;
  std::vector<IdentityRow> rows;
  bool all_equal() const;
};

/// P(C(G), s + 1) = P(G, s) for s = 0..s_max and at series level.
/// Throws MismatchDetected on failure.
IdentityRecord verify_brown_identity(const FiniteGroup& g, unsigned s_max);

struct CoprimeRecord {
  IdentityRecord series;
  bool coset_lattices_isomorphic = false;
};

/// P(G x H) = P(G) P(H) and C(G x H) = C(G) * C(H) (lower reduced product)
/// for coprime orders. Throws NotCoprimeOrders or MismatchDetected.
CoprimeRecord verify_coprime_product(const FiniteGroup& g, const FiniteGroup& h, unsigned s_max);

struct GoodSublatticeCheck {
  bool normal_action = false;          // H normal and h.L = L for every h in H
  bool singleton_irreducibles = false;  // J(L) consists of singleton cosets
  bool at_most_two_cosets = false;     // elements of J(L) lie in <= 2 cosets of H
  bool good() const { return normal_action && singleton_irreducibles && at_most_two_cosets; }
};

/// `elements` are the ambient ids of a sublattice of c.
GoodSublatticeCheck is_good_sublattice(const FiniteGroup& g, const CosetLattice& c,
                                       const std::vector<Element>& elements, GroupMask h);

struct GoodSublatticeFinding {
  GroupMask normal_subgroup = 0;
  GroupMask seed = 0;  // singletons used as generators
  std::size_t size = 0;
  bool strongly_coset_like = false;
  bool isomorphic_to_pi4 = false;
};

struct GoodSublatticeScan {
  std::size_t examined = 0;
  std::vector<GoodSublatticeFinding> good;
};

/// For every normal subgroup H and every union U of one or two cosets of H
/// with |U| <= max_union, closes each subset of singletons in U (at least
/// two) and records the good sublattices. Deterministic.
GoodSublatticeScan scan_good_sublattices(const FiniteGroup& g, unsigned max_union = 8,
                                         const LatticeOptions& options = {});

}  // namespace pzeta
