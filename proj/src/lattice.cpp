#include "pzeta/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "pzeta/error.hpp"
#include "pzeta/kernels.hpp"

namespace pzeta {

namespace {

std::string pair_text(Element a, Element b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

void check_size(std::size_t n, const LatticeOptions& options) {
  if (n > options.max_elements)
    fail(ErrorCode::SizeLimitExceeded, "lattice of " + std::to_string(n) + " elements exceeds budget of " +
                                           std::to_string(options.max_elements));
}

}  // namespace

void Lattice::check_element(Element x) const {
  if (x >= n_) fail(ErrorCode::InvalidElement, "element " + std::to_string(x) + " out of range");
}

bool Lattice::leq(Element x, Element y) const { return up_.test(pos_[x], pos_[y]); }

Element Lattice::join(Element x, Element y) const {
  if (!join_.empty()) return join_[static_cast<std::size_t>(x) * n_ + y];
  return order_[*kernels::join_position(up_, pos_[x], pos_[y])];
}

Element Lattice::meet(Element x, Element y) const {
  if (!meet_.empty()) return meet_[static_cast<std::size_t>(x) * n_ + y];
  return order_[*kernels::meet_position(down_, pos_[x], pos_[y])];
}

std::span<const Element> Lattice::upper_covers(Element x) const {
  return {up_adj_.data() + up_offsets_[x], up_offsets_[x + 1] - up_offsets_[x]};
}

std::span<const Element> Lattice::lower_covers(Element x) const {
  return {down_adj_.data() + down_offsets_[x], down_offsets_[x + 1] - down_offsets_[x]};
}

Lattice lattice_from_covers(std::size_t n, std::span<const Cover> input, const LatticeOptions& options) {
  check_size(n, options);
  if (n == 0) fail(ErrorCode::NoBoundedStructure, "empty poset");
  std::vector<std::vector<Element>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (auto [a, b] : input) {
    if (a >= n || b >= n) fail(ErrorCode::InvalidElement, "cover " + pair_text(a, b) + " out of range");
    if (a == b) fail(ErrorCode::CyclicCovers, "self-cover at " + std::to_string(a));
    succ[a].push_back(b);
  }
  for (auto& s : succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (auto b : s) ++indegree[b];
  }

  // Kahn's algorithm with a min-heap so the linear extension is deterministic.
  Lattice L;
  L.n_ = n;
  std::priority_queue<Element, std::vector<Element>, std::greater<>> ready;
  for (Element x = 0; x < n; ++x)
    if (indegree[x] == 0) ready.push(x);
  while (!ready.empty()) {
    Element x = ready.top();
    ready.pop();
    L.order_.push_back(x);
    for (auto b : succ[x])
      if (--indegree[b] == 0) ready.push(b);
  }
  if (L.order_.size() != n) fail(ErrorCode::CyclicCovers, "cover relation contains a cycle");
  L.pos_.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) L.pos_[L.order_[p]] = static_cast<std::uint32_t>(p);

  L.up_ = BitMatrix(n);
  for (std::size_t p = n; p-- > 0;) {
    auto row = L.up_.row(p);
    row[p / 64] |= std::uint64_t{1} << (p % 64);
    for (auto b : succ[L.order_[p]]) {
      auto other = L.up_.row(L.pos_[b]);
      for (std::size_t w = 0; w < row.size(); ++w) row[w] |= other[w];
    }
  }
  L.down_ = BitMatrix(n);
  for (std::size_t p = 0; p < n; ++p)
    for_each_bit(L.up_.row(p), [&](std::size_t q) { L.down_.set(q, p); });

  // Bottom must be below everything, top above everything.
  if (L.up_.row_count(0) != n || L.down_.row_count(n - 1) != n)
    fail(ErrorCode::NoBoundedStructure, "poset lacks a unique minimum or maximum");
  L.bottom_ = L.order_.front();
  L.top_ = L.order_.back();
  if (n == 1) fail(ErrorCode::DegenerateLattice, "one-element lattice has bottom = top");

  // Transitive reduction: y covers x iff y is minimal in the strict up-set of x.
  std::vector<std::vector<Element>> ups(n), downs(n);
  std::vector<std::uint64_t> dominated(L.up_.words());
  for (std::size_t p = 0; p < n; ++p) {
    std::fill(dominated.begin(), dominated.end(), 0);
    const Element x = L.order_[p];
    for_each_bit(L.up_.row(p), [&](std::size_t q) {
      if (q == p || ((dominated[q / 64] >> (q % 64)) & 1u)) return;
      const Element y = L.order_[q];
      ups[x].push_back(y);
      downs[y].push_back(x);
      auto r = L.up_.row(q);
      for (std::size_t w = 0; w < dominated.size(); ++w) dominated[w] |= r[w];
    });
  }
  L.up_offsets_.assign(n + 1, 0);
  L.down_offsets_.assign(n + 1, 0);
  for (Element x = 0; x < n; ++x) {
    std::sort(ups[x].begin(), ups[x].end());
    std::sort(downs[x].begin(), downs[x].end());
    L.up_offsets_[x + 1] = L.up_offsets_[x] + ups[x].size();
    L.down_offsets_[x + 1] = L.down_offsets_[x] + downs[x].size();
    for (auto y : ups[x]) {
      L.up_adj_.push_back(y);
      L.covers_.emplace_back(x, y);
    }
    L.down_adj_.insert(L.down_adj_.end(), downs[x].begin(), downs[x].end());
  }

  L.height_.assign(n, 0);
  for (auto x : L.order_)
    for (auto y : ups[x]) L.height_[y] = std::max(L.height_[y], L.height_[x] + 1);

  const bool store = n <= options.eager_table_threshold;
  auto tables = kernels::join_meet_tables(L.up_, L.down_, store, options.exec);
  if (tables.failure) {
    auto [p, q] = *tables.failure;
    fail(ErrorCode::NotALattice, "elements " + pair_text(L.order_[p], L.order_[q]) +
                                     " lack a unique least upper or greatest lower bound");
  }
  if (store) {
    L.join_.assign(n * n, 0);
    L.meet_.assign(n * n, 0);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t xy = static_cast<std::size_t>(L.order_[p]) * n + L.order_[q];
        L.join_[xy] = L.order_[tables.join[p * n + q]];
        L.meet_[xy] = L.order_[tables.meet[p * n + q]];
      }
  }
  return L;
}

Lattice lattice_from_order(std::size_t n, const std::function<bool(Element, Element)>& leq,
                           const LatticeOptions& options) {
  check_size(n, options);
  std::vector<Cover> relation;
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (a != b && leq(a, b)) relation.emplace_back(a, b);
  return lattice_from_covers(n, relation, options);
}

MobiusVector mobius_vector(const Lattice& lattice, Element target, Exec exec) {
  lattice.check_element(target);
  auto column = kernels::mobius_column(lattice.up_matrix(), lattice.down_matrix(), lattice.position(target), exec);
  MobiusVector out{target, std::vector<BigInt>(lattice.size())};
  for (Element x = 0; x < lattice.size(); ++x) out.values[x] = std::move(column[lattice.position(x)]);
  return out;
}

const MobiusVector& MobiusCache::column(Element target) {
  lattice_->check_element(target);
  if (columns_.empty()) columns_.resize(lattice_->size());
  auto& slot = columns_[target];
  if (!slot) slot = mobius_vector(*lattice_, target, exec_);
  return *slot;
}

const BigInt& MobiusCache::operator()(Element x, Element y) {
  lattice_->check_element(x);
  if (!lattice_->leq(x, y)) fail(ErrorCode::NotComparable, pair_text(x, y) + " are not comparable as x <= y");
  return column(y)[x];
}

BigInt mobius(const Lattice& lattice, Element x, Element y) {
  lattice.check_element(x);
  lattice.check_element(y);
  if (!lattice.leq(x, y)) fail(ErrorCode::NotComparable, pair_text(x, y) + " are not comparable as x <= y");
  return mobius_vector(lattice, y)[x];
}

std::vector<Element> join_irreducibles(const Lattice& lattice) {
  std::vector<Element> out;
  for (Element x = 0; x < lattice.size(); ++x)
    if (lattice.lower_covers(x).size() == 1) out.push_back(x);
  return out;
}

std::vector<Element> below_irreducibles(const Lattice& lattice, Element x) {
  lattice.check_element(x);
  if (x == lattice.bottom()) fail(ErrorCode::BottomHasNoIrreducibles, "the bottom has no join-irreducibles below it");
  std::vector<Element> out;
  for (auto j : join_irreducibles(lattice))
    if (lattice.leq(j, x)) out.push_back(j);
  return out;
}

std::vector<std::size_t> below_irreducible_counts(const Lattice& lattice) {
  const std::size_t n = lattice.size();
  std::vector<std::uint64_t> mask(lattice.up_matrix().words(), 0);
  for (auto j : join_irreducibles(lattice)) {
    auto p = lattice.position(j);
    mask[p / 64] |= std::uint64_t{1} << (p % 64);
  }
  std::vector<std::size_t> out(n);
  for (Element x = 0; x < n; ++x) out[x] = popcount_and(lattice.down_row(x), mask);
  return out;
}

std::vector<Element> atoms(const Lattice& lattice) {
  auto up = lattice.upper_covers(lattice.bottom());
  return {up.begin(), up.end()};
}

std::vector<Element> coatoms(const Lattice& lattice) {
  auto down = lattice.lower_covers(lattice.top());
  return {down.begin(), down.end()};
}

bool is_atomistic(const Lattice& lattice) { return join_irreducibles(lattice) == atoms(lattice); }

Lattice cartesian_product(const Lattice& left, const Lattice& right, const LatticeOptions& options) {
  const std::size_t m = right.size();
  const std::size_t n = left.size() * m;
  check_size(n, options);
  std::vector<Cover> covers;
  for (auto [a, b] : left.covers())
    for (Element y = 0; y < m; ++y) covers.emplace_back(a * m + y, b * m + y);
  for (Element x = 0; x < left.size(); ++x)
    for (auto [c, d] : right.covers()) covers.emplace_back(x * m + c, x * m + d);
  return lattice_from_covers(n, covers, options);
}

namespace {

std::vector<Element> non_bottom_ranks(const Lattice& lattice) {
  std::vector<Element> rank(lattice.size(), 0);
  Element next = 0;
  for (Element x = 0; x < lattice.size(); ++x)
    if (x != lattice.bottom()) rank[x] = next++;
  return rank;
}

}  // namespace

Lattice lower_reduced_product(const Lattice& left, const Lattice& right, const LatticeOptions& options) {
  const std::size_t m = right.size() - 1;
  const std::size_t n = (left.size() - 1) * m + 1;
  check_size(n, options);
  const auto lr = non_bottom_ranks(left);
  const auto rr = non_bottom_ranks(right);
  auto id = [&](Element x, Element y) { return static_cast<Element>(1 + lr[x] * m + rr[y]); };
  std::vector<Cover> covers;
  for (auto [a, b] : left.covers()) {
    if (a == left.bottom()) continue;
    for (Element y = 0; y < right.size(); ++y)
      if (y != right.bottom()) covers.emplace_back(id(a, y), id(b, y));
  }
  for (auto [c, d] : right.covers()) {
    if (c == right.bottom()) continue;
    for (Element x = 0; x < left.size(); ++x)
      if (x != left.bottom()) covers.emplace_back(id(x, c), id(x, d));
  }
  for (auto a : atoms(left))
    for (auto b : atoms(right)) covers.emplace_back(0, id(a, b));
  return lattice_from_covers(n, covers, options);
}

std::vector<std::pair<Element, Element>> lower_reduced_product_components(const Lattice& left,
                                                                          const Lattice& right) {
  const std::size_t m = right.size() - 1;
  std::vector<std::pair<Element, Element>> out((left.size() - 1) * m + 1);
  out[0] = {left.bottom(), right.bottom()};
  const auto lr = non_bottom_ranks(left);
  const auto rr = non_bottom_ranks(right);
  for (Element x = 0; x < left.size(); ++x)
    for (Element y = 0; y < right.size(); ++y)
      if (x != left.bottom() && y != right.bottom()) out[1 + lr[x] * m + rr[y]] = {x, y};
  return out;
}

Lattice adjoin_atoms(const Lattice& lattice, std::size_t k, const LatticeOptions& options) {
  const std::size_t n = lattice.size();
  std::vector<Cover> covers = lattice.covers();
  for (std::size_t i = 0; i < k; ++i) {
    const auto a = static_cast<Element>(n + i);
    covers.emplace_back(lattice.bottom(), a);
    covers.emplace_back(a, lattice.top());
  }
  return lattice_from_covers(n + k, covers, options);
}

Sublattice sublattice_generated(const Lattice& ambient, std::span<const Element> generators,
                                const LatticeOptions& options) {
  std::set<Element> members{ambient.bottom(), ambient.top()};
  for (auto g : generators) {
    ambient.check_element(g);
    members.insert(g);
  }
  std::vector<Element> frontier(members.begin(), members.end());
  while (!frontier.empty()) {
    std::vector<Element> fresh;
    const std::vector<Element> snapshot(members.begin(), members.end());
    for (auto a : frontier)
      for (auto b : snapshot)
        for (auto c : {ambient.join(a, b), ambient.meet(a, b)})
          if (members.insert(c).second) fresh.push_back(c);
    frontier = std::move(fresh);
  }
  Sublattice out{Lattice{}, std::vector<Element>(members.begin(), members.end())};
  const auto& map = out.to_ambient;
  out.lattice = lattice_from_order(
      map.size(), [&](Element a, Element b) { return ambient.leq(map[a], map[b]); }, options);
  return out;
}

}  // namespace pzeta
