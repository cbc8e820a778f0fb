#include "pzeta/groups.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "pzeta/canonical.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

namespace {

GroupMask bit(std::uint32_t a) { return GroupMask{1} << a; }

template <typename F>
void for_each_member(GroupMask m, F&& f) {
  while (m) {
    f(static_cast<std::uint32_t>(std::countr_zero(m)));
    m &= m - 1;
  }
}

std::string join_labels(const FiniteGroup& g, GroupMask m) {
  std::string out = "{";
  bool first = true;
  for_each_member(m, [&](std::uint32_t a) {
    out += (first ? "" : ",") + g.label(a);
    first = false;
  });
  return out + "}";
}

// Upper covers of each subgroup within the (size, mask)-sorted list.
std::vector<std::vector<std::size_t>> subgroup_covers(const std::vector<GroupMask>& subs) {
  std::vector<std::vector<std::size_t>> up(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    std::vector<std::size_t> supers;
    for (std::size_t j = i + 1; j < subs.size(); ++j)
      if ((subs[i] & ~subs[j]) == 0 && subs[i] != subs[j]) supers.push_back(j);
    for (auto j : supers) {
      bool cover = true;
      for (auto m : supers) {
        if (m == j) continue;
        if ((subs[m] & ~subs[j]) == 0 && subs[m] != subs[j]) {
          cover = false;
          break;
        }
      }
      if (cover) up[i].push_back(j);
    }
  }
  return up;
}

}  // namespace

FiniteGroup group_from_table(std::size_t order, std::vector<std::uint32_t> table, std::string name,
                             std::vector<std::string> labels) {
  if (order > kMaxGroupOrder)
    fail(ErrorCode::OrderLimitExceeded, "group order " + std::to_string(order) + " exceeds 64");
  if (order == 0 || table.size() != order * order) fail(ErrorCode::NotAGroup, "Cayley table has wrong shape");
  for (auto v : table)
    if (v >= order) fail(ErrorCode::NotAGroup, "Cayley table entry out of range");
  auto at = [&](std::size_t a, std::size_t b) { return table[a * order + b]; };
  std::optional<std::uint32_t> e;
  for (std::uint32_t c = 0; c < order && !e; ++c) {
    bool ok = true;
    for (std::uint32_t a = 0; a < order && ok; ++a) ok = at(c, a) == a && at(a, c) == a;
    if (ok) e = c;
  }
  if (!e) fail(ErrorCode::NotAGroup, "no identity element");
  std::vector<std::uint32_t> inverse(order, order);
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b)
      if (at(a, b) == *e && at(b, a) == *e) inverse[a] = b;
  for (auto v : inverse)
    if (v == order) fail(ErrorCode::NotAGroup, "element without inverse");
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      for (std::size_t c = 0; c < order; ++c)
        if (at(at(a, b), c) != at(a, at(b, c)))
          fail(ErrorCode::NotAGroup, "associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                         "," + std::to_string(c) + ")");
  if (labels.empty())
    for (std::size_t a = 0; a < order; ++a) labels.push_back(std::to_string(a));
  FiniteGroup g;
  g.order_ = order;
  g.identity_ = *e;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.name_ = std::move(name);
  g.labels_ = std::move(labels);
  return g;
}

FiniteGroup cyclic(std::size_t n) {
  if (n > kMaxGroupOrder) fail(ErrorCode::OrderLimitExceeded, "cyclic group of order " + std::to_string(n));
  if (n == 0) fail(ErrorCode::NotAGroup, "cyclic group needs n >= 1");
  std::vector<std::uint32_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
  return group_from_table(n, std::move(t), "Z/" + std::to_string(n));
}

FiniteGroup symmetric(std::size_t n) {
  if (n > 4) fail(ErrorCode::OrderLimitExceeded, "symmetric groups are limited to n <= 4");
  if (n == 0) fail(ErrorCode::NotAGroup, "symmetric group needs n >= 1");
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  const std::size_t order = perms.size();
  std::vector<std::uint32_t> t(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<std::uint32_t> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];  // apply b, then a
      t[a * order + b] = index.at(c);
    }
  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    std::vector<bool> seen(n, false);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (seen[i] || q[i] == i) continue;
      s += "(";
      for (std::uint32_t j = i; !seen[j]; j = q[j]) {
        seen[j] = true;
        s += (j == i ? "" : " ") + std::to_string(j);
      }
      s += ")";
    }
    labels.push_back(s.empty() ? "()" : s);
  }
  return group_from_table(order, std::move(t), "S" + std::to_string(n), std::move(labels));
}

FiniteGroup dihedral(std::size_t n) {
  if (2 * n > kMaxGroupOrder) fail(ErrorCode::OrderLimitExceeded, "dihedral group of order " + std::to_string(2 * n));
  if (n == 0) fail(ErrorCode::NotAGroup, "dihedral group needs n >= 1");
  const std::size_t order = 2 * n;
  std::vector<std::uint32_t> t(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t i = a % n, j = b % n;
      const bool sa = a >= n, sb = b >= n;
      // r^i r^j = r^(i+j); r^i s r^j = s r^(j-i); s r^i r^j = s r^(i+j); s r^i s r^j = r^(j-i)
      const std::size_t exp = sb ? (j + n - i) % n : (i + j) % n;
      const bool s = sa != sb;
      t[a * order + b] = static_cast<std::uint32_t>(exp + (s ? n : 0));
    }
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t i = a % n;
    std::string r = i == 0 ? "" : i == 1 ? "r" : "r^" + std::to_string(i);
    labels.push_back(a >= n ? "s" + r : (r.empty() ? "e" : r));
  }
  return group_from_table(order, std::move(t), "D" + std::to_string(n), std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t order = g.order() * h.order();
  if (order > kMaxGroupOrder)
    fail(ErrorCode::OrderLimitExceeded, "product of order " + std::to_string(order) + " exceeds 64");
  const std::size_t m = h.order();
  std::vector<std::uint32_t> t(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto x = g.mul(static_cast<std::uint32_t>(a / m), static_cast<std::uint32_t>(b / m));
      auto y = h.mul(static_cast<std::uint32_t>(a % m), static_cast<std::uint32_t>(b % m));
      t[a * order + b] = static_cast<std::uint32_t>(x * m + y);
    }
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < order; ++a)
    labels.push_back("(" + g.label(static_cast<std::uint32_t>(a / m)) + "," +
                     h.label(static_cast<std::uint32_t>(a % m)) + ")");
  return group_from_table(order, std::move(t), g.name() + " x " + h.name(), std::move(labels));
}

namespace {

FiniteGroup parse_group_at(const std::string& text, std::size_t& pos) {
  const auto colon = text.find(':', pos);
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "group spec needs kind:args in '" + text + "'");
  const std::string kind = text.substr(pos, colon - pos);
  pos = colon + 1;
  if (kind == "prod") {
    auto left = parse_group_at(text, pos);
    if (pos >= text.size() || text[pos] != ',') fail(ErrorCode::ParseError, "prod needs two specs in '" + text + "'");
    ++pos;
    auto right = parse_group_at(text, pos);
    return direct_product(left, right);
  }
  std::size_t end = pos;
  while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
  if (end == pos || end - pos > 6) fail(ErrorCode::ParseError, "bad group parameter in '" + text + "'");
  const std::size_t n = std::stoul(text.substr(pos, end - pos));
  pos = end;
  if (kind == "cyclic") return cyclic(n);
  if (kind == "sym") return symmetric(n);
  if (kind == "dihedral") return dihedral(n);
  fail(ErrorCode::ParseError, "unknown group kind '" + kind + "'");
}

}  // namespace

FiniteGroup parse_group(const std::string& spec) {
  std::size_t pos = 0;
  auto g = parse_group_at(spec, pos);
  if (pos != spec.size()) fail(ErrorCode::ParseError, "trailing text in group spec '" + spec + "'");
  return g;
}

GroupMask generated_subgroup(const FiniteGroup& g, GroupMask generators) {
  GroupMask seen = bit(g.identity());
  std::vector<std::uint32_t> queue{g.identity()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto x = queue[i];
    for_each_member(generators, [&](std::uint32_t s) {
      const auto y = g.mul(x, s);
      if (!(seen & bit(y))) {
        seen |= bit(y);
        queue.push_back(y);
      }
    });
  }
  return seen;
}

GroupMask left_translate(const FiniteGroup& g, std::uint32_t a, GroupMask set) {
  GroupMask out = 0;
  for_each_member(set, [&](std::uint32_t h) { out |= bit(g.mul(a, h)); });
  return out;
}

bool is_normal(const FiniteGroup& g, GroupMask subgroup) {
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    GroupMask conj = 0;
    for_each_member(subgroup, [&](std::uint32_t h) { conj |= bit(g.mul(g.mul(a, h), g.inverse(a))); });
    if (conj != subgroup) return false;
  }
  return true;
}

std::vector<GroupMask> subgroups(const FiniteGroup& g) {
  std::set<GroupMask> found;
  std::vector<GroupMask> cyclics;
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    auto c = generated_subgroup(g, bit(a));
    if (found.insert(c).second) cyclics.push_back(c);
  }
  // Every subgroup is a join of cyclic subgroups.
  std::vector<GroupMask> queue(found.begin(), found.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto c : cyclics) {
      if ((c & ~queue[i]) == 0) continue;
      auto j = generated_subgroup(g, queue[i] | c);
      if (found.insert(j).second) queue.push_back(j);
    }
  std::vector<GroupMask> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](GroupMask a, GroupMask b) {
    return std::pair(std::popcount(a), a) < std::pair(std::popcount(b), b);
  });
  return out;
}

Lattice subgroup_lattice(const FiniteGroup& g, const LatticeOptions& options) {
  const auto subs = subgroups(g);
  const auto up = subgroup_covers(subs);
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (auto j : up[i]) covers.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
  return lattice_from_covers(subs.size(), covers, options);
}

DirichletSeries group_zeta(const FiniteGroup& g) {
  const auto subs = subgroups(g);
  std::vector<BigInt> mu(subs.size(), 0);
  mu.back() = 1;
  DirichletSeries out;
  for (std::size_t i = subs.size(); i-- > 0;) {
    if (i + 1 < subs.size()) {
      BigInt sum = 0;
      for (std::size_t j = i + 1; j < subs.size(); ++j)
        if ((subs[i] & ~subs[j]) == 0) sum += mu[j];
      mu[i] = -sum;
    }
    const auto index = g.order() / static_cast<std::size_t>(std::popcount(subs[i]));
    out.add_term(Rational(BigInt(static_cast<unsigned long>(index))), mu[i]);
  }
  return out;
}

Rational tuple_generation_probability(const FiniteGroup& g, unsigned s, std::uint64_t budget) {
  const BigInt space = pow(BigInt(static_cast<unsigned long>(g.order())), s);
  if (space > BigInt(static_cast<unsigned long>(budget)))
    fail(ErrorCode::BudgetExceeded, "|G|^s = " + space.get_str() + " exceeds the tuple budget");
  const GroupMask whole = g.all();
  if (s == 0) return Rational(g.order() == 1 ? 1 : 0);
  // Odometer over tuples with a stack of generated subgroups.
  std::vector<std::uint32_t> digit(s, 0);
  std::vector<GroupMask> partial(s + 1);
  partial[0] = bit(g.identity());
  auto extend = [&](std::size_t j) {
    partial[j + 1] = (partial[j] & bit(digit[j])) ? partial[j] : generated_subgroup(g, partial[j] | bit(digit[j]));
  };
  for (std::size_t j = 0; j < s; ++j) extend(j);
  std::uint64_t hits = 0;
  while (true) {
    if (partial[s] == whole) ++hits;
    int i = static_cast<int>(s) - 1;
    while (i >= 0 && ++digit[static_cast<std::size_t>(i)] == g.order()) digit[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    for (auto j = static_cast<std::size_t>(i); j < s; ++j) extend(j);
  }
  return make_rational(BigInt(static_cast<unsigned long>(hits)), space);
}

Element CosetLattice::find(GroupMask mask) const {
  auto it = std::lower_bound(by_mask.begin(), by_mask.end(), std::pair(mask, Element{0}));
  if (it == by_mask.end() || it->first != mask) return static_cast<Element>(members.size());
  return it->second;
}

CosetLattice coset_lattice(const FiniteGroup& g, const LatticeOptions& options) {
  CosetLattice c;
  c.subgroups = subgroups(g);
  std::size_t total = 1;
  for (auto h : c.subgroups) total += g.order() / static_cast<std::size_t>(std::popcount(h));
  if (total > options.max_elements)
    fail(ErrorCode::SizeLimitExceeded, "coset lattice of " + g.name() + " has " + std::to_string(total) +
                                           " elements, budget is " + std::to_string(options.max_elements));
  c.members.push_back(0);
  c.subgroup.push_back(-1);
  c.legend.push_back("{}");
  // Cosets of each subgroup in order of their least member; the trivial
  // subgroup comes first, so {a} gets id 1 + a.
  std::vector<std::vector<std::pair<GroupMask, Element>>> cosets_of(c.subgroups.size());
  for (std::size_t i = 0; i < c.subgroups.size(); ++i) {
    GroupMask covered = 0;
    for (std::uint32_t a = 0; a < g.order(); ++a) {
      if (covered & bit(a)) continue;
      const auto m = left_translate(g, a, c.subgroups[i]);
      covered |= m;
      const auto id = static_cast<Element>(c.members.size());
      c.members.push_back(m);
      c.subgroup.push_back(static_cast<int>(i));
      c.legend.push_back(join_labels(g, m));
      cosets_of[i].emplace_back(m, id);
    }
  }
  for (Element x = 0; x < c.members.size(); ++x) c.by_mask.emplace_back(c.members[x], x);
  std::sort(c.by_mask.begin(), c.by_mask.end());

  // xH is covered by xK exactly when H is covered by K.
  const auto up = subgroup_covers(c.subgroups);
  std::vector<Cover> covers;
  for (std::uint32_t a = 0; a < g.order(); ++a) covers.emplace_back(0, 1 + a);
  for (std::size_t i = 0; i < c.subgroups.size(); ++i)
    for (const auto& [m, id] : cosets_of[i]) {
      const auto rep = static_cast<std::uint32_t>(std::countr_zero(m));
      for (auto j : up[i]) covers.emplace_back(id, c.find(left_translate(g, rep, c.subgroups[j])));
    }
  c.lattice = lattice_from_covers(c.members.size(), covers, options);
  return c;
}

Element coset_join(const FiniteGroup& g, const CosetLattice& c, Element a, Element b) {
  if (c.members[a] == 0) return b;
  if (c.members[b] == 0) return a;
  const auto x1 = static_cast<std::uint32_t>(std::countr_zero(c.members[a]));
  const auto x2 = static_cast<std::uint32_t>(std::countr_zero(c.members[b]));
  const auto k = generated_subgroup(g, c.subgroups[static_cast<std::size_t>(c.subgroup[a])] |
                                           c.subgroups[static_cast<std::size_t>(c.subgroup[b])] |
                                           bit(g.mul(g.inverse(x1), x2)));
  return c.find(left_translate(g, x1, k));
}

DirichletSeries shift_exponent_down(const DirichletSeries& series) {
  DirichletSeries out;
  for (const auto& [q, c] : series.terms()) {
    if (!is_integer(q) || c % q.get_num() != 0)
      fail(ErrorCode::MismatchDetected, "term " + c.get_str() + "/" + to_string(q) + "^s cannot be shifted");
    out.add_term(q, c / q.get_num());
  }
  return out;
}

bool IdentityRecord::all_equal() const {
  if (!series_equal) return false;
  for (const auto& r : rows)
    if (!r.equal) return false;
  return true;
}

IdentityRecord verify_brown_identity(const FiniteGroup& g, unsigned s_max) {
  IdentityRecord rec;
  rec.lhs_series = zeta_series(coset_lattice(g).lattice).series;
  rec.rhs_series = group_zeta(g);
  rec.series_equal = shift_exponent_down(rec.lhs_series) == rec.rhs_series;
  for (unsigned s = 0; s <= s_max; ++s) {
    IdentityRow row{s, evaluate_exact(rec.lhs_series, s + 1), evaluate_exact(rec.rhs_series, s), false};
    row.equal = row.lhs == row.rhs;
    rec.rows.push_back(row);
  }
  if (!rec.all_equal())
    fail(ErrorCode::MismatchDetected, "P(C(" + g.name() + "), s+1) differs from P(" + g.name() + ", s)");
  return rec;
}

CoprimeRecord verify_coprime_product(const FiniteGroup& g, const FiniteGroup& h, unsigned s_max) {
  if (std::gcd(g.order(), h.order()) != 1)
    fail(ErrorCode::NotCoprimeOrders, "orders " + std::to_string(g.order()) + " and " + std::to_string(h.order()) +
                                          " are not coprime");
  const auto gh = direct_product(g, h);
  CoprimeRecord rec;
  rec.series.lhs_series = group_zeta(gh);
  rec.series.rhs_series = group_zeta(g) * group_zeta(h);
  rec.series.series_equal = rec.series.lhs_series == rec.series.rhs_series;
  for (unsigned s = 1; s <= s_max; ++s) {
    IdentityRow row{s, evaluate_exact(rec.series.lhs_series, s), evaluate_exact(rec.series.rhs_series, s), false};
    row.equal = row.lhs == row.rhs;
    rec.series.rows.push_back(row);
  }
  const auto product = lower_reduced_product(coset_lattice(g).lattice, coset_lattice(h).lattice);
  rec.coset_lattices_isomorphic = is_isomorphic(coset_lattice(gh).lattice, product);
  if (!rec.series.all_equal() || !rec.coset_lattices_isomorphic)
    fail(ErrorCode::MismatchDetected, "coprime product identity fails for " + g.name() + " and " + h.name());
  return rec;
}

GoodSublatticeCheck is_good_sublattice(const FiniteGroup& g, const CosetLattice& c,
                                       const std::vector<Element>& elements, GroupMask h) {
  std::set<GroupMask> in;
  for (auto x : elements) in.insert(c.members[x]);
  const GroupMask least = *in.begin() == 0 ? 0 : *std::min_element(in.begin(), in.end(), [](auto a, auto b) {
    return std::popcount(a) < std::popcount(b);
  });
  // Join-irreducibles of the sublattice: exactly one maximal element strictly below.
  std::vector<GroupMask> irreducible;
  for (auto x : in) {
    if (x == least) continue;
    std::vector<GroupMask> below;
    for (auto y : in)
      if (y != x && (y & ~x) == 0) below.push_back(y);
    std::size_t maximal = 0;
    for (auto y : below) {
      bool is_max = true;
      for (auto z : below)
        if (z != y && (y & ~z) == 0) is_max = false;
      maximal += is_max ? 1 : 0;
    }
    if (maximal == 1) irreducible.push_back(x);
  }

  GoodSublatticeCheck out;
  out.normal_action = is_normal(g, h);
  for_each_member(h, [&](std::uint32_t a) {
    for (auto x : in)
      if (x != 0 && !in.count(left_translate(g, a, x))) out.normal_action = false;
  });
  out.singleton_irreducibles = std::all_of(irreducible.begin(), irreducible.end(),
                                           [](GroupMask m) { return std::popcount(m) == 1; });
  std::set<GroupMask> cosets;
  for (auto m : irreducible) for_each_member(m, [&](std::uint32_t a) { cosets.insert(left_translate(g, a, h)); });
  out.at_most_two_cosets = cosets.size() <= 2;
  return out;
}

GoodSublatticeScan scan_good_sublattices(const FiniteGroup& g, unsigned max_union, const LatticeOptions& options) {
  GoodSublatticeScan scan;
  const auto c = coset_lattice(g, options);
  const auto pi4 = canonical_form(partition_lattice(4).lattice);
  for (auto h : subgroups(g)) {
    if (!is_normal(g, h)) continue;
    std::vector<GroupMask> cosets;
    GroupMask covered = 0;
    for (std::uint32_t a = 0; a < g.order(); ++a)
      if (!(covered & bit(a))) {
        cosets.push_back(left_translate(g, a, h));
        covered |= cosets.back();
      }
    std::set<std::vector<Element>> seen;
    for (std::size_t i = 0; i < cosets.size(); ++i)
      for (std::size_t j = i; j < cosets.size(); ++j) {
        const GroupMask u = cosets[i] | cosets[j];
        if (static_cast<unsigned>(std::popcount(u)) > max_union) continue;
        std::vector<std::uint32_t> points;
        for_each_member(u, [&](std::uint32_t a) { points.push_back(a); });
        for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << points.size()); ++pick) {
          if (std::popcount(pick) < 2) continue;
          GroupMask seed = 0;
          std::vector<Element> gens;
          for (std::size_t k = 0; k < points.size(); ++k)
            if (pick >> k & 1) {
              seed |= bit(points[k]);
              gens.push_back(c.singleton(points[k]));
            }
          auto sub = sublattice_generated(c.lattice, gens, options);
          if (!seen.insert(sub.to_ambient).second) continue;
          ++scan.examined;
          if (!is_good_sublattice(g, c, sub.to_ambient, h).good()) continue;
          GoodSublatticeFinding f;
          f.normal_subgroup = h;
          f.seed = seed;
          f.size = sub.lattice.size();
          f.strongly_coset_like = zeta_series(sub.lattice, options.exec).is_strongly_coset_like;
          f.isomorphic_to_pi4 = f.size == 15 && canonical_form(sub.lattice) == pi4;
          scan.good.push_back(f);
        }
      }
  }
  return scan;
}

}  // namespace pzeta
