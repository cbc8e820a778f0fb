#pragma once

// Independent reference computations for tests. Everything here works from
// the order predicate alone, never from the library's tables or kernels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "pzeta/lattice.hpp"

namespace testsupport {

using pzeta::BigInt;
using pzeta::Element;
using pzeta::Lattice;

// mu(x, y) straight from the recursive definition.
inline BigInt brute_mobius(const Lattice& L, Element x, Element y, std::map<std::pair<Element, Element>, BigInt>& memo) {
  if (x == y) return 1;
  auto key = std::make_pair(x, y);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt sum = 0;
  for (Element z = 0; z < L.size(); ++z)
    if (z != x && L.leq(x, z) && L.leq(z, y)) sum += brute_mobius(L, z, y, memo);
  memo[key] = -sum;
  return -sum;
}

inline BigInt brute_mobius(const Lattice& L, Element x, Element y) {
  std::map<std::pair<Element, Element>, BigInt> memo;
  return brute_mobius(L, x, y, memo);
}

// Least upper bound by scanning all upper bounds.
inline Element brute_join(const Lattice& L, Element a, Element b) {
  for (Element z = 0; z < L.size(); ++z) {
    if (!L.leq(a, z) || !L.leq(b, z)) continue;
    bool least = true;
    for (Element w = 0; w < L.size() && least; ++w)
      if (L.leq(a, w) && L.leq(b, w) && !L.leq(z, w)) least = false;
    if (least) return z;
  }
  return L.size();
}

// x != bottom with no representation as a join of two strictly smaller elements.
inline std::vector<Element> brute_join_irreducibles(const Lattice& L) {
  std::vector<Element> out;
  for (Element x = 0; x < L.size(); ++x) {
    if (x == L.bottom()) continue;
    bool reducible = false;
    for (Element a = 0; a < L.size() && !reducible; ++a)
      for (Element b = 0; b < L.size() && !reducible; ++b)
        if (L.less(a, x) && L.less(b, x) && brute_join(L, a, b) == x) reducible = true;
    if (!reducible) out.push_back(x);
  }
  return out;
}

// Relabels a lattice by a permutation: new id of x is perm[x].
inline Lattice relabel(const Lattice& L, const std::vector<Element>& perm) {
  std::vector<pzeta::Cover> covers;
  for (auto [a, b] : L.covers()) covers.emplace_back(perm[a], perm[b]);
  return pzeta::lattice_from_covers(L.size(), covers);
}

inline std::vector<Element> random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<Element> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

// A random closure system on k points (closed under intersection, containing
// the full set) ordered by inclusion; always a lattice.
inline Lattice random_lattice(unsigned k, unsigned seeds, std::mt19937& rng) {
  const std::uint32_t full = (1u << k) - 1;
  std::set<std::uint32_t> family{full};
  std::uniform_int_distribution<std::uint32_t> pick(0, full);
  for (unsigned i = 0; i < seeds; ++i) family.insert(pick(rng));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> cur(family.begin(), family.end());
    for (auto a : cur)
      for (auto b : cur)
        if (family.insert(a & b).second) grew = true;
  }
  std::vector<std::uint32_t> sets(family.begin(), family.end());
  if (sets.size() < 2) sets.insert(sets.begin(), 0u);
  return pzeta::lattice_from_order(sets.size(), [&](Element a, Element b) { return (sets[a] & ~sets[b]) == 0; });
}

}  // namespace testsupport
