#pragma once

// Data-parallel inner loops. Every kernel takes an Exec argument; the
// Serial variant is the reference implementation the tests compare against.

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

class Lattice;

namespace kernels {

/// Result of the pairwise supremum/infimum pass over an order given in
/// position space (position order is a linear extension).
struct JoinMeetResult {
  /// First pair (by position) lacking a unique join or meet.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> failure;
  /// n*n tables in position space; empty unless requested.
  std::vector<std::uint32_t> join;
  std::vector<std::uint32_t> meet;
};

JoinMeetResult join_meet_tables(const BitMatrix& up, const BitMatrix& down, bool store, Exec exec);

/// Least element of the up-set intersection of positions p and q, if unique.
std::optional<std::uint32_t> join_position(const BitMatrix& up, std::size_t p, std::size_t q);
std::optional<std::uint32_t> meet_position(const BitMatrix& down, std::size_t p, std::size_t q);

/// mu(p, target) for every position p (zero off the interval below target).
std::vector<BigInt> mobius_column(const BitMatrix& up, const BitMatrix& down,
                                  std::size_t target, Exec exec);

/// Number of s-tuples over pool whose join equals target.
BigInt count_tuples_with_join(const Lattice& lattice, std::span<const std::uint32_t> pool,
                              std::uint32_t target, unsigned s, Exec exec);

/// Primes <= limit.
std::vector<std::uint32_t> sieve_primes(std::uint32_t limit);

/// First n in [lo, hi] with no prime strictly between n and 6n/5.
std::optional<std::uint64_t> first_nagura_gap(std::uint64_t lo, std::uint64_t hi, Exec exec);

/// First m in [lo, hi] for which pred(m) is false. The predicate must be
/// safe to call concurrently.
std::optional<std::uint64_t> first_failure(std::uint64_t lo, std::uint64_t hi,
                                           const std::function<bool(std::uint64_t)>& pred,
                                           Exec exec);

}  // namespace kernels
}  // namespace pzeta
