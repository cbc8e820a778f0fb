#include "pzeta/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pzeta/lattice.hpp"

namespace pzeta {

namespace {
int g_worker_override = 0;
}

int worker_count() {
#ifdef _OPENMP
  return g_worker_override > 0 ? g_worker_override : omp_get_max_threads();
#else
  return 1;
#endif
}

void set_worker_count(int count) {
  g_worker_override = count > 0 ? count : 0;
#ifdef _OPENMP
  if (count > 0) omp_set_num_threads(count);
#endif
}

namespace kernels {

namespace {

std::optional<std::uint32_t> lowest_bit(std::span<const std::uint64_t> row) {
  for (std::size_t w = 0; w < row.size(); ++w)
    if (row[w]) return static_cast<std::uint32_t>(w * 64 + std::countr_zero(row[w]));
  return std::nullopt;
}

std::optional<std::uint32_t> highest_bit(std::span<const std::uint64_t> row) {
  for (std::size_t w = row.size(); w-- > 0;)
    if (row[w]) return static_cast<std::uint32_t>(w * 64 + 63 - std::countl_zero(row[w]));
  return std::nullopt;
}

// Least element of a & b if the intersection has one. Positions form a
// linear extension, so the only candidate is the lowest set bit, and it is
// least exactly when its own up-set is the whole intersection.
template <bool Up>
std::optional<std::uint32_t> extremum(const BitMatrix& m, std::size_t p, std::size_t q,
                                      std::vector<std::uint64_t>& scratch) {
  auto a = m.row(p);
  auto b = m.row(q);
  scratch.resize(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) scratch[w] = a[w] & b[w];
  auto z = Up ? lowest_bit(scratch) : highest_bit(scratch);
  if (!z) return std::nullopt;
  auto zr = m.row(*z);
  if (!std::equal(zr.begin(), zr.end(), scratch.begin())) return std::nullopt;
  return z;
}

using PairKey = std::uint64_t;
constexpr PairKey kNoFailure = std::numeric_limits<PairKey>::max();

}  // namespace

std::optional<std::uint32_t> join_position(const BitMatrix& up, std::size_t p, std::size_t q) {
  std::vector<std::uint64_t> scratch;
  return extremum<true>(up, p, q, scratch);
}

std::optional<std::uint32_t> meet_position(const BitMatrix& down, std::size_t p, std::size_t q) {
  std::vector<std::uint64_t> scratch;
  return extremum<false>(down, p, q, scratch);
}

JoinMeetResult join_meet_tables(const BitMatrix& up, const BitMatrix& down, bool store, Exec exec) {
  const std::size_t n = up.size();
  JoinMeetResult out;
  if (store) {
    out.join.assign(n * n, 0);
    out.meet.assign(n * n, 0);
  }
  auto row_pass = [&](std::size_t p, std::vector<std::uint64_t>& scratch) -> PairKey {
    for (std::size_t q = p; q < n; ++q) {
      auto j = extremum<true>(up, p, q, scratch);
      auto m = extremum<false>(down, p, q, scratch);
      if (!j || !m) return static_cast<PairKey>(p) * n + q;
      if (store) {
        out.join[p * n + q] = out.join[q * n + p] = *j;
        out.meet[p * n + q] = out.meet[q * n + p] = *m;
      }
    }
    return kNoFailure;
  };

  PairKey first = kNoFailure;
  if (exec == Exec::Serial) {
    std::vector<std::uint64_t> scratch;
    for (std::size_t p = 0; p < n && first == kNoFailure; ++p) first = row_pass(p, scratch);
  } else {
    std::atomic<PairKey> best{kNoFailure};
#pragma omp parallel
    {
      std::vector<std::uint64_t> scratch;
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t p = 0; p < static_cast<std::int64_t>(n); ++p) {
        if (best.load(std::memory_order_relaxed) < static_cast<PairKey>(p) * n) continue;
        PairKey f = row_pass(static_cast<std::size_t>(p), scratch);
        PairKey cur = best.load();
        while (f < cur && !best.compare_exchange_weak(cur, f)) {
        }
      }
    }
    first = best.load();
  }
  if (first != kNoFailure) {
    out.failure = std::make_pair(static_cast<std::uint32_t>(first / n), static_cast<std::uint32_t>(first % n));
    out.join.clear();
    out.meet.clear();
  }
  return out;
}

std::vector<BigInt> mobius_column(const BitMatrix& up, const BitMatrix& down, std::size_t target,
                                  Exec exec) {
  const std::size_t n = up.size();
  std::vector<BigInt> mu(n, 0);
  auto below_target = down.row(target);
  auto value_at = [&](std::size_t p) {
    BigInt sum = 0;
    for_each_common_bit(up.row(p), below_target, [&](std::size_t q) {
      if (q != p) sum += mu[q];
    });
    return BigInt(-sum);
  };

  mu[target] = 1;
  if (exec == Exec::Serial) {
    for (std::size_t p = target; p-- > 0;)
      if (down.test(target, p)) mu[p] = value_at(p);
    return mu;
  }

  // Level-synchronous: an element only depends on strictly larger elements,
  // which all sit in earlier levels of the longest-chain-to-target layering.
  std::vector<std::size_t> depth(n, 0);
  std::size_t max_depth = 0;
  for (std::size_t p = target; p-- > 0;) {
    if (!down.test(target, p)) continue;
    std::size_t d = 0;
    for_each_common_bit(up.row(p), below_target, [&](std::size_t q) {
      if (q != p) d = std::max(d, depth[q] + 1);
    });
    depth[p] = d;
    max_depth = std::max(max_depth, d);
  }
  std::vector<std::vector<std::uint32_t>> levels(max_depth + 1);
  for (std::size_t p = 0; p < target; ++p)
    if (down.test(target, p)) levels[depth[p]].push_back(static_cast<std::uint32_t>(p));
  for (std::size_t d = 1; d <= max_depth; ++d) {
    const auto& level = levels[d];
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(level.size()); ++i)
      mu[level[static_cast<std::size_t>(i)]] = value_at(level[static_cast<std::size_t>(i)]);
  }
  return mu;
}

namespace {

std::uint64_t count_suffix(const Lattice& lattice, std::span<const std::uint32_t> pool,
                           std::uint32_t target, unsigned remaining, std::uint32_t prefix_join) {
  if (remaining == 0) return prefix_join == target ? 1 : 0;
  // Odometer over the remaining coordinates with a stack of partial joins.
  const std::size_t k = pool.size();
  std::vector<std::size_t> digit(remaining, 0);
  std::vector<std::uint32_t> partial(remaining + 1);
  partial[0] = prefix_join;
  for (unsigned i = 0; i < remaining; ++i) partial[i + 1] = lattice.join(partial[i], pool[0]);
  std::uint64_t count = 0;
  while (true) {
    if (partial[remaining] == target) ++count;
    int i = static_cast<int>(remaining) - 1;
    while (i >= 0 && ++digit[static_cast<std::size_t>(i)] == k) digit[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    for (auto j = static_cast<std::size_t>(i); j < remaining; ++j)
      partial[j + 1] = lattice.join(partial[j], pool[digit[j]]);
  }
  return count;
}

}  // namespace

BigInt count_tuples_with_join(const Lattice& lattice, std::span<const std::uint32_t> pool,
                              std::uint32_t target, unsigned s, Exec exec) {
  if (s == 0) return lattice.bottom() == target ? 1 : 0;
  if (pool.empty()) return 0;
  std::uint64_t total = 0;
  const auto k = static_cast<std::int64_t>(pool.size());
  if (exec == Exec::Serial) {
    for (std::int64_t i = 0; i < k; ++i)
      total += count_suffix(lattice, pool, target, s - 1, pool[static_cast<std::size_t>(i)]);
  } else {
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : total)
    for (std::int64_t i = 0; i < k; ++i)
      total += count_suffix(lattice, pool, target, s - 1, pool[static_cast<std::size_t>(i)]);
  }
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(total), 0, 0, &total);
  return out;
}

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::optional<std::uint64_t> first_nagura_gap(std::uint64_t lo, std::uint64_t hi, Exec exec) {
  if (lo > hi) return std::nullopt;
  const auto primes = sieve_primes(static_cast<std::uint32_t>(hi + hi / 5 + 2));
  // Smallest prime p > n must satisfy 5p < 6n.
  auto ok = [&](std::uint64_t n) {
    auto it = std::upper_bound(primes.begin(), primes.end(), n);
    return it != primes.end() && 5 * static_cast<std::uint64_t>(*it) < 6 * n;
  };
  return first_failure(lo, hi, ok, exec);
}

std::optional<std::uint64_t> first_failure(std::uint64_t lo, std::uint64_t hi,
                                           const std::function<bool(std::uint64_t)>& pred,
                                           Exec exec) {
  if (lo > hi) return std::nullopt;
  if (exec == Exec::Serial) {
    for (std::uint64_t m = lo; m <= hi; ++m)
      if (!pred(m)) return m;
    return std::nullopt;
  }
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  const auto count = static_cast<std::int64_t>(hi - lo + 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < count; ++i) {
    const std::uint64_t m = lo + static_cast<std::uint64_t>(i);
    if (m > best.load(std::memory_order_relaxed)) continue;
    if (!pred(m)) {
      std::uint64_t cur = best.load();
      while (m < cur && !best.compare_exchange_weak(cur, m)) {
      }
    }
  }
  const auto b = best.load();
  if (b == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return b;
}

}  // namespace kernels
}  // namespace pzeta
