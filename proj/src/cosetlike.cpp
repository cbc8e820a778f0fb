#include "pzeta/cosetlike.hpp"

#include <algorithm>

#include "json.hpp"

#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/kernels.hpp"
#include "pzeta/numbers.hpp"

namespace pzeta {

Classification classify(const Lattice& lattice, Exec exec) {
  Classification c;
  c.report = zeta_series(lattice, exec);
  const auto& r = c.report;
  for (Element x = 0; x < lattice.size(); ++x)
    if (x != lattice.bottom() && r.j_count % r.j_below[x] != 0)
      c.strong_failures.push_back({x, r.j_below[x], r.j_count});
  for (const auto& [q, sum] : r.local_sums)
    if (sum != 0 && !is_integer(q)) c.non_integer_bases.push_back(q);
  c.strong = c.strong_failures.empty();
  c.weak = c.non_integer_bases.empty();
  return c;
}

std::optional<Element> coatom_criterion(const Lattice& lattice) {
  const auto counts = below_irreducible_counts(lattice);
  const std::size_t total = counts[lattice.top()];
  std::size_t best = 0;
  for (Element x = 0; x < lattice.size(); ++x)
    if (x != lattice.bottom() && x != lattice.top()) best = std::max(best, counts[x]);
  if (best == 0 || total % best == 0) return std::nullopt;
  for (Element x = 0; x < lattice.size(); ++x)
    if (x != lattice.bottom() && x != lattice.top() && counts[x] == best) return x;
  return std::nullopt;
}

std::string classification_json(const Lattice& lattice, const Classification& c) {
  nlohmann::ordered_json doc;
  doc["strong"] = c.strong;
  doc["weak"] = c.weak;
  doc["jCount"] = c.report.j_count;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : c.strong_failures)
    failures.push_back({{"element", f.element}, {"jBelow", f.j_below}, {"ratio", to_string(make_rational(
                                                                                   BigInt(static_cast<unsigned long>(f.j_count)),
                                                                                   BigInt(static_cast<unsigned long>(f.j_below))))}});
  doc["strongFailures"] = std::move(failures);
  auto bases = nlohmann::ordered_json::array();
  for (const auto& q : c.non_integer_bases) bases.push_back(to_string(q));
  doc["nonIntegerBases"] = std::move(bases);
  if (auto w = coatom_criterion(lattice)) doc["coatomCriterionWitness"] = *w;
  doc["series"] = nlohmann::ordered_json::parse(to_json(c.report.series));
  return doc.dump();
}

// Shape-level checks -----------------------------------------------------------

ShapeCheck partition_strong_check(unsigned n) {
  ShapeCheck out;
  out.j_count = binomial(n, 2);
  for (const auto& shape : integer_partitions(n)) {
    BigInt below = 0;
    for (auto part : shape) below += binomial(part, 2);
    if (below == 0) continue;
    ++out.shapes_checked;
    if (out.strong && out.j_count % below != 0) {
      out.strong = false;
      out.failing_shape = shape;
      out.failing_j_below = below;
    }
  }
  return out;
}

ShapeCheck ddiv_strong_check(unsigned d, unsigned n) {
  ShapeCheck out;
  out.j_count = d_divisible_total_j(d, n);
  for (const auto& shape : integer_partitions(n)) {
    std::vector<unsigned> parts;
    for (auto p : shape) parts.push_back(d * p);
    const BigInt below = d_divisible_j_count(d, parts);
    ++out.shapes_checked;
    if (out.strong && out.j_count % below != 0) {
      out.strong = false;
      out.failing_shape = shape;
      out.failing_j_below = below;
    }
  }
  return out;
}

// Divisibility witnesses --------------------------------------------------------

namespace {

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = kernels::sieve_primes(1u << 21);
  return primes;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
  const auto& cached = small_primes();
  if (limit <= (1u << 21)) {
    auto end = std::upper_bound(cached.begin(), cached.end(), static_cast<std::uint32_t>(limit));
    return {cached.begin(), end};
  }
  return kernels::sieve_primes(static_cast<std::uint32_t>(limit));
}

std::uint64_t valuation(std::uint64_t x, std::uint64_t p) {
  std::uint64_t v = 0;
  while (x && x % p == 0) x /= p, ++v;
  return v;
}

bool use_exact(DivisibilityMethod method, std::uint64_t largest_argument) {
  if (method == DivisibilityMethod::Auto) return largest_argument <= kExactArgumentLimit;
  return method == DivisibilityMethod::Exact;
}

}  // namespace

bool central_binomial_check(std::uint64_t m, DivisibilityMethod method) {
  if (use_exact(method, 4 * m)) return binomial(4 * m, 2 * m) % binomial(2 * m, m) != 0;
  for (auto p : primes_up_to(2 * m))
    if (binomial_valuation(2 * m, m, p) > binomial_valuation(4 * m, 2 * m, p)) return true;
  return false;
}

bool odd_case_check(std::uint64_t m, DivisibilityMethod method) {
  if (use_exact(method, 4 * m + 1)) {
    const BigInt lhs = BigInt(static_cast<unsigned long>(2 * m + 1)) * binomial(2 * m, m);
    const BigInt rhs = BigInt(static_cast<unsigned long>(4 * m + 1)) * binomial(4 * m, 2 * m);
    return rhs % lhs != 0;
  }
  for (auto p : primes_up_to(2 * m + 1))
    if (valuation(2 * m + 1, p) + binomial_valuation(2 * m, m, p) >
        valuation(4 * m + 1, p) + binomial_valuation(4 * m, 2 * m, p))
      return true;
  return false;
}

std::optional<std::uint64_t> nagura_prime(std::uint64_t n) {
  for (std::uint64_t p = n + 1; 5 * p < 6 * n; ++p)
    if (is_prime(p)) return p;
  return std::nullopt;
}

WitnessPrime mainthm_witness(unsigned d, std::uint64_t m) {
  WitnessPrime w;
  w.d = d;
  w.m = m;
  const std::uint64_t delta = d % 2 == 0 ? d / 2 : (d + 1) / 2;
  w.delta = Rational(BigInt(static_cast<unsigned long>(delta)));
  const std::uint64_t dm = static_cast<std::uint64_t>(d) * m;
  // 2dm / (2 delta + 1/2) = 4dm / (4 delta + 1)
  w.interval_low = make_rational(BigInt(static_cast<unsigned long>(4 * dm)), BigInt(static_cast<unsigned long>(4 * delta + 1)));
  w.interval_high = make_rational(BigInt(static_cast<unsigned long>(dm)), BigInt(static_cast<unsigned long>(delta)));
  auto evaluate = [&](std::uint64_t p) {
    WitnessPrime c = w;
    c.prime = p;
    c.square_exceeds = p * p > 2 * dm;
    c.binomial_fails = binomial_valuation(2 * m, m, p) > binomial_valuation(2 * dm, dm, p);
    c.odd_product_coprime = true;
    for (std::uint64_t s = 1; s < d; ++s)
      if ((2 * dm + s) % p == 0) c.odd_product_coprime = false;
    return c;
  };
  std::optional<WitnessPrime> first;
  for (std::uint64_t p = 4 * dm / (4 * delta + 1) + 1; p * delta < dm; ++p) {
    if (!is_prime(p)) continue;
    auto c = evaluate(p);
    if (c.confirmed()) return c;
    if (!first) first = c;
  }
  return first ? *first : w;
}

std::optional<std::uint64_t> mainthm_threshold(unsigned d, std::uint64_t m_max, Exec exec) {
  if (m_max == 0) return std::nullopt;
  // Index i stands for m = m_max - i, so the first failing index is the
  // largest failing m.
  auto failing = kernels::first_failure(
      0, m_max - 1, [&](std::uint64_t i) { return mainthm_witness(d, m_max - i).confirmed(); }, exec);
  if (!failing) return 1;
  if (*failing == 0) return std::nullopt;
  return m_max - *failing + 1;
}

bool p0prime_divisibility(unsigned d, std::uint64_t n) {
  BigInt product = 1;
  for (std::uint64_t s = 1; s < d; ++s) product *= BigInt(static_cast<unsigned long>(d * n - s));
  return product % factorial(d - 1) == 0;
}

// Fixtures ----------------------------------------------------------------------

namespace {

struct FixtureSpec {
  std::size_t n;
  std::vector<Cover> covers;
  std::vector<std::pair<long, long>> series;  // (base, coefficient), integer bases
};

const std::vector<std::pair<std::string, FixtureSpec>>& fixtures() {
  // ten_point: 0 bottom; 1 a; 2 b < 3 < 4 < 5 (chain above b); 6 c < {7, 8}; 9 top.
  // eleven_point: 0 bottom; 1 a < 3 a1 < {4 u, 5 v, 6 m}; 2 t < 6 m < {7, 8, 9}; 10 top.
  static const std::vector<std::pair<std::string, FixtureSpec>> table{
      {"ten_point",
       {10,
        {{0, 1}, {0, 2}, {0, 6}, {2, 3}, {3, 4}, {4, 5}, {6, 7}, {6, 8}, {1, 9}, {5, 9}, {7, 9}, {8, 9}},
        {{1, 1}, {2, -1}, {4, -2}}}},
      {"eleven_point",
       {11,
        {{0, 1}, {0, 2}, {1, 3}, {3, 4}, {3, 5}, {3, 6}, {2, 6}, {6, 7}, {6, 8}, {6, 9},
         {4, 10}, {5, 10}, {7, 10}, {8, 10}, {9, 10}},
        {{1, 1}, {2, -3}, {4, 2}}}},
  };
  return table;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, spec] : fixtures()) out.push_back(name);
  return out;
}

Lattice load_fixture(const std::string& name) {
  for (const auto& [fname, spec] : fixtures()) {
    if (fname != name) continue;
    auto lattice = lattice_from_covers(spec.n, spec.covers);
    DirichletSeries expected;
    for (auto [base, c] : spec.series) expected.add_term(Rational(BigInt(base)), BigInt(c));
    const auto report = zeta_series(lattice, Exec::Serial);
    if (report.series != expected || report.j_count != 8)
      fail(ErrorCode::MismatchDetected, "fixture " + name + " does not reproduce its series");
    return lattice;
  }
  fail(ErrorCode::UnknownFixture, "unknown fixture '" + name + "' (known: ten_point, eleven_point)");
}

}  // namespace pzeta
