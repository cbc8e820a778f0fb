#include "pzeta/numbers.hpp"

#include <algorithm>
#include <map>

#include "pzeta/error.hpp"

namespace pzeta {

unsigned FactoredInteger::big_omega() const noexcept {
  unsigned total = 0;
  for (const auto& f : factors) total += f.second;
  return total;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::ParseError, "cannot factorize 0");
  FactoredInteger out;
  out.n = n;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.factors.emplace_back(p, e);
  }
  if (n > 1) out.factors.emplace_back(n, 1);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

int number_mobius(std::uint64_t m) {
  const auto f = factorize(m);
  for (const auto& [p, e] : f.factors)
    if (e > 1) return 0;
  return f.factors.size() % 2 == 0 ? 1 : -1;
}

unsigned big_omega(std::uint64_t m) { return factorize(m).big_omega(); }

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

BigInt stirling2(unsigned s, unsigned r) {
  // row[j] = S(i, j) for the current i.
  std::vector<BigInt> row(r + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= s; ++i) {
    for (unsigned j = std::min(i, r); j >= 1; --j) row[j] = BigInt(j) * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[r];
}

std::vector<BigInt> gaussian_binomial_polynomial(unsigned n, unsigned k) {
  if (k > n) return {};
  // [n k] = [n-1 k-1] + q^k [n-1 k]
  std::vector<std::vector<std::vector<BigInt>>> table(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    table[m].resize(m + 1);
    table[m][0] = {BigInt(1)};
    table[m][m] = {BigInt(1)};
    for (unsigned j = 1; j < m; ++j) {
      const auto& a = table[m - 1][j - 1];
      const auto& b = table[m - 1][j];
      std::vector<BigInt> poly(std::max(a.size(), b.size() + j), 0);
      for (std::size_t i = 0; i < a.size(); ++i) poly[i] += a[i];
      for (std::size_t i = 0; i < b.size(); ++i) poly[i + j] += b[i];
      table[m][j] = std::move(poly);
    }
  }
  return table[n][k];
}

BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) return 0;
  const BigInt Q(static_cast<unsigned long>(q));
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    num *= pow(Q, n - i) - 1;
    den *= pow(Q, k - i) - 1;
  }
  return num / den;
}

Rational gaussian_binomial_at(unsigned n, unsigned k, const Rational& q) {
  Rational total = 0, power = 1;
  for (const auto& c : gaussian_binomial_polynomial(n, k)) {
    total += Rational(c) * power;
    power *= q;
  }
  total.canonicalize();
  return total;
}

long double gaussian_binomial_at(unsigned n, unsigned k, long double q) {
  long double total = 0, power = 1;
  for (const auto& c : gaussian_binomial_polynomial(n, k)) {
    total += static_cast<long double>(c.get_d()) * power;
    power *= q;
  }
  return total;
}

std::uint64_t legendre(std::uint64_t n, std::uint64_t p) {
  std::uint64_t total = 0;
  while (n) {
    n /= p;
    total += n;
  }
  return total;
}

std::uint64_t binomial_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  return legendre(n, p) - legendre(k, p) - legendre(n - k, p);
}

namespace {

void partitions_rec(unsigned remaining, unsigned max_part, std::vector<unsigned>& cur,
                    std::vector<std::vector<unsigned>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<unsigned>> integer_partitions(unsigned n) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

BigInt set_partitions_of_shape(const std::vector<unsigned>& shape) {
  unsigned n = 0;
  std::map<unsigned, unsigned> multiplicity;
  for (auto p : shape) {
    n += p;
    ++multiplicity[p];
  }
  BigInt den = 1;
  for (auto p : shape) den *= factorial(p);
  for (const auto& [p, m] : multiplicity) den *= factorial(m);
  return factorial(n) / den;
}

}  // namespace pzeta
