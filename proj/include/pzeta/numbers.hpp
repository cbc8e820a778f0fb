#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pzeta/bigint.hpp"

namespace pzeta {

struct FactoredInteger {
  std::uint64_t n = 1;
  /// (prime, exponent), primes strictly increasing.
  std::vector<std::pair<std::uint64_t, unsigned>> factors;

  std::size_t distinct_primes() const noexcept { return factors.size(); }
  unsigned big_omega() const noexcept;
};

FactoredInteger factorize(std::uint64_t n);
bool is_prime(std::uint64_t n);
/// Classical Moebius function: 0 on non-squarefree m, else (-1)^(#primes).
int number_mobius(std::uint64_t m);
/// Number of prime factors counted with multiplicity.
unsigned big_omega(std::uint64_t m);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Stirling numbers of the second kind via S(s,r) = r S(s-1,r) + S(s-1,r-1).
BigInt stirling2(unsigned s, unsigned r);

/// Coefficients (ascending powers of q) of the Gaussian binomial [n k]_q,
/// built with the q-Pascal recurrence.
std::vector<BigInt> gaussian_binomial_polynomial(unsigned n, unsigned k);
/// [n k]_q for integer q >= 2 as the exact product formula.
BigInt gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);
/// Polynomial evaluation at any rational q (q = 1 gives C(n, k)).
Rational gaussian_binomial_at(unsigned n, unsigned k, const Rational& q);
long double gaussian_binomial_at(unsigned n, unsigned k, long double q);

/// Exponent of prime p in n! (Legendre's formula).
std::uint64_t legendre(std::uint64_t n, std::uint64_t p);
/// Exponent of prime p in C(n, k).
std::uint64_t binomial_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t p);

/// Integer partitions of n (parts in non-increasing order), lexicographically
/// decreasing: (n), (n-1,1), ...
std::vector<std::vector<unsigned>> integer_partitions(unsigned n);
/// Number of set partitions of {1..n} whose block sizes form the shape.
BigInt set_partitions_of_shape(const std::vector<unsigned>& shape);

}  // namespace pzeta
