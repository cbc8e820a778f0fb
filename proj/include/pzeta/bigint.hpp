#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace pzeta {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

BigInt pow(const BigInt& base, unsigned long exp);
Rational pow(const Rational& base, long exp);
BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

/// "p" for integers, "p/r" otherwise.
std::string to_string(const Rational& q);
inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Accepts "p" or "p/r"; result is canonicalized.
Rational parse_rational(const std::string& text);

}  // namespace pzeta
