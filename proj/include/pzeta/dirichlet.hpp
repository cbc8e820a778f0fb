#pragma once

#include <complex>
#include <map>
#include <string>

#include "pzeta/bigint.hpp"

namespace pzeta {

/// Finite general Dirichlet series  sum_q c_q * q^(-s)  with exact positive
/// rational bases q and integer coefficients. Zero coefficients are never
/// stored; iteration order is ascending by base, so the constant term
/// (q = 1) comes first whenever present.
class DirichletSeries {
 public:
  using Terms = std::map<Rational, BigInt>;

  DirichletSeries() = default;
  static DirichletSeries constant(const BigInt& c);
  static DirichletSeries term(const Rational& base, const BigInt& coefficient);

  /// Adds c * base^(-s); requires base > 0.
  void add_term(const Rational& base, const BigInt& coefficient);

  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  BigInt coefficient(const Rational& base) const;

  bool operator==(const DirichletSeries& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

DirichletSeries add(const DirichletSeries& a, const DirichletSeries& b);
DirichletSeries negate(const DirichletSeries& a);
/// Convolution: (c/q1^s)(d/q2^s) = cd/(q1 q2)^s.
DirichletSeries multiply(const DirichletSeries& a, const DirichletSeries& b);

inline DirichletSeries operator+(const DirichletSeries& a, const DirichletSeries& b) { return add(a, b); }
inline DirichletSeries operator-(const DirichletSeries& a) { return negate(a); }
inline DirichletSeries operator-(const DirichletSeries& a, const DirichletSeries& b) { return add(a, negate(b)); }
inline DirichletSeries operator*(const DirichletSeries& a, const DirichletSeries& b) { return multiply(a, b); }

/// Exact value at an integer s (negative s allowed).
Rational evaluate_exact(const DirichletSeries& a, long s);
/// Floating value sum c_q exp(-s ln q); approximate.
std::complex<double> evaluate_numeric(const DirichletSeries& a, std::complex<double> s);

/// True when every base is an integer.
bool is_ordinary(const DirichletSeries& a);

/// Machine form: {"terms":[{"q":"5/3","c":"-5"},...]} with q ascending.
std::string to_json(const DirichletSeries& a);
DirichletSeries series_from_json(const std::string& text);

/// Human form such as "1 - 5/(5/3)^s + 6/5^(s-1)". Integer bases dividing
/// their coefficient are shown with a shifted exponent.
std::string render_pretty(const DirichletSeries& a);
/// Human form with every term as c/q^s.
std::string render_plain(const DirichletSeries& a);

}  // namespace pzeta
