#include "pzeta/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "pzeta/error.hpp"
#include "pzeta/numbers.hpp"

namespace pzeta {

namespace {

BigInt ul(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

void check_budget(std::size_t count, const LatticeOptions& options, const std::string& what) {
  if (count > options.max_elements)
    fail(ErrorCode::SizeLimitExceeded, what + " has " + std::to_string(count) + " elements, budget is " +
                                           std::to_string(options.max_elements));
}

}  // namespace

Lattice boolean_lattice(unsigned r, const LatticeOptions& options) {
  if (r < 1) fail(ErrorCode::DegenerateLattice, "boolean lattice needs r >= 1");
  if (r > 24 || (std::size_t{1} << r) > options.max_elements)
    fail(ErrorCode::SizeLimitExceeded, "boolean lattice B_" + std::to_string(r) + " exceeds the element budget");
  const std::size_t n = std::size_t{1} << r;
  std::vector<Cover> covers;
  for (std::size_t x = 0; x < n; ++x)
    for (unsigned b = 0; b < r; ++b)
      if (!(x >> b & 1)) covers.emplace_back(static_cast<Element>(x), static_cast<Element>(x | std::size_t{1} << b));
  return lattice_from_covers(n, covers, options);
}

Lattice divisibility_lattice(std::uint64_t n, const LatticeOptions& options) {
  if (n < 2) fail(ErrorCode::DegenerateLattice, "divisibility lattice needs n >= 2");
  const auto divs = divisors(n);
  check_budget(divs.size(), options, "O_" + std::to_string(n));
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < divs.size(); ++i)
    for (std::size_t j = i + 1; j < divs.size(); ++j)
      if (divs[j] % divs[i] == 0 && is_prime(divs[j] / divs[i]))
        covers.emplace_back(static_cast<Element>(i), static_cast<Element>(j));
  return lattice_from_covers(divs.size(), covers, options);
}

Lattice chain(unsigned k, const LatticeOptions& options) {
  if (k < 2) fail(ErrorCode::DegenerateLattice, "chain needs k >= 2");
  check_budget(k, options, "chain");
  std::vector<Cover> covers;
  for (Element i = 0; i + 1 < k; ++i) covers.emplace_back(i, i + 1);
  return lattice_from_covers(k, covers, options);
}

DirichletSeries boolean_zeta_closed(unsigned r) {
  DirichletSeries out;
  for (unsigned k = 1; k <= r; ++k) {
    BigInt c = binomial(r, k);
    if ((r + k) % 2) c = -c;
    out.add_term(make_rational(ul(r), ul(k)), c);
  }
  return out;
}

DirichletSeries divisibility_zeta_closed(std::uint64_t n) {
  const auto f = factorize(n);
  const unsigned omega = f.big_omega();
  const unsigned r = static_cast<unsigned>(f.distinct_primes());
  DirichletSeries out;
  // k = 0 would be the divisor d = 1, which the sum over 1 < d | n excludes.
  for (unsigned k = std::max(1u, omega - r); k <= omega; ++k) {
    BigInt c = binomial(r, omega - k);
    if ((omega + k) % 2) c = -c;
    out.add_term(make_rational(ul(omega), ul(k)), c);
  }
  return out;
}

// Finite fields ---------------------------------------------------------------

FiniteField finite_field(unsigned q) {
  FiniteField f;
  f.q = q;
  f.add.resize(q * q);
  f.mul.resize(q * q);
  if (q >= 2 && is_prime(q)) {
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        f.add[a * q + b] = static_cast<std::uint8_t>((a + b) % q);
        f.mul[a * q + b] = static_cast<std::uint8_t>((a * b) % q);
      }
    return f;
  }
  // Elements are coefficient vectors over F_p written in base p, reduced by a
  // monic irreducible polynomial x^k = -(c_{k-1} x^{k-1} + ... + c_0).
  unsigned p = 0, k = 0;
  std::vector<unsigned> low;  // c_0 .. c_{k-1}
  switch (q) {
    case 4: p = 2, k = 2, low = {1, 1}; break;     // x^2 + x + 1
    case 8: p = 2, k = 3, low = {1, 1, 0}; break;  // x^3 + x + 1
    case 9: p = 3, k = 2, low = {1, 0}; break;     // x^2 + 1
    default: {
      const auto fac = factorize(q < 2 ? 1 : q);
      if (q < 2 || fac.distinct_primes() != 1) fail(ErrorCode::NotAPrimePower, std::to_string(q) + " is not a prime power");
      fail(ErrorCode::SizeLimitExceeded, "no field tables for q = " + std::to_string(q));
    }
  }
  auto digits = [&](unsigned a) {
    std::vector<unsigned> d(k);
    for (unsigned i = 0; i < k; ++i, a /= p) d[i] = a % p;
    return d;
  };
  auto pack = [&](const std::vector<unsigned>& d) {
    unsigned a = 0;
    for (unsigned i = k; i-- > 0;) a = a * p + d[i];
    return a;
  };
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      auto da = digits(a), db = digits(b);
      std::vector<unsigned> sum(k);
      for (unsigned i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
      f.add[a * q + b] = static_cast<std::uint8_t>(pack(sum));
      std::vector<unsigned> prod(2 * k - 1, 0);
      for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (unsigned e = 2 * k - 1; e-- > k;) {
        const unsigned c = prod[e];
        prod[e] = 0;
        for (unsigned i = 0; i < k; ++i) prod[e - k + i] = (prod[e - k + i] + (p - low[i]) * c) % p;
      }
      prod.resize(k);
      f.mul[a * q + b] = static_cast<std::uint8_t>(pack(prod));
    }
  return f;
}

// Subspaces -------------------------------------------------------------------

SubspaceLattice subspace_lattice(unsigned q, unsigned n, const LatticeOptions& options) {
  if (n < 1) fail(ErrorCode::DegenerateLattice, "subspace lattice needs n >= 1");
  const FiniteField field = finite_field(q);
  std::uint64_t vectors = 1;
  for (unsigned i = 0; i < n; ++i) {
    vectors *= q;
    if (vectors > (1u << 16)) fail(ErrorCode::SizeLimitExceeded, "F_q^n too large to enumerate");
  }
  // Vectors are base-q digit strings packed into integers.
  auto combine = [&](std::uint32_t a, unsigned c, std::uint32_t b) {
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < n; ++i, a /= q, b /= q, scale *= q)
      out += scale * field.plus(a % q, field.times(c, b % q));
    return out;
  };

  using Members = std::vector<std::uint32_t>;  // sorted
  std::map<Members, Element> index;
  std::vector<Members> spaces{{0}};
  std::vector<unsigned> dims{0};
  index.emplace(spaces[0], 0);
  std::vector<Cover> covers;
  for (std::size_t id = 0; id < spaces.size(); ++id) {
    std::vector<bool> in(vectors, false);
    for (auto v : spaces[id]) in[v] = true;
    for (std::uint32_t v = 1; v < vectors; ++v) {
      if (in[v]) continue;
      Members span;
      span.reserve(spaces[id].size() * q);
      for (auto s : spaces[id])
        for (unsigned c = 0; c < q; ++c) span.push_back(combine(s, c, v));
      std::sort(span.begin(), span.end());
      auto [it, inserted] = index.try_emplace(span, static_cast<Element>(spaces.size()));
      if (inserted) {
        check_budget(spaces.size() + 1, options, "subspace lattice");
        spaces.push_back(std::move(span));
        dims.push_back(dims[id] + 1);
      }
      covers.emplace_back(static_cast<Element>(id), it->second);
    }
  }
  std::sort(covers.begin(), covers.end());
  covers.erase(std::unique(covers.begin(), covers.end()), covers.end());
  return {lattice_from_covers(spaces.size(), covers, options), std::move(dims)};
}

DirichletSeries subspace_zeta_closed(unsigned q, unsigned n) {
  DirichletSeries out;
  const BigInt total = pow(ul(q), n) - 1;
  for (unsigned k = 1; k <= n; ++k) {
    BigInt c = gaussian_binomial(n, k, q) * pow(ul(q), (n - k) * (n - k - 1) / 2);
    if ((n - k) % 2) c = -c;
    out.add_term(make_rational(total, pow(ul(q), k) - 1), c);
  }
  return out;
}

long double q_to_one_limit_check(unsigned n, unsigned s, long double h) {
  if (!(h > 0)) fail(ErrorCode::SingularInput, "q = 1 + h requires h > 0");
  const long double q = 1 + h;
  const long double log_q = std::log1p(h);
  const long double top = std::expm1(n * log_q);
  long double value = 0;
  for (unsigned k = 1; k <= n; ++k) {
    const long double ratio = std::expm1(k * log_q) / top;
    long double term = gaussian_binomial_at(n, k, q) * std::pow(q, static_cast<long double>((n - k) * (n - k - 1) / 2)) *
                       std::pow(ratio, static_cast<long double>(s));
    value += (n - k) % 2 ? -term : term;
  }
  const Rational exact = evaluate_exact(boolean_zeta_closed(n), static_cast<long>(s));
  const long double limit = static_cast<long double>(exact.get_d());
  return std::fabs(value - limit);
}

// Partitions ------------------------------------------------------------------

namespace {

using Rgs = std::vector<std::uint8_t>;

// Relabels blocks in order of first appearance.
Rgs normalize(const Rgs& labels) {
  Rgs out(labels.size());
  std::vector<int> map(labels.size() + 1, -1);
  std::uint8_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& m = map[labels[i]];
    if (m < 0) m = next++;
    out[i] = static_cast<std::uint8_t>(m);
  }
  return out;
}

// Enumerates restricted growth strings on n points whose blocks all have size
// divisible by d (d = 1 gives every set partition).
void enumerate_rgs(unsigned n, unsigned d, Rgs& cur, std::vector<unsigned>& sizes, std::vector<Rgs>& out,
                   std::size_t cap) {
  const std::size_t i = cur.size();
  std::size_t deficit = 0;
  for (auto s : sizes) deficit += (d - s % d) % d;
  if (deficit > n - i) return;
  if (i == n) {
    out.push_back(cur);
    if (out.size() > cap) throw Error(ErrorCode::SizeLimitExceeded, "partition lattice exceeds the element budget");
    return;
  }
  for (std::size_t b = 0; b <= sizes.size(); ++b) {
    if (b == sizes.size()) sizes.push_back(0);
    ++sizes[b];
    cur.push_back(static_cast<std::uint8_t>(b));
    enumerate_rgs(n, d, cur, sizes, out, cap);
    cur.pop_back();
    if (--sizes[b] == 0 && b + 1 == sizes.size()) sizes.pop_back();
  }
}

// Lattice on the given partitions (plus `offset` leading elements) with covers
// from merging two blocks.
std::vector<Cover> merge_covers(const std::vector<Rgs>& parts, Element offset) {
  std::map<Rgs, Element> index;
  for (std::size_t i = 0; i < parts.size(); ++i) index.emplace(parts[i], static_cast<Element>(i) + offset);
  std::vector<Cover> covers;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    const unsigned blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1u;
    for (unsigned a = 0; a < blocks; ++a)
      for (unsigned b = a + 1; b < blocks; ++b) {
        Rgs merged = p;
        for (auto& v : merged)
          if (v == b) v = static_cast<std::uint8_t>(a);
        covers.emplace_back(static_cast<Element>(i) + offset, index.at(normalize(merged)));
      }
  }
  return covers;
}

}  // namespace

PartitionLattice partition_lattice(unsigned n, const LatticeOptions& options, unsigned max_n) {
  if (n < 2) fail(ErrorCode::DegenerateLattice, "partition lattice needs n >= 2");
  if (n > max_n || n > 16)
    fail(ErrorCode::SizeLimitExceeded, "partition lattice on " + std::to_string(n) + " points exceeds n <= " +
                                           std::to_string(max_n));
  PartitionLattice out;
  Rgs cur;
  std::vector<unsigned> sizes;
  enumerate_rgs(n, 1, cur, sizes, out.blocks, options.max_elements);
  auto covers = merge_covers(out.blocks, 0);
  out.lattice = lattice_from_covers(out.blocks.size(), covers, options);
  return out;
}

DirichletSeries partition_zeta_closed(unsigned n) {
  if (n < 2) fail(ErrorCode::DegenerateLattice, "partition lattice needs n >= 2");
  const BigInt total = binomial(n, 2);
  DirichletSeries out;
  for (const auto& shape : integer_partitions(n)) {
    unsigned long below = 0;
    for (auto part : shape) below += static_cast<unsigned long>(part) * (part - 1) / 2;
    if (below == 0) continue;  // the bottom
    const unsigned k = static_cast<unsigned>(shape.size());
    BigInt c = set_partitions_of_shape(shape) * factorial(k - 1);
    if ((k - 1) % 2) c = -c;
    out.add_term(make_rational(total, BigInt(below)), c);
  }
  return out;
}

PartitionLattice d_divisible_partition_lattice(unsigned d, unsigned n, const LatticeOptions& options,
                                               unsigned max_points) {
  if (d < 2 || n < 1) fail(ErrorCode::DegenerateLattice, "d-divisible partition lattice needs d >= 2, n >= 1");
  if (static_cast<std::uint64_t>(d) * n > max_points)
    fail(ErrorCode::SizeLimitExceeded, "d-divisible partition lattice on " + std::to_string(d * n) +
                                           " points exceeds dn <= " + std::to_string(max_points));
  PartitionLattice out;
  out.blocks.emplace_back();  // artificial bottom
  std::vector<Rgs> parts;
  Rgs cur;
  std::vector<unsigned> sizes;
  enumerate_rgs(d * n, d, cur, sizes, parts, options.max_elements - 1);
  auto covers = merge_covers(parts, 1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const unsigned blocks = *std::max_element(parts[i].begin(), parts[i].end()) + 1u;
    if (blocks == n) covers.emplace_back(0, static_cast<Element>(i) + 1);
  }
  out.blocks.insert(out.blocks.end(), parts.begin(), parts.end());
  out.lattice = lattice_from_covers(out.blocks.size(), covers, options);
  return out;
}

BigInt d_divisible_j_count(unsigned d, const std::vector<unsigned>& parts) {
  if (d < 1) fail(ErrorCode::PartNotDivisible, "d must be positive");
  BigInt out = 1;
  const BigInt dfact = factorial(d);
  for (auto part : parts) {
    if (part == 0 || part % d != 0)
      fail(ErrorCode::PartNotDivisible, "part " + std::to_string(part) + " is not a positive multiple of " + std::to_string(d));
    const unsigned p = part / d;
    out *= factorial(part) / (pow(dfact, p) * factorial(p));
  }
  return out;
}

BigInt d_divisible_total_j(unsigned d, unsigned n) { return d_divisible_j_count(d, {d * n}); }

// Family specs ------------------------------------------------------------------

std::string FamilySpec::text() const {
  std::string out = kind + ":";
  for (std::size_t i = 0; i < params.size(); ++i) out += (i ? "," : "") + std::to_string(params[i]);
  return out;
}

FamilySpec parse_family(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorCode::ParseError, "family spec needs kind:params, got '" + text + "'");
  FamilySpec spec;
  spec.kind = text.substr(0, colon);
  static const std::map<std::string, std::size_t> arity{{"boolean", 1}, {"divisor", 1},   {"subspace", 2},
                                                        {"partition", 1}, {"ddiv", 2}, {"chain", 1}};
  auto it = arity.find(spec.kind);
  if (it == arity.end()) fail(ErrorCode::ParseError, "unknown family '" + spec.kind + "'");
  const std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = std::min(rest.find(',', start), rest.size());
    std::uint64_t v = 0;
    const char* b = rest.data() + start;
    const char* e = rest.data() + comma;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e || b == e) fail(ErrorCode::ParseError, "bad parameter in '" + text + "'");
    spec.params.push_back(v);
    start = comma + 1;
  }
  if (spec.params.size() != it->second)
    fail(ErrorCode::ParseError, "family '" + spec.kind + "' takes " + std::to_string(it->second) + " parameter(s)");
  for (auto v : spec.params)
    if (v > 1'000'000'000'000ULL) fail(ErrorCode::SizeLimitExceeded, "parameter too large in '" + text + "'");
  return spec;
}

Lattice build_family(const FamilySpec& spec, const LatticeOptions& options) {
  auto u = [&](std::size_t i) {
    if (spec.params[i] > 1'000'000) fail(ErrorCode::SizeLimitExceeded, "parameter too large in '" + spec.text() + "'");
    return static_cast<unsigned>(spec.params[i]);
  };
  if (spec.kind == "boolean") return boolean_lattice(u(0), options);
  if (spec.kind == "divisor") return divisibility_lattice(spec.params[0], options);
  if (spec.kind == "subspace") return subspace_lattice(u(0), u(1), options).lattice;
  if (spec.kind == "partition") return partition_lattice(u(0), options).lattice;
  if (spec.kind == "ddiv") return d_divisible_partition_lattice(u(0), u(1), options).lattice;
  if (spec.kind == "chain") return chain(u(0), options);
  fail(ErrorCode::ParseError, "unknown family '" + spec.kind + "'");
}

std::optional<DirichletSeries> family_closed_form(const FamilySpec& spec) {
  if (spec.kind == "boolean") return boolean_zeta_closed(static_cast<unsigned>(spec.params[0]));
  if (spec.kind == "divisor") return divisibility_zeta_closed(spec.params[0]);
  if (spec.kind == "subspace") {
    finite_field(static_cast<unsigned>(spec.params[0]));
    return subspace_zeta_closed(static_cast<unsigned>(spec.params[0]), static_cast<unsigned>(spec.params[1]));
  }
  if (spec.kind == "partition") return partition_zeta_closed(static_cast<unsigned>(spec.params[0]));
  return std::nullopt;
}

}  // namespace pzeta
