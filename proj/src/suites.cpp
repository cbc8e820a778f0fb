#include "pzeta/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "pzeta/cosetlike.hpp"
#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/groups.hpp"
#include "pzeta/kernels.hpp"
#include "pzeta/numbers.hpp"
#include "pzeta/search.hpp"
#include "pzeta/zeta.hpp"

namespace pzeta {

namespace {

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }

  std::size_t checks() const { return checks_; }
  std::vector<std::string>& failures() { return failures_; }
  std::vector<std::string>& notes() { return notes_; }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

Rational q(long num, long den = 1) { return make_rational(BigInt(num), BigInt(den)); }

DirichletSeries series_of(std::initializer_list<std::pair<Rational, long>> terms) {
  DirichletSeries out;
  for (const auto& [base, c] : terms) out.add_term(base, BigInt(c));
  return out;
}

std::string show(const DirichletSeries& a) { return render_plain(a); }

// Suites -----------------------------------------------------------------------

void suite_pi5(Checker& ck, const SuiteOptions& opts) {
  const auto expected =
      series_of({{q(1), 1}, {q(5, 3), -5}, {q(5, 2), -10}, {q(10, 3), 20}, {q(5), 30}, {q(10), -60}});
  const auto got = zeta_series(partition_lattice(5).lattice, opts.exec).series;
  ck.expect(got == expected, "P(Pi_5) = " + show(got));
  ck.expect(partition_zeta_closed(5) == expected, "closed form of P(Pi_5) = " + show(partition_zeta_closed(5)));
}

void suite_fixtures(Checker& ck, const SuiteOptions& opts) {
  const std::pair<std::string, DirichletSeries> cases[] = {
      {"ten_point", series_of({{q(1), 1}, {q(2), -1}, {q(4), -2}})},
      {"eleven_point", series_of({{q(1), 1}, {q(2), -3}, {q(4), 2}})},
  };
  for (const auto& [name, expected] : cases) {
    const Lattice l = load_fixture(name);
    const auto c = classify(l, opts.exec);
    ck.expect(c.report.series == expected, name + " series = " + show(c.report.series));
    ck.expect(c.weak && !c.strong, name + " weak=" + std::to_string(c.weak) + " strong=" + std::to_string(c.strong));
    bool ratio = false;
    for (Element x = 0; x < l.size(); ++x)
      if (x != l.bottom() && c.report.j_below[x] != 0 &&
          make_rational(BigInt(static_cast<unsigned long>(c.report.j_count)),
                        BigInt(static_cast<unsigned long>(c.report.j_below[x]))) == q(8, 3))
        ratio = true;
    ck.expect(ratio, name + " has no element with [J:J_x] = 8/3");
  }
}

void suite_oracle(Checker& ck, const SuiteOptions& opts) {
  OracleOptions oracle;
  oracle.exec = Exec::Serial;
  std::size_t lattices = 0;
  for (std::size_t n = 2; n <= 7; ++n) {
    SearchOptions search;
    search.exec = opts.exec;
    for (const auto& form : enumerate_lattices(n, search)) {
      ++lattices;
      const Lattice l = lattice_from_canonical(form);
      const auto series = zeta_series(l, Exec::Serial).series;
      for (unsigned s = 1; s <= 3; ++s) {
        const Rational value = evaluate_exact(series, s);
        const Rational direct = direct_tuple_probability(l, l.top(), s, oracle);
        const Rational ie = inclusion_exclusion_probability(l, l.top(), s);
        ck.expect(value == direct && value == ie, "lattice " + form.hex + " s=" + std::to_string(s) + ": series " +
                                                     to_string(value) + ", direct " + to_string(direct) +
                                                     ", inclusion-exclusion " + to_string(ie));
      }
    }
  }
  ck.note(std::to_string(lattices) + " lattice classes on 2..7 elements");
}

void suite_stirling(Checker& ck, const SuiteOptions& opts) {
  for (unsigned r = 1; r <= 5; ++r) {
    const auto series = zeta_series(boolean_lattice(r), opts.exec).series;
    for (unsigned s = 1; s <= 9; ++s) {
      const Rational lhs = pow(q(r), s) * evaluate_exact(series, s);
      const Rational rhs(factorial(r) * stirling2(s, r));
      ck.expect(lhs == rhs, "r=" + std::to_string(r) + " s=" + std::to_string(s) + ": " + to_string(lhs) +
                                " vs " + to_string(rhs));
    }
  }
}

void suite_closed_forms(Checker& ck, const SuiteOptions& opts) {
  for (std::uint64_t n : {4u, 8u, 12u, 30u, 360u}) {
    const Lattice l = divisibility_lattice(n);
    const auto report = zeta_series(l, opts.exec);
    const std::string tag = "O_" + std::to_string(n);
    ck.expect(report.series == divisibility_zeta_closed(n), tag + " series " + show(report.series));
    const auto ds = divisors(n);
    for (Element x = 0; x < l.size(); ++x)
      ck.expect(report.mobius_top[x] == number_mobius(n / ds[x]),
                tag + " mu(" + std::to_string(ds[x]) + ", n) = " + to_string(report.mobius_top[x]));
  }
  for (auto [qq, n] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {4u, 2u}}) {
    const auto sl = subspace_lattice(qq, n);
    const auto report = zeta_series(sl.lattice, opts.exec);
    const std::string tag = "S(F_" + std::to_string(qq) + "^" + std::to_string(n) + ")";
    ck.expect(report.series == subspace_zeta_closed(qq, n), tag + " series " + show(report.series));
    for (Element x = 0; x < sl.lattice.size(); ++x) {
      const unsigned k = n - sl.dimension[x];
      BigInt expected;
      mpz_ui_pow_ui(expected.get_mpz_t(), qq, k * (k - 1) / 2);
      if (k % 2 == 1) expected = -expected;
      ck.expect(report.mobius_top[x] == expected, tag + " mu at codimension " + std::to_string(k) + " = " +
                                                      to_string(report.mobius_top[x]));
    }
  }
  for (unsigned n = 3; n <= 6; ++n) {
    const auto pl = partition_lattice(n);
    const auto report = zeta_series(pl.lattice, opts.exec);
    const std::string tag = "Pi_" + std::to_string(n);
    ck.expect(report.series == partition_zeta_closed(n), tag + " series " + show(report.series));
    for (Element x = 0; x < pl.lattice.size(); ++x) {
      const unsigned b = 1u + *std::max_element(pl.blocks[x].begin(), pl.blocks[x].end());
      BigInt expected = factorial(b - 1);
      if ((b - 1) % 2 == 1) expected = -expected;
      ck.expect(report.mobius_top[x] == expected,
                tag + " mu with " + std::to_string(b) + " blocks = " + to_string(report.mobius_top[x]));
    }
  }
}

void suite_q_limit(Checker& ck, const SuiteOptions&) {
  long double worst = 0;
  for (unsigned n : {2u, 3u})
    for (unsigned s = 1; s <= 4; ++s) {
      const long double gap = q_to_one_limit_check(n, s, 1e-6L);
      worst = std::max(worst, gap);
      ck.expect(gap < 1e-3L, "n=" + std::to_string(n) + " s=" + std::to_string(s) + " gap " +
                                 std::to_string(static_cast<double>(gap)));
    }
  std::ostringstream out;
  out << "largest gap " << std::scientific << std::setprecision(3) << static_cast<double>(worst);
  ck.note(out.str());
}

void suite_brown(Checker& ck, const SuiteOptions&) {
  const std::vector<FiniteGroup> groups{cyclic(2), cyclic(3), cyclic(4), cyclic(6),
                                        cyclic(8), cyclic(12), symmetric(3), dihedral(4)};
  for (const auto& g : groups) {
    try {
      const auto record = verify_brown_identity(g, 4);
      ck.expect(record.series_equal && record.all_equal(), g.name() + " identity rows disagree");
    } catch (const Error& e) {
      ck.expect(false, g.name() + ": " + e.what());
    }
  }
  const auto c6 = coset_lattice(cyclic(6)).lattice.size();
  const auto c3 = coset_lattice(symmetric(3)).lattice.size();
  ck.expect(c6 == 13, "|C(Z/6)| = " + std::to_string(c6));
  ck.expect(c3 == 19, "|C(S_3)| = " + std::to_string(c3));
}

void suite_products(Checker& ck, const SuiteOptions& opts) {
  const std::vector<std::pair<std::string, Lattice>> left{{"B_2", boolean_lattice(2)},
                                                          {"B_3", boolean_lattice(3)},
                                                          {"Pi_4", partition_lattice(4).lattice},
                                                          {"C(Z/2)", coset_lattice(cyclic(2)).lattice}};
  const std::vector<std::pair<std::string, Lattice>> right{
      {"3-chain", chain(3)}, {"B_2", boolean_lattice(2)}, {"ten_point", load_fixture("ten_point")}};
  for (const auto& [ln, l] : left) {
    ck.expect(is_atomistic(l), ln + " is not atomistic");
    const auto pl = zeta_series(l, opts.exec).series;
    for (const auto& [kn, k] : right) {
      const auto product = zeta_series(lower_reduced_product(l, k), opts.exec).series;
      const auto expected = pl * zeta_series(k, opts.exec).series;
      ck.expect(product == expected, "P(" + ln + " * " + kn + ") = " + show(product) + ", expected " + show(expected));
    }
  }
  for (const auto& [g, h] : {std::pair{cyclic(2), cyclic(3)}, {cyclic(4), cyclic(3)}, {symmetric(3), cyclic(5)}}) {
    const std::string tag = g.name() + " x " + h.name();
    try {
      const auto record = verify_coprime_product(g, h, 4);
      ck.expect(record.series.series_equal && record.series.all_equal(), tag + " series differ");
      ck.expect(record.coset_lattices_isomorphic, tag + " coset lattice is not the lower reduced product");
    } catch (const Error& e) {
      ck.expect(false, tag + ": " + e.what());
    }
  }
}

void suite_partition(Checker& ck, const SuiteOptions& opts) {
  for (unsigned n = 2; n <= 30; ++n) {
    const bool strong = partition_strong_check(n).strong;
    ck.expect(strong == (n <= 4), "shape-level Pi_" + std::to_string(n) + " strong=" + std::to_string(strong));
  }
  for (unsigned n = 2; n <= 8; ++n) {
    const auto c = classify(partition_lattice(n).lattice, opts.exec);
    ck.expect(c.strong == (n <= 4), "Pi_" + std::to_string(n) + " strong=" + std::to_string(c.strong));
    ck.expect(c.weak == (n <= 4), "Pi_" + std::to_string(n) + " weak=" + std::to_string(c.weak));
  }
}

void suite_two_divisible(Checker& ck, const SuiteOptions& opts) {
  for (unsigned n = 2; n <= 30; ++n) {
    const bool strong = ddiv_strong_check(2, n).strong;
    ck.expect(strong == (n == 2 || n == 3 || n == 5),
              "shape-level Pi^2_" + std::to_string(2 * n) + " strong=" + std::to_string(strong));
  }
  const auto central = kernels::first_failure(
      2, 10'000, [](std::uint64_t m) { return central_binomial_check(m); }, opts.exec);
  ck.expect(!central, "C(2m,m) divides C(4m,2m) at m=" + std::to_string(central.value_or(0)));
  const auto odd =
      kernels::first_failure(3, 10'000, [](std::uint64_t m) { return odd_case_check(m); }, opts.exec);
  ck.expect(!odd, "odd case divides at m=" + std::to_string(odd.value_or(0)));
  const auto gap = kernels::first_nagura_gap(25, 1'000'000, opts.exec);
  ck.expect(!gap, "no prime in (n, 6n/5) at n=" + std::to_string(gap.value_or(0)));
  for (unsigned d = 2; d <= 12; ++d)
    for (std::uint64_t n = 2; n <= 200; ++n)
      ck.expect(p0prime_divisibility(d, n), "(d-1)! fails at d=" + std::to_string(d) + " n=" + std::to_string(n));
}

void suite_mainthm(Checker& ck, const SuiteOptions& opts) {
  constexpr std::uint64_t kMax = 500;
  for (unsigned d : {3u, 4u, 5u}) {
    const auto m0 = mainthm_threshold(d, kMax, opts.exec);
    const std::string tag = "d=" + std::to_string(d);
    if (!m0) {
      ck.expect(false, tag + ": no witness at m=" + std::to_string(kMax));
      continue;
    }
    ck.note(tag + " m0=" + std::to_string(*m0));
    ck.expect(*m0 <= 50, tag + ": observed m0=" + std::to_string(*m0) + " exceeds 50");
    for (std::uint64_t m = *m0; m <= kMax; ++m) {
      const auto w = mainthm_witness(d, m);
      const bool divides = w.prime && binomial_valuation(2 * m, m, *w.prime) <=
                                          binomial_valuation(2 * d * m, d * m, *w.prime);
      ck.expect(w.confirmed() && !divides, tag + " m=" + std::to_string(m) + ": witness not confirmed");
    }
  }
}

void suite_search(Checker& ck, const SuiteOptions& opts) {
  SearchOptions search;
  search.exec = opts.exec;
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto got = enumerate_lattices(n, search).size();
    const auto oracle = brute_force_lattice_count(n);
    ck.expect(got == oracle,
              "n=" + std::to_string(n) + ": enumerated " + std::to_string(got) + ", brute force " + std::to_string(oracle));
  }
  const std::size_t max_n = opts.stretch ? 11 : 10;
  std::vector<CatalogEntry> found;
  std::vector<std::size_t> per_n(max_n + 1, 0);
  std::size_t atomistic = 0;
  for (std::size_t n = 2; n <= max_n; ++n) {
    const auto s = classify_catalog(n, search);
    per_n[n] = s.weak_not_strong;
    atomistic += s.atomistic_weak_not_strong;
    found.insert(found.end(), s.entries.begin(), s.entries.end());
  }
  std::size_t below_ten = 0;
  for (std::size_t n = 2; n <= 9; ++n) below_ten += per_n[n];
  ck.expect(below_ten == 0, "weak-not-strong classes on at most 9 elements: " + std::to_string(below_ten));
  auto contains = [&](const std::string& fixture) {
    const auto form = canonical_form(load_fixture(fixture));
    return std::any_of(found.begin(), found.end(), [&](const auto& e) { return e.form == form; });
  };
  ck.expect(contains("ten_point"), "ten_point class missing from the 10-element results");
  ck.expect(atomistic == 0, "atomistic weak-not-strong classes: " + std::to_string(atomistic));
  ck.note("weak-not-strong classes at n=10: " + std::to_string(per_n[10]));
  if (opts.stretch) {
    ck.expect(contains("eleven_point"), "eleven_point class missing from the 11-element results");
    ck.note("weak-not-strong classes at n=11: " + std::to_string(per_n[11]));
  }
}

// The quaternion group: ids 4*sign + unit with units 1, i, j, k.
FiniteGroup quaternion() {
  // unit product u*v = (sign, unit)
  static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  std::vector<std::uint32_t> table(64);
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b) {
      const std::uint32_t u = a % 4, v = b % 4;
      const std::uint32_t sign = (a / 4) ^ (b / 4) ^ static_cast<std::uint32_t>(kSign[u][v]);
      table[a * 8 + b] = 4 * sign + static_cast<std::uint32_t>(kUnit[u][v]);
    }
  return group_from_table(8, std::move(table), "Q8", {"1", "i", "j", "k", "-1", "-i", "-j", "-k"});
}

std::vector<FiniteGroup> groups_up_to_16() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 2; n <= 16; ++n) out.push_back(cyclic(n));
  for (std::size_t n = 3; n <= 8; ++n) out.push_back(dihedral(n));
  out.push_back(quaternion());
  const auto z2 = cyclic(2);
  const auto v4 = direct_product(z2, z2);
  out.push_back(v4);
  out.push_back(direct_product(z2, cyclic(4)));
  out.push_back(direct_product(v4, z2));
  out.push_back(direct_product(cyclic(3), cyclic(3)));
  out.push_back(direct_product(z2, cyclic(6)));
  out.push_back(direct_product(z2, cyclic(8)));
  out.push_back(direct_product(cyclic(4), cyclic(4)));
  out.push_back(direct_product(v4, cyclic(4)));
  out.push_back(direct_product(v4, v4));
  out.push_back(direct_product(z2, dihedral(4)));
  out.push_back(direct_product(z2, quaternion()));
  return out;
}

void suite_good_sublattices(Checker& ck, const SuiteOptions& opts) {
  const auto g6 = cyclic(6);
  const auto c6 = coset_lattice(g6);
  const std::vector<Element> gens6{c6.singleton(0), c6.singleton(3), c6.find(0b010010)};
  const auto sub6 = sublattice_generated(c6.lattice, gens6);
  const auto k6 = classify(sub6.lattice, opts.exec);
  ck.expect(!k6.weak, "C(Z/6) sublattice from {0},{3},{1,4} is weakly coset-like");

  const auto g8 = cyclic(8);
  const auto c8 = coset_lattice(g8);
  std::vector<Element> gens8;
  for (std::uint32_t a : {0u, 1u, 2u, 4u, 5u, 6u}) gens8.push_back(c8.singleton(a));
  const auto sub8 = sublattice_generated(c8.lattice, gens8);
  const auto irreducibles = join_irreducibles(sub8.lattice);
  ck.expect(irreducibles.size() == 6, "C(Z/8) sublattice has " + std::to_string(irreducibles.size()) +
                                          " join-irreducibles");
  ck.expect(!classify(sub8.lattice, opts.exec).strong, "C(Z/8) sublattice is strongly coset-like");
  const auto check8 = is_good_sublattice(g8, c8, sub8.to_ambient, 0b00010001);
  ck.expect(!check8.at_most_two_cosets, "C(Z/8) sublattice satisfies the two-coset clause");

  std::size_t examined = 0, good = 0;
  for (const auto& g : groups_up_to_16()) {
    const auto scan = scan_good_sublattices(g, 8);
    examined += scan.examined;
    good += scan.good.size();
    for (const auto& f : scan.good)
      ck.expect(f.strongly_coset_like, g.name() + ": good sublattice of size " + std::to_string(f.size) +
                                           " is not strongly coset-like");
  }
  ck.note(std::to_string(good) + " good sublattices among " + std::to_string(examined) + " candidates");
}

struct SuiteDef {
  SuiteInfo info;
  std::function<void(Checker&, const SuiteOptions&)> run;
};

const std::vector<SuiteDef>& definitions() {
  static const std::vector<SuiteDef> defs{
      {{1, "pi5-series", "exact series of the partition lattice on 5 points"}, suite_pi5},
      {{2, "fixtures", "fixture series and weak-not-strong classification"}, suite_fixtures},
      {{3, "oracle", "series against tuple-counting oracles on all lattices up to 7 elements"}, suite_oracle},
      {{4, "stirling", "r^s P(B_r, s) = r! S(s, r)"}, suite_stirling},
      {{5, "closed-forms", "closed forms and Moebius formulas against the generic engine"}, suite_closed_forms},
      {{6, "q-limit", "subspace lattice tends to the Boolean lattice as q -> 1"}, suite_q_limit},
      {{7, "brown", "P(C(G), s+1) = P(G, s) and coset lattice sizes"}, suite_brown},
      {{8, "products", "lower reduced products and coprime group products"}, suite_products},
      {{9, "partition", "partition lattices are coset-like exactly for n <= 4"}, suite_partition},
      {{10, "two-divisible", "2-divisible partition lattices and divisibility facts"}, suite_two_divisible},
      {{11, "mainthm", "witness primes for d in {3, 4, 5} from m0 <= 50 to 500"}, suite_mainthm},
      {{12, "search", "exhaustive lattice search for weak-not-strong examples", true}, suite_search},
      {{13, "good-sublattices", "good sublattices of coset lattices"}, suite_good_sublattices},
  };
  return defs;
}

}  // namespace

std::string SuiteResult::line() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << ' ' << info.number << ' ' << info.name << ": " << info.title << " ("
      << checks << " checks, " << std::fixed << std::setprecision(2) << seconds << "s)";
  for (const auto& n : notes) out << "; " << n;
  if (!failures.empty()) out << "; first failure: " << failures.front();
  return out.str();
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& d : definitions()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto& defs = definitions();
  const auto it = std::find_if(defs.begin(), defs.end(),
                               [&](const SuiteDef& d) { return d.info.name == name || std::to_string(d.info.number) == name; });
  if (it == defs.end()) fail(ErrorCode::UsageError, "unknown suite '" + name + "'");
  Checker ck;
  const auto start = std::chrono::steady_clock::now();
  try {
    it->run(ck, options);
  } catch (const std::exception& e) {
    ck.expect(false, std::string("raised: ") + e.what());
  }
  SuiteResult r;
  r.info = it->info;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.checks = ck.checks();
  r.failures = std::move(ck.failures());
  r.notes = std::move(ck.notes());
  r.passed = r.failures.empty();
  return r;
}

std::string suite_results_json(const std::vector<SuiteResult>& results) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json row;
    row["number"] = r.info.number;
    row["name"] = r.info.name;
    row["title"] = r.info.title;
    row["passed"] = r.passed;
    row["checks"] = r.checks;
    row["failures"] = r.failures;
    row["notes"] = r.notes;
    doc.push_back(std::move(row));
  }
  return doc.dump();
}

}  // namespace pzeta
