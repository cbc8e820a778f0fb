#include "pzeta/zeta.hpp"

#include "json.hpp"

#include "pzeta/canonical.hpp"
#include "pzeta/error.hpp"
#include "pzeta/kernels.hpp"

namespace pzeta {

namespace {

// Canonical labels are attached to report tables only for lattices small
// enough that canonization is instantaneous.
constexpr std::size_t kCanonicalReportLimit = 256;

struct SeriesParts {
  DirichletSeries series;
  std::map<Rational, BigInt> local_sums;
};

SeriesParts assemble(const Lattice& lattice, const std::vector<BigInt>& mu_top,
                     const std::vector<std::size_t>& counts, std::size_t total) {
  SeriesParts out;
  for (Element x = 0; x < lattice.size(); ++x) {
    if (x == lattice.bottom()) continue;
    const Rational ratio = make_rational(BigInt(static_cast<unsigned long>(total)),
                                         BigInt(static_cast<unsigned long>(counts[x])));
    auto [it, inserted] = out.local_sums.try_emplace(ratio, 0);
    it->second += mu_top[x];
  }
  for (const auto& [q, c] : out.local_sums) out.series.add_term(q, c);
  return out;
}

}  // namespace

ZetaReport zeta_series(const Lattice& lattice, Exec exec) {
  ZetaReport r;
  r.mobius_top = mobius_vector(lattice, lattice.top(), exec).values;
  r.j_below = below_irreducible_counts(lattice);
  r.j_count = r.j_below[lattice.top()];
  auto parts = assemble(lattice, r.mobius_top, r.j_below, r.j_count);
  r.series = std::move(parts.series);
  r.local_sums = std::move(parts.local_sums);
  r.is_ordinary = is_ordinary(r.series);
  r.is_strongly_coset_like = true;
  for (Element x = 0; x < lattice.size(); ++x)
    if (x != lattice.bottom() && r.j_count % r.j_below[x] != 0) r.is_strongly_coset_like = false;
  return r;
}

std::optional<DirichletSeries> zeta_series_atom_based(const Lattice& lattice, Exec exec) {
  const auto a = atoms(lattice);
  Element joined = lattice.bottom();
  for (auto x : a) joined = lattice.join(joined, x);
  if (joined != lattice.top()) return std::nullopt;
  std::vector<std::size_t> counts(lattice.size(), 0);
  for (Element x = 0; x < lattice.size(); ++x)
    for (auto y : a)
      if (lattice.leq(y, x)) ++counts[x];
  const auto mu = mobius_vector(lattice, lattice.top(), exec).values;
  // With J replaced by the atoms, elements above no atom cannot occur (every
  // non-bottom element lies above some atom).
  return assemble(lattice, mu, counts, a.size()).series;
}

std::map<Rational, BigInt> local_sums(const Lattice& lattice) { return zeta_series(lattice).local_sums; }

Rational direct_tuple_probability(const Lattice& lattice, Element x, unsigned s, const OracleOptions& options) {
  const auto pool = below_irreducibles(lattice, x);
  const BigInt space = pow(BigInt(static_cast<unsigned long>(pool.size())), s);
  if (space > BigInt(static_cast<unsigned long>(options.tuple_budget)))
    fail(ErrorCode::BudgetExceeded, "|J_x|^s = " + space.get_str() + " exceeds the tuple budget");
  const BigInt hits = kernels::count_tuples_with_join(lattice, pool, x, s, options.exec);
  return make_rational(hits, space);
}

Rational inclusion_exclusion_probability(const Lattice& lattice, Element x, unsigned s) {
  const auto pool = below_irreducibles(lattice, x);
  const auto counts = below_irreducible_counts(lattice);
  const auto mu = mobius_vector(lattice, x, Exec::Serial);
  // Tuples with join <= y are exactly the tuples over J_y, so the count with
  // join exactly x is sum_{y <= x} mu(y, x) |J_y|^s (0^0 = 1 at the bottom).
  BigInt hits = 0;
  for (Element y = 0; y < lattice.size(); ++y)
    if (lattice.leq(y, x)) hits += mu[y] * pow(BigInt(static_cast<unsigned long>(counts[y])), s);
  return make_rational(hits, pow(BigInt(static_cast<unsigned long>(pool.size())), s));
}

Rational brute_force_probability(const Lattice& lattice, Element x, unsigned s, const OracleOptions& options) {
  if (x == lattice.bottom()) fail(ErrorCode::BottomHasNoIrreducibles, "oracle target must not be the bottom");
  const auto pool = below_irreducibles(lattice, x);
  if (pow(BigInt(static_cast<unsigned long>(pool.size())), s) <= BigInt(static_cast<unsigned long>(options.tuple_budget)))
    return direct_tuple_probability(lattice, x, s, options);
  return inclusion_exclusion_probability(lattice, x, s);
}

bool OracleRecord::all_equal() const {
  for (const auto& r : rows)
    if (!r.equal) return false;
  return true;
}

OracleRecord verify_series_against_oracle(const Lattice& lattice, unsigned s_max, const OracleOptions& options) {
  const auto series = zeta_series(lattice, options.exec).series;
  OracleRecord record;
  for (unsigned s = 1; s <= s_max; ++s) {
    OracleComparison row;
    row.s = s;
    row.series_value = evaluate_exact(series, static_cast<long>(s));
    row.oracle_value = brute_force_probability(lattice, lattice.top(), s, options);
    row.equal = row.series_value == row.oracle_value;
    record.rows.push_back(row);
    if (!row.equal)
      fail(ErrorCode::MismatchDetected, "s=" + std::to_string(s) + ": series " + to_string(row.series_value) +
                                            " vs oracle " + to_string(row.oracle_value));
  }
  return record;
}

std::string report_json(const Lattice& lattice, const ZetaReport& report) {
  nlohmann::ordered_json doc;
  doc["series"] = nlohmann::ordered_json::parse(to_json(report.series));
  doc["jCount"] = report.j_count;
  std::vector<std::uint32_t> labels;
  if (lattice.size() <= kCanonicalReportLimit) labels = canonical_labeling(poset_graph(lattice)).label;
  auto elements = nlohmann::ordered_json::array();
  for (Element x = 0; x < lattice.size(); ++x) {
    nlohmann::ordered_json e;
    e["id"] = x;
    if (!labels.empty()) e["canonical"] = labels[x];
    e["jBelow"] = report.j_below[x];
    e["mu"] = report.mobius_top[x].get_str();
    elements.push_back(std::move(e));
  }
  doc["elements"] = std::move(elements);
  auto sums = nlohmann::ordered_json::array();
  for (const auto& [q, c] : report.local_sums) {
    nlohmann::ordered_json t;
    t["q"] = q.get_num().get_str() + "/" + q.get_den().get_str();
    t["S"] = c.get_str();
    sums.push_back(std::move(t));
  }
  doc["localSums"] = std::move(sums);
  doc["isOrdinary"] = report.is_ordinary;
  doc["isStronglyCosetLike"] = report.is_strongly_coset_like;
  return doc.dump();
}

}  // namespace pzeta
