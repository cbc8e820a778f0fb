// Command-line front end. Every subcommand is a thin adapter over the library.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage error, 3 any other
// library error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pzeta/cosetlike.hpp"
#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/families.hpp"
#include "pzeta/groups.hpp"
#include "pzeta/lat_io.hpp"
#include "pzeta/search.hpp"
#include "pzeta/suites.hpp"
#include "pzeta/zeta.hpp"

using namespace pzeta;
using json = nlohmann::ordered_json;

namespace {

constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kOtherError = 3;

struct Globals {
  unsigned smax = 4;
  std::uint64_t budget_tuples = 50'000'000;
  std::size_t max_elements = 20000;
  int jobs = 0;
  std::string format = "human";
  std::string output;

  bool machine() const { return format != "human"; }
  LatticeOptions lattice_options() const {
    LatticeOptions o;
    o.max_elements = max_elements;
    return o;
  }
};

// Output collected per run and written once, to stdout or --output.
struct Sink {
  std::ostringstream text;
  int status = 0;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Targets: family specs, fixture:<name>, file:<path>, coset:<group>, subgroup:<group>.
Lattice load_target(const std::string& target, const Globals& g) {
  const auto colon = target.find(':');
  const std::string kind = target.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : target.substr(colon + 1);
  if (kind == "fixture") return load_fixture(rest);
  if (kind == "file") return read_lat_file(rest, g.lattice_options());
  if (kind == "coset") return coset_lattice(parse_group(rest), g.lattice_options()).lattice;
  if (kind == "subgroup") return subgroup_lattice(parse_group(rest), g.lattice_options());
  return build_family(parse_family(target), g.lattice_options());
}

void cmd_zeta(const std::string& target, const Globals& g, Sink& out) {
  const Lattice l = load_target(target, g);
  const auto r = zeta_series(l);
  if (g.machine()) {
    out.text << report_json(l, r) << '\n';
    return;
  }
  out.text << "P(L, s) = " << render_pretty(r.series) << '\n'
           << "terms: " << render_plain(r.series) << '\n'
           << "elements: " << l.size() << ", |J| = " << r.j_count << '\n'
           << "ordinary: " << yes_no(r.is_ordinary) << ", strongly coset-like: " << yes_no(r.is_strongly_coset_like)
           << '\n';
  for (unsigned s = 1; s <= g.smax; ++s) out.text << "P(L, " << s << ") = " << to_string(evaluate_exact(r.series, s)) << '\n';
}

void cmd_classify(const std::string& target, const Globals& g, Sink& out) {
  const Lattice l = load_target(target, g);
  const auto c = classify(l);
  if (g.machine()) {
    out.text << classification_json(l, c) << '\n';
    return;
  }
  out.text << "weak=" << (c.weak ? "true" : "false") << " strong=" << (c.strong ? "true" : "false") << '\n'
           << "P(L, s) = " << render_pretty(c.report.series) << '\n';
  for (const auto& f : c.strong_failures)
    out.text << "  |J_x| = " << f.j_below << " does not divide |J| = " << f.j_count << " at element " << f.element
             << '\n';
  for (const auto& b : c.non_integer_bases) out.text << "  non-integer base " << to_string(b) << '\n';
  if (auto w = coatom_criterion(l)) out.text << "  coatom criterion witness: element " << *w << '\n';
}

void cmd_mobius(const std::string& target, const Globals& g, Sink& out) {
  const Lattice l = load_target(target, g);
  const auto mu = mobius_vector(l, l.top());
  const auto jb = below_irreducible_counts(l);
  if (g.machine()) {
    auto rows = json::array();
    for (Element x = 0; x < l.size(); ++x) rows.push_back({{"id", x}, {"mu", to_string(mu[x])}, {"jBelow", jb[x]}});
    out.text << json{{"top", l.top()}, {"elements", rows}}.dump() << '\n';
    return;
  }
  out.text << "element  mu(x, top)  |J_x|\n";
  for (Element x = 0; x < l.size(); ++x) out.text << x << "  " << to_string(mu[x]) << "  " << jb[x] << '\n';
}

void cmd_group(const std::string& spec, bool brown, const std::string& coprime, const Globals& g, Sink& out) {
  const FiniteGroup grp = parse_group(spec);
  json doc;
  doc["group"] = grp.name();
  doc["order"] = grp.order();
  const auto series = group_zeta(grp);
  doc["series"] = json::parse(to_json(series));
  if (!g.machine()) out.text << "P(" << grp.name() << ", s) = " << render_pretty(series) << '\n';

  auto rows = json::array();
  for (unsigned s = 1; s <= g.smax; ++s) {
    const Rational value = evaluate_exact(series, s);
    json row{{"s", s}, {"value", to_string(value)}};
    try {
      const Rational counted = tuple_generation_probability(grp, s, g.budget_tuples);
      row["tupleCount"] = to_string(counted);
      row["equal"] = counted == value;
      if (counted != value) out.status = kMismatch;
      if (!g.machine())
        out.text << "P(G, " << s << ") = " << to_string(value) << (counted == value ? " (tuple count agrees)" : " (tuple count MISMATCH: " + to_string(counted) + ")") << '\n';
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      if (!g.machine()) out.text << "P(G, " << s << ") = " << to_string(value) << " (tuple budget exceeded)\n";
    }
    rows.push_back(row);
  }
  doc["values"] = rows;

  if (brown) {
    bool ok = true;
    try {
      const auto rec = verify_brown_identity(grp, g.smax);
      ok = rec.series_equal && rec.all_equal();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MismatchDetected) throw;
      ok = false;
    }
    doc["brownIdentity"] = {{"ok", ok}, {"sMax", g.smax}};
    if (!ok) out.status = kMismatch;
    if (!g.machine())
      out.text << "brown identity: " << (ok ? "OK" : "MISMATCH") << " (s=0.." << g.smax << ")\n";
  }
  if (!coprime.empty()) {
    const FiniteGroup other = parse_group(coprime);
    bool ok = true, iso = false;
    try {
      const auto rec = verify_coprime_product(grp, other, g.smax);
      ok = rec.series.series_equal && rec.series.all_equal();
      iso = rec.coset_lattices_isomorphic;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MismatchDetected) throw;
      ok = false;
    }
    ok = ok && iso;
    doc["coprimeProduct"] = {{"with", other.name()}, {"ok", ok}, {"cosetLatticesIsomorphic", iso}};
    if (!ok) out.status = kMismatch;
    if (!g.machine())
      out.text << "coprime product with " << other.name() << ": " << (ok ? "OK" : "MISMATCH")
               << " (coset lattice is the lower reduced product: " << yes_no(iso) << ")\n";
  }
  if (g.machine()) out.text << doc.dump() << '\n';
}

void cmd_family(const std::string& spec_text, bool closed_form_check, const Globals& g, Sink& out) {
  const FamilySpec spec = parse_family(spec_text);
  const Lattice l = build_family(spec, g.lattice_options());
  const auto series = zeta_series(l).series;
  json doc{{"family", spec.text()}, {"elements", l.size()}, {"series", json::parse(to_json(series))}};
  if (!g.machine()) out.text << "P(" << spec.text() << ", s) = " << render_pretty(series) << '\n';
  if (closed_form_check) {
    const auto closed = family_closed_form(spec);
    if (!closed) {
      doc["closedForm"] = nullptr;
      if (!g.machine()) out.text << "closed form: not available for " << spec.kind << '\n';
    } else {
      const bool ok = *closed == series;
      doc["closedForm"] = {{"series", json::parse(to_json(*closed))}, {"equal", ok}};
      if (!ok) out.status = kMismatch;
      if (!g.machine()) {
        out.text << "closed form: " << (ok ? "OK" : "MISMATCH") << '\n';
        if (!ok) out.text << "closed form gives " << render_pretty(*closed) << '\n';
      }
    }
  }
  if (g.machine()) out.text << doc.dump() << '\n';
}

struct SearchArgs {
  std::size_t max_n = 0;
  std::size_t min_n = 2;
  bool atomistic_only = false;
  bool full_catalog = false;
  std::string checkpoint;
};

void cmd_search(const SearchArgs& a, const Globals& g, Sink& out) {
  if (a.min_n > a.max_n) fail(ErrorCode::UsageError, "--min-n exceeds --max-n");
  SearchOptions opts;
  opts.keep_all = a.full_catalog;
  opts.atomistic_only = a.atomistic_only;
  opts.progress = [](const std::string& msg) { std::cerr << msg << '\n'; };
  std::vector<CatalogSummary> summaries;
  for (std::size_t n = a.min_n; n <= a.max_n; ++n) {
    if (!a.checkpoint.empty()) opts.checkpoint_path = a.checkpoint + "." + std::to_string(n);
    summaries.push_back(classify_catalog(n, opts));
    const auto& s = summaries.back();
    if (g.machine()) continue;
    out.text << "n=" << n << " total=" << s.total << " strong=" << s.strong << " weak=" << s.weak
             << " atomistic=" << s.atomistic << " weak_not_strong=" << s.weak_not_strong
             << " atomistic_weak_not_strong=" << s.atomistic_weak_not_strong << '\n';
    for (const auto& e : s.entries) out.text << e.line() << '\n';
  }
  if (g.machine()) out.text << catalog_summary_json(summaries) << '\n';
}

void cmd_verify(const std::string& suite, bool stretch, const Globals& g, Sink& out) {
  SuiteOptions opts;
  opts.stretch = stretch;
  std::vector<SuiteResult> results;
  if (suite == "all") {
    for (const auto& info : suite_catalog()) results.push_back(run_suite(info.name, opts));
  } else {
    results.push_back(run_suite(suite, opts));
  }
  for (const auto& r : results)
    if (!r.passed) out.status = kMismatch;
  if (g.machine()) {
    out.text << suite_results_json(results) << '\n';
    return;
  }
  for (const auto& r : results) {
    out.text << r.line() << '\n';
    for (std::size_t i = 1; i < r.failures.size() && i < 10; ++i) out.text << "  " << r.failures[i] << '\n';
  }
}

void cmd_fixture(const std::string& name, const Globals& g, Sink& out) {
  const Lattice l = load_fixture(name);
  if (g.machine()) {
    auto covers = json::array();
    for (const auto& [a, b] : l.covers()) covers.push_back({a, b});
    out.text << json{{"name", name}, {"n", l.size()}, {"covers", covers}, {"canonical", canonical_form(l).hex}}.dump()
             << '\n';
    return;
  }
  out.text << to_lat_string(l, {"fixture " + name});
}

int error_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchDetected:
      return kMismatch;
    case ErrorCode::UsageError:
    case ErrorCode::ParseError:
    case ErrorCode::UnknownFixture:
      return kUsage;
    default:
      return kOtherError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic zeta functions of finite lattices"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--smax", g.smax, "Largest s for evaluations and identity checks")->check(CLI::NonNegativeNumber);
  app.add_option("--budget-tuples", g.budget_tuples, "Tuple budget for direct enumeration")->check(CLI::PositiveNumber);
  app.add_option("--max-elements", g.max_elements, "Largest lattice a constructor may build")->check(CLI::PositiveNumber);
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"human", "json", "json-like"}));
  app.add_option("--output", g.output, "Write the report to this file");

  std::string target;
  auto* zeta = app.add_subcommand("zeta", "Series and report for a target");
  zeta->add_option("target", target, "family spec, fixture:<name>, file:<path>, coset:<group>, subgroup:<group>")
      ->required();
  auto* cls = app.add_subcommand("classify", "Strong/weak coset-like classification");
  cls->add_option("target", target)->required();
  auto* mob = app.add_subcommand("mobius", "mu(x, top) and |J_x| for every element");
  mob->add_option("target", target)->required();

  std::string group_spec, coprime;
  bool brown = false;
  auto* grp = app.add_subcommand("group", "Group zeta function and identities");
  grp->add_option("spec", group_spec, "cyclic:n, sym:n, dihedral:n, prod:<spec>,<spec>")->required();
  grp->add_flag("--brown", brown, "Check P(C(G), s+1) = P(G, s)");
  grp->add_option("--coprime", coprime, "Check the product law with a group of coprime order");

  std::string family_spec;
  bool closed_check = false;
  auto* fam = app.add_subcommand("family", "Series of a named lattice family");
  fam->add_option("spec", family_spec, "boolean:r, divisor:n, subspace:q,n, partition:n, ddiv:d,n, chain:k")
      ->required();
  fam->add_flag("--closed-form-check", closed_check, "Compare with the closed form");

  SearchArgs search_args;
  auto* srch = app.add_subcommand("search", "Enumerate and classify all lattices up to a size");
  srch->add_option("--max-n", search_args.max_n, "Largest element count")->required()->check(CLI::Range(2, 11));
  srch->add_option("--min-n", search_args.min_n, "Smallest element count")->check(CLI::Range(2, 11));
  srch->add_flag("--atomistic-only", search_args.atomistic_only, "Keep atomistic lattices only");
  srch->add_flag("--full-catalog", search_args.full_catalog, "Keep every class, not only weak-not-strong ones");
  srch->add_option("--checkpoint", search_args.checkpoint, "Checkpoint prefix; one file per element count");

  std::string suite;
  bool stretch = false;
  auto* ver = app.add_subcommand("verify", "Run a named acceptance suite");
  ver->add_option("--suite", suite, "Suite name or number, or 'all'")->required();
  ver->add_flag("--stretch", stretch, "Extend the search suite to 11 elements");

  std::string fixture_name;
  auto* fix = app.add_subcommand("fixture", "Print a built-in fixture lattice");
  fix->add_option("name", fixture_name, "ten_point or eleven_point")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  set_worker_count(g.jobs);
  Sink out;
  try {
    if (*zeta) cmd_zeta(target, g, out);
    if (*cls) cmd_classify(target, g, out);
    if (*mob) cmd_mobius(target, g, out);
    if (*grp) cmd_group(group_spec, brown, coprime, g, out);
    if (*fam) cmd_family(family_spec, closed_check, g, out);
    if (*srch) cmd_search(search_args, g, out);
    if (*ver) cmd_verify(suite, stretch, g, out);
    if (*fix) cmd_fixture(fixture_name, g, out);
  } catch (const Error& e) {
    if (g.machine()) {
      std::cout << json{{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump() << '\n';
    } else {
      std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    }
    return error_status(e.code());
  }

  if (g.output.empty()) {
    std::cout << out.text.str();
  } else {
    std::ofstream file(g.output);
    if (!file || !(file << out.text.str())) {
      std::cerr << "error (IoError): cannot write " << g.output << '\n';
      return kOtherError;
    }
  }
  return out.status;
}
