#include "pzeta/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "pzeta/cosetlike.hpp"
#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/lattice.hpp"

namespace pzeta {

namespace {

constexpr std::size_t kMaxPoints = 16;
using Mask = std::uint32_t;

// A lattice with its bottom removed: a finite poset in which every pair has
// a least upper bound. Element 0 is the top. Each later element was minimal
// when it was added, so x < y implies x > y as indices.
struct Semi {
  std::size_t k = 0;
  std::array<Mask, kMaxPoints> up{};  // up[x] contains x
};

Mask bit(std::size_t x) { return Mask{1} << x; }

// Order of q without `skip`, optionally with a bottom appended.
PosetGraph graph_of(const Semi& q, bool with_bottom, std::size_t skip = kMaxPoints) {
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < q.k; ++x)
    if (x != skip) keep.push_back(x);
  const std::size_t n = keep.size() + (with_bottom ? 1 : 0);
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) leq[i][j] = (q.up[keep[i]] & bit(keep[j])) != 0;
  if (with_bottom)
    for (std::size_t j = 0; j < n; ++j) leq[n - 1][j] = true;
  return poset_graph_from_order(n, leq);
}

std::string semi_hex(const Semi& q, std::size_t skip = kMaxPoints) {
  return canonical_form(graph_of(q, false, skip)).hex;
}

CanonicalForm lattice_form(const Semi& q) { return canonical_form(graph_of(q, true)); }

bool is_minimal(const Semi& q, std::size_t x) {
  for (std::size_t y = 0; y < q.k; ++y)
    if (y != x && (q.up[y] & bit(x))) return false;
  return true;
}

// Isomorphism invariant of an element used to pick the canonical deletion.
std::pair<int, int> invariant(const Semi& q, std::size_t x) {
  const Mask strict = q.up[x] & ~bit(x);
  int covers = 0;
  for (std::size_t u = 0; u < q.k; ++u) {
    if (!(strict & bit(u))) continue;
    bool cover = true;
    for (std::size_t w = 0; w < q.k && cover; ++w)
      if (w != u && (strict & bit(w)) && (q.up[w] & bit(u))) cover = false;
    covers += cover ? 1 : 0;
  }
  return {std::popcount(q.up[x]), covers};
}

// Adding a minimal element with strict up-set u keeps all joins iff for every
// y outside u the upper bounds u & up[y] have a least element.
bool keeps_joins(const Semi& q, Mask u) {
  for (std::size_t y = 0; y < q.k; ++y) {
    if (u & bit(y)) continue;
    const Mask bounds = u & q.up[y];
    bool found = false;
    for (std::size_t z = 0; z < q.k && !found; ++z)
      if ((bounds & bit(z)) && q.up[z] == bounds) found = true;
    if (!found) return false;
  }
  return true;
}

// Up-closures of the nonempty antichains of q.
template <typename Visit>
void for_each_upset(const Semi& q, std::size_t from, Mask antichain, Mask closure, Visit&& visit) {
  for (std::size_t x = from; x < q.k; ++x) {
    if ((closure & bit(x)) || (q.up[x] & antichain)) continue;
    const Mask next = closure | q.up[x];
    visit(next);
    for_each_upset(q, x + 1, antichain | bit(x), next, visit);
  }
}

// Canonical augmentation: a child is kept when the new element is, up to
// isomorphism of the deletions, the canonical minimal element to delete.
// Children of one parent are deduplicated by canonical form.
template <typename Emit>
void children(const Semi& q, const std::string& q_hex, Emit&& emit) {
  std::set<std::string> seen;
  for_each_upset(q, 0, 0, 0, [&](Mask u) {
    if (!keeps_joins(q, u)) return;
    Semi c = q;
    const std::size_t m = q.k;
    c.k = q.k + 1;
    c.up[m] = u | bit(m);

    std::vector<std::size_t> best;
    std::pair<int, int> best_inv{-1, -1};
    for (std::size_t x = 0; x < c.k; ++x) {
      if (!is_minimal(c, x)) continue;
      const auto inv = invariant(c, x);
      if (inv > best_inv) {
        best_inv = inv;
        best.clear();
      }
      if (inv == best_inv) best.push_back(x);
    }
    if (std::find(best.begin(), best.end(), m) == best.end()) return;

    const auto graph = graph_of(c, false);
    const auto lab = canonical_labeling(graph);
    std::string hex = order_bits_hex(c.k, lab.code);
    if (best.size() > 1) {
      const std::size_t chosen =
          *std::max_element(best.begin(), best.end(), [&](auto a, auto b) { return lab.label[a] < lab.label[b]; });
      if (chosen != m && semi_hex(c, chosen) != q_hex) return;
    }
    if (!seen.insert(hex).second) return;
    emit(c, hex);
  });
}

template <typename Leaf>
void expand(const Semi& q, const std::string& hex, std::size_t target, Leaf&& leaf) {
  if (q.k == target) {
    leaf(q);
    return;
  }
  children(q, hex, [&](const Semi& c, const std::string& c_hex) { expand(c, c_hex, target, leaf); });
}

struct Unit {
  std::string hex;
  Semi q;
};

// Work units: the search tree nodes with `depth` non-bottom elements.
std::vector<Unit> work_units(std::size_t n) {
  const std::size_t points = n - 1;
  const std::size_t depth = std::min(points, std::max<std::size_t>(1, n >= 4 ? n - 4 : 1));
  Semi root;
  root.k = 1;
  root.up[0] = 1;
  std::vector<Unit> level{{semi_hex(root), root}};
  while (level.front().q.k < depth) {
    std::vector<Unit> next;
    for (const auto& u : level)
      children(u.q, u.hex, [&](const Semi& c, const std::string& h) { next.push_back({h, c}); });
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const Unit& a, const Unit& b) { return a.hex < b.hex; });
  return level;
}

std::vector<CanonicalForm> unit_leaves(const Unit& unit, std::size_t n) {
  std::vector<CanonicalForm> out;
  expand(unit.q, unit.hex, n - 1, [&](const Semi& leaf) { out.push_back(lattice_form(leaf)); });
  return out;
}

void check_size(std::size_t n, const SearchOptions& options) {
  if (n < 2) fail(ErrorCode::BudgetExceeded, "lattice enumeration needs at least 2 elements");
  if (n > options.max_n || n > kMaxPoints)
    fail(ErrorCode::BudgetExceeded, "lattice enumeration on " + std::to_string(n) + " elements exceeds the budget of " +
                                        std::to_string(std::min(options.max_n, kMaxPoints)));
}

// Runs body(i) for every unit index, serially or across OpenMP threads, and
// rethrows the first exception.
template <typename Body>
void for_units(std::size_t count, Exec exec, Body&& body) {
  std::exception_ptr error;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::Parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(pzeta_search_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kDigits[h & 0xF];
  return out;
}

struct UnitResult {
  bool done = false;
  std::size_t total = 0, strong = 0, weak = 0, atomistic = 0, wns = 0, awns = 0;
  std::vector<CatalogEntry> entries;
};

bool keep_entry(const CatalogEntry& e, const SearchOptions& options) {
  if (options.atomistic_only && !e.atomistic) return false;
  return options.keep_all || e.weak_not_strong();
}

UnitResult classify_unit(const Unit& unit, std::size_t n, const SearchOptions& options) {
  UnitResult r;
  for (auto& form : unit_leaves(unit, n)) {
    const Lattice lattice = lattice_from_canonical(form);
    const auto c = classify(lattice, Exec::Serial);
    CatalogEntry e{std::move(form), c.strong, c.weak, is_atomistic(lattice), fnv1a_hex(to_json(c.report.series))};
    ++r.total;
    r.strong += e.strong;
    r.weak += e.weak;
    r.atomistic += e.atomistic;
    r.wns += e.weak_not_strong();
    r.awns += e.weak_not_strong() && e.atomistic;
    if (keep_entry(e, options)) r.entries.push_back(std::move(e));
  }
  r.done = true;
  return r;
}

std::string checkpoint_header(std::size_t n, const SearchOptions& options) {
  return "# pzeta catalog n=" + std::to_string(n) + " keep=" + (options.keep_all ? "all" : "flagged") +
         " atomistic_only=" + (options.atomistic_only ? "1" : "0");
}

std::string unit_marker(const std::string& hex, const UnitResult& r) {
  std::ostringstream out;
  out << "# unit u" << hex << ' ' << r.total << ' ' << r.strong << ' ' << r.weak << ' ' << r.atomistic << ' ' << r.wns
      << ' ' << r.awns;
  return out.str();
}

// Completed units recorded in an existing checkpoint. Entries after the last
// unit marker belong to an interrupted unit and are dropped.
std::map<std::string, UnitResult> read_checkpoint(const std::string& path, const std::string& header) {
  std::map<std::string, UnitResult> done;
  std::ifstream in(path);
  if (!in) return done;
  std::string line;
  if (!std::getline(in, line)) return done;
  if (line != header) fail(ErrorCode::IoError, "checkpoint " + path + " was written for a different run: " + line);
  std::vector<CatalogEntry> pending;
  while (std::getline(in, line)) {
    if (line.rfind("# unit u", 0) == 0) {
      std::istringstream fields(line.substr(8));
      std::string hex;
      UnitResult r;
      if (!(fields >> hex >> r.total >> r.strong >> r.weak >> r.atomistic >> r.wns >> r.awns)) break;
      if (hex == "-") hex.clear();
      r.done = true;
      r.entries = std::move(pending);
      pending.clear();
      done[hex] = std::move(r);
      continue;
    }
    try {
      pending.push_back(CatalogEntry::parse_line(line));
    } catch (const Error&) {
      break;
    }
  }
  return done;
}

void write_unit(std::ostream& out, const std::string& hex, const UnitResult& r) {
  for (const auto& e : r.entries) out << e.line() << '\n';
  out << unit_marker(hex.empty() ? "-" : hex, r) << '\n';
  out.flush();
}

}  // namespace

std::string CatalogEntry::flags() const {
  std::string out;
  out += strong ? 's' : '-';
  out += weak ? 'w' : '-';
  out += atomistic ? 'a' : '-';
  out += ':';
  out += series_digest;
  return out;
}

std::string CatalogEntry::line() const {
  return (form.hex.empty() ? std::string("-") : form.hex) + ' ' + std::to_string(form.n) + ' ' + flags();
}

CatalogEntry CatalogEntry::parse_line(const std::string& line) {
  std::istringstream in(line);
  std::string hex, flags, extra;
  std::size_t n = 0;
  if (!(in >> hex >> n >> flags) || (in >> extra))
    fail(ErrorCode::ParseError, "catalog line must be '<canonical-hex> <n> <flags>': " + line);
  if (hex == "-") hex.clear();
  if (hex.size() != (n * (n - 1) / 2 + 3) / 4) fail(ErrorCode::ParseError, "canonical hex has wrong length: " + line);
  if (flags.size() < 4 || flags[3] != ':' || (flags[0] != 's' && flags[0] != '-') ||
      (flags[1] != 'w' && flags[1] != '-') || (flags[2] != 'a' && flags[2] != '-'))
    fail(ErrorCode::ParseError, "bad catalog flags: " + flags);
  CatalogEntry e;
  e.form = {n, hex};
  e.strong = flags[0] == 's';
  e.weak = flags[1] == 'w';
  e.atomistic = flags[2] == 'a';
  e.series_digest = flags.substr(4);
  return e;
}

std::vector<CanonicalForm> enumerate_lattices(std::size_t n, const SearchOptions& options) {
  check_size(n, options);
  const auto units = work_units(n);
  std::vector<std::vector<CanonicalForm>> parts(units.size());
  for_units(units.size(), options.exec, [&](std::size_t i) { parts[i] = unit_leaves(units[i], n); });
  std::vector<CanonicalForm> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    fail(ErrorCode::MismatchDetected, "lattice enumeration produced a duplicate class");
  return out;
}

std::size_t brute_force_lattice_count(std::size_t n) {
  if (n < 2 || n > 8) fail(ErrorCode::BudgetExceeded, "brute-force lattice count needs 2 <= n <= 8");
  const std::size_t inner = n - 2;
  std::vector<std::pair<Element, Element>> pairs;
  for (Element i = 0; i < inner; ++i)
    for (Element j = i + 1; j < inner; ++j) pairs.emplace_back(i, j);
  std::set<CanonicalForm> classes;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> lt(inner, std::vector<bool>(inner, false));
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (bits >> p & 1) lt[pairs[p].first][pairs[p].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < inner && transitive; ++a)
      for (std::size_t b = a + 1; b < inner && transitive; ++b)
        for (std::size_t c = b + 1; c < inner && transitive; ++c)
          if (lt[a][b] && lt[b][c] && !lt[a][c]) transitive = false;
    if (!transitive) continue;
    // 0 is the bottom, n - 1 the top, 1..n-2 the inner points.
    auto leq = [&](Element x, Element y) {
      if (x == y || x == 0 || y == n - 1) return true;
      if (y == 0 || x == n - 1) return false;
      return static_cast<bool>(lt[x - 1][y - 1]);
    };
    try {
      classes.insert(canonical_form(lattice_from_order(n, leq)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotALattice) throw;
    }
  }
  return classes.size();
}

CatalogSummary classify_catalog(std::size_t n, const SearchOptions& options) {
  check_size(n, options);
  const auto units = work_units(n);
  const std::string header = checkpoint_header(n, options);
  std::vector<UnitResult> results(units.size());

  std::map<std::string, UnitResult> resumed;
  std::ofstream checkpoint;
  if (!options.checkpoint_path.empty()) {
    resumed = read_checkpoint(options.checkpoint_path, header);
    // Rewrite only the committed blocks so the file never carries a torn tail.
    checkpoint.open(options.checkpoint_path, std::ios::trunc);
    if (!checkpoint) fail(ErrorCode::IoError, "cannot write checkpoint " + options.checkpoint_path);
    checkpoint << header << '\n';
    for (std::size_t i = 0; i < units.size(); ++i)
      if (auto it = resumed.find(units[i].hex); it != resumed.end()) {
        results[i] = std::move(it->second);
        write_unit(checkpoint, units[i].hex, results[i]);
      }
  }

  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < units.size(); ++i)
    if (!results[i].done) pending.push_back(i);
  const std::size_t resumed_count = units.size() - pending.size();
  if (options.unit_limit && pending.size() > *options.unit_limit) pending.resize(*options.unit_limit);

  std::size_t finished = resumed_count;
  for_units(pending.size(), options.exec, [&](std::size_t j) {
    const std::size_t i = pending[j];
    auto r = classify_unit(units[i], n, options);
#pragma omp critical(pzeta_search_commit)
    {
      if (checkpoint.is_open()) write_unit(checkpoint, units[i].hex, r);
      results[i] = std::move(r);
      ++finished;
      if (options.progress)
        options.progress("n=" + std::to_string(n) + ": unit " + std::to_string(finished) + "/" +
                         std::to_string(units.size()) + " done");
    }
  });

  CatalogSummary s;
  s.n = n;
  s.units = units.size();
  s.units_resumed = resumed_count;
  for (auto& r : results) {
    if (!r.done) {
      s.complete = false;
      continue;
    }
    s.total += r.total;
    s.strong += r.strong;
    s.weak += r.weak;
    s.atomistic += r.atomistic;
    s.weak_not_strong += r.wns;
    s.atomistic_weak_not_strong += r.awns;
    s.entries.insert(s.entries.end(), std::make_move_iterator(r.entries.begin()),
                     std::make_move_iterator(r.entries.end()));
  }
  std::sort(s.entries.begin(), s.entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) { return a.form < b.form; });
  return s;
}

std::vector<CatalogEntry> find_weak_not_strong(std::size_t max_n, const SearchOptions& options) {
  std::vector<CatalogEntry> out;
  SearchOptions per_n = options;
  per_n.keep_all = false;
  for (std::size_t n = 2; n <= max_n; ++n) {
    if (!options.checkpoint_path.empty()) per_n.checkpoint_path = options.checkpoint_path + "." + std::to_string(n);
    auto s = classify_catalog(n, per_n);
    if (!s.complete) fail(ErrorCode::BudgetExceeded, "search stopped before finishing n=" + std::to_string(n));
    out.insert(out.end(), s.entries.begin(), s.entries.end());
  }
  return out;
}

std::string catalog_summary_json(const std::vector<CatalogSummary>& summaries) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& s : summaries) {
    nlohmann::ordered_json row;
    row["n"] = s.n;
    row["complete"] = s.complete;
    row["total"] = s.total;
    row["strong"] = s.strong;
    row["weak"] = s.weak;
    row["atomistic"] = s.atomistic;
    row["weakNotStrong"] = s.weak_not_strong;
    row["atomisticWeakNotStrong"] = s.atomistic_weak_not_strong;
    row["units"] = s.units;
    row["unitsResumed"] = s.units_resumed;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : s.entries) entries.push_back(e.line());
    row["entries"] = std::move(entries);
    doc.push_back(std::move(row));
  }
  return doc.dump();
}

}  // namespace pzeta
