#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pzeta/cosetlike.hpp"
#include "pzeta/error.hpp"
#include "pzeta/search.hpp"

using namespace pzeta;

namespace {

// Lattices on n elements up to isomorphism, by brute force: every naturally
// labeled order on the inner points 1..n-2 between a fixed bottom and top,
// filtered by existence of all joins, deduplicated by the least adjacency
// encoding over all relabelings of the inner points.
std::size_t permutation_oracle_count(std::size_t n) {
  if (n == 2) return 1;
  const std::size_t k = n - 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  std::set<std::uint64_t> classes;
  std::vector<std::size_t> perm(k);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
    std::vector<std::vector<bool>> lt(k, std::vector<bool>(k, false));
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (bits >> p & 1) lt[pairs[p].first][pairs[p].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < k && transitive; ++a)
      for (std::size_t b = 0; b < k && transitive; ++b)
        for (std::size_t c = 0; c < k && transitive; ++c)
          if (lt[a][b] && lt[b][c] && !lt[a][c]) transitive = false;
    if (!transitive) continue;
    // Full order on bottom(0), inner(1..k), top(k+1).
    auto leq = [&](std::size_t x, std::size_t y) {
      if (x == y || x == 0 || y == k + 1) return true;
      if (y == 0 || x == k + 1) return false;
      return static_cast<bool>(lt[x - 1][y - 1]);
    };
    bool lattice = true;
    for (std::size_t x = 0; x < n && lattice; ++x)
      for (std::size_t y = 0; y < n && lattice; ++y) {
        std::vector<std::size_t> bounds;
        for (std::size_t z = 0; z < n; ++z)
          if (leq(x, z) && leq(y, z)) bounds.push_back(z);
        bool least = false;
        for (auto z : bounds)
          if (std::all_of(bounds.begin(), bounds.end(), [&](auto w) { return leq(z, w); })) least = true;
        lattice = least;
      }
    if (!lattice) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = UINT64_MAX;
    do {
      std::uint64_t code = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) code = code << 1 | (lt[perm[a]][perm[b]] ? 1 : 0);
      best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("pzeta_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("enumeration counts match the brute-force oracle") {
  for (std::size_t n = 2; n <= 7; ++n) {
    CAPTURE(n);
    const auto expected = permutation_oracle_count(n);
    CHECK(enumerate_lattices(n).size() == expected);
    CHECK(brute_force_lattice_count(n) == expected);
  }
}

TEST_CASE("enumeration counts of unlabeled lattices") {
  const std::size_t expected[] = {0, 0, 1, 1, 2, 5, 15, 53, 222, 1078, 5994};
  for (std::size_t n = 2; n <= 10; ++n) CHECK(enumerate_lattices(n).size() == expected[n]);
}

TEST_CASE("enumerated objects are valid, canonical and distinct") {
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto forms = enumerate_lattices(n);
    CHECK(std::is_sorted(forms.begin(), forms.end()));
    CHECK(std::adjacent_find(forms.begin(), forms.end()) == forms.end());
    for (const auto& f : forms) {
      const Lattice l = lattice_from_canonical(f);
      CHECK(l.size() == n);
      CHECK(canonical_form(l) == f);
    }
  }
}

TEST_CASE("serial and parallel enumeration agree") {
  SearchOptions serial;
  serial.exec = Exec::Serial;
  CHECK(enumerate_lattices(9, serial) == enumerate_lattices(9));
}

TEST_CASE("enumeration budget") {
  SearchOptions small;
  small.max_n = 6;
  CHECK_THROWS_AS(enumerate_lattices(7, small), Error);
  CHECK_THROWS_AS(enumerate_lattices(1), Error);
  try {
    enumerate_lattices(12);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("catalog lines round-trip") {
  CatalogEntry e{{10, "ff939904e278"}, false, true, false, "0123456789abcdef"};
  CHECK(e.line() == "ff939904e278 10 -w-:0123456789abcdef");
  CHECK(CatalogEntry::parse_line(e.line()) == e);
  CatalogEntry two{{2, "8"}, true, true, true, "00"};
  CHECK(CatalogEntry::parse_line(two.line()) == two);
  CHECK_THROWS_AS(CatalogEntry::parse_line("ff93 10 -w-:00"), Error);
  CHECK_THROWS_AS(CatalogEntry::parse_line("ff939904e278 10 xw-:00"), Error);
  CHECK_THROWS_AS(CatalogEntry::parse_line("ff939904e278 10"), Error);
}

TEST_CASE("catalog summaries") {
  auto s2 = classify_catalog(2);
  CHECK(s2.total == 1);
  CHECK(s2.strong == 1);
  SearchOptions all;
  all.keep_all = true;
  auto s5 = classify_catalog(5, all);
  CHECK(s5.total == 5);
  CHECK(s5.entries.size() == 5);
  for (const auto& e : s5.entries) {
    const auto c = classify(lattice_from_canonical(e.form));
    CHECK(e.strong == c.strong);
    CHECK(e.weak == c.weak);
    CHECK(!(e.strong && !e.weak));
  }
  auto s6 = classify_catalog(6, all);
  CHECK(s6.total == 15);
  CHECK(s6.atomistic == static_cast<std::size_t>(std::count_if(
                            s6.entries.begin(), s6.entries.end(), [](const auto& e) { return e.atomistic; })));
}

TEST_CASE("weak-not-strong search") {
  CHECK(find_weak_not_strong(9).empty());
  const auto found = find_weak_not_strong(10);
  REQUIRE_FALSE(found.empty());
  const auto ten = canonical_form(load_fixture("ten_point"));
  CHECK(std::any_of(found.begin(), found.end(), [&](const auto& e) { return e.form == ten; }));
  for (const auto& e : found) {
    CHECK(e.form.n == 10);
    CHECK(e.weak_not_strong());
    CHECK_FALSE(e.atomistic);
  }
  auto s10 = classify_catalog(10);
  CHECK(s10.weak_not_strong == found.size());
  CHECK(s10.atomistic_weak_not_strong == 0);
  SearchOptions atomistic;
  atomistic.atomistic_only = true;
  CHECK(find_weak_not_strong(10, atomistic).empty());
}

TEST_CASE("checkpointed runs resume to the uninterrupted catalog") {
  SearchOptions all;
  all.keep_all = true;
  const auto reference = classify_catalog(8, all);
  REQUIRE(reference.units > 3);

  const auto path = temp_file("resume.cat");
  SearchOptions partial = all;
  partial.checkpoint_path = path.string();
  partial.unit_limit = 2;
  const auto first = classify_catalog(8, partial);
  CHECK_FALSE(first.complete);
  CHECK(first.total < reference.total);

  // A torn trailing line from an interrupted write is discarded.
  { std::ofstream(path, std::ios::app) << "ffc0 8 s"; }

  SearchOptions resume = all;
  resume.checkpoint_path = path.string();
  const auto second = classify_catalog(8, resume);
  CHECK(second.complete);
  CHECK(second.units_resumed == 2);
  CHECK(second.total == reference.total);
  CHECK(second.entries == reference.entries);

  // The finished checkpoint alone reproduces the catalog.
  const auto third = classify_catalog(8, resume);
  CHECK(third.units_resumed == third.units);
  CHECK(third.entries == reference.entries);

  SearchOptions other = resume;
  other.keep_all = false;
  CHECK_THROWS_AS(classify_catalog(8, other), Error);
  std::filesystem::remove(path);
}

TEST_CASE("summary document") {
  auto s = classify_catalog(4);
  const auto doc = catalog_summary_json({s});
  CHECK(doc.find("\"n\":4") != std::string::npos);
  CHECK(doc.find("\"total\":2") != std::string::npos);
}
