#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pzeta/canonical.hpp"
#include "pzeta/exec.hpp"

namespace pzeta {

/// One isomorphism class of lattices with its classification.
struct CatalogEntry {
  CanonicalForm form;
  bool strong = false;
  bool weak = false;
  bool atomistic = false;
  /// FNV-1a of the series JSON, 16 hex digits.
  std::string series_digest;

  bool weak_not_strong() const { return weak && !strong; }
  /// "swa:<digest>" with '-' for a false flag.
  std::string flags() const;
  /// "<canonical-hex> <n> <flags>"
  std::string line() const;
  static CatalogEntry parse_line(const std::string& line);

  auto operator<=>(const CatalogEntry&) const = default;
};

struct SearchOptions {
  /// Requests above this element count fail with BudgetExceeded.
  std::size_t max_n = 11;
  Exec exec = Exec::Parallel;
  /// Keep every entry rather than only weak-not-strong ones.
  bool keep_all = false;
  /// Restrict kept entries to atomistic lattices.
  bool atomistic_only = false;
  /// Append completed work units here and skip those already present.
  std::string checkpoint_path;
  /// Stop after this many newly processed work units (the run is then incomplete).
  std::optional<std::size_t> unit_limit;
  std::function<void(const std::string&)> progress;
};

struct CatalogSummary {
  std::size_t n = 0;
  std::size_t total = 0;
  std::size_t strong = 0;
  std::size_t weak = 0;
  std::size_t atomistic = 0;
  std::size_t weak_not_strong = 0;
  std::size_t atomistic_weak_not_strong = 0;
  std::size_t units = 0;
  std::size_t units_resumed = 0;
  bool complete = true;
  /// Kept entries, sorted by canonical hex.
  std::vector<CatalogEntry> entries;
};

/// Canonical forms of all lattices on n elements, one per isomorphism class,
/// sorted by hex. Elements of the forms are ordered by canonical label.
std::vector<CanonicalForm> enumerate_lattices(std::size_t n, const SearchOptions& options = {});

/// Number of lattices on n <= 8 elements up to isomorphism, by filtering every
/// naturally labeled order between a fixed bottom and top and deduplicating
/// by canonical form. Independent of the enumerator; used to cross-check it.
std::size_t brute_force_lattice_count(std::size_t n);

/// Enumerates and classifies every lattice on n elements.
CatalogSummary classify_catalog(std::size_t n, const SearchOptions& options = {});

/// Weak-not-strong classes on 2..max_n elements, grouped by element count
/// and sorted by hex within each group.
std::vector<CatalogEntry> find_weak_not_strong(std::size_t max_n, const SearchOptions& options = {});

std::string catalog_summary_json(const std::vector<CatalogSummary>& summaries);

}  // namespace pzeta
