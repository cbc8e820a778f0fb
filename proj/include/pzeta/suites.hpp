#pragma once

#include <string>
#include <vector>

#include "pzeta/exec.hpp"

namespace pzeta {

/// Named verification suites shared by the acceptance binary and
/// `pzeta verify --suite`.
struct SuiteInfo {
  int number = 0;
  std::string name;
  std::string title;
  /// Excluded from quick runs.
  bool long_running = false;
};

struct SuiteOptions {
  Exec exec = Exec::Parallel;
  /// Extends the lattice search suite to 11 elements.
  bool stretch = false;
};

struct SuiteResult {
  SuiteInfo info;
  bool passed = false;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  /// Observed values worth reporting whether or not the suite passed.
  std::vector<std::string> notes;
  double seconds = 0;

  /// "PASS <number> <name>: <title> (<checks> checks, <seconds>s)" plus notes.
  std::string line() const;
};

const std::vector<SuiteInfo>& suite_catalog();
/// Throws UsageError for an unknown name. Failures inside a suite, including
/// library errors, are recorded in the result rather than thrown.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});
std::string suite_results_json(const std::vector<SuiteResult>& results);

}  // namespace pzeta
