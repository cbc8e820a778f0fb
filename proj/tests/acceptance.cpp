// Runs every acceptance suite and prints one PASS/FAIL line per criterion.
// Exit status is the number of failing suites not listed with --expect-fail.

#include <algorithm>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pzeta/exec.hpp"
#include "pzeta/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> only;
  std::vector<std::string> expect_fail;
  bool quick = false;
  bool stretch = false;
  int jobs = 0;
  app.add_option("--only", only, "Run only these suites (name or number)");
  app.add_option("--expect-fail", expect_fail, "Suites whose failure does not count against the exit status");
  app.add_flag("--quick", quick, "Skip long-running suites");
  app.add_flag("--stretch", stretch, "Extend the search suite to 11 elements");
  app.add_option("--jobs", jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  pzeta::set_worker_count(jobs);
  pzeta::SuiteOptions options;
  options.stretch = stretch;

  auto listed = [](const std::vector<std::string>& names, const pzeta::SuiteInfo& info) {
    return std::any_of(names.begin(), names.end(),
                       [&](const std::string& n) { return n == info.name || n == std::to_string(info.number); });
  };

  int unexpected = 0;
  std::size_t passed = 0, ran = 0;
  for (const auto& info : pzeta::suite_catalog()) {
    if (!only.empty() && !listed(only, info)) continue;
    if (quick && info.long_running) {
      std::cout << "SKIP " << info.number << ' ' << info.name << ": long-running\n";
      continue;
    }
    const auto result = pzeta::run_suite(info.name, options);
    ++ran;
    std::cout << result.line();
    if (!result.passed && listed(expect_fail, info)) std::cout << " [expected failure]";
    std::cout << std::endl;
    if (result.passed)
      ++passed;
    else if (!listed(expect_fail, info))
      ++unexpected;
  }
  std::cout << passed << "/" << ran << " criteria passed" << std::endl;
  return unexpected;
}
