// Serial versus parallel timings of the data-parallel kernels. Each row runs
// both variants on the same input and checks that the results agree.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "CLI11.hpp"
#include "pzeta/cosetlike.hpp"
#include "pzeta/exec.hpp"
#include "pzeta/families.hpp"
#include "pzeta/kernels.hpp"
#include "pzeta/lattice.hpp"
#include "pzeta/search.hpp"
#include "pzeta/zeta.hpp"

using namespace pzeta;

namespace {

template <typename F>
double best_seconds(int repeats, F&& f) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

template <typename R>
void row(const std::string& name, int repeats, const std::function<R(Exec)>& run) {
  R serial{}, parallel{};
  const double ts = best_seconds(repeats, [&] { serial = run(Exec::Serial); });
  const double tp = best_seconds(repeats, [&] { parallel = run(Exec::Parallel); });
  std::printf("%-40s %10.4f %10.4f %8.2fx %s\n", name.c_str(), ts, tp, ts / tp, serial == parallel ? "agree" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmarks"};
  int repeats = 3;
  int jobs = 0;
  app.add_option("--repeats", repeats, "Runs per variant; the best time is reported")->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "Worker threads (0 = all)")->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);
  set_worker_count(jobs);

  std::printf("workers: %d\n", worker_count());
  std::printf("%-40s %10s %10s %9s\n", "kernel", "serial s", "parallel s", "speedup");

  const Lattice pi7 = partition_lattice(7).lattice;
  row<bool>("join/meet tables, Pi_7 (877)", repeats, [&](Exec e) {
    return !kernels::join_meet_tables(pi7.up_matrix(), pi7.down_matrix(), true, e).failure.has_value();
  });
  const Lattice pi8 = partition_lattice(8).lattice;
  row<std::vector<BigInt>>("Moebius column, Pi_8 (4140)", repeats, [&](Exec e) {
    return kernels::mobius_column(pi8.up_matrix(), pi8.down_matrix(), pi8.position(pi8.top()), e);
  });
  row<std::string>("zeta series, Pi_8", 1, [&](Exec e) { return to_json(zeta_series(pi8, e).series); });
  row<std::optional<std::uint64_t>>("Nagura gap scan, 25..10^6", repeats,
                                    [](Exec e) { return kernels::first_nagura_gap(25, 1'000'000, e); });
  row<std::optional<std::uint64_t>>("mainthm threshold, d=5, m<=500", repeats,
                                    [](Exec e) { return mainthm_threshold(5, 500, e); });
  row<std::size_t>("lattice enumeration, n=10", repeats, [](Exec e) {
    SearchOptions o;
    o.exec = e;
    return enumerate_lattices(10, o).size();
  });
  return 0;
}
