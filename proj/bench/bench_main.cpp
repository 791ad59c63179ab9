// Wall-clock comparison of the parallel kernels against the serial reference.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "edmyield/oracle.hpp"
#include "edmyield/reference.hpp"

using namespace edmyield;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* kernel, const std::string& shape, double parallel, double serial) {
  std::printf("%-18s %-16s %12.6f %12.6f %8.2fx\n", kernel, shape.c_str(), parallel, serial,
              serial / parallel);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel vs serial kernel timings"};
  bool quick = false;
  int reps = 3;
  int threads = 0;
  app.add_flag("--quick", quick, "Small sizes, one repetition");
  app.add_option("--reps", reps, "Repetitions per measurement (best is reported)");
  app.add_option("--threads", threads, "OpenMP threads (default: runtime choice)");
  CLI11_PARSE(app, argc, argv);
  if (quick) reps = 1;
  if (threads > 0) omp_set_num_threads(threads);

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-18s %-16s %12s %12s %9s\n", "kernel", "shape", "parallel_s", "serial_s",
              "speedup");

  const std::vector<std::pair<Index, int>> yield_shapes =
      quick ? std::vector<std::pair<Index, int>>{{20, 8}}
            : std::vector<std::pair<Index, int>>{{40, 10}, {80, 20}, {160, 40}};
  for (auto [n, r] : yield_shapes) {
    const GeneratedInstance g = random_edm(n, r, 1, GeneratorMode::ParallelGale);
    const EdmDecomposition dec = decompose(g.d);
    const std::string shape = "n=" + std::to_string(n) + " r=" + std::to_string(r);
    row("analyze_all", shape, best_of(reps, [&] { analyze_all(dec); }),
        best_of(reps, [&] { reference::analyze_all(dec); }));
  }

  const std::vector<std::pair<Index, int>> gp_shapes =
      quick ? std::vector<std::pair<Index, int>>{{12, 5}}
            : std::vector<std::pair<Index, int>>{{14, 6}, {16, 7}, {18, 8}};
  for (auto [n, r] : gp_shapes) {
    const GeneratedInstance g = random_edm(n, r, 2, GeneratorMode::GeneralPosition);
    const EdmDecomposition dec = decompose(g.d);
    const std::string shape = "n=" + std::to_string(n) + " r=" + std::to_string(r);
    row("gp_gale", shape, best_of(reps, [&] { general_position_gale(dec); }),
        best_of(reps, [&] { reference::general_position_gale(dec); }));
    row("gp_affine", shape, best_of(reps, [&] { general_position_affine(dec); }),
        best_of(reps, [&] { reference::general_position_affine(dec); }));
  }

  const std::vector<std::pair<Index, int>> oracle_shapes =
      quick ? std::vector<std::pair<Index, int>>{{6, 3}}
            : std::vector<std::pair<Index, int>>{{10, 5}, {20, 8}};
  for (auto [n, r] : oracle_shapes) {
    const GeneratedInstance g = random_edm(n, r, 3, GeneratorMode::Generic);
    const auto dirs = all_unit_directions(n);
    const std::string shape = "n=" + std::to_string(n) + " r=" + std::to_string(r);
    row("oracle_sweep", shape, best_of(reps, [&] { oracle_sweep(g.d, dirs); }),
        best_of(reps, [&] { reference::oracle_sweep(g.d, dirs); }));
  }
  return 0;
}
