// Wall-clock comparison of the OpenMP kernels against their serial references.
//
//   bench_ubsea            full sizes
//   bench_ubsea --quick    small sizes, used as a ctest smoke test

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ubsea/optimizer.hpp"
#include "ubsea/pipeline.hpp"

using namespace ubsea;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double parallel_ms, double serial_ms, bool same) {
  std::printf("%-34s parallel %9.2f ms   serial %9.2f ms   speedup %6.2fx   %s\n", name, parallel_ms, serial_ms,
              serial_ms / parallel_ms, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int repeats = quick ? 1 : 3;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d\n", threads);
  std::printf("serial column: greedy_fit_serial rescores every flip by recount; the others run one thread\n");
  bool all_same = true;

  {
    const int half = quick ? 20 : 100;
    Rng rng(1);
    const auto pg = sample_sbm({0.5, 0.3, 0.3, 0.5}, half, half, false, rng);
    FitConfig cfg;
    cfg.restarts = quick ? 4 : 20;
    FitResult a, b;
    const double tp = time_ms([&] { a = greedy_fit(pg.graph, Objective::ZwMax, cfg); }, repeats);
    const double ts = time_ms([&] { b = greedy_fit_serial(pg.graph, Objective::ZwMax, cfg); }, repeats);
    const bool same = a.labels == b.labels && a.value == b.value;
    all_same = all_same && same;
    char name[64];
    std::snprintf(name, sizeof name, "greedy Z_w-max, N=%d", 2 * half);
    row(name, tp, ts, same);
  }
  {
    const int n = quick ? 10 : 16;
    Rng rng(2);
    const auto pg = sample_sbm({0.6, 0.3, 0.3, 0.1}, n / 2, n - n / 2, true, rng);
    FitResult a, b;
    const double tp = time_ms([&] { a = exhaustive_fit(pg.graph, Objective::ZdMax); }, repeats);
    const double ts = time_ms([&] { b = exhaustive_fit_serial(pg.graph, Objective::ZdMax); }, repeats);
    const bool same = a.labels == b.labels && a.value == b.value;
    all_same = all_same && same;
    char name[64];
    std::snprintf(name, sizeof name, "exhaustive Z_d, N=%d", n);
    row(name, tp, ts, same);
  }
  {
    SimulationConfig cfg;
    cfg.P = {0.5, 0.3, 0.3, 0.5};
    cfg.m = cfg.n = quick ? 15 : 50;
    cfg.reps = quick ? 4 : 20;
    cfg.restarts = quick ? 4 : 20;
    std::vector<SimulationRow> a, b;
    const double tp = time_ms([&] { a = run_simulation(cfg); }, repeats);
    cfg.jobs = 1;
    const double ts = time_ms([&] { b = run_simulation(cfg); }, repeats);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i)
      same = a[i].err_zw_max == b[i].err_zw_max && a[i].err_zd == b[i].err_zd && a[i].selected == b[i].selected;
    all_same = all_same && same;
    char name[64];
    std::snprintf(name, sizeof name, "simulate %d reps, N=%d", cfg.reps, cfg.m + cfg.n);
    row(name, tp, ts, same);
  }
  return all_same ? 0 : 1;
}
