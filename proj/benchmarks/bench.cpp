// Timing of the parallel ensemble runner against the serial reference, plus
// the raw right-hand-side throughput of the ODE kernel.  Not a test; run as
//   ./benchmarks/exk_bench [runs] [agents]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "exk/ensemble.hpp"
#include "exk/meanfield.hpp"

using namespace exk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

} // namespace

int main(int argc, char** argv) {
  int runs = argc > 1 ? std::atoi(argv[1]) : 32;
  int agents = argc > 2 ? std::atoi(argv[2]) : 500;

  EnsembleConfig cfg;
  cfg.params.n_agents = agents;
  cfg.params.mu = 10;
  cfg.runs = runs;
  cfg.base_seed = 42;
  for (int t = 1; t <= 10; ++t) cfg.times.push_back(double(t));

  std::vector<Observable> obs{
      {"r_bar", [](const EmpiricalMeasure& q) { return q.r_bar(); }},
      {"mean", [](const EmpiricalMeasure& q) { return q.mean(); }}};

  std::printf("ensemble: %d runs, %d agents, %zu snapshot times, %d threads\n",
              runs, agents, cfg.times.size(), ensemble_threads());

  auto t0 = std::chrono::steady_clock::now();
  EnsembleResult serial = run_ensemble_serial(cfg, obs);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  EnsembleResult parallel = run_ensemble(cfg, obs);
  double t_parallel = seconds_since(t0);

  bool identical = serial.values == parallel.values;
  std::printf("  serial   %8.3f s\n", t_serial);
  std::printf("  parallel %8.3f s   speedup %.2fx   bitwise match: %s\n",
              t_parallel, t_serial / t_parallel, identical ? "yes" : "NO");

  ProbabilityVector p = init_dirac(10, 500);
  // push the state off the point mass so the kernel sees a generic input
  for (int i = 0; i < 100; ++i) p = rk4_step(p, 0.01);
  const int evals = 200000;
  std::vector<double> state = p.data();
  double sink = 0;
  t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < evals; ++i) {
    std::vector<double> d = ode_rhs(state);
    sink += d[1];
  }
  double t_rhs = seconds_since(t0);
  std::printf("rhs kernel: %d evals of n_max=500 in %.3f s (%.2fM evals/s, "
              "checksum %g)\n",
              evals, t_rhs, evals / t_rhs / 1e6, sink);
  return identical ? 0 : 1;
}
