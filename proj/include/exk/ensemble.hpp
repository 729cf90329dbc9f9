#ifndef EXK_ENSEMBLE_HPP
#define EXK_ENSEMBLE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "exk/sim.hpp"

namespace exk {

// number of worker threads: OpenMP's default, capped by the EXK_THREADS
// environment variable when set
int ensemble_threads();

struct EnsembleConfig {
  ModelParams params;
  InitKind init = InitKind::all_equal;
  std::vector<int> custom_init;
  int runs = 0;
  uint64_t base_seed = 0;
  std::vector<double> times; // ascending snapshot times

  void validate() const;
};

struct Observable {
  std::string name;
  std::function<double(const EmpiricalMeasure&)> f;
};

// Raw per-run values plus mean / standard error summaries.  Non-finite
// values (support violations in entropic metrics) are excluded from the
// summaries but counted.  values[o][t][r] is observable o at snapshot t in
// run r; the layout is fixed by run index, so any execution schedule yields
// identical results.
struct EnsembleResult {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<double>>> values;

  double mean(std::size_t o, std::size_t t) const;
  double std_error(std::size_t o, std::size_t t) const;
  int nonfinite_count(std::size_t o, std::size_t t) const;
};

// Runs `cfg.runs` independent simulations, run r seeded with
// run_seed(base_seed, r), and evaluates every observable on the empirical
// measure at each snapshot time.  The parallel version distributes runs
// over OpenMP threads; the serial one is the reference implementation the
// tests compare against (results must match bit for bit).
EnsembleResult run_ensemble(const EnsembleConfig& cfg,
                            const std::vector<Observable>& observables);
EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg,
                                   const std::vector<Observable>& observables);

} // namespace exk

#endif
