#include "exk/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exk {

int ensemble_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("EXK_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

void EnsembleConfig::validate() const {
  params.validate();
  if (runs < 1)
    throw validation_error(Errc::invalid_argument, "runs must be >= 1");
  if (times.empty())
    throw validation_error(Errc::invalid_argument, "no snapshot times given");
  double prev = -1;
  for (double t : times) {
    if (!(t >= 0) || t < prev)
      throw validation_error(Errc::time_mismatch,
                             "snapshot times must be ascending and >= 0");
    prev = t;
  }
}

double EnsembleResult::mean(std::size_t o, std::size_t t) const {
  const std::vector<double>& v = values[o][t];
  double s = 0;
  int m = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      s += x;
      ++m;
    }
  return m > 0 ? s / m : std::numeric_limits<double>::quiet_NaN();
}

double EnsembleResult::std_error(std::size_t o, std::size_t t) const {
  const std::vector<double>& v = values[o][t];
  double mu = mean(o, t);
  if (!std::isfinite(mu)) return std::numeric_limits<double>::quiet_NaN();
  double ss = 0, lo = std::numeric_limits<double>::infinity(), hi = -lo;
  int m = 0;
  for (double x : v)
    if (std::isfinite(x)) {
      ss += (x - mu) * (x - mu);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      ++m;
    }
  // identical observations have zero spread; the centered sum would report
  // ulp noise because the computed mean can sit an ulp off the common value
  if (m < 2 || lo == hi) return 0.0;
  return std::sqrt(ss / double(m - 1) / double(m));
}

int EnsembleResult::nonfinite_count(std::size_t o, std::size_t t) const {
  int c = 0;
  for (double x : values[o][t])
    if (!std::isfinite(x)) ++c;
  return c;
}

namespace {

void simulate_run(const EnsembleConfig& cfg, int run,
                  const std::vector<Observable>& observables,
                  EnsembleResult& out) {
  SimState s = new_simulation(cfg.params, cfg.init, run_seed(cfg.base_seed, (uint64_t)run),
                              cfg.custom_init);
  for (std::size_t t = 0; t < cfg.times.size(); ++t) {
    advance_to(s, cfg.times[t]);
    EmpiricalMeasure q = empirical(s);
    for (std::size_t o = 0; o < observables.size(); ++o)
      out.values[o][t][(std::size_t)run] = observables[o].f(q);
  }
}

std::string run_tag(const EnsembleConfig& cfg, int run) {
  return "run " + std::to_string(run) + " (seed " +
         std::to_string(run_seed(cfg.base_seed, (uint64_t)run)) + "): ";
}

EnsembleResult make_result(const EnsembleConfig& cfg,
                           const std::vector<Observable>& observables) {
  EnsembleResult res;
  res.times = cfg.times;
  for (const Observable& o : observables) res.names.push_back(o.name);
  res.values.assign(observables.size(),
                    std::vector<std::vector<double>>(
                        cfg.times.size(), std::vector<double>((std::size_t)cfg.runs, 0.0)));
  return res;
}

} // namespace

EnsembleResult run_ensemble(const EnsembleConfig& cfg,
                            const std::vector<Observable>& observables) {
  cfg.validate();
  EnsembleResult res = make_result(cfg, observables);
  // exceptions must not unwind out of the parallel region; park them per
  // run and rethrow the first one afterwards
  std::vector<std::optional<Error>> errors((std::size_t)cfg.runs);
  int nt = ensemble_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int r = 0; r < cfg.runs; ++r) {
    try {
      simulate_run(cfg, r, observables, res);
    } catch (const Error& e) {
      errors[(std::size_t)r] =
          Error(e.code(), e.exit_code(), run_tag(cfg, r) + e.what());
    } catch (const std::exception& e) {
      errors[(std::size_t)r] =
          numerical_error(Errc::invalid_argument, run_tag(cfg, r) + e.what());
    }
  }
  (void)nt;
  for (auto& e : errors)
    if (e) throw *e;
  return res;
}

EnsembleResult run_ensemble_serial(const EnsembleConfig& cfg,
                                   const std::vector<Observable>& observables) {
  cfg.validate();
  EnsembleResult res = make_result(cfg, observables);
  for (int r = 0; r < cfg.runs; ++r) simulate_run(cfg, r, observables, res);
  return res;
}

} // namespace exk
