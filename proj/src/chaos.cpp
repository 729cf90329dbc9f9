#include "exk/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "exk/entropy.hpp"

namespace exk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double l1_vs_dense(const EmpiricalMeasure& q, const std::vector<double>& p) {
  double s = 0;
  auto it = q.counts().begin();
  auto end = q.counts().end();
  for (std::size_t n = 0; n < p.size(); ++n) {
    double qn = 0;
    if (it != end && std::size_t(it->first) == n) {
      qn = double(it->second) / q.n_agents();
      ++it;
    }
    s += std::fabs(qn - p[n]);
  }
  for (; it != end; ++it) s += double(it->second) / q.n_agents();
  return s;
}

double entropic_vs_dense(const EmpiricalMeasure& q, const std::vector<double>& p) {
  double s = 0;
  for (auto& [n, c] : q.counts()) {
    double qn = double(c) / q.n_agents();
    if (std::size_t(n) >= p.size() || !(p[(std::size_t)n] > 0)) return kInf;
    s += qn * std::log(qn / p[(std::size_t)n]);
  }
  return s;
}

// initial empirical law of the configured ensemble, as exact dollars
std::vector<int> initial_dollars(const EnsembleConfig& cfg) {
  switch (cfg.init) {
    case InitKind::all_equal:
      return std::vector<int>((std::size_t)cfg.params.n_agents, cfg.params.mu);
    case InitKind::single_rich: {
      std::vector<int> d((std::size_t)cfg.params.n_agents, 0);
      d[0] = int(cfg.params.total_dollars());
      return d;
    }
    case InitKind::custom:
      return cfg.custom_init;
  }
  return {};
}

struct PerRunCurves {
  std::vector<std::vector<double>> l1_sq;    // [time][run]
  std::vector<std::vector<double>> entropic; // [time][run]
};

// reference laws per requested time, as dense non-negative vectors of unit
// mass; shared by the trajectory and equilibrium variants
PerRunCurves run_curves(const EnsembleConfig& cfg,
                        const std::vector<std::vector<double>>& refs) {
  PerRunCurves out;
  out.l1_sq.assign(cfg.times.size(), std::vector<double>((std::size_t)cfg.runs, 0.0));
  out.entropic.assign(cfg.times.size(), std::vector<double>((std::size_t)cfg.runs, 0.0));

  std::vector<std::optional<Error>> errors((std::size_t)cfg.runs);
  int nt = ensemble_threads();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int r = 0; r < cfg.runs; ++r) {
    try {
      SimState s = new_simulation(cfg.params, cfg.init,
                                  run_seed(cfg.base_seed, (uint64_t)r),
                                  cfg.custom_init);
      for (std::size_t t = 0; t < cfg.times.size(); ++t) {
        advance_to(s, cfg.times[t]);
        EmpiricalMeasure q = empirical(s);
        double l1 = l1_vs_dense(q, refs[t]);
        double ent = entropic_vs_dense(q, refs[t]);
        out.l1_sq[t][(std::size_t)r] = l1 * l1;
        out.entropic[t][(std::size_t)r] = ent;
        // CKP consistency: relative entropy dominates half the squared l1
        if (std::isfinite(ent) && ent + 1e-12 < 0.5 * l1 * l1)
          throw numerical_error(Errc::invalid_argument,
                                "entropic metric below l1^2/2 in run " +
                                    std::to_string(r));
      }
    } catch (const Error& e) {
      std::string tag = "run " + std::to_string(r) + " (seed " +
                        std::to_string(run_seed(cfg.base_seed, (uint64_t)r)) +
                        "): ";
      errors[(std::size_t)r] = Error(e.code(), e.exit_code(), tag + e.what());
    } catch (const std::exception& e) {
      std::string tag = "run " + std::to_string(r) + " (seed " +
                        std::to_string(run_seed(cfg.base_seed, (uint64_t)r)) +
                        "): ";
      errors[(std::size_t)r] = numerical_error(Errc::invalid_argument, tag + e.what());
    }
  }
  (void)nt;
  for (auto& e : errors)
    if (e) throw *e;
  return out;
}

ChaosReport summarize(const EnsembleConfig& cfg, const PerRunCurves& curves) {
  ChaosReport rep;
  rep.runs = cfg.runs;
  rep.times = cfg.times;
  for (std::size_t t = 0; t < cfg.times.size(); ++t) {
    auto stats = [](const std::vector<double>& v, double& mean, double& se, int& bad) {
      double s = 0, lo = kInf, hi = -kInf;
      int m = 0;
      bad = 0;
      for (double x : v) {
        if (std::isfinite(x)) {
          s += x;
          lo = std::min(lo, x);
          hi = std::max(hi, x);
          ++m;
        } else {
          ++bad;
        }
      }
      mean = m > 0 ? s / m : std::numeric_limits<double>::quiet_NaN();
      // identical observations have zero spread; the centered sum would
      // report ulp noise because the computed mean can sit an ulp off
      if (m < 2 || lo == hi) {
        se = 0.0;
        return;
      }
      double ss = 0;
      for (double x : v)
        if (std::isfinite(x)) ss += (x - mean) * (x - mean);
      se = std::sqrt(ss / double(m - 1) / double(m));
    };
    double mean, se;
    int bad;
    stats(curves.l1_sq[t], mean, se, bad);
    rep.l1_sq_mean.push_back(mean);
    rep.l1_sq_se.push_back(se);
    stats(curves.entropic[t], mean, se, bad);
    rep.entropic_mean.push_back(mean);
    rep.entropic_se.push_back(se);
    rep.infinite_count.push_back(bad);
  }
  return rep;
}

} // namespace

ChaosReport chaos_curves(const EnsembleConfig& cfg, const Trajectory& traj) {
  cfg.validate();

  // the ensemble must start from the law the trajectory integrates
  EmpiricalMeasure q0 = EmpiricalMeasure::from_dollars(initial_dollars(cfg));
  const ProbabilityVector& p0 = traj.snapshots.at(0);
  if (q0.max_level() > p0.n_max())
    throw validation_error(Errc::init_mismatch,
                           "ensemble initial law reaches past the trajectory range");
  for (int n = 0; n <= p0.n_max(); ++n)
    if (std::fabs(q0.q(n) - p0[n]) > 1e-12)
      throw validation_error(Errc::init_mismatch,
                             "ensemble initial law differs from the trajectory datum at level " +
                                 std::to_string(n));

  std::vector<std::vector<double>> refs;
  for (double t : cfg.times)
    refs.push_back(traj.snapshots[traj.index_at(t)].renormalized().data());

  return summarize(cfg, run_curves(cfg, refs));
}

ChaosReport chaos_vs_equilibrium(const EnsembleConfig& cfg) {
  cfg.validate();
  int mu = cfg.params.mu;
  // dense closed-form geometric long enough that the discarded tail is
  // below 1e-18 (added back to every l1 value as an exact correction)
  double r = double(mu) / (mu + 1.0);
  int cut = mu == 0 ? 1 : int(std::ceil(std::log(1e-18) / std::log(r))) + 1;
  cut = std::max(cut, int(cfg.params.total_dollars()) + 1);
  std::vector<double> p_star((std::size_t)cut + 1);
  double v = 1.0 / (mu + 1.0);
  for (int n = 0; n <= cut; ++n) {
    p_star[(std::size_t)n] = v;
    v *= r;
  }
  std::vector<std::vector<double>> refs(cfg.times.size(), p_star);
  return summarize(cfg, run_curves(cfg, refs));
}

std::vector<TailPoint> tail_probability(const EnsembleConfig& cfg, double r0,
                                        double z) {
  Observable ind{"tail_indicator", [r0](const EmpiricalMeasure& q) {
                   return q.r_bar() >= r0 ? 1.0 : 0.0;
                 }};
  EnsembleResult res = run_ensemble(cfg, {ind});
  std::vector<TailPoint> out;
  for (std::size_t t = 0; t < res.times.size(); ++t) {
    TailPoint pt;
    pt.t = res.times[t];
    double sum = 0;
    for (double x : res.values[0][t]) sum += x;
    pt.count = int(std::llround(sum));
    double m = double(cfg.runs);
    pt.p_hat = pt.count / m;
    double z2 = z * z;
    double denom = 1.0 + z2 / m;
    double center = (pt.p_hat + z2 / (2.0 * m)) / denom;
    double half = z * std::sqrt(pt.p_hat * (1.0 - pt.p_hat) / m + z2 / (4.0 * m * m)) / denom;
    pt.lo = std::max(0.0, center - half);
    pt.hi = std::min(1.0, center + half);
    out.push_back(pt);
  }
  return out;
}

EnsembleResult moment_track(const EnsembleConfig& cfg, double K) {
  Observable obs{"exp_moment", [K](const EmpiricalMeasure& q) {
                   return exp_moment(q, K);
                 }};
  return run_ensemble(cfg, {obs});
}

} // namespace exk
