#ifndef EXK_CHAOS_HPP
#define EXK_CHAOS_HPP

#include "exk/ensemble.hpp"
#include "exk/meanfield.hpp"

namespace exk {

// Ensemble-vs-limit comparison curves.  Entropic entries are +infinity when
// the empirical measure puts mass where the reference law has none; such
// runs are excluded from the means but counted per time in infinite_count.
struct ChaosReport {
  int runs = 0;
  std::vector<double> times;
  std::vector<double> l1_sq_mean, l1_sq_se;
  std::vector<double> entropic_mean, entropic_se;
  std::vector<int> infinite_count;
};

// || q(t) - p(t) ||_1^2 and sum_n q_n log(q_n / p_n(t)) against a mean-field
// trajectory.  Requires every requested time to be a trajectory sample and
// the ensemble initial law to equal the trajectory initial datum.  Each
// finite entropic value is checked against its l1 value (CKP inequality:
// entropic >= l1^2 / 2) as a per-run consistency assertion.
ChaosReport chaos_curves(const EnsembleConfig& cfg, const Trajectory& traj);

// entropic and l1 curves against the untruncated geometric equilibrium with
// the ensemble's mu (reference evaluated in closed form, no truncation)
ChaosReport chaos_vs_equilibrium(const EnsembleConfig& cfg);

struct TailPoint {
  double t = 0;
  double p_hat = 0;      // fraction of runs with 1 - q_0(t) >= r0
  double lo = 0, hi = 0; // Wilson score interval
  int count = 0;
};

std::vector<TailPoint> tail_probability(const EnsembleConfig& cfg, double r0,
                                        double z = 1.96);

// ensemble mean of sum_n K^n q_n(t) per snapshot time
EnsembleResult moment_track(const EnsembleConfig& cfg, double K);

} // namespace exk

#endif
