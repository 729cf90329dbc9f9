#ifndef EXK_DIAGNOSTICS_HPP
#define EXK_DIAGNOSTICS_HPP

#include <vector>

#include "exk/entropy.hpp"
#include "exk/interpolation.hpp"
#include "exk/meanfield.hpp"

namespace exk {

// One analysis row per trajectory sample.  b1 / b2 / h_int are NaN where
// the interpolated-equilibrium construction does not apply (state not yet
// positive on a long enough prefix, e.g. right after a point-mass start).
struct DiagnosticsRow {
  double t = 0;
  double h = 0;
  double d = 0;
  double pillar_ratio = 0;
  double thm1_ratio = 0;
  double thm2_ratio = 0;
  double exp_moment = 0;
  double b1 = 0;
  double b2 = 0;
  double h_int = 0;
};

struct DiagnosticsConfig {
  double K = 1.05; // base of the exponential moment
  // truncation split for the interpolated equilibrium; 0 picks
  // 5 * ceil|log(1/D)| per row (clamped to the available support)
  int n_trunc = 0;
  // entries at or below this count as empty levels (underflow debris from
  // integrated trajectories); the support prefix above it is analyzed
  double zero_floor = kTrajectoryZeroFloor;
};

std::vector<DiagnosticsRow> diagnostics_rows(const Trajectory& traj,
                                             const DiagnosticsConfig& cfg = {});

// same analysis over externally supplied snapshots (e.g. re-read from disk)
std::vector<DiagnosticsRow> diagnostics_rows(
    const std::vector<double>& times,
    const std::vector<ProbabilityVector>& snapshots, int mu,
    const DiagnosticsConfig& cfg = {});

} // namespace exk

#endif
