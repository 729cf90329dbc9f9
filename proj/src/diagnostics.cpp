#include "exk/diagnostics.hpp"

#include <cmath>
#include <limits>

#include "exk/entropy.hpp"

namespace exk {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::vector<DiagnosticsRow> diagnostics_rows(
    const std::vector<double>& times,
    const std::vector<ProbabilityVector>& snapshots, int mu,
    const DiagnosticsConfig& cfg) {
  if (times.size() != snapshots.size())
    throw validation_error(Errc::time_mismatch,
                           "times and snapshots differ in length");
  // equilibrium evaluated pointwise on whatever range each snapshot has
  // (snapshots re-read from sparse exports can be shorter than the
  // integration range)
  std::vector<double> p_star;
  auto extend_p_star = [&](std::size_t size) {
    std::size_t old = p_star.size();
    if (old >= size) return;
    p_star.resize(size);
    double r_star = mu / (mu + 1.0);
    if (old == 0) {
      p_star[0] = 1.0 / (mu + 1.0);
      old = 1;
    }
    for (std::size_t n = old; n < size; ++n) p_star[n] = p_star[n - 1] * r_star;
  };
  std::vector<DiagnosticsRow> rows;
  rows.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const ProbabilityVector& p = snapshots[i];
    extend_p_star(p.size());

    DiagnosticsRow row;
    row.t = times[i];
    row.h = kl_divergence(
        p.data(), std::vector<double>(p_star.begin(),
                                      p_star.begin() + (long)p.size()));
    row.d = dissipation(p, cfg.zero_floor);
    row.pillar_ratio = pillar_ratio(p, mu, cfg.zero_floor).ratio;
    EedRatios eed = eed_ratios(row.h, row.d);
    row.thm1_ratio = eed.thm1;
    row.thm2_ratio = eed.thm2;
    row.exp_moment = exp_moment(p, cfg.K).value;

    // interpolation analysis runs on the occupied prefix above the floor
    std::size_t len = 0;
    while (len < p.size() && p[(int)len] > cfg.zero_floor) ++len;
    row.b1 = row.b2 = row.h_int = kNaN;
    if (len >= 3 && mu >= 1) {
      double lg = (std::isfinite(row.d) && row.d > 0)
                      ? std::max(1.0, std::fabs(std::log(1.0 / row.d)))
                      : 1.0;
      int n_trunc = cfg.n_trunc > 0 ? cfg.n_trunc : 5 * (int)std::ceil(lg);
      int top = int(len) - 1;
      if (n_trunc >= top) n_trunc = top - 1;
      if (n_trunc < 1) n_trunc = 1;
      try {
        std::vector<double> prefix(p.data().begin(), p.data().begin() + (long)len);
        InterpolationReport rep = interpolated_equilibrium(
            ProbabilityVector::raw(std::move(prefix)), mu, n_trunc);
        row.b1 = rep.b1;
        row.b2 = rep.b2;
        row.h_int = rep.h_int;
      } catch (const Error&) {
        // not in the interpolation regime at this time; row stays NaN
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<DiagnosticsRow> diagnostics_rows(const Trajectory& traj,
                                             const DiagnosticsConfig& cfg) {
  return diagnostics_rows(traj.times, traj.snapshots, traj.mu, cfg);
}

} // namespace exk
