#ifndef EXK_IO_HPP
#define EXK_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "exk/chaos.hpp"
#include "exk/diagnostics.hpp"
#include "exk/fit.hpp"
#include "exk/meanfield.hpp"
#include "exk/sim.hpp"

namespace exk {

inline constexpr const char* kVersionString = "exk 0.1.0";

// full round-trip decimal form (17 significant digits)
std::string fmt17(double x);

// ---- writers (schemas are fixed; every number is fmt17) -----------------

// header t,H,D,r_bar,mass_defect,mean_defect
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

// header t,n,p_n; sparse: rows only for p_n > 1e-300
void write_snapshots_csv(std::ostream& os, const std::vector<double>& times,
                         const std::vector<ProbabilityVector>& snapshots);
void write_snapshots_csv(std::ostream& os, const Trajectory& traj);

// header t,H,D,pillar_ratio,thm1_ratio,thm2_ratio,exp_moment,B1,B2,H_int
void write_diagnostics_csv(std::ostream& os,
                           const std::vector<DiagnosticsRow>& rows);

struct SimSnapshot {
  double t = 0;
  EmpiricalMeasure q;
};
// header t,n,count,q_n
void write_sim_snapshots_csv(std::ostream& os,
                             const std::vector<SimSnapshot>& snaps);

// header time,giver,receiver
void write_events_csv(std::ostream& os, const std::vector<Event>& events);

// header t,l1_sq_mean,l1_sq_se,entropic_mean,entropic_se,infinite_count
void write_chaos_csv(std::ostream& os, const ChaosReport& rep);

// JSON mirror of a chaos report with the run metadata
std::string chaos_json(const ChaosReport& rep, const EnsembleConfig& cfg);

std::string fit_json(const DecayFit& fit, const std::string& input);

// ---- readers -------------------------------------------------------------

struct TrajectoryTable {
  std::vector<double> t, h, d, r_bar, mass_defect, mean_defect;
};
TrajectoryTable read_trajectory_csv(std::istream& is);

struct SnapshotTable {
  std::vector<double> times;
  std::vector<ProbabilityVector> snapshots; // dense up to each group's top level
};
SnapshotTable read_snapshots_csv(std::istream& is);

// ---- plotting ------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

// self-contained SVG line plot: axes, tick labels, one polyline + markers
// per series; non-finite points are skipped
void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series);

} // namespace exk

#endif
