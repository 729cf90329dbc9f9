#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "exk/io.hpp"
#include "helpers.hpp"

using namespace exk;
using exk_test::thrown_code;

namespace {
Trajectory small_trajectory() {
  OdeConfig cfg;
  cfg.n_max = 50;
  cfg.t_final = 5;
  return integrate(init_dirac(1, 50), 1, cfg);
}

double reparse(const std::string& s) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  REQUIRE(end != s.c_str());
  return v;
}
} // namespace

TEST_CASE("17-digit formatting round-trips") {
  for (double x : {1.0 / 3.0, 0.1, 1e-300, 2.0, 0.0, 6.02214076e23,
                   -0.12345678901234567, 1e308}) {
    CHECK(reparse(fmt17(x)) == x);
  }
  double inf = std::numeric_limits<double>::infinity();
  CHECK(reparse(fmt17(inf)) == inf);
  CHECK(reparse(fmt17(-inf)) == -inf);
  CHECK(std::isnan(reparse(fmt17(std::numeric_limits<double>::quiet_NaN()))));
}

TEST_CASE("trajectory table round-trips") {
  Trajectory traj = small_trajectory();
  std::stringstream ss;
  write_trajectory_csv(ss, traj);

  std::string header;
  std::getline(ss, header);
  CHECK(header == "t,H,D,r_bar,mass_defect,mean_defect");
  ss.seekg(0);

  TrajectoryTable tab = read_trajectory_csv(ss);
  REQUIRE(tab.t.size() == traj.size());
  CHECK(tab.t == traj.times);
  CHECK(tab.h == traj.entropy_h);
  CHECK(tab.d == traj.dissipation_d);
  CHECK(tab.r_bar == traj.r_bar);
  CHECK(tab.mass_defect == traj.mass_defect);
  CHECK(tab.mean_defect == traj.mean_defect);
}

TEST_CASE("snapshot table round-trips") {
  Trajectory traj = small_trajectory();
  std::stringstream ss;
  write_snapshots_csv(ss, traj);

  std::string header;
  std::getline(ss, header);
  CHECK(header == "t,n,p_n");
  ss.seekg(0);

  SnapshotTable tab = read_snapshots_csv(ss);
  REQUIRE(tab.times.size() == traj.size());
  for (std::size_t i = 0; i < tab.times.size(); ++i) {
    CHECK(tab.times[i] == traj.times[i]);
    const ProbabilityVector& got = tab.snapshots[i];
    const ProbabilityVector& want = traj.snapshots[i];
    REQUIRE(got.n_max() <= want.n_max());
    for (int n = 0; n <= want.n_max(); ++n) {
      double w = want[n];
      if (w > 1e-300) {
        REQUIRE(n <= got.n_max());
        CHECK(got[n] == w); // bit-exact through the 17-digit form
      } else if (n <= got.n_max()) {
        CHECK(got[n] == 0.0);
      }
    }
  }
}

TEST_CASE("reader rejects malformed tables") {
  std::stringstream bad1("wrong,header\n1,2,3,4,5,6\n");
  CHECK(thrown_code([&] { read_trajectory_csv(bad1); }) == Errc::invalid_argument);

  std::stringstream bad2("t,H,D,r_bar,mass_defect,mean_defect\n1,2,3\n");
  CHECK(thrown_code([&] { read_trajectory_csv(bad2); }) == Errc::invalid_argument);

  std::stringstream bad3("t,H,D,r_bar,mass_defect,mean_defect\n1,x,3,4,5,6\n");
  CHECK(thrown_code([&] { read_trajectory_csv(bad3); }) == Errc::invalid_argument);

  std::stringstream bad4("t,n,p_n\n0,-1,0.5\n");
  CHECK(thrown_code([&] { read_snapshots_csv(bad4); }) == Errc::invalid_argument);

  std::stringstream bad5("t,n,p_n\n0,1.5,0.5\n");
  CHECK(thrown_code([&] { read_snapshots_csv(bad5); }) == Errc::invalid_argument);
}

TEST_CASE("simulation snapshot and event tables have pinned layouts") {
  EmpiricalMeasure q({{0, 1}, {2, 3}}, 4);
  std::stringstream ss;
  write_sim_snapshots_csv(ss, {{1.5, q}});
  CHECK(ss.str() == "t,n,count,q_n\n1.5,0,1,0.25\n1.5,2,3,0.75\n");

  std::stringstream es;
  write_events_csv(es, {{0.25, 3, 7}, {0.5, 1, 0}});
  CHECK(es.str() == "time,giver,receiver\n0.25,3,7\n0.5,1,0\n");
}

TEST_CASE("diagnostics table layout") {
  DiagnosticsRow row;
  row.t = 1.0;
  row.h = 0.5;
  row.d = 0.25;
  row.pillar_ratio = 1.5;
  row.thm1_ratio = 2.0;
  row.thm2_ratio = 3.0;
  row.exp_moment = 1.9;
  row.b1 = std::numeric_limits<double>::quiet_NaN();
  row.b2 = 4.0;
  row.h_int = 0.1;
  std::stringstream ss;
  write_diagnostics_csv(ss, {row});

  std::string header;
  std::getline(ss, header);
  CHECK(header == "t,H,D,pillar_ratio,thm1_ratio,thm2_ratio,exp_moment,B1,B2,H_int");
  std::string line;
  std::getline(ss, line);
  // the NaN column reparses as NaN, the rest exactly
  std::stringstream fields(line);
  std::string cell;
  std::vector<double> vals;
  while (std::getline(fields, cell, ',')) vals.push_back(reparse(cell));
  REQUIRE(vals.size() == 10);
  CHECK(vals[0] == 1.0);
  CHECK(vals[6] == 1.9);
  CHECK(std::isnan(vals[7]));
  CHECK(vals[8] == 4.0);
}

TEST_CASE("chaos table and json") {
  ChaosReport rep;
  rep.runs = 2;
  rep.times = {0.0, 1.0};
  rep.l1_sq_mean = {0.0, 0.5};
  rep.l1_sq_se = {0.0, 0.1};
  rep.entropic_mean = {0.0, 0.7};
  rep.entropic_se = {0.0, 0.2};
  rep.infinite_count = {0, 1};

  std::stringstream ss;
  write_chaos_csv(ss, rep);
  std::string header;
  std::getline(ss, header);
  CHECK(header == "t,l1_sq_mean,l1_sq_se,entropic_mean,entropic_se,infinite_count");
  int rows = 0;
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);

  EnsembleConfig cfg;
  cfg.params = {100, 10, 1.0};
  cfg.runs = 2;
  cfg.base_seed = 7;
  cfg.times = rep.times;
  std::string js = chaos_json(rep, cfg);
  CHECK(js.find("\"n_agents\": 100") != std::string::npos);
  CHECK(js.find("\"runs\": 2") != std::string::npos);
  CHECK(js.find("l1_sq_mean") != std::string::npos);
  CHECK(js.find(kVersionString) != std::string::npos);
  CHECK(js.back() == '\n');
}

TEST_CASE("fit json carries the fitted constants") {
  DecayFit fit;
  fit.c1 = 2.0;
  fit.c2 = 0.5;
  fit.r_squared = 0.999;
  fit.n_points = 42;
  fit.t_min = 20;
  fit.t_max = 200;
  std::string js = fit_json(fit, "trajectory.csv");
  CHECK(js.find("\"c1\"") != std::string::npos);
  CHECK(js.find("\"c2\"") != std::string::npos);
  CHECK(js.find("trajectory.csv") != std::string::npos);
  CHECK(js.find("\"n_points\": 42") != std::string::npos);
}

TEST_CASE("svg plot is emitted with axes and data") {
  PlotSeries s1{"H(t)", {0, 1, 2, 3}, {1.0, 0.5, 0.25, 0.125}};
  PlotSeries s2{"bound", {0, 1, 2, 3}, {1.1, 0.6, 0.3, 0.2}};
  std::stringstream ss;
  write_svg_plot(ss, "decay", "t", "H", {s1, s2});
  std::string svg = ss.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("decay") != std::string::npos);
  CHECK(svg.find("H(t)") != std::string::npos); // legend
  // non-finite points are dropped, not emitted
  PlotSeries with_gap{"g", {0, 1, 2}, {1.0, std::nan(""), 2.0}};
  std::stringstream gs;
  write_svg_plot(gs, "gap", "x", "y", {with_gap});
  CHECK(gs.str().find("nan") == std::string::npos);
}
