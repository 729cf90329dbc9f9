#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exk/diagnostics.hpp"
#include "exk/io.hpp"
#include "exk/small_n.hpp"

namespace {

using namespace exk;

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os)
    throw validation_error(Errc::invalid_argument, "cannot open '" + path + "'");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is)
    throw validation_error(Errc::invalid_argument, "cannot read '" + path + "'");
  return is;
}

// a documented no-op target for --config; the value is consumed up front by
// with_config_args, this only keeps the flag visible in --help
std::string config_path_doc;

void add_config(CLI::App* cmd) {
  cmd->add_option("--config", config_path_doc,
                  "JSON object of option values; explicit flags win");
}

// Reads the --config file (a flat JSON object keyed by long option names,
// e.g. {"mu": 10, "agents-list": [100, 400]}) and appends one flag per key
// that was not given explicitly, so the command line keeps precedence.
std::vector<std::string> with_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw validation_error(Errc::invalid_argument,
                               "--config needs a file path");
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream is = open_in(path);
  nlohmann::json j = nlohmann::json::parse(is);
  if (!j.is_object())
    throw validation_error(Errc::invalid_argument,
                           "config root must be a JSON object of option values");
  for (auto& [key, value] : j.items()) {
    std::string flag = "--" + key;
    bool given = false;
    for (const std::string& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) {
        given = true;
        break;
      }
    if (given) continue;
    std::string rendered;
    if (value.is_string()) {
      rendered = value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        const nlohmann::json& v = value[k];
        if (!v.is_number() && !v.is_string())
          throw validation_error(Errc::invalid_argument,
                                 "config key '" + key +
                                     "' holds a non-scalar array element");
        if (k) rendered += ',';
        rendered += v.is_string() ? v.get<std::string>() : v.dump();
      }
    } else if (value.is_number() || value.is_boolean()) {
      rendered = value.dump();
    } else {
      throw validation_error(Errc::invalid_argument,
                             "config key '" + key +
                                 "' must be a scalar, string, or array");
    }
    args.push_back(flag);
    args.push_back(rendered);
  }
  return args;
}

// 99th percentile of chi^2 with k degrees of freedom (Wilson-Hilferty)
double chi2_critical_99(int k) {
  const double z = 2.3263478740408408; // 99th normal percentile
  double a = 2.0 / (9.0 * k);
  double b = 1.0 - a + z * std::sqrt(a);
  return k * b * b * b;
}

// ---- ode ------------------------------------------------------------------

struct OdeOpts {
  int mu = 10;
  std::string init = "dirac";
  int dirac_at = -1; // level of the point mass; defaults to mu
  std::string init_file;
  int n_max = 500;
  double dt = 0.01;
  double t_final = 200.0;
  double sample_dt = 1.0;
  double lambda = 1.0;
  double K = 1.05;
  int n_trunc = 0;
  std::string out = "trajectory.csv";
  std::string diagnostics = "diagnostics.csv";
  std::string snapshots;
  std::string plot;
};

ProbabilityVector ode_initial(const OdeOpts& o) {
  if (o.init == "dirac") return init_dirac(o.dirac_at >= 0 ? o.dirac_at : o.mu, o.n_max);
  if (o.init == "two-point") return init_two_point(o.n_max, o.mu);
  if (o.init == "geom") return geometric_equilibrium(o.mu, o.n_max);
  // file: one p_n per line, level = line index, blank and # lines skipped
  std::ifstream is = open_in(o.init_file);
  std::vector<double> p;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    p.push_back(std::stod(line));
  }
  if (int(p.size()) > o.n_max + 1)
    throw validation_error(Errc::level_overflow,
                           "initial law has more than n_max + 1 entries");
  p.resize((std::size_t)o.n_max + 1, 0.0);
  return ProbabilityVector(std::move(p));
}

int run_ode(const OdeOpts& o) {
  OdeConfig cfg;
  cfg.n_max = o.n_max;
  cfg.dt = o.dt;
  cfg.t_final = o.t_final;
  cfg.sample_dt = o.sample_dt;
  cfg.lambda = o.lambda;
  cfg.validate();

  Trajectory traj = integrate(ode_initial(o), o.mu, cfg);

  {
    std::ofstream os = open_out(o.out);
    write_trajectory_csv(os, traj);
  }
  DiagnosticsConfig dc;
  dc.K = o.K;
  dc.n_trunc = o.n_trunc;
  {
    std::ofstream os = open_out(o.diagnostics);
    write_diagnostics_csv(os, diagnostics_rows(traj, dc));
  }
  if (!o.snapshots.empty()) {
    std::ofstream os = open_out(o.snapshots);
    write_snapshots_csv(os, traj);
  }
  if (!o.plot.empty()) {
    PlotSeries s;
    s.label = "log H";
    for (std::size_t i = 0; i < traj.size(); ++i)
      if (traj.entropy_h[i] > 0) {
        s.x.push_back(std::sqrt(traj.times[i]));
        s.y.push_back(std::log(traj.entropy_h[i]));
      }
    std::ofstream os = open_out(o.plot);
    write_svg_plot(os, "relative entropy decay", "sqrt(t)", "log H", {s});
  }
  std::cout << "ode: " << traj.size() << " samples, final H = "
            << fmt17(traj.entropy_h.back())
            << ", max mass defect = "
            << fmt17(*std::max_element(traj.mass_defect.begin(),
                                       traj.mass_defect.end()))
            << ", wrote " << o.out << " and " << o.diagnostics << "\n";
  return kExitOk;
}

// ---- simulate ---------------------------------------------------------------

struct SimOpts {
  int agents = 1000;
  int mu = 10;
  double lambda = 1.0;
  double t_final = 50.0;
  double snapshot_dt = 0.0; // 0: only the final time
  std::string init = "equal";
  std::string init_file;
  uint64_t seed = 12345;
  std::string out = "sim_snapshots.csv";
  std::string events;
};

int run_simulate(const SimOpts& o) {
  ModelParams params;
  params.n_agents = o.agents;
  params.mu = o.mu;
  params.lambda = o.lambda;

  InitKind kind = InitKind::all_equal;
  std::vector<int> custom;
  if (o.init == "rich") {
    kind = InitKind::single_rich;
  } else if (o.init == "file") {
    kind = InitKind::custom;
    std::ifstream is = open_in(o.init_file);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#') continue;
      custom.push_back(std::stoi(line));
    }
  }

  SimState s = new_simulation(params, kind, o.seed, custom);
  std::vector<Event> log;
  if (!o.events.empty()) s.event_log = &log;

  std::vector<double> times;
  if (o.snapshot_dt > 0)
    for (double t = 0; t < o.t_final - 1e-12; t += o.snapshot_dt)
      times.push_back(t);
  times.push_back(o.t_final);

  std::vector<SimSnapshot> snaps;
  for (double t : times) {
    advance_to(s, t);
    snaps.push_back({t, empirical(s)});
  }
  {
    std::ofstream os = open_out(o.out);
    write_sim_snapshots_csv(os, snaps);
  }
  if (!o.events.empty()) {
    std::ofstream os = open_out(o.events);
    write_events_csv(os, log);
  }
  std::cout << "simulate: N = " << o.agents << ", " << s.events
            << " events to t = " << fmt17(o.t_final) << ", wrote " << o.out
            << "\n";
  return kExitOk;
}

// ---- chaos ------------------------------------------------------------------

struct ChaosOpts {
  std::vector<int> agents_list{100, 400, 1600};
  int mu = 10;
  double lambda = 1.0;
  int runs = 20;
  double t_final = 10.0;
  double sample_dt = 0.0; // 0: snapshot only at 0 and t_final
  uint64_t seed = 12345;
  std::string reference = "ode"; // or "equilibrium"
  int n_max = 500;
  double dt = 0.01;
  std::string out_prefix = "chaos_";
  double tail_r0 = 0.0; // > 0: also write tail probability curves
  double moment_K = 0.0; // > 1: also write exponential moment curves
};

int run_chaos(const ChaosOpts& o) {
  if (!(o.t_final > 0))
    throw validation_error(Errc::invalid_argument, "t-final must be > 0");
  std::vector<double> times;
  times.push_back(0.0);
  if (o.sample_dt > 0)
    for (double t = o.sample_dt; t < o.t_final - 1e-12; t += o.sample_dt)
      times.push_back(t);
  times.push_back(o.t_final);

  Trajectory traj;
  if (o.reference == "ode") {
    OdeConfig cfg;
    cfg.n_max = o.n_max;
    cfg.dt = o.dt;
    cfg.t_final = o.t_final;
    cfg.sample_dt = o.sample_dt > 0 ? o.sample_dt : o.t_final;
    cfg.lambda = o.lambda;
    cfg.validate();
    traj = integrate(init_dirac(o.mu, o.n_max), o.mu, cfg);
  }

  for (int n_agents : o.agents_list) {
    EnsembleConfig cfg;
    cfg.params.n_agents = n_agents;
    cfg.params.mu = o.mu;
    cfg.params.lambda = o.lambda;
    cfg.init = InitKind::all_equal;
    cfg.runs = o.runs;
    cfg.base_seed = run_seed(o.seed, (uint64_t)n_agents);
    cfg.times = times;

    ChaosReport rep = o.reference == "ode" ? chaos_curves(cfg, traj)
                                           : chaos_vs_equilibrium(cfg);
    std::string base = o.out_prefix + std::to_string(n_agents);
    {
      std::ofstream os = open_out(base + ".csv");
      write_chaos_csv(os, rep);
    }
    {
      std::ofstream os = open_out(base + ".json");
      os << chaos_json(rep, cfg);
    }
    std::cout << "chaos: N = " << n_agents << ", final l1^2 = "
              << fmt17(rep.l1_sq_mean.back()) << " +- "
              << fmt17(rep.l1_sq_se.back()) << ", wrote " << base
              << ".{csv,json}\n";

    if (o.tail_r0 > 0) {
      std::vector<TailPoint> tail = tail_probability(cfg, o.tail_r0);
      std::ofstream os = open_out(o.out_prefix + "tail_" +
                                  std::to_string(n_agents) + ".csv");
      os << "t,p_hat,lo,hi,count\n";
      for (const TailPoint& p : tail)
        os << fmt17(p.t) << ',' << fmt17(p.p_hat) << ',' << fmt17(p.lo) << ','
           << fmt17(p.hi) << ',' << p.count << '\n';
    }
    if (o.moment_K > 1) {
      EnsembleResult res = moment_track(cfg, o.moment_K);
      std::ofstream os = open_out(o.out_prefix + "moment_" +
                                  std::to_string(n_agents) + ".csv");
      os << "t,mean,se,nonfinite_count\n";
      for (std::size_t t = 0; t < res.times.size(); ++t)
        os << fmt17(res.times[t]) << ',' << fmt17(res.mean(0, t)) << ','
           << fmt17(res.std_error(0, t)) << ',' << res.nonfinite_count(0, t)
           << '\n';
    }
  }
  return kExitOk;
}

// ---- fit --------------------------------------------------------------------

struct FitOpts {
  std::string input;
  double t_min = -1; // < 0: t_final / 10
  double t_max = -1; // < 0: t_final
  std::string out;
};

int run_fit(const FitOpts& o) {
  std::ifstream is = open_in(o.input);
  TrajectoryTable tbl = read_trajectory_csv(is);
  if (tbl.t.empty())
    throw validation_error(Errc::insufficient_data, "no rows in " + o.input);
  double t_last = tbl.t.back();
  double t_min = o.t_min >= 0 ? o.t_min : t_last / 10.0;
  double t_max = o.t_max >= 0 ? o.t_max : t_last;

  DecayFit fit = fit_sqrt_decay(tbl.t, tbl.h, t_min, t_max);
  std::string j = fit_json(fit, o.input);
  if (o.out.empty()) {
    std::cout << j;
  } else {
    std::ofstream os = open_out(o.out);
    os << j;
    std::cout << "fit: H ~= " << fmt17(fit.c1) << " * exp(-" << fmt17(fit.c2)
              << " sqrt(t)), r^2 = " << fmt17(fit.r_squared) << " on "
              << fit.n_points << " points, wrote " << o.out << "\n";
  }
  return kExitOk;
}

// ---- oracle -----------------------------------------------------------------

struct OracleOpts {
  int agents = 3;
  int mu = 1;
  double lambda = 1.0;
  double t = 50.0;
  int runs = 100000;
  uint64_t seed = 20240901;
};

int run_oracle(const OracleOpts& o) {
  ModelParams params;
  params.n_agents = o.agents;
  params.mu = o.mu;
  params.lambda = o.lambda;
  SmallChain chain = build_small_chain(params);
  int n_states = int(chain.size());

  std::vector<int> equal((std::size_t)o.agents, o.mu);
  int init = chain.index_of(equal);
  std::vector<double> law = transient_law(chain, init, o.t);

  std::vector<long long> counts((std::size_t)n_states, 0);
  for (int r = 0; r < o.runs; ++r) {
    SimState s = new_simulation(params, InitKind::all_equal,
                                run_seed(o.seed, (uint64_t)r));
    advance_to(s, o.t);
    int idx = chain.index_of(s.agents.dollars);
    if (idx < 0)
      throw numerical_error(Errc::invalid_argument,
                            "simulated state missing from the exact chain");
    ++counts[(std::size_t)idx];
  }

  // chi^2 against the matrix-exponential law
  double chi2 = 0;
  for (int i = 0; i < n_states; ++i) {
    double expect = law[(std::size_t)i] * o.runs;
    if (expect < 1e-9) {
      if (counts[(std::size_t)i] > 0) chi2 = std::numeric_limits<double>::infinity();
      continue;
    }
    double d = counts[(std::size_t)i] - expect;
    chi2 += d * d / expect;
  }
  int dof = n_states - 1;
  double crit = chi2_critical_99(dof);
  bool chi2_ok = chi2 < crit;

  // occupancy against the uniform stationary law, per-state 3 sigma
  double p_uni = 1.0 / n_states;
  double sigma = std::sqrt(o.runs * p_uni * (1.0 - p_uni));
  double max_z = 0;
  for (int i = 0; i < n_states; ++i)
    max_z = std::max(max_z,
                     std::fabs(counts[(std::size_t)i] - o.runs * p_uni) / sigma);
  bool uniform_ok = max_z <= 3.0;

  // rate-matrix sanity: stationarity of the uniform law means zero column sums
  double max_col = 0;
  for (double c : chain.column_sums()) max_col = std::max(max_col, std::fabs(c));

  std::cout << "oracle: " << n_states << " states, " << o.runs
            << " runs at t = " << fmt17(o.t) << "\n";
  std::cout << "  column sums of the rate matrix: max |sum| = " << fmt17(max_col)
            << "\n";
  std::cout << "  chi^2 vs exact law: " << fmt17(chi2) << " (1% critical "
            << fmt17(crit) << ", " << dof << " dof) "
            << (chi2_ok ? "PASS" : "FAIL") << "\n";
  std::cout << "  occupancy vs uniform: max |z| = " << fmt17(max_z) << " "
            << (uniform_ok ? "PASS" : "FAIL") << "\n";
  std::cout << (chi2_ok && uniform_ok ? "PASS" : "FAIL") << "\n";
  return chi2_ok && uniform_ok ? kExitOk : kExitOracleMismatch;
}

// ---- analyze ------------------------------------------------------------------

struct AnalyzeOpts {
  std::string input;
  int mu = 10;
  double K = 1.05;
  int n_trunc = 0;
  double zero_floor = kTrajectoryZeroFloor;
  std::string out = "diagnostics.csv";
};

int run_analyze(const AnalyzeOpts& o) {
  std::ifstream is = open_in(o.input);
  SnapshotTable tbl = read_snapshots_csv(is);
  DiagnosticsConfig dc;
  dc.K = o.K;
  dc.n_trunc = o.n_trunc;
  dc.zero_floor = o.zero_floor;
  std::vector<DiagnosticsRow> rows =
      diagnostics_rows(tbl.times, tbl.snapshots, o.mu, dc);
  {
    std::ofstream os = open_out(o.out);
    write_diagnostics_csv(os, rows);
  }
  double sup_pillar = 0, sup_thm2 = 0;
  for (const DiagnosticsRow& r : rows) {
    if (std::isfinite(r.pillar_ratio)) sup_pillar = std::max(sup_pillar, r.pillar_ratio);
    if (std::isfinite(r.thm2_ratio)) sup_thm2 = std::max(sup_thm2, r.thm2_ratio);
  }
  std::cout << "analyze: " << rows.size() << " rows, sup pillar_ratio = "
            << fmt17(sup_pillar) << ", sup thm2_ratio = " << fmt17(sup_thm2)
            << ", wrote " << o.out << "\n";
  return kExitOk;
}

const char* kSchemas =
    "CSV schemas (all numbers are 17-significant-digit round-trip):\n"
    "  trajectory:   t,H,D,r_bar,mass_defect,mean_defect\n"
    "  snapshots:    t,n,p_n            (sparse, rows only for p_n > 1e-300)\n"
    "  diagnostics:  t,H,D,pillar_ratio,thm1_ratio,thm2_ratio,exp_moment,B1,B2,H_int\n"
    "  simulate:     t,n,count,q_n\n"
    "  events:       time,giver,receiver\n"
    "  chaos:        t,l1_sq_mean,l1_sq_se,entropic_mean,entropic_se,infinite_count\n"
    "Exit codes: 0 ok, 2 validation error, 3 numerical failure, 4 oracle mismatch.\n"
    "EXK_THREADS caps ensemble parallelism.";

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"money-exchange dynamics: exact agent simulation, mean-field "
               "ODE, entropy diagnostics"};
  app.set_version_flag("--version", std::string(kVersionString));
  app.footer(kSchemas);
  app.require_subcommand(1);

  OdeOpts ode;
  CLI::App* c_ode = app.add_subcommand(
      "ode", "integrate the mean-field equation and export trajectory, "
             "diagnostics, snapshots, and an optional SVG plot");
  add_config(c_ode);
  c_ode->add_option("--mu", ode.mu, "mean dollars per agent")->capture_default_str();
  c_ode->add_option("--init", ode.init, "initial law: dirac | two-point | geom | file")
      ->check(CLI::IsMember({"dirac", "two-point", "geom", "file"}))
      ->capture_default_str();
  c_ode->add_option("--dirac-at", ode.dirac_at,
                    "level of the dirac initial mass (default: mu)");
  c_ode->add_option("--init-file", ode.init_file,
                    "file with one p_n per line (for --init file)");
  c_ode->add_option("--n-max", ode.n_max, "truncation level")->capture_default_str();
  c_ode->add_option("--dt", ode.dt, "integrator step")->capture_default_str();
  c_ode->add_option("--t-final", ode.t_final, "end time")->capture_default_str();
  c_ode->add_option("--sample-dt", ode.sample_dt, "sampling interval")
      ->capture_default_str();
  c_ode->add_option("--lambda", ode.lambda, "exchange rate")->capture_default_str();
  c_ode->add_option("--K", ode.K, "exponential moment base in diagnostics")
      ->capture_default_str();
  c_ode->add_option("--n-trunc", ode.n_trunc,
                    "interpolation split level (0: 5 ceil|log 1/D| per row)");
  c_ode->add_option("--out", ode.out, "trajectory CSV path")->capture_default_str();
  c_ode->add_option("--diagnostics", ode.diagnostics, "diagnostics CSV path")
      ->capture_default_str();
  c_ode->add_option("--snapshots", ode.snapshots, "sparse snapshot CSV path");
  c_ode->add_option("--plot", ode.plot, "SVG plot of log H against sqrt(t)");

  SimOpts sim;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "run one agent simulation and export empirical snapshots");
  add_config(c_sim);
  c_sim->add_option("--agents", sim.agents, "number of agents")->capture_default_str();
  c_sim->add_option("--mu", sim.mu, "mean dollars per agent")->capture_default_str();
  c_sim->add_option("--lambda", sim.lambda, "exchange rate")->capture_default_str();
  c_sim->add_option("--t-final", sim.t_final, "end time")->capture_default_str();
  c_sim->add_option("--snapshot-dt", sim.snapshot_dt,
                    "snapshot interval (0: final state only)");
  c_sim->add_option("--init", sim.init, "equal | rich | file")
      ->check(CLI::IsMember({"equal", "rich", "file"}))
      ->capture_default_str();
  c_sim->add_option("--init-file", sim.init_file,
                    "file with one dollar count per agent (for --init file)");
  c_sim->add_option("--seed", sim.seed, "RNG seed")->capture_default_str();
  c_sim->add_option("--out", sim.out, "snapshot CSV path")->capture_default_str();
  c_sim->add_option("--events", sim.events, "event log CSV path (audit)");

  ChaosOpts chaos;
  CLI::App* c_chaos = app.add_subcommand(
      "chaos", "ensemble-vs-limit distance curves for a list of system sizes");
  add_config(c_chaos);
  c_chaos->add_option("--agents-list", chaos.agents_list, "system sizes")
      ->delimiter(',')
      ->capture_default_str();
  c_chaos->add_option("--mu", chaos.mu, "mean dollars per agent")->capture_default_str();
  c_chaos->add_option("--lambda", chaos.lambda, "exchange rate")->capture_default_str();
  c_chaos->add_option("--runs", chaos.runs, "ensemble size per N")->capture_default_str();
  c_chaos->add_option("--t-final", chaos.t_final, "end time")->capture_default_str();
  c_chaos->add_option("--sample-dt", chaos.sample_dt,
                      "snapshot interval (0: endpoints only)");
  c_chaos->add_option("--seed", chaos.seed, "base RNG seed")->capture_default_str();
  c_chaos->add_option("--reference", chaos.reference,
                      "limit law: ode (mean-field trajectory) | equilibrium")
      ->check(CLI::IsMember({"ode", "equilibrium"}))
      ->capture_default_str();
  c_chaos->add_option("--n-max", chaos.n_max, "ODE truncation level")
      ->capture_default_str();
  c_chaos->add_option("--dt", chaos.dt, "ODE integrator step")->capture_default_str();
  c_chaos->add_option("--out-prefix", chaos.out_prefix, "output path prefix")
      ->capture_default_str();
  c_chaos->add_option("--tail-r0", chaos.tail_r0,
                      "also write P(1 - q_0 >= r0) curves for this r0");
  c_chaos->add_option("--moment-K", chaos.moment_K,
                      "also write mean sum K^n q_n curves for this K");

  FitOpts fit;
  CLI::App* c_fit = app.add_subcommand(
      "fit", "least squares of log H against sqrt(t) on a trajectory CSV");
  add_config(c_fit);
  c_fit->add_option("--input", fit.input, "trajectory CSV")->required();
  c_fit->add_option("--t-min", fit.t_min, "window start (default t_final/10)");
  c_fit->add_option("--t-max", fit.t_max, "window end (default t_final)");
  c_fit->add_option("--out", fit.out, "JSON output path (default: stdout)");

  OracleOpts oracle;
  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "validate the simulator against the exact small-N chain");
  add_config(c_oracle);
  c_oracle->add_option("--agents", oracle.agents, "number of agents")
      ->capture_default_str();
  c_oracle->add_option("--mu", oracle.mu, "mean dollars per agent")
      ->capture_default_str();
  c_oracle->add_option("--lambda", oracle.lambda, "exchange rate")
      ->capture_default_str();
  c_oracle->add_option("--t", oracle.t, "comparison time")->capture_default_str();
  c_oracle->add_option("--runs", oracle.runs, "number of simulations")
      ->capture_default_str();
  c_oracle->add_option("--seed", oracle.seed, "base RNG seed")->capture_default_str();

  AnalyzeOpts analyze;
  CLI::App* c_analyze = app.add_subcommand(
      "analyze", "entropy diagnostics over an existing snapshot CSV");
  add_config(c_analyze);
  c_analyze->add_option("--input", analyze.input, "snapshot CSV (t,n,p_n)")
      ->required();
  c_analyze->add_option("--mu", analyze.mu, "mean dollars per agent")
      ->capture_default_str();
  c_analyze->add_option("--K", analyze.K, "exponential moment base")
      ->capture_default_str();
  c_analyze->add_option("--n-trunc", analyze.n_trunc,
                        "interpolation split level (0: per-row heuristic)");
  c_analyze->add_option("--zero-floor", analyze.zero_floor,
                        "entries at or below this count as empty levels")
      ->capture_default_str();
  c_analyze->add_option("--out", analyze.out, "diagnostics CSV path")
      ->capture_default_str();

  int rc = kExitOk;
  c_ode->callback([&] { rc = run_ode(ode); });
  c_sim->callback([&] { rc = run_simulate(sim); });
  c_chaos->callback([&] { rc = run_chaos(chaos); });
  c_fit->callback([&] { rc = run_fit(fit); });
  c_oracle->callback([&] { rc = run_oracle(oracle); });
  c_analyze->callback([&] { rc = run_analyze(analyze); });

  try {
    std::vector<std::string> args = with_config_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return rc;
}
