#include "exk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace exk {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- writers --------------------------------------------------------------

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,H,D,r_bar,mass_defect,mean_defect\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    os << fmt17(traj.times[i]) << ',' << fmt17(traj.entropy_h[i]) << ','
       << fmt17(traj.dissipation_d[i]) << ',' << fmt17(traj.r_bar[i]) << ','
       << fmt17(traj.mass_defect[i]) << ',' << fmt17(traj.mean_defect[i])
       << '\n';
}

void write_snapshots_csv(std::ostream& os, const std::vector<double>& times,
                         const std::vector<ProbabilityVector>& snapshots) {
  os << "t,n,p_n\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const ProbabilityVector& p = snapshots[i];
    for (int n = 0; n <= p.n_max(); ++n)
      if (p[n] > 1e-300)
        os << fmt17(times[i]) << ',' << n << ',' << fmt17(p[n]) << '\n';
  }
}

void write_snapshots_csv(std::ostream& os, const Trajectory& traj) {
  write_snapshots_csv(os, traj.times, traj.snapshots);
}

void write_diagnostics_csv(std::ostream& os,
                           const std::vector<DiagnosticsRow>& rows) {
  os << "t,H,D,pillar_ratio,thm1_ratio,thm2_ratio,exp_moment,B1,B2,H_int\n";
  for (const DiagnosticsRow& r : rows)
    os << fmt17(r.t) << ',' << fmt17(r.h) << ',' << fmt17(r.d) << ','
       << fmt17(r.pillar_ratio) << ',' << fmt17(r.thm1_ratio) << ','
       << fmt17(r.thm2_ratio) << ',' << fmt17(r.exp_moment) << ','
       << fmt17(r.b1) << ',' << fmt17(r.b2) << ',' << fmt17(r.h_int) << '\n';
}

void write_sim_snapshots_csv(std::ostream& os,
                             const std::vector<SimSnapshot>& snaps) {
  os << "t,n,count,q_n\n";
  for (const SimSnapshot& s : snaps)
    for (auto& [n, c] : s.q.counts())
      os << fmt17(s.t) << ',' << n << ',' << c << ','
         << fmt17(double(c) / s.q.n_agents()) << '\n';
}

void write_events_csv(std::ostream& os, const std::vector<Event>& events) {
  os << "time,giver,receiver\n";
  for (const Event& e : events)
    os << fmt17(e.time) << ',' << e.giver << ',' << e.receiver << '\n';
}

void write_chaos_csv(std::ostream& os, const ChaosReport& rep) {
  os << "t,l1_sq_mean,l1_sq_se,entropic_mean,entropic_se,infinite_count\n";
  for (std::size_t t = 0; t < rep.times.size(); ++t)
    os << fmt17(rep.times[t]) << ',' << fmt17(rep.l1_sq_mean[t]) << ','
       << fmt17(rep.l1_sq_se[t]) << ',' << fmt17(rep.entropic_mean[t]) << ','
       << fmt17(rep.entropic_se[t]) << ',' << rep.infinite_count[t] << '\n';
}

std::string chaos_json(const ChaosReport& rep, const EnsembleConfig& cfg) {
  nlohmann::json j;
  j["version"] = kVersionString;
  j["n_agents"] = cfg.params.n_agents;
  j["mu"] = cfg.params.mu;
  j["lambda"] = cfg.params.lambda;
  j["runs"] = rep.runs;
  j["base_seed"] = cfg.base_seed;
  j["times"] = rep.times;
  j["l1_sq_mean"] = rep.l1_sq_mean;
  j["l1_sq_se"] = rep.l1_sq_se;
  j["entropic_mean"] = rep.entropic_mean;
  j["entropic_se"] = rep.entropic_se;
  j["infinite_count"] = rep.infinite_count;
  return j.dump(2) + "\n";
}

std::string fit_json(const DecayFit& fit, const std::string& input) {
  nlohmann::json j;
  j["version"] = kVersionString;
  j["input"] = input;
  j["c1"] = fit.c1;
  j["c2"] = fit.c2;
  j["r_squared"] = fit.r_squared;
  j["n_points"] = fit.n_points;
  j["t_min"] = fit.t_min;
  j["t_max"] = fit.t_max;
  return j.dump(2) + "\n";
}

// ---- readers --------------------------------------------------------------

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_number(const std::string& s, int line_no) {
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw validation_error(Errc::invalid_argument,
                           "bad number '" + s + "' on line " +
                               std::to_string(line_no));
  return v;
}

// strips a trailing carriage return so files written on other platforms parse
bool next_line(std::istream& is, std::string& line) {
  if (!std::getline(is, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

void expect_header(std::istream& is, const std::string& want) {
  std::string line;
  if (!next_line(is, line) || line != want)
    throw validation_error(Errc::invalid_argument,
                           "expected header '" + want + "', got '" + line + "'");
}

} // namespace

TrajectoryTable read_trajectory_csv(std::istream& is) {
  expect_header(is, "t,H,D,r_bar,mass_defect,mean_defect");
  TrajectoryTable tbl;
  std::string line;
  int line_no = 1;
  while (next_line(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv(line);
    if (f.size() != 6)
      throw validation_error(Errc::invalid_argument,
                             "expected 6 fields on line " + std::to_string(line_no));
    tbl.t.push_back(parse_number(f[0], line_no));
    tbl.h.push_back(parse_number(f[1], line_no));
    tbl.d.push_back(parse_number(f[2], line_no));
    tbl.r_bar.push_back(parse_number(f[3], line_no));
    tbl.mass_defect.push_back(parse_number(f[4], line_no));
    tbl.mean_defect.push_back(parse_number(f[5], line_no));
  }
  return tbl;
}

SnapshotTable read_snapshots_csv(std::istream& is) {
  expect_header(is, "t,n,p_n");
  struct Group {
    double t;
    std::vector<std::pair<int, double>> entries;
  };
  std::vector<Group> groups;
  std::string line;
  int line_no = 1;
  while (next_line(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f = split_csv(line);
    if (f.size() != 3)
      throw validation_error(Errc::invalid_argument,
                             "expected 3 fields on line " + std::to_string(line_no));
    double t = parse_number(f[0], line_no);
    double n = parse_number(f[1], line_no);
    double p = parse_number(f[2], line_no);
    if (n < 0 || n != std::floor(n))
      throw validation_error(Errc::invalid_argument,
                             "bad level on line " + std::to_string(line_no));
    if (groups.empty() || groups.back().t != t) groups.push_back({t, {}});
    groups.back().entries.push_back({int(n), p});
  }
  SnapshotTable tbl;
  for (Group& g : groups) {
    int top = 0;
    for (auto& [n, p] : g.entries) top = std::max(top, n);
    std::vector<double> dense((std::size_t)top + 1, 0.0);
    for (auto& [n, p] : g.entries) dense[(std::size_t)n] = p;
    tbl.times.push_back(g.t);
    tbl.snapshots.push_back(ProbabilityVector::raw(std::move(dense)));
  }
  return tbl;
}

// ---- plotting -------------------------------------------------------------

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::string fmt2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string fmt_tick(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

} // namespace

void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotSeries>& series) {
  const double width = 860, height = 540;
  const double ml = 75, mr = 25, mt = 45, mb = 55;
  const double pw = width - ml - mr, ph = height - mt - mb;

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool any = false;
  for (const PlotSeries& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!any) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        any = true;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  if (!any) {
    xmin = ymin = 0;
    xmax = ymax = 1;
  }
  if (xmax == xmin) {
    xmin -= 1;
    xmax += 1;
  }
  if (ymax == ymin) {
    ymin -= 1;
    ymax += 1;
  }

  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return mt + (1.0 - (y - ymin) / (ymax - ymin)) * ph; };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                  "#9467bd", "#ff7f0e", "#8c564b"};
  const int n_colors = 6;

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
     << height << "\">\n"
     << "<rect width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n";

  // grid and ticks
  const int n_ticks = 5;
  for (int k = 0; k <= n_ticks; ++k) {
    double fx = xmin + (xmax - xmin) * k / n_ticks;
    double fy = ymin + (ymax - ymin) * k / n_ticks;
    double gx = sx(fx), gy = sy(fy);
    os << "<line x1=\"" << fmt2(gx) << "\" y1=\"" << fmt2(mt) << "\" x2=\""
       << fmt2(gx) << "\" y2=\"" << fmt2(mt + ph)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt2(ml) << "\" y1=\"" << fmt2(gy) << "\" x2=\""
       << fmt2(ml + pw) << "\" y2=\"" << fmt2(gy)
       << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << fmt2(gx) << "\" y=\"" << fmt2(mt + ph + 18)
       << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
       << fmt_tick(fx) << "</text>\n";
    os << "<text x=\"" << fmt2(ml - 8) << "\" y=\"" << fmt2(gy + 4)
       << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
       << fmt_tick(fy) << "</text>\n";
  }

  // frame
  os << "<rect x=\"" << fmt2(ml) << "\" y=\"" << fmt2(mt) << "\" width=\""
     << fmt2(pw) << "\" height=\"" << fmt2(ph)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // series
  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = palette[si % n_colors];
    std::string points;
    std::size_t n_pts = std::min(s.x.size(), s.y.size());
    for (std::size_t i = 0; i < n_pts; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      points += fmt2(sx(s.x[i]));
      points += ',';
      points += fmt2(sy(s.y[i]));
      points += ' ';
    }
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";
    if (n_pts <= 400)
      for (std::size_t i = 0; i < n_pts; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        os << "<circle cx=\"" << fmt2(sx(s.x[i])) << "\" cy=\""
           << fmt2(sy(s.y[i])) << "\" r=\"2\" fill=\"" << color << "\"/>\n";
      }
  }

  // legend
  if (series.size() > 1) {
    double lx = ml + pw - 160, ly = mt + 14;
    for (std::size_t si = 0; si < series.size(); ++si) {
      const char* color = palette[si % n_colors];
      os << "<line x1=\"" << fmt2(lx) << "\" y1=\"" << fmt2(ly - 4)
         << "\" x2=\"" << fmt2(lx + 24) << "\" y2=\"" << fmt2(ly - 4)
         << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
         << "<text x=\"" << fmt2(lx + 30) << "\" y=\"" << fmt2(ly)
         << "\" font-size=\"12\" font-family=\"sans-serif\">"
         << xml_escape(series[si].label) << "</text>\n";
      ly += 18;
    }
  }

  // labels
  os << "<text x=\"" << fmt2(width / 2) << "\" y=\"24\" font-size=\"16\" "
        "text-anchor=\"middle\" font-family=\"sans-serif\">"
     << xml_escape(title) << "</text>\n";
  os << "<text x=\"" << fmt2(ml + pw / 2) << "\" y=\"" << fmt2(height - 14)
     << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\">"
     << xml_escape(x_label) << "</text>\n";
  os << "<text x=\"20\" y=\"" << fmt2(mt + ph / 2)
     << "\" font-size=\"13\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "transform=\"rotate(-90 20 "
     << fmt2(mt + ph / 2) << ")\">" << xml_escape(y_label) << "</text>\n";
  os << "</svg>\n";
}

} // namespace exk
