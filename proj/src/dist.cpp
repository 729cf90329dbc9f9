#include "exk/dist.hpp"

#include <cmath>
#include <cstdio>

namespace exk {

namespace {

// Kahan compensated accumulator
struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

} // namespace

void ModelParams::validate() const {
  if (n_agents < 2)
    throw validation_error(Errc::invalid_argument, "n_agents must be >= 2");
  if (mu < 0)
    throw validation_error(Errc::invalid_argument, "mu must be >= 0");
  if (!(lambda > 0))
    throw validation_error(Errc::invalid_argument, "lambda must be > 0");
}

ProbabilityVector::ProbabilityVector(std::vector<double> p, double mass_tol)
    : v_(std::move(p)) {
  if (v_.empty())
    throw validation_error(Errc::invalid_argument, "empty probability vector");
  Kahan mass;
  for (std::size_t n = 0; n < v_.size(); ++n) {
    if (!(v_[n] >= 0))
      throw validation_error(Errc::negative_probability,
                             "negative entry at level " + std::to_string(n));
    mass.add(v_[n]);
  }
  if (std::fabs(mass.sum - 1.0) > mass_tol)
    throw validation_error(Errc::invalid_argument,
                           "mass " + fmt("%.17g", mass.sum) + " not within " +
                               fmt("%g", mass_tol) + " of 1");
}

ProbabilityVector ProbabilityVector::raw(std::vector<double> p) {
  if (p.empty())
    throw validation_error(Errc::invalid_argument, "empty probability vector");
  for (std::size_t n = 0; n < p.size(); ++n)
    if (!(p[n] >= 0))
      throw validation_error(Errc::negative_probability,
                             "negative entry at level " + std::to_string(n));
  return ProbabilityVector(RawTag{}, std::move(p));
}

ProbabilityVector ProbabilityVector::renormalized() const {
  Kahan mass;
  for (double x : v_) mass.add(x);
  if (!(mass.sum > 0))
    throw numerical_error(Errc::degenerate_weights, "cannot renormalize zero mass");
  std::vector<double> out(v_);
  for (double& x : out) x /= mass.sum;
  return ProbabilityVector(RawTag{}, std::move(out));
}

Moments moments(const std::vector<double>& p) {
  Kahan mass, mean;
  for (std::size_t n = 0; n < p.size(); ++n) {
    mass.add(p[n]);
    mean.add(double(n) * p[n]);
  }
  Moments m;
  m.mass = mass.sum;
  m.mean = mean.sum;
  m.r_bar = p.empty() ? 0.0 : mass.sum - p[0];
  return m;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  Kahan s;
  std::size_t common = std::min(a.size(), b.size());
  for (std::size_t n = 0; n < common; ++n) s.add(std::fabs(a[n] - b[n]));
  for (std::size_t n = common; n < a.size(); ++n) s.add(std::fabs(a[n]));
  for (std::size_t n = common; n < b.size(); ++n) s.add(std::fabs(b[n]));
  return s.sum;
}

ProbabilityVector geometric_equilibrium(int mu, int n_max) {
  if (mu < 0)
    throw validation_error(Errc::invalid_argument, "mu must be >= 0");
  if (n_max < 0)
    throw validation_error(Errc::invalid_argument, "n_max must be >= 0");
  double r = double(mu) / (mu + 1.0);
  double tail = std::pow(r, double(n_max) + 1.0);
  if (!(tail < 1e-12))
    throw validation_error(Errc::tail_too_heavy,
                           "geometric tail beyond n_max holds mass " +
                               fmt("%.3g", tail) + " (needs < 1e-12)");
  std::vector<double> p((std::size_t)n_max + 1);
  double p0 = 1.0 / (mu + 1.0);
  double v = p0;
  Kahan mass;
  for (int n = 0; n <= n_max; ++n) {
    p[(std::size_t)n] = v;
    mass.add(v);
    v *= r;
  }
  for (double& x : p) x /= mass.sum;
  return ProbabilityVector(std::move(p));
}

EmpiricalMeasure::EmpiricalMeasure(std::map<int, int> counts, int n_agents)
    : counts_(std::move(counts)), n_agents_(n_agents) {
  if (n_agents <= 0)
    throw validation_error(Errc::invalid_argument, "n_agents must be > 0");
  long long sum = 0;
  for (auto& [level, c] : counts_) {
    if (level < 0 || c < 0)
      throw validation_error(Errc::invalid_argument, "negative level or count");
    sum += c;
  }
  if (sum != n_agents)
    throw validation_error(Errc::invalid_argument,
                           "counts sum to " + std::to_string(sum) + ", expected " +
                               std::to_string(n_agents));
}

EmpiricalMeasure EmpiricalMeasure::from_dollars(const std::vector<int>& dollars) {
  std::map<int, int> counts;
  for (int s : dollars) ++counts[s];
  return EmpiricalMeasure(std::move(counts), int(dollars.size()));
}

int EmpiricalMeasure::count(int level) const {
  auto it = counts_.find(level);
  return it == counts_.end() ? 0 : it->second;
}

double EmpiricalMeasure::mean() const {
  long long s = 0;
  for (auto& [level, c] : counts_) s += (long long)level * c;
  return double(s) / n_agents_;
}

ProbabilityVector EmpiricalMeasure::to_dense(int n_max) const {
  if (!counts_.empty() && counts_.rbegin()->first > n_max)
    throw validation_error(Errc::level_overflow,
                           "occupied level " + std::to_string(counts_.rbegin()->first) +
                               " exceeds n_max " + std::to_string(n_max));
  std::vector<double> p((std::size_t)n_max + 1, 0.0);
  for (auto& [level, c] : counts_)
    p[(std::size_t)level] = double(c) / n_agents_;
  return ProbabilityVector(std::move(p));
}

} // namespace exk
