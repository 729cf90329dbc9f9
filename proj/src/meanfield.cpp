#include "exk/meanfield.hpp"

#include <cmath>
#include <cstdio>

#include "exk/entropy.hpp"

namespace exk {

namespace {

constexpr double kClampTol = 1e-12;
constexpr double kHaltMassDefect = 1e-6;

bool near_integer_multiple(double a, double b, long long& k) {
  k = (long long)std::llround(a / b);
  return std::fabs(a - double(k) * b) <= 1e-9 * std::max(1.0, std::fabs(a));
}

double kahan_mass(const std::vector<double>& p) {
  double s = 0, c = 0;
  for (double x : p) {
    double y = x - c, t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double kahan_mean(const std::vector<double>& p) {
  double s = 0, c = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    double y = double(n) * p[n] - c, t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

} // namespace

void OdeConfig::validate() const {
  if (n_max < 1)
    throw validation_error(Errc::invalid_argument, "n_max must be >= 1");
  if (!(dt > 0))
    throw validation_error(Errc::invalid_argument, "dt must be > 0");
  if (!(t_final >= 0))
    throw validation_error(Errc::invalid_argument, "t_final must be >= 0");
  if (!(sample_dt > 0))
    throw validation_error(Errc::invalid_argument, "sample_dt must be > 0");
  if (!(lambda > 0))
    throw validation_error(Errc::invalid_argument, "lambda must be > 0");
  long long k;
  if (!near_integer_multiple(sample_dt, dt, k) || k < 1)
    throw validation_error(Errc::time_mismatch,
                           "sample_dt must be an integer multiple of dt");
  if (!near_integer_multiple(t_final, sample_dt, k))
    throw validation_error(Errc::time_mismatch,
                           "t_final must be an integer multiple of sample_dt");
}

std::vector<double> ode_rhs(const std::vector<double>& p, double lambda) {
  std::size_t sz = p.size();
  std::size_t top = sz - 1;
  std::vector<double> out(sz);
  double r = 1.0 - p[0];      // receive rate: fraction of rich givers
  double g = 1.0 - p[top];    // give flux survives unless the receiver is capped
  for (std::size_t n = 0; n < sz; ++n) {
    double v = 0;
    if (n < top) v += g * p[n + 1] - r * p[n];
    if (n >= 1) v += r * p[n - 1] - g * p[n];
    out[n] = lambda * v;
  }
  return out;
}

ProbabilityVector rk4_step(const ProbabilityVector& p, double dt, double lambda,
                           double* clamped_mass) {
  if (!(dt > 0))
    throw validation_error(Errc::invalid_argument, "dt must be > 0");
  const std::vector<double>& y = p.data();
  std::size_t sz = y.size();

  std::vector<double> k1 = ode_rhs(y, lambda);
  std::vector<double> tmp(sz);
  for (std::size_t n = 0; n < sz; ++n) tmp[n] = y[n] + 0.5 * dt * k1[n];
  std::vector<double> k2 = ode_rhs(tmp, lambda);
  for (std::size_t n = 0; n < sz; ++n) tmp[n] = y[n] + 0.5 * dt * k2[n];
  std::vector<double> k3 = ode_rhs(tmp, lambda);
  for (std::size_t n = 0; n < sz; ++n) tmp[n] = y[n] + dt * k3[n];
  std::vector<double> k4 = ode_rhs(tmp, lambda);

  std::vector<double> out(sz);
  double clamped = 0;
  for (std::size_t n = 0; n < sz; ++n) {
    double v = y[n] + dt / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
    if (v < 0) {
      if (v < -kClampTol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "entry %zu = %.3e below -1e-12 after step",
                      n, v);
        throw numerical_error(Errc::negative_probability, buf);
      }
      clamped += -v;
      v = 0;
    }
    out[n] = v;
  }
  if (clamped_mass) *clamped_mass += clamped;
  return ProbabilityVector::raw(std::move(out));
}

ProbabilityVector init_dirac(int k, int n_max) {
  if (n_max < 1)
    throw validation_error(Errc::invalid_argument, "n_max must be >= 1");
  if (k < 0 || k > n_max)
    throw validation_error(Errc::invalid_argument, "dirac level outside 0..n_max");
  std::vector<double> p((std::size_t)n_max + 1, 0.0);
  p[(std::size_t)k] = 1.0;
  return ProbabilityVector(std::move(p));
}

ProbabilityVector init_two_point(int n_max, int mu) {
  if (n_max < 1)
    throw validation_error(Errc::invalid_argument, "n_max must be >= 1");
  if (mu < 0 || mu > n_max)
    throw validation_error(Errc::invalid_argument, "need 0 <= mu <= n_max");
  std::vector<double> p((std::size_t)n_max + 1, 0.0);
  double w = double(mu) / n_max;
  p[0] = 1.0 - w;
  p[(std::size_t)n_max] = w;
  return ProbabilityVector(std::move(p));
}

std::size_t Trajectory::index_at(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::fabs(times[i] - t) <= 1e-9 * std::max(1.0, std::fabs(t))) return i;
  throw validation_error(Errc::time_mismatch,
                         "no trajectory sample at requested time");
}

Trajectory integrate(const ProbabilityVector& p0, int mu, const OdeConfig& cfg) {
  cfg.validate();
  if (p0.n_max() != cfg.n_max)
    throw validation_error(Errc::invalid_argument,
                           "initial datum length disagrees with n_max");
  if (mu < 0)
    throw validation_error(Errc::invalid_argument, "mu must be >= 0");

  long long steps_per_sample, n_samples;
  near_integer_multiple(cfg.sample_dt, cfg.dt, steps_per_sample);
  near_integer_multiple(cfg.t_final, cfg.sample_dt, n_samples);

  ProbabilityVector p_star = geometric_equilibrium(mu, cfg.n_max);

  Trajectory traj;
  traj.mu = mu;
  traj.config = cfg;

  ProbabilityVector p = p0;
  auto record = [&](double t) {
    ProbabilityVector hat = p.renormalized();
    traj.times.push_back(t);
    traj.entropy_h.push_back(kl_divergence(hat, p_star));
    traj.dissipation_d.push_back(dissipation(hat, kTrajectoryZeroFloor));
    traj.r_bar.push_back(1.0 - hat[0]);
    traj.mass_defect.push_back(std::fabs(kahan_mass(p.data()) - 1.0));
    traj.mean_defect.push_back(std::fabs(kahan_mean(p.data()) - double(mu)));
    traj.snapshots.push_back(p);
  };

  record(0.0);
  for (long long s = 1; s <= n_samples; ++s) {
    for (long long j = 0; j < steps_per_sample; ++j)
      p = rk4_step(p, cfg.dt, cfg.lambda, &traj.clamped_mass);
    double defect = std::fabs(kahan_mass(p.data()) - 1.0);
    if (defect > kHaltMassDefect) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "mass defect %.3e at t=%.6g exceeds 1e-6",
                    defect, double(s) * cfg.sample_dt);
      throw numerical_error(Errc::mass_leak, buf);
    }
    record(double(s) * cfg.sample_dt);
  }
  return traj;
}

} // namespace exk
