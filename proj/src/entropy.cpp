#include "exk/entropy.hpp"

#include <cmath>
#include <limits>

namespace exk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Kahan {
  double sum = 0, c = 0;
  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

} // namespace

double entropy(const std::vector<double>& p) {
  Kahan s;
  for (double x : p)
    if (x > 0) s.add(x * std::log(x));
  return s.sum;
}

double kl_divergence(const std::vector<double>& a, const std::vector<double>& b) {
  Kahan s;
  std::size_t common = std::min(a.size(), b.size());
  for (std::size_t n = 0; n < common; ++n) {
    if (a[n] > 0) {
      if (b[n] <= 0) return kInf;
      s.add(a[n] * std::log(a[n] / b[n]));
    }
  }
  for (std::size_t n = common; n < a.size(); ++n)
    if (a[n] > 0) return kInf; // mass where b has no support
  return s.sum;
}

ProbabilityVector tilde_of(const ProbabilityVector& p) {
  const std::vector<double>& v = p.data();
  double r = 1.0 - v[0];
  std::vector<double> t(v.size());
  t[0] = v[0];
  for (std::size_t n = 1; n < v.size(); ++n) t[n] = r * v[n - 1];
  return ProbabilityVector::raw(std::move(t));
}

double dissipation(const std::vector<double>& p, double zero_floor) {
  double r = 1.0 - p[0];
  Kahan s;
  for (std::size_t n = 0; n + 1 < p.size(); ++n) {
    double a = r * p[n];       // tilde_{n+1}
    double b = p[n + 1];
    bool az = a <= zero_floor, bz = b <= zero_floor;
    if (az && bz) continue;
    if (az || bz) {
      // Below a positive floor sits underflow debris, not support: a front
      // pair straddling the floor must not report a spurious infinity.  The
      // dropped term is O(floor * |log floor|).  With floor = 0 a one-sided
      // pair is a genuine support mismatch.
      if (zero_floor > 0) continue;
      return kInf;
    }
    s.add((a - b) * (std::log(a) - std::log(b)));
  }
  return s.sum;
}

double truncated_log(double x) {
  if (!(x >= 0)) return std::numeric_limits<double>::quiet_NaN();
  if (x == 0) return -2.0;
  double l = std::log(x);
  if (l < -2.0) return -2.0;
  if (l > 2.0) return 2.0;
  return l;
}

double modified_dissipation(const std::vector<double>& a, double shift) {
  if (shift < 0)
    throw validation_error(Errc::invalid_argument, "shift must be >= 0");
  // rich fraction of the unshifted sequence
  Kahan rk;
  for (std::size_t n = 1; n < a.size(); ++n)
    if (a[n] > 0) rk.add(a[n] - shift);
  double r = rk.sum;
  if (r <= 0) return 0.0;
  Kahan s;
  for (std::size_t n = 0; n + 1 < a.size(); ++n) {
    double x = r * a[n];
    double y = a[n + 1];
    if (x == 0 && y == 0) continue;
    if (y == 0) {
      s.add(2.0 * x); // (x - 0) L(inf)
    } else if (x == 0) {
      s.add(2.0 * y); // (0 - y) L(0)
    } else {
      s.add((x - y) * truncated_log(x / y));
    }
  }
  return s.sum;
}

ExpMoment exp_moment(const std::vector<double>& p, double K) {
  if (!(K >= 1.0))
    throw validation_error(Errc::invalid_argument, "K must be >= 1");
  Kahan total, tail;
  std::size_t decile = p.size() - p.size() / 10;
  double w = 1.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    double term = p[n] == 0 ? 0.0 : w * p[n]; // avoid inf*0 once w overflows
    total.add(term);
    if (n >= decile) tail.add(term);
    w *= K;
  }
  ExpMoment m;
  m.value = total.sum;
  m.tail_dominated = tail.sum > 0.01 * total.sum;
  return m;
}

double exp_moment(const EmpiricalMeasure& q, double K) {
  if (!(K >= 1.0))
    throw validation_error(Errc::invalid_argument, "K must be >= 1");
  double logK = std::log(K);
  // overflow guard: accumulate in log space when K^n can overflow
  bool log_space = !q.counts().empty() &&
                   double(q.max_level()) * logK > 690.0;
  if (!log_space) {
    Kahan s;
    for (auto& [level, c] : q.counts())
      s.add(std::pow(K, double(level)) * (double(c) / q.n_agents()));
    return s.sum;
  }
  // log-sum-exp over occupied levels
  double m = -kInf;
  for (auto& [level, c] : q.counts()) {
    double lt = double(level) * logK + std::log(double(c) / q.n_agents());
    if (lt > m) m = lt;
  }
  Kahan s;
  for (auto& [level, c] : q.counts()) {
    double lt = double(level) * logK + std::log(double(c) / q.n_agents());
    s.add(std::exp(lt - m));
  }
  return std::exp(m + std::log(s.sum));
}

PillarRatio pillar_ratio(const ProbabilityVector& p, int mu, double zero_floor) {
  PillarRatio out;
  double r_star = double(mu) / (mu + 1.0);
  out.lhs = std::fabs((1.0 - p[0]) - r_star);
  double d = dissipation(p, zero_floor);
  out.sqrt_d = std::sqrt(d);
  if (d == 0)
    out.ratio = out.lhs == 0 ? 0.0 : kInf;
  else if (std::isinf(d))
    out.ratio = 0.0;
  else
    out.ratio = out.lhs / out.sqrt_d;
  return out;
}

EedRatios eed_ratios(double H, double D) {
  if (!(H >= 0) || !(D >= 0))
    throw validation_error(Errc::invalid_argument, "need H >= 0 and D >= 0");
  EedRatios r;
  if (D == 0) {
    r.thm1 = r.thm2 = H == 0 ? 0.0 : kInf;
    return r;
  }
  if (std::isinf(D)) {
    r.thm1 = r.thm2 = 0.0;
    return r;
  }
  double lg = std::max(1.0, std::fabs(std::log(1.0 / D)));
  r.thm1 = H / (std::sqrt(D) * lg);
  r.thm2 = H / (D * lg);
  return r;
}

long long find_equilibration_index(const std::vector<double>& r_bars, int mu,
                                   double K) {
  if (!(K >= 1.0))
    throw validation_error(Errc::invalid_argument, "K must be >= 1");
  double r_star = double(mu) / (mu + 1.0);
  double thr = (1.0 + K) / 2.0;
  for (std::size_t i = 0; i < r_bars.size(); ++i) {
    double rb = r_bars[i];
    if (rb > 0 && r_star / rb <= thr && rb / r_star <= thr)
      return (long long)i;
  }
  return -1;
}

} // namespace exk
