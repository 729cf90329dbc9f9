#include "exk/interpolation.hpp"

#include <cmath>
#include <limits>

namespace exk {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double psi(double x) {
  double a = std::fabs(x);
  return a * std::log1p(a);
}

double psi_inverse(double y) {
  if (!(y >= 0))
    throw validation_error(Errc::invalid_argument, "psi_inverse needs y >= 0");
  if (y == 0) return 0.0;
  if (std::isinf(y)) return kInf;
  // solve u + log(log1p(e^u)) = log y by bisection in u = log x
  double ly = std::log(y);
  auto h = [](double u) {
    // log psi(e^u), stable for very negative u where log1p(e^u) ~ e^u
    double eu = std::exp(u);
    double inner = u < -30.0 ? u : std::log(std::log1p(eu));
    return u + inner;
  };
  double lo = ly / 2.0 - 5.0, hi = std::max(ly + 5.0, 5.0);
  while (h(lo) > ly) lo -= 50.0;
  while (h(hi) < ly) hi += 50.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (h(mid) < ly ? lo : hi) = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

InterpolationReport interpolated_equilibrium(const ProbabilityVector& p, int mu,
                                             int n_trunc) {
  int nm = p.n_max();
  if (n_trunc < 1 || n_trunc >= nm)
    throw validation_error(Errc::invalid_argument, "need 1 <= n_trunc < n_max");
  if (mu < 1)
    throw validation_error(Errc::invalid_argument,
                           "interpolation needs a non-degenerate equilibrium (mu >= 1)");
  double p0 = p[0], r = 1.0 - p0;
  if (!(p0 > 0) || !(r > 0))
    throw validation_error(Errc::degenerate_weights,
                           "interpolation needs 0 < p_0 < 1");
  // positivity on the contiguous support prefix
  int last = nm;
  while (last > 0 && p[last] == 0) --last;
  for (int n = 0; n <= last; ++n)
    if (!(p[n] > 0))
      throw validation_error(Errc::positivity_required,
                             "interior zero at level " + std::to_string(n));

  // equilibrium evaluated pointwise (no truncation, no renormalisation):
  // the construction compares against the infinite-range law, and the
  // supplied p is often a short support prefix
  double r_star = double(mu) / (mu + 1.0);
  std::vector<double> p_star((std::size_t)nm + 1);
  p_star[0] = 1.0 / (mu + 1.0);
  for (int n = 1; n <= nm; ++n)
    p_star[(std::size_t)n] = p_star[(std::size_t)n - 1] * r_star;

  InterpolationReport rep;
  rep.n_trunc = n_trunc;

  // bar_p, q, mu weights
  std::vector<double> bar_p((std::size_t)nm + 2);
  bar_p[0] = p0;
  for (int n = 1; n <= nm + 1; ++n) bar_p[(std::size_t)n] = bar_p[(std::size_t)n - 1] * r;
  rep.q.assign((std::size_t)nm + 1, 0.0);
  double bar_q = 0;
  for (int n = 0; n <= nm; ++n) {
    rep.q[(std::size_t)n] =
        n <= n_trunc ? p_star[(std::size_t)n] : bar_p[(std::size_t)n] / double(n);
    bar_q += rep.q[(std::size_t)n];
  }
  rep.bar_q = bar_q;

  // centering constant and interpolated relative entropy
  double m = 0;
  for (int n = 0; n <= nm; ++n)
    m += (rep.q[(std::size_t)n] / bar_q) * (p[n] / p_star[(std::size_t)n]);
  rep.m = m;
  double h_int = 0;
  for (int n = 0; n <= nm; ++n) {
    if (p[n] == 0) continue;
    h_int += (rep.q[(std::size_t)n] / bar_q) * (p[n] / p_star[(std::size_t)n]) *
             std::log(p[n] / (m * p_star[(std::size_t)n]));
  }
  rep.h_int = h_int;

  // D* with f_n = sqrt(p_n / p*_n)
  double d_star = 0;
  for (int n = 0; n < nm; ++n) {
    double fn = std::sqrt(p[n] / p_star[(std::size_t)n]);
    double fn1 = std::sqrt(p[n + 1] / p_star[(std::size_t)n + 1]);
    double df = fn - fn1;
    d_star += bar_p[(std::size_t)n + 1] * df * df;
  }
  rep.d_star = d_star;

  // median split of mu
  double acc = 0;
  int m0 = nm;
  for (int n = 0; n <= nm; ++n) {
    acc += rep.q[(std::size_t)n] / bar_q;
    if (acc >= 0.5) {
      m0 = n;
      break;
    }
  }
  rep.m0 = m0;

  // suffix sums of mu for the B1 tails
  std::vector<double> mu_tail((std::size_t)nm + 2, 0.0);
  for (int n = nm; n >= 0; --n)
    mu_tail[(std::size_t)n] = mu_tail[(std::size_t)n + 1] + rep.q[(std::size_t)n] / bar_q;

  double b1 = 0;
  int argmax = m0;
  double inv_nu_sum = 0;
  for (int n = 0; n < m0; ++n) inv_nu_sum += 1.0 / bar_p[(std::size_t)n + 1];
  double left_sum = inv_nu_sum; // sum_{n<m0} 1/nu_n, reused for B2
  for (int k = m0; k < nm; ++k) {
    inv_nu_sum += 1.0 / bar_p[(std::size_t)k + 1];
    double tail = mu_tail[(std::size_t)k + 1];
    double ratio = tail > 0 ? inv_nu_sum / psi_inverse(1.0 / tail) : 0.0;
    if (ratio > b1) {
      b1 = ratio;
      argmax = k;
    }
  }
  rep.b1 = b1;
  rep.tail_certified = argmax < nm - 5;

  if (m0 == 0) {
    rep.b2 = 0.0;
  } else {
    double head = 1.0 - mu_tail[(std::size_t)m0];
    rep.b2 = head > 0 ? left_sum / psi_inverse(1.0 / head) : 0.0;
  }
  return rep;
}

} // namespace exk
