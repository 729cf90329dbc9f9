#include "exk/fit.hpp"

#include <algorithm>
#include <cmath>

#include "exk/errors.hpp"

namespace exk {

DecayFit fit_sqrt_decay(const std::vector<double>& times,
                        const std::vector<double>& entropy_h, double t_min,
                        double t_max) {
  if (times.size() != entropy_h.size())
    throw validation_error(Errc::invalid_argument, "times/values length mismatch");
  if (!(t_min >= 0) || !(t_max > t_min))
    throw validation_error(Errc::invalid_argument, "need 0 <= t_min < t_max");

  std::vector<double> x, y;
  for (std::size_t i = 0; i < times.size(); ++i) {
    double t = times[i];
    if (t < t_min || t > t_max) continue;
    double H = entropy_h[i];
    if (!(H > 0))
      throw validation_error(Errc::non_positive_entropy,
                             "H <= 0 inside the fit window");
    x.push_back(std::sqrt(t));
    y.push_back(std::log(H));
  }
  if (x.size() < 5)
    throw validation_error(Errc::insufficient_data,
                           "fit window holds " + std::to_string(x.size()) +
                               " points, need >= 5");
  // equal abscissae leave sxx as pure rounding debris, not a usable pivot
  if (*std::max_element(x.begin(), x.end()) ==
      *std::min_element(x.begin(), x.end()))
    throw validation_error(Errc::insufficient_data,
                           "all samples in the fit window share one time");

  std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0))
    throw validation_error(Errc::insufficient_data, "degenerate fit window");
  double slope = sxy / sxx;
  double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (intercept + slope * x[i]);
    ss_res += e * e;
  }

  DecayFit f;
  f.c1 = std::exp(intercept);
  f.c2 = -slope;
  f.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  f.n_points = int(n);
  f.t_min = t_min;
  f.t_max = t_max;
  return f;
}

} // namespace exk
