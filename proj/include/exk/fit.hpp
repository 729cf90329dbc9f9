#ifndef EXK_FIT_HPP
#define EXK_FIT_HPP

#include <vector>

namespace exk {

struct DecayFit {
  double c1 = 0;        // prefactor of c1 * exp(-c2 sqrt(t))
  double c2 = 0;
  double r_squared = 0; // of log H against sqrt(t)
  int n_points = 0;
  double t_min = 0, t_max = 0;
};

// Least squares of log H on sqrt(t) over the samples with t in
// [t_min, t_max].  Requires at least 5 points in the window and H > 0 at
// each of them.
DecayFit fit_sqrt_decay(const std::vector<double>& times,
                        const std::vector<double>& entropy_h, double t_min,
                        double t_max);

} // namespace exk

#endif
