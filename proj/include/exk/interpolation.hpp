#ifndef EXK_INTERPOLATION_HPP
#define EXK_INTERPOLATION_HPP

#include <vector>

#include "exk/dist.hpp"

namespace exk {

// Psi(x) = |x| log(1 + |x|)
double psi(double x);
// inverse of psi on [0, inf); solved in log domain, robust for huge arguments
double psi_inverse(double y);

// Weighted-Hardy diagnostics for the equilibrium interpolated between the
// geometric law (levels <= n_trunc) and the running geometric profile
// bar_p_n = p_0 r^n divided by n (levels above n_trunc):
//
//   q_n   = p*_n (n <= n_trunc),  bar_p_n / n (n > n_trunc)
//   mu_n  = q_n / bar_q,  nu_n = bar_p_{n+1},  bar_q = sum q_n
//   m     = sum mu_n p_n / p*_n
//   H_int = sum mu_n (p_n/p*_n) log(p_n / (m p*_n))
//   D*    = sum bar_p_{n+1} (sqrt(p_n/p*_n) - sqrt(p_{n+1}/p*_{n+1}))^2
//   B1    = sup_{k >= m0} (sum_{n<=k} 1/nu_n) / PsiInv(1 / sum_{n>k} mu_n)
//   B2    = (sum_{n<m0} 1/nu_n) / PsiInv(1 / sum_{n<m0} mu_n)
//
// with m0 the median index of mu.  All sums run over the vector range; the
// report notes whether the sup in B1 had stabilised before the range ended.
struct InterpolationReport {
  int n_trunc = 0;
  int m0 = 0;
  std::vector<double> q;
  double bar_q = 0;
  double m = 0;
  double h_int = 0;
  double d_star = 0;
  double b1 = 0;
  double b2 = 0;
  bool tail_certified = false;
};

// Requires p strictly positive on its contiguous support prefix (an interior
// zero raises positivity_required), p_0 > 0 and r_bar > 0 (else
// degenerate_weights), and 1 <= n_trunc < n_max.
InterpolationReport interpolated_equilibrium(const ProbabilityVector& p, int mu,
                                             int n_trunc);

} // namespace exk

#endif
