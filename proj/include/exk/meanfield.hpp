#ifndef EXK_MEANFIELD_HPP
#define EXK_MEANFIELD_HPP

#include <vector>

#include "exk/dist.hpp"

namespace exk {

struct OdeConfig {
  int n_max = 500;
  double dt = 0.01;
  double t_final = 200.0;
  double sample_dt = 1.0;
  double lambda = 1.0;

  void validate() const;
};

// Right-hand side of the mean-field exchange dynamics on levels 0..n_max:
//   dp_n/dt = lambda * [ g (p_{n+1} - p_n 1{n>=1}) + r (p_{n-1} 1{n>=1} - p_n 1{n<n_max}) ]
// with r = 1 - p_0 (rich fraction) and g = 1 - p_{n_max}.  Exchanges whose
// receiver sits at the cap are cancelled entirely (the giver keeps the
// dollar), which is the factor g on the give flux; this truncation conserves
// both mass and mean exactly, so the boundary defect of the closed system is
// pure roundoff.  For p_{n_max} = 0 it reduces to the untruncated equation.
std::vector<double> ode_rhs(const std::vector<double>& p, double lambda = 1.0);
inline std::vector<double> ode_rhs(const ProbabilityVector& p, double lambda = 1.0) {
  return ode_rhs(p.data(), lambda);
}

// One classical RK4 step.  Entries in [-1e-12, 0) are clamped to zero and the
// clamped mass is accumulated into *clamped_mass when given; entries below
// -1e-12 raise a numerical error.
ProbabilityVector rk4_step(const ProbabilityVector& p, double dt,
                           double lambda = 1.0, double* clamped_mass = nullptr);

// initial data
ProbabilityVector init_dirac(int k, int n_max);
// p_0 = 1 - mu/n_max, p_{n_max} = mu/n_max
ProbabilityVector init_two_point(int n_max, int mu);

struct Trajectory {
  int mu = 0;
  OdeConfig config;
  std::vector<double> times;
  std::vector<ProbabilityVector> snapshots; // raw integrator states
  // per-sample diagnostics
  std::vector<double> entropy_h;   // KL(p(t) || geometric_equilibrium(mu))
  std::vector<double> dissipation_d;
  std::vector<double> r_bar;
  std::vector<double> mass_defect; // |sum p - 1|
  std::vector<double> mean_defect; // |sum n p - mu|
  double clamped_mass = 0;         // total negative mass removed by clamping

  std::size_t size() const { return times.size(); }
  // index of the sample at time t (within 1e-9), or throws
  std::size_t index_at(double t) const;
};

// Integrate p0 for t in [0, t_final] sampling every sample_dt (both must be
// integer multiples of dt).  Observables are evaluated on renormalized
// copies; defects on the raw states.  Halts if |mass - 1| exceeds 1e-6.
Trajectory integrate(const ProbabilityVector& p0, int mu, const OdeConfig& cfg);

} // namespace exk

#endif
