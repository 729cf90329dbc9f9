#ifndef EXK_ENTROPY_HPP
#define EXK_ENTROPY_HPP

#include <vector>

#include "exk/dist.hpp"

namespace exk {

// Entries at or below this are treated as empty levels when dissipation is
// evaluated along numerical trajectories: an advancing support front leaves
// underflowed tails whose true contribution is below ~1e-17, and whose
// literal treatment (positive vs exact zero neighbours) would report a
// spurious +infinity.  Any genuinely occupied level sits far above it.
inline constexpr double kTrajectoryZeroFloor = 1e-20;

// sum of p_n log p_n (negative Shannon entropy); 0 log 0 = 0
double entropy(const std::vector<double>& p);
inline double entropy(const ProbabilityVector& p) { return entropy(p.data()); }

// sum of a_n log(a_n / b_n); a_n = 0 contributes 0; a_n > 0 with b_n = 0
// makes the divergence +infinity
double kl_divergence(const std::vector<double>& a, const std::vector<double>& b);
inline double kl_divergence(const ProbabilityVector& a, const ProbabilityVector& b) {
  return kl_divergence(a.data(), b.data());
}

// one-step evolution proxy of p: tilde_0 = p_0, tilde_n = r_bar * p_{n-1}
ProbabilityVector tilde_of(const ProbabilityVector& p);

// entropy production D = sum_n (tilde_{n+1} - p_{n+1})(log tilde_{n+1} - log p_{n+1})
//                      = sum_n (r p_n - p_{n+1})(log(r p_n) - log p_{n+1}).
// Term conventions with zero_floor = 0 (exact data): both sides zero -> term
// dropped; exactly one side zero -> +infinity.  With a positive zero_floor
// (pass kTrajectoryZeroFloor for integrator snapshots) entries at or below
// the floor count as empty and every pair touching one is dropped, so
// underflow debris at an advancing support front cannot report a spurious
// infinity.  When finite this equals KL(p||tilde) + KL(tilde||p).
double dissipation(const std::vector<double>& p, double zero_floor = 0.0);
inline double dissipation(const ProbabilityVector& p, double zero_floor = 0.0) {
  return dissipation(p.data(), zero_floor);
}

// log clamped to [-2, 2]: log x inside [e^-2, e^2], the nearer bound outside;
// L(0) = -2, L(inf) = 2
double truncated_log(double x);

// Bounded analogue of the dissipation built on truncated_log:
//   sum_n (r a_n - a_{n+1}) L(r a_n / a_{n+1})
// over the level range of a.  The input is the (already shifted) sequence
// a_n = x_n + shift on occupied levels; r is the rich fraction of the
// unshifted sequence, recovered as sum_{n>=1, a_n>0} (a_n - shift).
// One-sided-zero terms are finite by the clamping: (a-0)L(inf) = 2a and
// (0-b)L(0) = 2b.  Always finite and non-negative.
double modified_dissipation(const std::vector<double>& a, double shift);
inline double modified_dissipation(const ProbabilityVector& a, double shift) {
  return modified_dissipation(a.data(), shift);
}

struct ExpMoment {
  double value = 0;
  // set when the last decile of the index range carries more than 1% of the
  // sum: the truncated value is then unreliable
  bool tail_dominated = false;
};

// sum of K^n p_n, K >= 1
ExpMoment exp_moment(const std::vector<double>& p, double K);
inline ExpMoment exp_moment(const ProbabilityVector& p, double K) {
  return exp_moment(p.data(), K);
}

// same moment for an empirical measure, accumulated in log space once
// n log K grows past the overflow guard
double exp_moment(const EmpiricalMeasure& q, double K);

struct PillarRatio {
  double lhs = 0;    // |r_bar - r_star|
  double sqrt_d = 0; // sqrt(D)
  double ratio = 0;  // lhs / sqrt_d with 0/0 -> 0, x/0 -> inf, x/inf -> 0
};

PillarRatio pillar_ratio(const ProbabilityVector& p, int mu, double zero_floor = 0.0);

struct EedRatios {
  double thm1 = 0; // H / (sqrt(D) |log 1/D|)
  double thm2 = 0; // H / (D |log 1/D|)
};

// |log(1/D)| is floored at 1 (the floor only binds for D >= 1/e, keeping the
// denominators monotone in D)
EedRatios eed_ratios(double H, double D);

// First index where r_star/r_bar and r_bar/r_star both drop to (1+K)/2 or
// below, or -1 if never.  Used to locate the near-equilibrium window.
long long find_equilibration_index(const std::vector<double>& r_bars, int mu,
                                   double K);

} // namespace exk

#endif
