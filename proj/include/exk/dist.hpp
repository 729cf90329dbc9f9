#ifndef EXK_DIST_HPP
#define EXK_DIST_HPP

#include <map>
#include <vector>

#include "exk/errors.hpp"

namespace exk {

// -------------------------------------------------------------------------
// model parameters
// -------------------------------------------------------------------------

struct ModelParams {
  int n_agents = 0;
  int mu = 0;          // integer mean dollars per agent
  double lambda = 1.0; // overall exchange rate

  void validate() const;
  long long total_dollars() const { return (long long)n_agents * mu; }
};

// -------------------------------------------------------------------------
// dense law on levels 0..n_max
// -------------------------------------------------------------------------

class ProbabilityVector {
public:
  // default tolerance on |sum - 1| accepted at construction
  static constexpr double kMassTol = 1e-9;

  explicit ProbabilityVector(std::vector<double> p, double mass_tol = kMassTol);

  // wrap an entrywise non-negative vector without the unit-mass check;
  // for derived quantities (tilde laws, mid-integration states) whose mass
  // is legitimately off 1
  static ProbabilityVector raw(std::vector<double> p);

  int n_max() const { return int(v_.size()) - 1; }
  std::size_t size() const { return v_.size(); }
  double operator[](int n) const { return v_[(std::size_t)n]; }
  const std::vector<double>& data() const { return v_; }

  ProbabilityVector renormalized() const;

private:
  struct RawTag {};
  ProbabilityVector(RawTag, std::vector<double> p) : v_(std::move(p)) {}
  std::vector<double> v_;
};

struct Moments {
  double mass = 0;
  double mean = 0;
  double r_bar = 0; // fraction above zero, 1 - p_0
};

// compensated sums of p_n, n*p_n and the rich fraction
Moments moments(const std::vector<double>& p);
inline Moments moments(const ProbabilityVector& p) { return moments(p.data()); }

// l1 distance; shorter input padded with zeros
double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

// truncated geometric law with mean mu: p_n = (1/(1+mu)) (mu/(1+mu))^n,
// renormalized on 0..n_max.  Rejects truncations whose discarded tail mass
// (mu/(1+mu))^(n_max+1) is not below 1e-12.
ProbabilityVector geometric_equilibrium(int mu, int n_max = 500);

// -------------------------------------------------------------------------
// agent-side states
// -------------------------------------------------------------------------

struct AgentState {
  std::vector<int> dollars;
  long long total = 0;
  double time = 0;
};

class EmpiricalMeasure {
public:
  EmpiricalMeasure() = default;
  EmpiricalMeasure(std::map<int, int> counts, int n_agents);
  static EmpiricalMeasure from_dollars(const std::vector<int>& dollars);

  const std::map<int, int>& counts() const { return counts_; }
  int n_agents() const { return n_agents_; }
  int count(int level) const;
  double q(int level) const { return double(count(level)) / n_agents_; }
  int max_level() const { return counts_.empty() ? 0 : counts_.rbegin()->first; }
  double r_bar() const { return 1.0 - q(0); }
  double mean() const;

  // dense law q_n = count(n)/N on 0..n_max
  ProbabilityVector to_dense(int n_max) const;

private:
  std::map<int, int> counts_;
  int n_agents_ = 0;
};

inline ProbabilityVector empirical_to_dense(const EmpiricalMeasure& q, int n_max) {
  return q.to_dense(n_max);
}

} // namespace exk

#endif
