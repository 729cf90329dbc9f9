#ifndef EXK_GENERATOR_HPP
#define EXK_GENERATOR_HPP

#include <functional>

#include "exk/dist.hpp"

namespace exk {

// Exact generator of the N-agent exchange process acting on a statistic of
// the empirical measure:
//   (G psi)(q) = lambda N sum_{l>=1, m>=0} q_l (q_m - 1{l=m}/N)
//                               (psi(q^{l,m}) - psi(q))
// where q^{l,m} = q + (delta_{l-1} + delta_{m+1} - delta_l - delta_m)/N.
// The sums run over occupied levels; cost O(support^2) psi evaluations.
double apply_generator(const EmpiricalMeasure& q,
                       const std::function<double(const EmpiricalMeasure&)>& psi,
                       double lambda = 1.0);

// Per-level form of the same generator for psi(q) = phi(q_k), evaluated at a
// deterministic histogram.  For k >= 1:
//   N [ q_{k+1}(1 - 1/N - q_k) + q_{k-1}(r - 1{k>1}/N - q_k) ]
//                                   (phi(q_k + 1/N) - phi(q_k))
// + N q_k (1 + r - 2/N - q_{k-1} - q_{k+1}) (phi(q_k - 1/N) - phi(q_k))
// + N q_{k-1} q_{k+1} (phi(q_k + 2/N) - 2 phi(q_k + 1/N) + phi(q_k))
// + N q_k (q_k - 1/N) (phi(q_k - 2/N) - 2 phi(q_k - 1/N) + phi(q_k))
// and for k = 0:
//   N q_1 (r - 1/N) (phi(q_0 + 1/N) - phi(q_0))
// + N q_0 (r - q_1) (phi(q_0 - 1/N) - phi(q_0))
// with r = 1 - q_0.
double generator_phi_k(const EmpiricalMeasure& q, int k,
                       const std::function<double(double)>& phi,
                       double lambda = 1.0);

} // namespace exk

#endif
