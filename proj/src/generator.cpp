#include "exk/generator.hpp"

namespace exk {

double apply_generator(const EmpiricalMeasure& q,
                       const std::function<double(const EmpiricalMeasure&)>& psi,
                       double lambda) {
  int n = q.n_agents();
  double base = psi(q);
  double sum = 0;
  for (auto& [l, cl] : q.counts()) {
    if (l < 1) continue;
    for (auto& [m, cm] : q.counts()) {
      // N q_l (q_m - 1{l=m}/N) = c_l (c_m - 1{l=m}) / N
      double weight = double(cl) * double(cm - (l == m ? 1 : 0)) / double(n);
      if (weight == 0) continue;
      std::map<int, int> counts = q.counts();
      auto bump = [&counts](int level, int by) {
        int& c = counts[level];
        c += by;
        if (c == 0) counts.erase(level);
      };
      bump(l, -1);
      bump(m, -1);
      bump(l - 1, 1);
      bump(m + 1, 1);
      EmpiricalMeasure moved(std::move(counts), n);
      sum += weight * (psi(moved) - base);
    }
  }
  return lambda * sum;
}

double generator_phi_k(const EmpiricalMeasure& q, int k,
                       const std::function<double(double)>& phi,
                       double lambda) {
  if (k < 0)
    throw validation_error(Errc::invalid_argument, "level k must be >= 0");
  double n = double(q.n_agents());
  double r = q.r_bar();
  double qk = q.q(k);
  double fk = phi(qk);

  if (k == 0) {
    double q0 = qk, q1 = q.q(1);
    double up = n * q1 * (r - 1.0 / n) * (phi(q0 + 1.0 / n) - fk);
    double down = n * q0 * (r - q1) * (phi(q0 - 1.0 / n) - fk);
    return lambda * (up + down);
  }

  double qkm = q.q(k - 1), qkp = q.q(k + 1);
  double self_excl = k > 1 ? 1.0 / n : 0.0; // giver at k-1 = receiver needs k > 1
  double up = n * (qkp * (1.0 - 1.0 / n - qk) + qkm * (r - self_excl - qk)) *
              (phi(qk + 1.0 / n) - fk);
  double down = n * qk * (1.0 + r - 2.0 / n - qkm - qkp) *
                (phi(qk - 1.0 / n) - fk);
  double up2 = n * qkm * qkp * (phi(qk + 2.0 / n) - 2.0 * phi(qk + 1.0 / n) + fk);
  double down2 =
      n * qk * (qk - 1.0 / n) * (phi(qk - 2.0 / n) - 2.0 * phi(qk - 1.0 / n) + fk);
  return lambda * (up + down + up2 + down2);
}

} // namespace exk
