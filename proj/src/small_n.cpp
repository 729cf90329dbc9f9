#include "exk/small_n.hpp"

#include <cmath>

namespace exk {

namespace {

void enumerate(std::vector<int>& cur, int pos, int remaining,
               std::vector<std::vector<int>>& out) {
  if (pos + 1 == int(cur.size())) {
    cur[(std::size_t)pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[(std::size_t)pos] = v;
    enumerate(cur, pos + 1, remaining - v, out);
  }
}

// C(total + n - 1, n - 1) with an early bail-out above the cap
long long composition_count(int n, long long total, long long cap) {
  long long c = 1;
  for (int i = 1; i < n; ++i) {
    c = c * (total + i) / i; // exact: product of i consecutive integers
    if (c > cap) return cap + 1;
  }
  return c;
}

} // namespace

int SmallChain::index_of(const std::vector<int>& state) const {
  auto it = index_.find(state);
  return it == index_.end() ? -1 : it->second;
}

std::vector<double> SmallChain::column_sums() const {
  std::vector<double> col(size(), 0.0);
  for (std::size_t s = 0; s < size(); ++s) {
    col[s] -= out_rate[s];
    for (auto& [t, rate] : jumps[s]) col[(std::size_t)t] += rate;
  }
  return col;
}

SmallChain build_small_chain(const ModelParams& params) {
  params.validate();
  constexpr long long kMaxStates = 10000;
  if (composition_count(params.n_agents, params.total_dollars(), kMaxStates) >
      kMaxStates)
    throw validation_error(Errc::state_space_too_large,
                           "more than 10^4 compositions; exact chain refused");

  SmallChain chain;
  chain.params = params;
  std::vector<int> cur((std::size_t)params.n_agents, 0);
  enumerate(cur, 0, int(params.total_dollars()), chain.states);
  for (std::size_t s = 0; s < chain.states.size(); ++s)
    chain.index_[chain.states[s]] = int(s);

  double per_move = params.lambda / params.n_agents;
  chain.jumps.resize(chain.size());
  chain.out_rate.assign(chain.size(), 0.0);
  for (std::size_t s = 0; s < chain.states.size(); ++s) {
    std::vector<int> state = chain.states[s];
    for (int i = 0; i < params.n_agents; ++i) {
      if (state[(std::size_t)i] < 1) continue;
      for (int j = 0; j < params.n_agents; ++j) {
        if (j == i) continue;
        --state[(std::size_t)i];
        ++state[(std::size_t)j];
        int target = chain.index_of(state);
        ++state[(std::size_t)i];
        --state[(std::size_t)j];
        chain.jumps[s].emplace_back(target, per_move);
        chain.out_rate[s] += per_move;
      }
    }
  }
  return chain;
}

std::vector<double> transient_law(const SmallChain& chain, int init, double t) {
  if (init < 0 || std::size_t(init) >= chain.size())
    throw validation_error(Errc::invalid_argument, "initial state out of range");
  if (!(t >= 0))
    throw validation_error(Errc::invalid_argument, "time must be >= 0");

  std::size_t ns = chain.size();
  std::vector<double> v(ns, 0.0);
  v[(std::size_t)init] = 1.0;
  if (t == 0) return v;

  // uniformization: P = I + Q/Lambda, law(t) = sum_k Pois(k; Lambda t) v P^k
  double lambda_u = 0;
  for (double r : chain.out_rate) lambda_u = std::max(lambda_u, r);
  if (lambda_u == 0) return v; // single absorbing state (mu = 0)

  double a = lambda_u * t;
  int k_max = int(a + 12.0 * std::sqrt(a + 10.0) + 30.0);

  std::vector<double> out(ns, 0.0);
  std::vector<double> next(ns);
  for (int k = 0; k <= k_max; ++k) {
    // Poisson weight computed in log space; far tails underflow harmlessly
    double lw = double(k) * std::log(a) - a - std::lgamma(double(k) + 1.0);
    double w = std::exp(lw);
    for (std::size_t s = 0; s < ns; ++s) out[s] += w * v[s];
    // v <- v P  (left action: probability row vector)
    for (std::size_t s = 0; s < ns; ++s)
      next[s] = v[s] * (1.0 - chain.out_rate[s] / lambda_u);
    for (std::size_t s = 0; s < ns; ++s) {
      if (v[s] == 0) continue;
      for (auto& [tgt, rate] : chain.jumps[s])
        next[(std::size_t)tgt] += v[s] * rate / lambda_u;
    }
    v.swap(next);
  }
  return out;
}

} // namespace exk
