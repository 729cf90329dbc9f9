#include "exk/sim.hpp"

#include <cassert>

namespace exk {

namespace {

void rebuild_rich_index(SimState& s) {
  int n = s.n_agents();
  s.rich.clear();
  s.rich_pos.assign((std::size_t)n, -1);
  for (int i = 0; i < n; ++i) {
    if (s.agents.dollars[(std::size_t)i] >= 1) {
      s.rich_pos[(std::size_t)i] = int(s.rich.size());
      s.rich.push_back(i);
    }
  }
}

#ifndef NDEBUG
long long dollar_sum(const SimState& s) {
  long long t = 0;
  for (int d : s.agents.dollars) t += d;
  return t;
}
#endif

// draw (giver, receiver) and move one dollar; waiting time handled by caller
void exchange_event(SimState& s) {
  int n = s.n_agents();
  int giver = s.rich[(std::size_t)s.rng.uniform_below(s.rich.size())];
  int other = int(s.rng.uniform_below((uint64_t)n - 1));
  int receiver = other >= giver ? other + 1 : other;

  std::vector<int>& d = s.agents.dollars;
  if (--d[(std::size_t)giver] == 0) {
    // swap-remove the giver from the rich set
    int slot = s.rich_pos[(std::size_t)giver];
    int moved = s.rich.back();
    s.rich[(std::size_t)slot] = moved;
    s.rich_pos[(std::size_t)moved] = slot;
    s.rich.pop_back();
    s.rich_pos[(std::size_t)giver] = -1;
  }
  if (++d[(std::size_t)receiver] == 1) {
    s.rich_pos[(std::size_t)receiver] = int(s.rich.size());
    s.rich.push_back(receiver);
  }
  ++s.events;
  s.last_giver = giver;
  s.last_receiver = receiver;
  if (s.event_log) s.event_log->push_back({s.agents.time, giver, receiver});
  assert(dollar_sum(s) == s.agents.total);
}

} // namespace

SimState new_simulation(const ModelParams& params, InitKind init, uint64_t seed,
                        const std::vector<int>& custom_dollars) {
  params.validate();
  SimState s;
  s.lambda = params.lambda;
  s.rng = Xoshiro256(seed);
  s.agents.time = 0;
  s.agents.total = params.total_dollars();

  int n = params.n_agents;
  switch (init) {
    case InitKind::all_equal:
      s.agents.dollars.assign((std::size_t)n, params.mu);
      break;
    case InitKind::single_rich:
      s.agents.dollars.assign((std::size_t)n, 0);
      s.agents.dollars[0] = int(params.total_dollars());
      break;
    case InitKind::custom: {
      if (int(custom_dollars.size()) != n)
        throw validation_error(Errc::invalid_argument,
                               "custom init must list one value per agent");
      long long sum = 0;
      for (int d : custom_dollars) {
        if (d < 0)
          throw validation_error(Errc::invalid_argument, "negative dollars");
        sum += d;
      }
      if (sum != params.total_dollars())
        throw validation_error(Errc::bad_initial_sum,
                               "initial dollars sum to " + std::to_string(sum) +
                                   ", expected " +
                                   std::to_string(params.total_dollars()));
      s.agents.dollars = custom_dollars;
      break;
    }
  }
  rebuild_rich_index(s);
  return s;
}

StepResult gillespie_step(SimState& s) {
  StepResult r;
  if (s.rich.empty()) return r;
  r.dt = s.rng.exponential(s.total_rate());
  s.agents.time += r.dt;
  exchange_event(s);
  r.giver = s.last_giver;
  r.receiver = s.last_receiver;
  r.stepped = true;
  return r;
}

void advance_to(SimState& s, double t) {
  if (t < s.agents.time)
    throw validation_error(Errc::time_mismatch,
                           "target time is behind the current state");
  while (!s.rich.empty()) {
    // peek at the next waiting time; discarding it on overshoot is exact by
    // memorylessness (the clock restarts fresh at the stopping time)
    double dt = s.rng.exponential(s.total_rate());
    if (s.agents.time + dt > t) break;
    s.agents.time += dt;
    exchange_event(s);
  }
  s.agents.time = t;
}

} // namespace exk
