#ifndef EXK_SIM_HPP
#define EXK_SIM_HPP

#include <vector>

#include "exk/dist.hpp"
#include "exk/rng.hpp"

namespace exk {

enum class InitKind { all_equal, single_rich, custom };

struct Event {
  double time = 0;
  int giver = -1;
  int receiver = -1;
};

// Continuous-time exchange process: every ordered pair (giver, receiver)
// with giver holding at least one dollar fires at rate lambda/N; on firing
// one dollar moves from giver to receiver.  Equivalently each rich agent
// gives at rate lambda (N-1)/N to a uniformly chosen other agent.
struct SimState {
  AgentState agents;
  double lambda = 1.0;
  long long events = 0;
  Xoshiro256 rng;

  // dense index of rich agents (dollars >= 1), giving O(1) uniform draws
  // and O(1) updates by swap-removal
  std::vector<int> rich;
  std::vector<int> rich_pos; // agent -> slot in rich, or -1
  int last_giver = -1;
  int last_receiver = -1;

  // when set, every exchange appends a row (for audit logs); not owned
  std::vector<Event>* event_log = nullptr;

  int n_agents() const { return int(agents.dollars.size()); }
  double total_rate() const {
    int n = n_agents();
    return lambda * double(rich.size()) * double(n - 1) / double(n);
  }
  bool absorbed() const { return rich.empty(); }
};

SimState new_simulation(const ModelParams& params, InitKind init, uint64_t seed,
                        const std::vector<int>& custom_dollars = {});

struct StepResult {
  bool stepped = false; // false when the state is absorbed (no rich agent)
  double dt = 0;
  int giver = -1;
  int receiver = -1;
};

// One exact event: waiting time ~ Exp(total_rate), giver uniform on the rich
// set, receiver uniform on the other N-1 agents.  Draw order is fixed:
// waiting time, giver, receiver.
StepResult gillespie_step(SimState& s);

// Advance the state to exactly time t (same law as running the chain and
// stopping at t, by memorylessness of the waiting times).
void advance_to(SimState& s, double t);

inline EmpiricalMeasure empirical(const SimState& s) {
  return EmpiricalMeasure::from_dollars(s.agents.dollars);
}

} // namespace exk

#endif
