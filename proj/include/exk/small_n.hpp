#ifndef EXK_SMALL_N_HPP
#define EXK_SMALL_N_HPP

#include <map>
#include <vector>

#include "exk/dist.hpp"

namespace exk {

// Exact finite-state view of the exchange process for small N: states are
// ordered compositions of N*mu into N parts, each directed move (i gives to
// j) fires at rate lambda/N.  The uniform law over compositions is
// stationary (each move and its reverse carry the same rate).
struct SmallChain {
  ModelParams params;
  std::vector<std::vector<int>> states; // lexicographic order
  // off-diagonal jump lists: jumps[s] = (target state, rate); the diagonal
  // of the rate matrix is -out_rate[s]
  std::vector<std::vector<std::pair<int, double>>> jumps;
  std::vector<double> out_rate;

  std::size_t size() const { return states.size(); }
  int index_of(const std::vector<int>& state) const; // -1 if absent
  // dense rate matrix row sums / column sums, for stationarity checks
  std::vector<double> column_sums() const;

private:
  friend SmallChain build_small_chain(const ModelParams&);
  std::map<std::vector<int>, int> index_;
};

// Enumerates at most 10^4 states, else refuses (state_space_too_large).
SmallChain build_small_chain(const ModelParams& params);

// law at time t started from state init, via uniformization of exp(Qt)
std::vector<double> transient_law(const SmallChain& chain, int init, double t);

} // namespace exk

#endif
