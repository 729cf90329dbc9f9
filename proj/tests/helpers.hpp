#ifndef EXK_TEST_HELPERS_HPP
#define EXK_TEST_HELPERS_HPP

#include <vector>

#include "exk/errors.hpp"
#include "exk/rng.hpp"

namespace exk_test {

// code of the exk::Error thrown by f, or a sentinel when nothing was thrown
template <typename F>
exk::Errc thrown_code(F&& f) {
  try {
    f();
  } catch (const exk::Error& e) {
    return e.code();
  }
  return static_cast<exk::Errc>(-1);
}

// random probability vector (normalized exponentials, strictly positive)
inline std::vector<double> random_law(exk::Xoshiro256& rng, std::size_t size) {
  std::vector<double> p(size);
  double sum = 0;
  for (double& x : p) {
    x = rng.exponential(1.0);
    sum += x;
  }
  for (double& x : p) x /= sum;
  return p;
}

} // namespace exk_test

#endif
