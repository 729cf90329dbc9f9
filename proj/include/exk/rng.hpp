#ifndef EXK_RNG_HPP
#define EXK_RNG_HPP

#include <cmath>
#include <cstdint>

namespace exk {

// splitmix64: used both as a seed mixer and to expand a single seed into
// engine state.  Fixed algorithm, identical output on every platform.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based per-run seed derivation: run i of an ensemble with base seed
// b is seeded with run_seed(b, i).  Any parallel schedule sees the same
// per-run streams because the derivation depends only on (b, i).
inline uint64_t run_seed(uint64_t base, uint64_t index) {
  uint64_t s = base ^ (0x9e3779b97f4a7c15ull * (index + 1));
  return splitmix64(s);
}

// xoshiro256** by Blackman & Vigna, seeded through splitmix64.
class Xoshiro256 {
public:
  explicit Xoshiro256(uint64_t seed = 0) {
    uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  uint64_t next() {
    auto rotl = [](uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform double in [0,1), 53 random bits
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), n >= 1; Lemire's multiply-reject method
  uint64_t uniform_below(uint64_t n) {
    __uint128_t m = __uint128_t(next()) * n;
    uint64_t lo = uint64_t(m);
    if (lo < n) {
      uint64_t threshold = -n % n;
      while (lo < threshold) {
        m = __uint128_t(next()) * n;
        lo = uint64_t(m);
      }
    }
    return uint64_t(m >> 64);
  }

  // exponential waiting time with the given rate (> 0)
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

private:
  uint64_t s_[4];
};

} // namespace exk

#endif
