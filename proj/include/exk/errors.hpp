#ifndef EXK_ERRORS_HPP
#define EXK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace exk {

// Process-level exit codes used by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitOracleMismatch = 4;

enum class Errc {
  invalid_argument,
  tail_too_heavy,        // truncation keeps too little of a geometric tail
  level_overflow,        // empirical level beyond the dense range
  negative_probability,  // entry below the clamping tolerance
  mass_leak,             // integrator lost more mass than allowed
  bad_initial_sum,       // agent dollars do not sum to N*mu
  state_space_too_large, // exact chain enumeration refused
  insufficient_data,     // not enough samples in a fit window
  non_positive_entropy,  // log H requested for H <= 0
  positivity_required,   // interior zero where a positive law is needed
  degenerate_weights,    // interpolation weights collapse (p0 = 0 or r_bar = 0)
  time_mismatch,         // target time behind current time / sample grids disagree
  init_mismatch,         // ensemble initial law differs from ODE initial datum
};

class Error : public std::runtime_error {
public:
  Error(Errc code, int exit_code, const std::string& what)
      : std::runtime_error(what), code_(code), exit_code_(exit_code) {}
  Errc code() const { return code_; }
  int exit_code() const { return exit_code_; }

private:
  Errc code_;
  int exit_code_;
};

inline Error validation_error(Errc code, const std::string& what) {
  return Error(code, kExitValidation, what);
}

inline Error numerical_error(Errc code, const std::string& what) {
  return Error(code, kExitNumerical, what);
}

} // namespace exk

#endif
