#include <cmath>
#include <vector>

#include "doctest.h"
#include "exk/errors.hpp"
#include "exk/fit.hpp"
#include "helpers.hpp"

using namespace exk;
using exk_test::thrown_code;

namespace {
std::vector<double> grid(int n) {
  std::vector<double> t((std::size_t)n);
  for (int i = 0; i < n; ++i) t[(std::size_t)i] = i + 1.0;
  return t;
}
} // namespace

TEST_CASE("recovers an exact stretched-exponential decay") {
  std::vector<double> t = grid(100), h(100);
  for (std::size_t i = 0; i < t.size(); ++i)
    h[i] = 2.0 * std::exp(-0.5 * std::sqrt(t[i]));
  DecayFit fit = fit_sqrt_decay(t, h, 1.0, 100.0);
  CHECK(fit.c1 == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.c2 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(fit.r_squared >= 1.0 - 1e-10);
  CHECK(fit.r_squared <= 1.0 + 1e-15);
  CHECK(fit.n_points == 100);
  CHECK(fit.t_min == 1.0);
  CHECK(fit.t_max == 100.0);
}

TEST_CASE("window selects points") {
  std::vector<double> t = grid(100), h(100);
  for (std::size_t i = 0; i < t.size(); ++i)
    h[i] = std::exp(-std::sqrt(t[i]));
  DecayFit fit = fit_sqrt_decay(t, h, 20.0, 40.0);
  CHECK(fit.n_points == 21); // t = 20..40 inclusive
  CHECK(fit.c2 == doctest::Approx(1.0).epsilon(1e-10));

  CHECK(thrown_code([&] { fit_sqrt_decay(t, h, 50.0, 53.0); }) ==
        Errc::insufficient_data); // only 4 points
  CHECK(thrown_code([&] { fit_sqrt_decay(t, h, 40.0, 20.0); }) ==
        Errc::invalid_argument);
}

TEST_CASE("rejects non-positive values inside the window") {
  std::vector<double> t = grid(20), h(20, 0.5);
  h[10] = 0.0;
  CHECK(thrown_code([&] { fit_sqrt_decay(t, h, 1.0, 20.0); }) ==
        Errc::non_positive_entropy);
  // but not outside it
  h[10] = 0.5;
  h[0] = -1.0;
  CHECK_NOTHROW(fit_sqrt_decay(t, h, 2.0, 20.0));
}

TEST_CASE("input validation") {
  std::vector<double> t = grid(10), h(9, 1.0);
  CHECK(thrown_code([&] { fit_sqrt_decay(t, h, 1.0, 10.0); }) ==
        Errc::invalid_argument); // length mismatch

  // identical abscissae leave the slope undetermined
  std::vector<double> same(6, 3.0), v(6, 0.5);
  CHECK(thrown_code([&] { fit_sqrt_decay(same, v, 1.0, 10.0); }) ==
        Errc::insufficient_data);
}

TEST_CASE("algebraic decay does not masquerade as stretched-exponential") {
  std::vector<double> t = grid(400), h(400);
  for (std::size_t i = 0; i < t.size(); ++i)
    h[i] = 3.0 / (t[i] + 3.0);
  DecayFit fit = fit_sqrt_decay(t, h, 1.0, 400.0);
  CHECK(fit.r_squared < 0.99);
}

TEST_CASE("flat data gives a perfect zero-slope fit") {
  std::vector<double> t = grid(10), h(10, 0.25);
  DecayFit fit = fit_sqrt_decay(t, h, 1.0, 10.0);
  CHECK(fit.c2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.c1 == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(fit.r_squared == 1.0); // zero variance handled as a perfect fit
}
