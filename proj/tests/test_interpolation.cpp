#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "exk/interpolation.hpp"
#include "helpers.hpp"

using namespace exk;
using exk_test::thrown_code;

namespace {
std::vector<double> dyadic_geometric(std::size_t size) {
  std::vector<double> p(size);
  double v = 0.5;
  for (std::size_t n = 0; n < size; ++n) {
    p[n] = v;
    v *= 0.5;
  }
  return p;
}
} // namespace

TEST_CASE("psi and its inverse") {
  CHECK(psi(0.0) == 0.0);
  CHECK(psi(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(psi(-1.0) == psi(1.0));
  CHECK(psi(1e-8) == doctest::Approx(1e-16).epsilon(1e-7));

  CHECK(psi_inverse(0.0) == 0.0);
  CHECK(psi_inverse(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::isinf(psi_inverse(std::numeric_limits<double>::infinity())));
  CHECK(thrown_code([] { psi_inverse(-1.0); }) == Errc::invalid_argument);

  // round trips across many orders of magnitude
  for (double x : {1e-12, 1e-6, 0.01, 0.5, 1.0, 7.0, 1e3, 1e9, 1e30, 1e297}) {
    CHECK(psi_inverse(psi(x)) == doctest::Approx(x).epsilon(1e-8));
  }
  for (double y : {1e-300, 1e-30, 1e-3, 1.0, 1e3, 1e30, 1e300}) {
    CHECK(psi(psi_inverse(y)) == doctest::Approx(y).epsilon(1e-8));
  }
  // monotone
  double prev = -1;
  for (double y = 1e-6; y < 1e6; y *= 10) {
    double x = psi_inverse(y);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("interpolated equilibrium at an exact geometric law, mean 1") {
  // every entry and the pointwise reference are the same powers of two, so
  // the density ratios are exactly 1
  ProbabilityVector p(dyadic_geometric(62));
  InterpolationReport rep = interpolated_equilibrium(p, 1, 10);

  CHECK(rep.d_star == 0.0);
  CHECK(std::fabs(rep.m - 1.0) <= 1e-13);
  CHECK(std::fabs(rep.h_int) <= 1e-12);
  CHECK(rep.b1 > 0.0);
  CHECK(std::isfinite(rep.b1));
  // more than half the interpolating weight sits at level 0, so the median
  // index is 0 and the head block is empty by convention
  CHECK(rep.m0 == 0);
  CHECK(rep.b2 == 0.0);
  // q follows the geometric head then the divided profile
  CHECK(rep.q[5] == p[5]);
  CHECK(rep.q[20] == doctest::Approx(p[20] / 20.0).epsilon(1e-12));
}

TEST_CASE("interpolated equilibrium near the mean-10 equilibrium") {
  // geometric profile built from its own recursion; mass deliberately short
  std::vector<double> v(80);
  v[0] = 1.0 / 11.0;
  double r = 1.0 - v[0];
  for (std::size_t n = 1; n < v.size(); ++n) v[n] = v[n - 1] * r;
  ProbabilityVector p = ProbabilityVector::raw(v);

  InterpolationReport rep = interpolated_equilibrium(p, 10, 20);
  CHECK(std::fabs(rep.m - 1.0) <= 1e-6);
  CHECK(std::fabs(rep.h_int) <= 1e-9);
  CHECK(rep.d_star <= 1e-12);
  CHECK(rep.m0 >= 1); // the mean-10 weights spread well past level 0
  CHECK(rep.b1 > 0.0);
  CHECK(rep.b2 > 0.0);
  CHECK(std::isfinite(rep.b1));
  CHECK(std::isfinite(rep.b2));
}

TEST_CASE("interpolated equilibrium against a longhand reimplementation") {
  ProbabilityVector p({0.4, 0.3, 0.2, 0.1});
  const int mu = 2, n_trunc = 1, nm = 3;
  InterpolationReport rep = interpolated_equilibrium(p, mu, n_trunc);

  // plain rebuild of every reported quantity
  double p0 = p[0], r = 1.0 - p0;
  double r_star = double(mu) / (mu + 1.0);
  std::vector<double> p_star(nm + 1), bar_p(nm + 2), q(nm + 1);
  for (int n = 0; n <= nm; ++n)
    p_star[(std::size_t)n] = std::pow(r_star, double(n)) / (mu + 1.0);
  for (int n = 0; n <= nm + 1; ++n)
    bar_p[(std::size_t)n] = p0 * std::pow(r, double(n));
  double bar_q = 0;
  for (int n = 0; n <= nm; ++n) {
    q[(std::size_t)n] = n <= n_trunc ? p_star[(std::size_t)n]
                                     : bar_p[(std::size_t)n] / double(n);
    bar_q += q[(std::size_t)n];
  }
  auto mu_w = [&](int n) { return q[(std::size_t)n] / bar_q; };
  auto f = [&](int n) { return p[n] / p_star[(std::size_t)n]; };

  double m = 0;
  for (int n = 0; n <= nm; ++n) m += mu_w(n) * f(n);
  double h_int = 0;
  for (int n = 0; n <= nm; ++n) h_int += mu_w(n) * f(n) * std::log(f(n) / m);
  double d_star = 0;
  for (int n = 0; n < nm; ++n) {
    double df = std::sqrt(f(n)) - std::sqrt(f(n + 1));
    d_star += bar_p[(std::size_t)n + 1] * df * df;
  }
  int m0 = nm;
  double acc = 0;
  for (int n = 0; n <= nm; ++n) {
    acc += mu_w(n);
    if (acc >= 0.5) {
      m0 = n;
      break;
    }
  }
  double b1 = 0;
  for (int k = m0; k < nm; ++k) {
    double inv_nu = 0, tail = 0;
    for (int n = 0; n <= k; ++n) inv_nu += 1.0 / bar_p[(std::size_t)n + 1];
    for (int n = k + 1; n <= nm; ++n) tail += mu_w(n);
    if (tail > 0) b1 = std::max(b1, inv_nu / psi_inverse(1.0 / tail));
  }
  double b2 = 0;
  if (m0 > 0) {
    double inv_nu = 0, head = 0;
    for (int n = 0; n < m0; ++n) {
      inv_nu += 1.0 / bar_p[(std::size_t)n + 1];
      head += mu_w(n);
    }
    b2 = inv_nu / psi_inverse(1.0 / head);
  }

  CHECK(rep.bar_q == doctest::Approx(bar_q).epsilon(1e-13));
  CHECK(rep.m == doctest::Approx(m).epsilon(1e-13));
  CHECK(rep.h_int == doctest::Approx(h_int).epsilon(1e-12));
  CHECK(rep.d_star == doctest::Approx(d_star).epsilon(1e-13));
  CHECK(rep.m0 == m0);
  CHECK(rep.b1 == doctest::Approx(b1).epsilon(1e-10));
  CHECK(rep.b2 == doctest::Approx(b2).epsilon(1e-10));
  for (int n = 0; n <= nm; ++n)
    CHECK(rep.q[(std::size_t)n] == doctest::Approx(q[(std::size_t)n]).epsilon(1e-13));
}

TEST_CASE("interpolated equilibrium input validation") {
  ProbabilityVector good({0.4, 0.3, 0.2, 0.1});
  CHECK(thrown_code([&] { interpolated_equilibrium(good, 2, 0); }) ==
        Errc::invalid_argument);
  CHECK(thrown_code([&] { interpolated_equilibrium(good, 2, 3); }) ==
        Errc::invalid_argument);
  CHECK(thrown_code([&] { interpolated_equilibrium(good, 0, 1); }) ==
        Errc::invalid_argument);

  ProbabilityVector hole({0.5, 0.0, 0.25, 0.25});
  CHECK(thrown_code([&] { interpolated_equilibrium(hole, 2, 1); }) ==
        Errc::positivity_required);

  ProbabilityVector at_zero({1.0, 0.0, 0.0});
  CHECK(thrown_code([&] { interpolated_equilibrium(at_zero, 2, 1); }) ==
        Errc::degenerate_weights);
  ProbabilityVector no_base = ProbabilityVector::raw({0.0, 0.5, 0.5});
  CHECK(thrown_code([&] { interpolated_equilibrium(no_base, 2, 1); }) ==
        Errc::degenerate_weights);

  // trailing zeros beyond the support prefix are fine
  ProbabilityVector cut({0.5, 0.3, 0.2, 0.0, 0.0, 0.0});
  InterpolationReport rep = interpolated_equilibrium(cut, 1, 2);
  CHECK(std::isfinite(rep.h_int));
  CHECK(std::isfinite(rep.b1));
  CHECK(std::isfinite(rep.b2));
  CHECK(rep.d_star >= 0.0);
}
