#include <cmath>
#include <vector>

#include "doctest.h"
#include "exk/dist.hpp"
#include "helpers.hpp"

using namespace exk;
using exk_test::thrown_code;

TEST_CASE("model params validation") {
  ModelParams ok{1000, 10, 1.0};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.total_dollars() == 10000);

  CHECK(thrown_code([] { ModelParams{1, 5, 1.0}.validate(); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { ModelParams{10, -1, 1.0}.validate(); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { ModelParams{10, 5, 0.0}.validate(); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { ModelParams{10, 5, -2.0}.validate(); }) == Errc::invalid_argument);

  // exit codes: bad input is 2
  try {
    ModelParams{1, 5, 1.0}.validate();
  } catch (const Error& e) {
    CHECK(e.exit_code() == kExitValidation);
  }
}

TEST_CASE("probability vector construction") {
  CHECK_NOTHROW(ProbabilityVector({0.5, 0.5}));
  CHECK_NOTHROW(ProbabilityVector({0.5, 0.5 + 5e-10})); // inside mass tolerance
  CHECK(thrown_code([] { ProbabilityVector({0.5, 0.52}); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { ProbabilityVector({0.7, -0.1, 0.4}); }) ==
        Errc::negative_probability);
  CHECK(thrown_code([] { ProbabilityVector(std::vector<double>{}); }) ==
        Errc::invalid_argument);

  // raw() skips the mass check but still rejects negatives
  CHECK_NOTHROW(ProbabilityVector::raw({0.1, 0.1}));
  CHECK(thrown_code([] { ProbabilityVector::raw({0.1, -0.1}); }) ==
        Errc::negative_probability);

  ProbabilityVector p({0.25, 0.5, 0.25});
  CHECK(p.n_max() == 2);
  CHECK(p.size() == 3);
  CHECK(p[1] == 0.5);

  ProbabilityVector r = ProbabilityVector::raw({1.0, 3.0}).renormalized();
  CHECK(r[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(thrown_code([] { ProbabilityVector::raw({0.0, 0.0}).renormalized(); }) ==
        Errc::degenerate_weights);
}

TEST_CASE("moments of simple laws") {
  Moments m = moments(std::vector<double>{0.5, 0.25, 0.25});
  CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.mean == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m.r_bar == doctest::Approx(0.5).epsilon(1e-15));

  Moments d0 = moments(std::vector<double>{1.0, 0.0, 0.0});
  CHECK(d0.mass == 1.0);
  CHECK(d0.mean == 0.0);
  CHECK(d0.r_bar == 0.0);
}

TEST_CASE("geometric law: mass, mean, ratio, tail guard") {
  ProbabilityVector p = geometric_equilibrium(10, 500);
  Moments m = moments(p);
  CHECK(std::fabs(m.mass - 1.0) <= 1e-14);
  CHECK(std::fabs(m.mean - 10.0) <= 1e-11);
  CHECK(p[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  for (int n = 0; n < 40; ++n)
    CHECK(p[n + 1] / p[n] == doctest::Approx(10.0 / 11.0).epsilon(1e-13));

  // discarded tail (mu/(1+mu))^(n_max+1) must be < 1e-12
  CHECK(thrown_code([] { geometric_equilibrium(10, 100); }) == Errc::tail_too_heavy);
  CHECK_NOTHROW(geometric_equilibrium(10, 300));

  ProbabilityVector z = geometric_equilibrium(0, 50);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == 0.0);

  CHECK(thrown_code([] { geometric_equilibrium(-1, 500); }) == Errc::invalid_argument);
}

TEST_CASE("l1 distance") {
  std::vector<double> d0{1.0, 0.0}, d1{0.0, 1.0};
  CHECK(l1_distance(d0, d1) == 2.0);
  CHECK(l1_distance(d0, d0) == 0.0);

  // length mismatch pads with zeros
  CHECK(l1_distance({1.0}, {0.0, 1.0}) == 2.0);
  CHECK(l1_distance({0.5, 0.5}, {0.5}) == 0.5);

  // distance between a geometric law and its unit shift, against a freshly
  // summed reference: |p_0| + sum_n |p_{n+1} - p_n|
  ProbabilityVector g = geometric_equilibrium(10, 500);
  std::vector<double> shifted(g.size(), 0.0);
  for (std::size_t n = 0; n + 1 < g.size(); ++n) shifted[n + 1] = g.data()[n];
  long double expect = g.data()[0];
  for (std::size_t n = 0; n + 1 < g.size(); ++n)
    expect += std::fabs((long double)g.data()[n + 1] - g.data()[n]);
  CHECK(l1_distance(g.data(), shifted) == doctest::Approx((double)expect).epsilon(1e-13));

  // triangle inequality + symmetry on random laws
  Xoshiro256 rng(42);
  for (int it = 0; it < 100; ++it) {
    auto a = exk_test::random_law(rng, 1 + rng.uniform_below(30));
    auto b = exk_test::random_law(rng, 1 + rng.uniform_below(30));
    auto c = exk_test::random_law(rng, 1 + rng.uniform_below(30));
    double ab = l1_distance(a, b), ba = l1_distance(b, a);
    CHECK(ab == ba);
    CHECK(ab <= l1_distance(a, c) + l1_distance(c, b) + 1e-12);
    CHECK(ab <= 2.0 + 1e-12);
    CHECK(ab >= 0.0);
  }
}

TEST_CASE("empirical measure basics") {
  EmpiricalMeasure q = EmpiricalMeasure::from_dollars({1, 1, 0, 2});
  CHECK(q.n_agents() == 4);
  CHECK(q.count(0) == 1);
  CHECK(q.count(1) == 2);
  CHECK(q.count(2) == 1);
  CHECK(q.count(3) == 0);
  CHECK(q.q(1) == 0.5);
  CHECK(q.max_level() == 2);
  CHECK(q.r_bar() == 0.75);
  CHECK(q.mean() == 1.0);

  ProbabilityVector dense = q.to_dense(5);
  CHECK(dense.n_max() == 5);
  CHECK(dense[0] == 0.25);
  CHECK(dense[1] == 0.5);
  CHECK(dense[2] == 0.25);
  CHECK(dense[3] == 0.0);
  CHECK(dense[5] == 0.0);

  // everyone at 10 -> point mass at level 10
  std::vector<int> flat(1000, 10);
  ProbabilityVector point = EmpiricalMeasure::from_dollars(flat).to_dense(500);
  CHECK(point[10] == 1.0);
  CHECK(point[0] == 0.0);
  CHECK(point[500] == 0.0);

  // occupied level above the dense range is an error
  std::vector<int> spread(500, 0);
  spread[0] = 5000;
  EmpiricalMeasure big = EmpiricalMeasure::from_dollars(spread);
  CHECK(thrown_code([&] { big.to_dense(500); }) == Errc::level_overflow);
  CHECK_NOTHROW(big.to_dense(5000));
}

TEST_CASE("empirical measure validation") {
  CHECK(thrown_code([] { EmpiricalMeasure({{0, 2}, {3, 1}}, 4); }) ==
        Errc::invalid_argument); // counts sum 3 != 4
  CHECK(thrown_code([] { EmpiricalMeasure({{-1, 2}}, 2); }) == Errc::invalid_argument);
  CHECK(thrown_code([] { EmpiricalMeasure({{0, 2}}, 0); }) == Errc::invalid_argument);

  // integer bookkeeping: N * mean equals the integer total up to rounding
  Xoshiro256 rng(7);
  for (int it = 0; it < 20; ++it) {
    int n = 2 + (int)rng.uniform_below(50);
    std::vector<int> dollars(n);
    long long total = 0;
    for (int& d : dollars) {
      d = (int)rng.uniform_below(20);
      total += d;
    }
    EmpiricalMeasure q = EmpiricalMeasure::from_dollars(dollars);
    CHECK(std::fabs(q.mean() * n - (double)total) <= 1e-9 * (1.0 + (double)total));
  }
}
