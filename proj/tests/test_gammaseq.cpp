#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "seqbell/gammaseq.hpp"
#include "test_helpers.hpp"

using namespace seqbell;

namespace {
constexpr double kTheta22 = std::numbers::pi / 4 - 0.2999;
constexpr double kTheta33 = std::numbers::pi / 4 - 0.6219;
}  // namespace

TEST_CASE("gamma_first closed forms") {
  // epsilon -> 0+ limit is tan(theta/2)
  CHECK(gamma_first(1e-13, 0.7) == doctest::Approx(std::tan(0.35)).epsilon(1e-10));

  // frozen value behind the 2x2 table
  CHECK(gamma_first(0.5577, kTheta22) == doctest::Approx(0.3857369669038836).epsilon(1e-12));

  // theta = pi/2 evaluates to 2, which is infeasible downstream
  CHECK(gamma_first(1.0, std::numbers::pi / 2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gamma_first rejects bad parameters") {
  CHECK_THROWS_AS(gamma_first(-0.1, 0.5), InvalidParam);
  CHECK_THROWS_AS(gamma_first(0.0, 0.5), InvalidParam);
  CHECK_THROWS_AS(gamma_first(0.5, 0.0), InvalidParam);
  CHECK_THROWS_AS(gamma_first(0.5, 2.0), InvalidParam);
}

TEST_CASE("reference parameter sequences") {
  const GammaSequence s22 = gamma_sequence(0.5577, kTheta22, 2);
  REQUIRE(s22.feasible_count == 2);
  CHECK(*s22.values[0] == doctest::Approx(0.3857369669038836).epsilon(1e-12));
  CHECK(*s22.values[1] == doctest::Approx(0.9999573654410757).epsilon(1e-12));
  CHECK(*s22.values[0] < *s22.values[1]);

  const GammaSequence s33 = gamma_sequence(0.27665, kTheta33, 3);
  REQUIRE(s33.feasible_count == 3);
  CHECK(*s33.values[0] == doctest::Approx(0.10459807561837936).epsilon(1e-12));
  CHECK(*s33.values[1] == doctest::Approx(0.251645890056415).epsilon(1e-12));
  CHECK(*s33.values[2] == doctest::Approx(0.9999944718482572).epsilon(1e-12));
}

TEST_CASE("infeasible first entry") {
  const GammaSequence seq = gamma_sequence(1.0, std::numbers::pi / 2, 1);
  CHECK(seq.feasible_count == 0);
  CHECK_FALSE(seq.values[0].has_value());
}

TEST_CASE("infeasibility is absorbing") {
  // at theta = pi/4 the 0.5577 sequence dies at j = 3
  const GammaSequence seq = gamma_sequence(0.5577, kTheta22, 6);
  REQUIRE(seq.feasible_count < 6);
  for (int i = 0; i < 6; ++i) CHECK(seq.values[i].has_value() == (i < seq.feasible_count));
}

TEST_CASE("gamma_first agrees with gamma_sequence(n=1) exactly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double eps = testing::uniform(rng, 0.01, 2.0);
    const double theta = testing::uniform(rng, 0.01, std::numbers::pi / 2 - 0.01);
    const GammaSequence seq = gamma_sequence(eps, theta, 1);
    const double g1 = gamma_first(eps, theta);
    if (g1 > 0 && g1 < 1) {
      REQUIRE(seq.values[0].has_value());
      CHECK(*seq.values[0] == g1);
    } else {
      CHECK_FALSE(seq.values[0].has_value());
    }
  }
}

TEST_CASE("feasible prefixes are positive and strictly increasing") {
  std::mt19937_64 rng(12);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = testing::uniform(rng, 0.01, 1.0);
    const double theta = testing::uniform(rng, 0.01, std::numbers::pi / 4);
    const GammaSequence seq = gamma_sequence(eps, theta, 6);
    double prev = 0.0;
    for (int i = 0; i < seq.feasible_count; ++i) {
      CHECK(*seq.values[i] > 0.0);
      CHECK(*seq.values[i] > prev);
      prev = *seq.values[i];
    }
    if (seq.feasible_count >= 2) ++nontrivial;
  }
  CHECK(nontrivial > 20);  // the draw box actually exercises the recursion
}

TEST_CASE("find_feasible_theta covers the reference experiments") {
  // 2x2: a feasible theta for n=2 exists and the reference choice is feasible
  const double t2 = find_feasible_theta(0.5577, 2, 1000);
  CHECK(t2 > 0.45);
  CHECK(gamma_sequence(0.5577, kTheta22, 2).fully_feasible());

  const double t3 = find_feasible_theta(0.27665, 3, 1000);
  CHECK(t3 > 0.15);
  CHECK(gamma_sequence(0.27665, kTheta33, 3).fully_feasible());

  // n = 1 is feasible near zero for any epsilon
  CHECK_NOTHROW(find_feasible_theta(5.0, 1, 1000));
}

TEST_CASE("find_feasible_theta reports NotFound on a too-coarse grid") {
  CHECK_THROWS_AS(find_feasible_theta(0.5577, 5, 100), NotFound);
}

TEST_CASE("returned theta is the largest feasible grid point") {
  const double theta = find_feasible_theta(0.5577, 3, 400);
  const double quarter_pi = std::numbers::pi / 4;
  const long t = std::lround(theta / quarter_pi * 400);
  CHECK(gamma_sequence(0.5577, theta, 3).fully_feasible());
  for (long above = t + 1; above <= 400; ++above)
    CHECK_FALSE(gamma_sequence(0.5577, quarter_pi * above / 400, 3).fully_feasible());
}

TEST_CASE("empirical feasibility monotonicity holds on tested grids") {
  CHECK(feasibility_monotonicity_violations(0.5577, 2, 500) == 0);
  CHECK(feasibility_monotonicity_violations(0.1, 3, 500) == 0);
  CHECK(feasibility_monotonicity_violations(0.27665, 3, 1000) == 0);
}
