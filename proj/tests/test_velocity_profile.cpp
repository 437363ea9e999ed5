#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "traffic/velocity_profile.hpp"

using namespace traffic;

namespace {

// Helbing-Tilch calibration
const VelocityProfile kHT{6.75, 7.91, 0.13, 1.57, 5.0, 5.0, 1.0};
// two-lane family: V1 = 5 tanh(0.02 (h - 5)), V2 = 2 V1
const VelocityProfile kV1{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 1.0};
const VelocityProfile kV2{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 2.0};

double central_difference(const VelocityProfile& p, double gap, double h = 1e-6) {
  return (eval_velocity(p, gap + h) - eval_velocity(p, gap - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("eval_velocity matches the calibrated curve") {
  // saturates to v_off + v_amp = 14.66 m/s
  CHECK(kHT.v_max() == doctest::Approx(14.66).epsilon(1e-12));
  CHECK(eval_velocity(kHT, 1e7) == doctest::Approx(14.66).epsilon(1e-9));
  CHECK(eval_velocity(kHT, 12.5) == doctest::Approx(2.5301563639044531).epsilon(1e-12));

  // clamped at and below the security distance
  CHECK(eval_velocity(kV2, 5.0) == 0.0);
  CHECK(eval_velocity(kV2, 1.0) == 0.0);
  // the HT raw value is negative well above d_s; still clamped to zero
  CHECK(eval_velocity(kHT, 6.0) == 0.0);

  CHECK(eval_velocity(kV1, 50.0) == doctest::Approx(5.0 * std::tanh(0.9)).epsilon(1e-14));
  CHECK(eval_velocity(kV1, 50.0) == doctest::Approx(3.58).epsilon(1e-3));

  CHECK_THROWS_AS(eval_velocity(kHT, 0.0), std::domain_error);
  CHECK_THROWS_AS(eval_velocity(kHT, -3.0), std::domain_error);
}

TEST_CASE("eval_velocity is nonnegative, bounded and nondecreasing") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> gap(1e-3, 400.0);
  for (int i = 0; i < 2000; ++i) {
    double a = gap(gen), b = gap(gen);
    if (a > b) std::swap(a, b);
    for (const auto& p : {kHT, kV1, kV2}) {
      const double va = eval_velocity(p, a);
      const double vb = eval_velocity(p, b);
      CHECK(va >= 0.0);
      CHECK(vb <= p.v_max());
      CHECK(va <= vb);
    }
  }
}

TEST_CASE("eval_velocity_derivative is analytic on the smooth branch") {
  // zero on the clamped branch
  CHECK(eval_velocity_derivative(kHT, 4.0) == 0.0);
  CHECK(eval_velocity_derivative(kV1, 5.0) == 0.0);

  // the derivative peaks where the tanh argument vanishes: gap = 2.22/0.13
  const double peak_gap = 2.22 / 0.13;
  CHECK(eval_velocity_derivative(kHT, peak_gap) ==
        doctest::Approx(7.91 * 0.13).epsilon(1e-12));
  CHECK(eval_velocity_derivative(kHT, peak_gap) ==
        doctest::Approx(central_difference(kHT, peak_gap)).epsilon(1e-8));

  CHECK(eval_velocity_derivative(kV1, 45.4) == doctest::Approx(0.0553).epsilon(1e-3));

  // agreement with centered finite differences across the smooth branch
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> gap(9.0, 200.0);
  for (int i = 0; i < 500; ++i) {
    const double g = gap(gen);
    for (const auto& p : {kHT, kV1, kV2}) {
      const double analytic = eval_velocity_derivative(p, g);
      if (analytic < 1e-12) continue;  // saturated tail, relative check meaningless
      CHECK(analytic == doctest::Approx(central_difference(p, g)).epsilon(1e-6));
    }
  }

  CHECK_THROWS_AS(eval_velocity_derivative(kHT, 0.0), std::domain_error);
}

TEST_CASE("invert_velocity recovers gaps on the increasing branch") {
  CHECK(invert_velocity(kV1, 3.58) == doctest::Approx(50.0).epsilon(2e-3));
  CHECK(invert_velocity(kV1, eval_velocity(kV1, 50.0)) == doctest::Approx(50.0).epsilon(1e-9));
  // scale-2 profile reaches the same speed at a much shorter gap
  CHECK(invert_velocity(kV2, 3.58) == doctest::Approx(23.7).epsilon(5e-3));

  // round trip across the branch
  // keep clear of the saturated tail where doubles cannot resolve the slope
  for (double g : {8.0, 12.5, 17.0, 30.0, 60.0}) {
    CHECK(invert_velocity(kHT, eval_velocity(kHT, g)) == doctest::Approx(g).epsilon(1e-8));
  }

  CHECK_THROWS_AS(invert_velocity(kHT, 0.0), std::domain_error);
  CHECK_THROWS_AS(invert_velocity(kHT, -1.0), std::domain_error);
  CHECK_THROWS_AS(invert_velocity(kHT, kHT.v_max()), std::domain_error);
  CHECK_THROWS_AS(invert_velocity(kHT, 100.0), std::domain_error);
}

TEST_CASE("zero_gap marks the start of the increasing branch") {
  const double z_ht = zero_gap(kHT);
  CHECK(eval_velocity(kHT, z_ht) == 0.0);
  CHECK(eval_velocity(kHT, z_ht + 1e-6) > 0.0);
  // for the two-lane family the security distance is the cutoff
  CHECK(zero_gap(kV1) == doctest::Approx(5.0));
}
