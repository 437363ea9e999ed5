#include <doctest.h>

#include <cmath>

#include "traffic/model.hpp"

using namespace traffic;

namespace {
const VelocityProfile kHT{6.75, 7.91, 0.13, 1.57, 5.0, 5.0, 1.0};
const VelocityProfile kV1{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 1.0};
const VelocityProfile kV2{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 2.0};
}  // namespace

TEST_CASE("ring_gap wraps around the road") {
  CHECK(ring_gap(1400.0, 100.0, 1500.0) == doctest::Approx(200.0));
  CHECK(ring_gap(0.0, 750.0, 1500.0) == doctest::Approx(750.0));
  // a vehicle alone in its lane is a full loop behind itself
  CHECK(ring_gap(123.0, 123.0, 1500.0) == 1500.0);
  // unbounded positions reduce mod L
  CHECK(ring_gap(3100.0, 150.0, 1500.0) == doctest::Approx(50.0));
  CHECK(ring_gap(-100.0, 50.0, 1500.0) == doctest::Approx(150.0));
}

TEST_CASE("acceleration combines relaxation and follow-the-leader terms") {
  const ModelParams params{1.0, 100.0};

  // equilibrium is a fixed point
  const double h = 12.5;
  const double veq = eval_velocity(kHT, h);
  CHECK(acceleration(params, kHT, h, veq, veq) == doctest::Approx(0.0).epsilon(1e-15));

  // relaxation term cancels, FtL term is beta * dv / gap^2
  CHECK(acceleration(params, kHT, 12.5, veq, veq + 1.0) ==
        doctest::Approx(100.0 / 156.25).epsilon(1e-12));
  CHECK(100.0 / 156.25 == doctest::Approx(0.64));

  // beta = 0 reduces to the pure optimal-velocity model
  const ModelParams bando{1.7, 0.0};
  for (double gap : {8.0, 12.5, 40.0}) {
    for (double v : {0.0, 2.0, 10.0}) {
      CHECK(acceleration(bando, kHT, gap, v, v + 3.0) ==
            doctest::Approx(1.7 * (eval_velocity(kHT, gap) - v)).epsilon(1e-14));
    }
  }

  CHECK_THROWS_AS(acceleration(params, kHT, 0.0, 1.0, 1.0), CollisionError);
  CHECK_THROWS_AS(acceleration(params, kHT, -2.0, 1.0, 1.0), CollisionError);
}

TEST_CASE("model and road validation") {
  CHECK_THROWS_AS(validate(ModelParams{0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{-1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ModelParams{1.0, -1.0}), std::invalid_argument);
  CHECK_NOTHROW(validate(ModelParams{1.0, 0.0}));

  CHECK_NOTHROW(validate(RoadConfig{1500.0, {kV1, kV2}}));
  CHECK_NOTHROW(validate(RoadConfig{1500.0, {kV1, kV1}}));
  // fast lane listed first violates the slow-to-fast ordering
  CHECK_THROWS_AS(validate(RoadConfig{1500.0, {kV2, kV1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RoadConfig{0.0, {kV1}}), std::invalid_argument);
  CHECK_THROWS_AS(validate(RoadConfig{1500.0, {}}), std::invalid_argument);

  ModelParams params{2.0, 50.0};
  CHECK(params.gamma() == doctest::Approx(25.0));
}

TEST_CASE("gamma is beta over alpha") {
  CHECK(ModelParams{5.0, 100.0}.gamma() == doctest::Approx(20.0));
  CHECK(ModelParams{4.0, 0.0}.gamma() == 0.0);
}
