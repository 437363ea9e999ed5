#ifndef TRAFFIC_MODEL_HPP
#define TRAFFIC_MODEL_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "traffic/velocity_profile.hpp"

namespace traffic {

// Relaxation rate toward the desired velocity and follow-the-leader
// coefficient. Shared by all vehicles and lanes.
struct ModelParams {
  double alpha = 1.0;  // [1/s], > 0
  double beta = 0.0;   // [m^2/s], >= 0

  double gamma() const { return beta / alpha; }  // [m^2]

  bool operator==(const ModelParams&) const = default;
};

// Ring road: length, lane count, one desired-velocity profile per lane
// ordered slow to fast (lane index 0 is the slow lane).
struct RoadConfig {
  double length = 0.0;  // [m], > 0
  std::vector<VelocityProfile> profiles;

  int lane_count() const { return static_cast<int>(profiles.size()); }

  bool operator==(const RoadConfig&) const = default;
};

// Throws std::invalid_argument if a constraint is violated (non-positive
// length, empty profiles, or profiles not pointwise ordered slow to fast).
void validate(const ModelParams& params);
void validate(const RoadConfig& road);

// Two vehicles in the same lane came within non-positive distance; the
// model has no post-collision dynamics so the simulation aborts.
struct CollisionError : std::runtime_error {
  CollisionError(double t, int follower, int leader, double gap);
  double time;
  int follower;  // -1 when unknown
  int leader;
  double gap;
};

// Two same-lane vehicles at exactly identical position: the cyclic order
// is undefined, which valid initial data plus positive gaps cannot produce.
struct DegenerateOrderingError : std::runtime_error {
  DegenerateOrderingError(int lane, int a, int b, double position);
  int lane;
  int vehicle_a;
  int vehicle_b;
  double position;
};

// Forward modular distance from x_from to x_to on the ring, in (0, L].
// Coincident positions map to L: the only self-consistent reading for a
// vehicle alone in its lane, whose successor is itself a full loop ahead.
double ring_gap(double x_from, double x_to, double length);

// a = alpha*(V(gap) - v_self) + beta*(v_lead - v_self)/gap^2.
// gap <= 0 throws CollisionError.
double acceleration(const ModelParams& params, const VelocityProfile& profile,
                    double gap, double v_self, double v_lead);

}  // namespace traffic

#endif
