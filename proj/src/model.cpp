#include "traffic/model.hpp"

#include <cmath>

namespace traffic {

void validate(const ModelParams& params) {
  if (!(params.alpha > 0.0))
    throw std::invalid_argument("model: alpha must be positive");
  if (!(params.beta >= 0.0))
    throw std::invalid_argument("model: beta must be non-negative");
}

void validate(const RoadConfig& road) {
  if (!(road.length > 0.0))
    throw std::invalid_argument("road: length must be positive");
  if (road.profiles.empty())
    throw std::invalid_argument("road: at least one lane required");
  // slow-to-fast ordering, checked pointwise on a gap grid
  for (std::size_t j = 1; j < road.profiles.size(); ++j) {
    for (int i = 1; i <= 200; ++i) {
      const double gap = road.length * i / 200.0;
      if (eval_velocity(road.profiles[j - 1], gap) >
          eval_velocity(road.profiles[j], gap) + 1e-12) {
        throw std::invalid_argument(
            "road: lane profiles must be ordered slow to fast (violated at gap " +
            std::to_string(gap) + ")");
      }
    }
  }
}

CollisionError::CollisionError(double t, int follower_, int leader_, double gap_)
    : std::runtime_error("collision: gap " + std::to_string(gap_) +
                         " m between vehicles " + std::to_string(follower_) +
                         " and " + std::to_string(leader_) + " at t=" +
                         std::to_string(t) + " s"),
      time(t), follower(follower_), leader(leader_), gap(gap_) {}

DegenerateOrderingError::DegenerateOrderingError(int lane_, int a, int b, double position_)
    : std::runtime_error("degenerate ordering: vehicles " + std::to_string(a) +
                         " and " + std::to_string(b) + " share position " +
                         std::to_string(position_) + " in lane " +
                         std::to_string(lane_ + 1)),
      lane(lane_), vehicle_a(a), vehicle_b(b), position(position_) {}

double ring_gap(double x_from, double x_to, double length) {
  double g = std::fmod(x_to - x_from, length);
  if (g < 0.0) g += length;
  return g == 0.0 ? length : g;
}

double acceleration(const ModelParams& params, const VelocityProfile& profile,
                    double gap, double v_self, double v_lead) {
  if (!(gap > 0.0)) throw CollisionError(0.0, -1, -1, gap);
  return params.alpha * (eval_velocity(profile, gap) - v_self) +
         params.beta * (v_lead - v_self) / (gap * gap);
}

}  // namespace traffic
