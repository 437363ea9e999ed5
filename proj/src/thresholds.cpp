#include "traffic/thresholds.hpp"

#include <cmath>
#include <limits>

namespace traffic {

ThresholdReport directed_threshold(const ModelParams& params, const RoadConfig& road,
                                   const EquilibriumSolution& eq, int perturbed,
                                   int target) {
  const auto& vp = road.profiles[perturbed];
  const auto& vt = road.profiles[target];
  const double hp = eq.headway[perturbed];
  const double ht = eq.headway[target];
  const double ds = vt.d_s;
  const double gamma = params.gamma();

  // the most favourable admissible slot in the target lane sits d_s short
  // of the target headway
  const double d = ht - ds;
  const double weight = gamma / (d * d);
  const double v_slot = eval_velocity(vt, d);
  const double v_eq_t = eval_velocity(vt, ht);

  ThresholdReport report;
  report.direction = target > perturbed ? ThresholdDirection::slow_to_fast
                                        : ThresholdDirection::fast_to_slow;
  report.perturbed_lane = perturbed;
  report.from_lane = perturbed;
  report.to_lane = target;
  report.exact = invert_velocity(vp, (v_slot + weight * v_eq_t) / (1.0 + weight)) - hp;
  report.first_order =
      (v_slot - v_eq_t) / ((1.0 + weight) * eval_velocity_derivative(vp, hp));
  report.positive = vp.d_s;
  return report;
}

ThresholdReport threshold_slow_lane(const ModelParams& params, const RoadConfig& road,
                                    const EquilibriumSolution& eq) {
  return directed_threshold(params, road, eq, 0, 1);
}

ThresholdReport threshold_fast_lane(const ModelParams& params, const RoadConfig& road,
                                    const EquilibriumSolution& eq) {
  return directed_threshold(params, road, eq, 1, 0);
}

std::array<ThresholdReport, 3> middle_lane_thresholds(const ModelParams& params,
                                                      const RoadConfig& road,
                                                      const EquilibriumSolution& eq) {
  if (road.lane_count() != 3)
    throw std::invalid_argument("middle_lane_thresholds: road must have 3 lanes");

  ThresholdReport inflow;
  inflow.direction = ThresholdDirection::into_perturbed;
  inflow.perturbed_lane = 1;
  inflow.from_lane = -1;  // both outer lanes feed the middle one
  inflow.to_lane = 1;
  inflow.exact = std::numeric_limits<double>::quiet_NaN();
  inflow.first_order = std::numeric_limits<double>::quiet_NaN();
  inflow.positive = road.profiles[1].d_s;

  return {inflow, directed_threshold(params, road, eq, 1, 0),
          directed_threshold(params, road, eq, 1, 2)};
}

}  // namespace traffic
