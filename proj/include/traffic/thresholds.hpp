#ifndef TRAFFIC_THRESHOLDS_HPP
#define TRAFFIC_THRESHOLDS_HPP

#include <array>

#include "traffic/equilibrium.hpp"

namespace traffic {

// How a uniform headway perturbation epsilon on one lane of a coupled
// equilibrium activates lane changes. Negative epsilon (a denser lane)
// enables outflow once it passes the `exact` threshold; `first_order` is
// its linearization about the equilibrium; positive epsilon (a sparser
// lane) enables inflow once it exceeds the security distance.
enum class ThresholdDirection { slow_to_fast, fast_to_slow, into_perturbed };

struct ThresholdReport {
  ThresholdDirection direction = ThresholdDirection::slow_to_fast;
  int perturbed_lane = 0;  // 0-based
  int from_lane = 0;       // direction of the enabled outflow (0-based)
  int to_lane = 0;
  double exact = 0.0;        // [m], < 0 (outflow) or NaN (inflow rows)
  double first_order = 0.0;  // [m]
  double positive = 0.0;     // [m], = security distance
};

// Outflow activation from `perturbed` toward adjacent `target`:
//   exact:       Vp^{-1}( (Vt(ht - ds) + g/(ht - ds)^2 * Vt(ht)) / (1 + g/(ht - ds)^2) ) - hp
//   first order: (Vt(ht - ds) - Vt(ht)) / ((1 + g/(ht - ds)^2) * Vp'(hp))
// with g = beta/alpha and ds the target lane's security distance.
ThresholdReport directed_threshold(const ModelParams& params, const RoadConfig& road,
                                   const EquilibriumSolution& eq, int perturbed,
                                   int target);

// Two-lane tables: perturbation on the slow lane (outflow slow -> fast)
// and on the fast lane (outflow fast -> slow).
ThresholdReport threshold_slow_lane(const ModelParams& params, const RoadConfig& road,
                                    const EquilibriumSolution& eq);
ThresholdReport threshold_fast_lane(const ModelParams& params, const RoadConfig& road,
                                    const EquilibriumSolution& eq);

// Three-lane middle-lane table: {inflow from lanes 1 and 3, outflow 2 -> 1,
// outflow 2 -> 3}.
std::array<ThresholdReport, 3> middle_lane_thresholds(const ModelParams& params,
                                                      const RoadConfig& road,
                                                      const EquilibriumSolution& eq);

}  // namespace traffic

#endif
