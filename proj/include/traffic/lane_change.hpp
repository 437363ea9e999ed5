#ifndef TRAFFIC_LANE_CHANGE_HPP
#define TRAFFIC_LANE_CHANGE_HPP

#include <optional>

#include "traffic/rng.hpp"
#include "traffic/state.hpp"

namespace traffic {

enum class RejectReason { none, incentive, security, no_own_leader };

// Outcome of evaluating one candidate move, with everything needed to
// audit the decision afterwards.
struct ChangeDecision {
  int vehicle = kNoVehicle;
  int from_lane = 0;
  int to_lane = 0;
  bool accept = false;
  RejectReason reason = RejectReason::none;
  double margin = 0.0;        // a_target - a_own [m/s^2]
  double target_accel = 0.0;  // acceleration against the target-lane successor
  double gap_to_successor = 0.0;     // [m], road length when the slot is open
  double gap_from_predecessor = 0.0; // [m]
};

struct IncentiveCheck {
  bool ok = false;
  double margin = 0.0;
  double target_accel = 0.0;
};

struct SecurityCheck {
  bool ok = false;
  double gap_to_successor = 0.0;
  double gap_from_predecessor = 0.0;
};

struct LaneChangeEvent {
  double t = 0.0;
  int vehicle = kNoVehicle;
  int from_lane = 0;
  int to_lane = 0;
  double margin = 0.0;
};

// Incentive criterion: acceleration against the target-lane successor must
// strictly exceed the one against the same-lane successor.
IncentiveCheck incentive_ok(const TrafficState& state, const ModelParams& params,
                            const RoadConfig& road, int n, int target_lane);

// Security criterion: both ring gaps to the target-lane successor and from
// the target-lane predecessor strictly exceed the target lane's security
// distance. A missing neighbour leaves a full loop of room.
SecurityCheck security_ok(const TrafficState& state, const RoadConfig& road,
                          int n, int target_lane);

// Combines the two criteria with the sentinel special cases:
// no target successor -> security only; no target predecessor -> incentive
// only; empty target lane -> accept; no own-lane successor -> reject.
// On a ring only the empty-lane case is reachable; the rest keep the open
// road semantics for completeness.
ChangeDecision evaluate_change(const TrafficState& state, const ModelParams& params,
                               const RoadConfig& road, int n, int target_lane);

// Evaluates every adjacent lane and returns the accepted decision with the
// larger target-lane acceleration (the faster lane on an exact tie), or
// nothing when no adjacent lane accepts.
std::optional<ChangeDecision> best_target(const TrafficState& state,
                                          const ModelParams& params,
                                          const RoadConfig& road, int n);

// Moves n to its decided lane at unchanged position and velocity, updating
// lane membership, ring orders and every neighbor vector affected by the
// move. Requires neighbors current for the frozen positions.
void apply_change(TrafficState& state, const RoadConfig& road, int n, int to_lane);

// One discrete phase: draws `budget` candidates uniformly without
// replacement, applies best_target sequentially (later candidates see the
// updated state) and logs accepted moves. Positions and velocities are
// untouched.
std::vector<LaneChangeEvent> lane_change_phase(TrafficState& state,
                                               const ModelParams& params,
                                               const RoadConfig& road, SimRng& rng,
                                               int budget);

}  // namespace traffic

#endif
