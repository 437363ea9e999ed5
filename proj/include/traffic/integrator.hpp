#ifndef TRAFFIC_INTEGRATOR_HPP
#define TRAFFIC_INTEGRATOR_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "traffic/dynamics.hpp"
#include "traffic/lane_change.hpp"
#include "traffic/rng.hpp"

namespace traffic {

struct IntegratorConfig {
  double dt = 0.1;        // step size [s], > 0
  double t_final = 0.0;   // horizon [s], >= 0
  std::uint64_t seed = 0;
  double nc = 0.0;        // expected lane-change evaluations per second, >= 0
  int sample_stride = 1;  // record every k-th step (first and last always kept)

  bool operator==(const IntegratorConfig&) const = default;
};

struct CollisionInfo {
  double time = 0.0;
  int follower = kNoVehicle;
  int leader = kNoVehicle;
  double gap = 0.0;
};

// Sampled run history plus the complete lane-change event log.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> x;      // [sample][vehicle], unbounded
  std::vector<std::vector<double>> v;      // [sample][vehicle]
  std::vector<std::vector<int>> lane;      // [sample][vehicle], 0-based
  std::vector<std::vector<int>> lane_counts;  // [sample][lane]
  std::vector<LaneChangeEvent> events;
  bool aborted = false;
  std::optional<CollisionInfo> collision;
  // steps on which some same-lane gap dipped to the security distance or
  // below (the model only forbids gap <= 0; these are worth surfacing)
  long sub_security_steps = 0;

  std::size_t sample_count() const { return times.size(); }
};

// One fixed step of the fifth-order Dormand-Prince scheme (the order-5
// solution weights, no embedded error estimate) with the lane topology
// frozen. `derivative` is evaluated on intermediate states that share the
// base state's topology.
using RhsFn = std::function<StateDerivative(const TrafficState&)>;
TrafficState rk5_step(const TrafficState& state, double dt, const RhsFn& derivative);

// Convenience overload bound to the traffic model right-hand side.
TrafficState rk5_step(const TrafficState& state, const ModelParams& params,
                      const RoadConfig& road, double dt);

using ChangePolicy = std::function<std::vector<LaneChangeEvent>(
    TrafficState&, const ModelParams&, const RoadConfig&, SimRng&, int)>;

// Hybrid loop: per step, first the discrete lane-change phase (candidate
// budget floor(nc*dt) plus one Bernoulli(frac) draw), then one rk5 step.
// Identical inputs and seed give a bit-identical trajectory. A collision
// aborts the run and returns the partial trajectory with diagnostics.
Trajectory simulate(const TrafficState& initial, const ModelParams& params,
                    const RoadConfig& road, const IntegratorConfig& cfg,
                    const ChangePolicy& change_policy = lane_change_phase);

}  // namespace traffic

#endif
