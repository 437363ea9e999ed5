#include "traffic/dynamics.hpp"

namespace traffic {

StateDerivative rhs(const TrafficState& state, const ModelParams& params,
                    const RoadConfig& road) {
  const int n_vehicles = state.size();
  StateDerivative d;
  d.dx.resize(n_vehicles);
  d.dv.resize(n_vehicles);
  for (int j = 0; j < road.lane_count(); ++j) {
    const auto& order = state.lane_order[j];
    const VelocityProfile& profile = road.profiles[j];
    const std::size_t count = order.size();
    for (std::size_t i = 0; i < count; ++i) {
      const int n = order[i];
      const int s = order[(i + 1) % count];
      const double gap =
          s == n ? road.length : ring_gap(state.x[n], state.x[s], road.length);
      d.dx[n] = state.v[n];
      d.dv[n] = acceleration(params, profile, gap, state.v[n], state.v[s]);
    }
  }
  return d;
}

}  // namespace traffic
