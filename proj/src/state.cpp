#include "traffic/state.hpp"

#include <algorithm>
#include <cmath>

namespace traffic {

namespace {

double wrap(double x, double length) {
  double m = std::fmod(x, length);
  if (m < 0.0) m += length;
  return m;
}

}  // namespace

void rebuild_neighbors(TrafficState& state, const RoadConfig& road) {
  const int n_vehicles = state.size();
  const int n_lanes = road.lane_count();
  const double length = road.length;

  state.lane_order.assign(n_lanes, {});
  for (int n = 0; n < n_vehicles; ++n) state.lane_order[state.lane[n]].push_back(n);

  std::vector<std::vector<double>> pos(n_lanes);  // wrapped, parallel to lane_order
  for (int j = 0; j < n_lanes; ++j) {
    auto& order = state.lane_order[j];
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return wrap(state.x[a], length) < wrap(state.x[b], length);
    });
    pos[j].reserve(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      pos[j].push_back(wrap(state.x[order[i]], length));
      if (i > 0 && pos[j][i] == pos[j][i - 1])
        throw DegenerateOrderingError(j, order[i - 1], order[i], pos[j][i]);
    }
  }

  state.neighbors.resize(n_vehicles);
  for (int n = 0; n < n_vehicles; ++n) {
    NeighborVector& nb = state.neighbors[n];
    nb.lane = state.lane[n];
    nb.next.assign(n_lanes, kNoVehicle);
    nb.prev.assign(n_lanes, kNoVehicle);

    const double xn = wrap(state.x[n], length);
    for (int k = 0; k < n_lanes; ++k) {
      const auto& order = state.lane_order[k];
      const auto& xs = pos[k];
      if (order.empty()) continue;
      if (k == nb.lane) {
        const auto it = std::lower_bound(xs.begin(), xs.end(), xn);
        const std::size_t i = static_cast<std::size_t>(it - xs.begin());
        nb.next[k] = order[(i + 1) % order.size()];
        nb.prev[k] = order[(i + order.size() - 1) % order.size()];
      } else {
        // first strictly ahead / last strictly behind; a vehicle at the
        // exact same position counts as a full loop away either way
        const auto up = std::upper_bound(xs.begin(), xs.end(), xn);
        nb.next[k] = order[static_cast<std::size_t>(up - xs.begin()) % order.size()];
        const auto lo = std::lower_bound(xs.begin(), xs.end(), xn);
        const std::size_t i = static_cast<std::size_t>(lo - xs.begin());
        nb.prev[k] = order[(i + order.size() - 1) % order.size()];
      }
    }
  }
}

bool neighbors_consistent(const TrafficState& state, const RoadConfig& road) {
  int total = 0;
  for (const auto& order : state.lane_order) total += static_cast<int>(order.size());
  if (total != state.size()) return false;

  TrafficState fresh = state;
  rebuild_neighbors(fresh, road);
  if (fresh.neighbors != state.neighbors) return false;
  // lane orders must agree up to rotation (motion between rebuilds can
  // rotate which vehicle wraps past zero)
  for (int j = 0; j < road.lane_count(); ++j) {
    const auto& a = state.lane_order[j];
    const auto& b = fresh.lane_order[j];
    if (a.size() != b.size()) return false;
    if (a.empty()) continue;
    const auto it = std::find(b.begin(), b.end(), a.front());
    if (it == b.end()) return false;
    const std::size_t shift = static_cast<std::size_t>(it - b.begin());
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[(shift + i) % b.size()]) return false;
  }
  return true;
}

}  // namespace traffic
