#include "traffic/equilibrium.hpp"

#include <cmath>

#include "traffic/bisection.hpp"

namespace traffic {

namespace {

EquilibriumSolution from_headways(const RoadConfig& road, std::vector<double> headways) {
  EquilibriumSolution eq;
  eq.road_length = road.length;
  eq.headway = std::move(headways);
  for (const double h : eq.headway) {
    eq.occupancy.push_back(road.length / h);
    eq.count.push_back(static_cast<int>(std::llround(road.length / h)));
  }
  eq.v_eq = eval_velocity(road.profiles.front(), eq.headway.front());
  return eq;
}

}  // namespace

EquilibriumSolution two_lane_equilibrium(const RoadConfig& road, int total_vehicles) {
  if (road.lane_count() != 2)
    throw std::invalid_argument("two_lane_equilibrium: road must have 2 lanes");
  if (total_vehicles < 2)
    throw std::invalid_argument("two_lane_equilibrium: need at least 2 vehicles");

  const double length = road.length;
  const double n = total_vehicles;
  const auto& v1 = road.profiles[0];
  const auto& v2 = road.profiles[1];

  // h2 = L*h1/(N*h1 - L) needs N*h1 > L; F is increasing in h1 because V1
  // rises while h2 (hence V2) falls.
  auto f = [&](double h1) {
    const double h2 = length * h1 / (n * h1 - length);
    return eval_velocity(v1, h1) - eval_velocity(v2, h2);
  };

  double lo = length / n * (1.0 + 1e-12);
  if (!(f(lo) < 0.0)) {
    // already crowded past balance at the smallest admissible headway
    throw NoEquilibriumError("two_lane_equilibrium: no balanced split exists");
  }
  double hi = length / n + 1.0;
  while (f(hi) < 0.0) {
    hi = length / n + 2.0 * (hi - length / n);
    if (hi > 1e9) throw NoEquilibriumError("two_lane_equilibrium: no sign change found");
  }
  const double h1 = bisect(f, lo, hi, 1e-9);
  const double h2 = length * h1 / (n * h1 - length);
  return from_headways(road, {h1, h2});
}

EquilibriumSolution chain_equilibrium(const RoadConfig& road, double h1) {
  const double v_eq = eval_velocity(road.profiles.front(), h1);
  if (!(v_eq > 0.0))
    throw std::domain_error("chain_equilibrium: V_1(h1) must be positive");
  std::vector<double> headways;
  headways.reserve(road.profiles.size());
  headways.push_back(h1);
  for (std::size_t j = 1; j < road.profiles.size(); ++j)
    headways.push_back(invert_velocity(road.profiles[j], v_eq));
  return from_headways(road, std::move(headways));
}

EquilibriumSolution multi_lane_equilibrium(const RoadConfig& road, int total_vehicles) {
  if (road.lane_count() < 2)
    throw std::invalid_argument("multi_lane_equilibrium: need J >= 2");

  const double length = road.length;
  auto occupancy_excess = [&](double h1) {
    const EquilibriumSolution eq = chain_equilibrium(road, h1);
    double total = 0.0;
    for (const double h : eq.headway) total += length / h;
    return total - total_vehicles;
  };

  // occupancy falls monotonically in h1; bracket between the start of the
  // increasing branch and free flow
  double lo = zero_gap(road.profiles.front());
  double step = 1e-6;
  while (!(eval_velocity(road.profiles.front(), lo + step) > 0.0)) step *= 2.0;
  lo += step;
  if (occupancy_excess(lo) < 0.0)
    throw NoEquilibriumError("multi_lane_equilibrium: too many vehicles for moving equilibrium");
  double hi = lo + 1.0;
  while (occupancy_excess(hi) > 0.0) {
    hi = lo + 2.0 * (hi - lo);
    if (hi > 1e9)
      throw NoEquilibriumError("multi_lane_equilibrium: too few vehicles, occupancy never reaches N");
  }
  const double h1 = bisect(occupancy_excess, lo, hi, 1e-9);
  return chain_equilibrium(road, h1);
}

}  // namespace traffic
