#ifndef TRAFFIC_EQUILIBRIUM_HPP
#define TRAFFIC_EQUILIBRIUM_HPP

#include <stdexcept>
#include <vector>

#include "traffic/model.hpp"

namespace traffic {

// Coupled-lane equilibrium: per-lane uniform headways with one common
// speed V_1(h_1) = ... = V_J(h_J). Real occupancies L/h_j generally are
// not integers; the rounded counts are what a simulation actually uses.
struct EquilibriumSolution {
  double road_length = 0.0;
  std::vector<double> headway;    // [m]
  std::vector<double> occupancy;  // L/h_j
  std::vector<int> count;         // nearest integers
  double v_eq = 0.0;              // [m/s]
};

struct NoEquilibriumError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two lanes: the unique h_1 with V_1(h_1) = V_2(L*h_1/(N*h_1 - L)),
// bisected to 1e-9 m. Throws NoEquilibriumError when no root exists.
EquilibriumSolution two_lane_equilibrium(const RoadConfig& road, int total_vehicles);

// Prescribed slow-lane headway: h_j = V_j^{-1}(V_1(h1)) lane by lane.
EquilibriumSolution chain_equilibrium(const RoadConfig& road, double h1);

// Generic J >= 2: bisection on h_1 for sum_j L/h_j(h_1) = N, composing
// chain_equilibrium.
EquilibriumSolution multi_lane_equilibrium(const RoadConfig& road, int total_vehicles);

}  // namespace traffic

#endif
