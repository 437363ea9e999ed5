#ifndef TRAFFIC_SCENARIO_HPP
#define TRAFFIC_SCENARIO_HPP

#include <optional>
#include <string>

#include "traffic/integrator.hpp"

namespace traffic {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsertionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Declarative initial condition. Lane indices are 0-based here; the JSON
// layer speaks 1-based like the tables in any traffic text.
struct InitialSpec {
  enum class Kind {
    global_equilibrium,  // solve the coupled equilibrium for total_vehicles
    uniform_headways,    // explicit per-lane target headways
    lane_counts,         // explicit counts, all vehicles at rest
    jittered_counts,     // explicit counts, uniform headway noise on some lanes
  };
  Kind kind = Kind::global_equilibrium;
  int total_vehicles = 0;            // global_equilibrium
  std::vector<double> headways_m;    // uniform_headways
  std::vector<int> counts;           // lane_counts / jittered_counts
  double epsilon_m = 0.0;            // uniform headway offset on one lane
  std::optional<int> epsilon_lane;   // applies to global_equilibrium / uniform_headways
  double r_max_m = 1.0;              // jitter amplitude
  std::vector<int> jitter_lanes;     // jittered_counts

  bool operator==(const InitialSpec&) const = default;
};

struct ScenarioConfig {
  RoadConfig road;
  ModelParams model;
  IntegratorConfig integrator;
  InitialSpec initial;
  std::optional<int> insert_lane;    // insert one vehicle at t = 0 (0-based lane)
  std::optional<int> remove_vehicle; // remove this vehicle id at t = 0 (0-based)
  bool write_svg = true;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& json_text);
std::string serialize_config(const ScenarioConfig& cfg);
ScenarioConfig load_config(const std::string& path);

// Equally spaced lanes at the requested target headways. Each lane gets
// round(L / target) vehicles at exactly L/N_j spacing and speed
// V_j(L/N_j) (zero for lane_counts); consecutive lanes start phase-shifted
// so distinct lanes never begin exactly on top of each other. Jitter draws
// come from `rng` and are recentred per lane so headways still sum to L.
TrafficState build_initial_state(const ScenarioConfig& cfg, SimRng& rng);

// New vehicle at the midpoint of the gap ahead of the highest-index
// vehicle in `lane_idx`, with speed V_lane(L/N_before). Throws
// InsertionError when splitting the gap would violate the security
// distance.
TrafficState insert_vehicle(const TrafficState& state, const RoadConfig& road,
                            int lane_idx);

// Drops one vehicle by id; remaining ids shift down.
TrafficState remove_vehicle(const TrafficState& state, const RoadConfig& road,
                            int vehicle);

// build_initial_state plus the optional t = 0 insert/remove perturbations.
TrafficState prepare_scenario(const ScenarioConfig& cfg, SimRng& rng);

}  // namespace traffic

#endif
