#ifndef TRAFFIC_OUTPUT_HPP
#define TRAFFIC_OUTPUT_HPP

#include <string>

#include "traffic/equilibrium.hpp"
#include "traffic/integrator.hpp"
#include "traffic/scenario.hpp"
#include "traffic/stability.hpp"
#include "traffic/thresholds.hpp"

namespace traffic {

// CSV schemas (lane numbers and vehicle ids are 1-based on disk):
//   trajectory:  t,vehicle_id,lane,x_mod_L,v
//   lane counts: t,N_1,...,N_J
//   events:      t,vehicle_id,from,to,margin
void write_trajectory_csv(const Trajectory& trajectory, double road_length,
                          const std::string& path);
void write_lane_counts_csv(const Trajectory& trajectory, const std::string& path);
void write_events_csv(const Trajectory& trajectory, const std::string& path);

// One static plot per lane: x mod L against t, one polyline per vehicle,
// split at wrap-arounds and while the vehicle is in another lane.
void write_trajectory_svg(const Trajectory& trajectory, double road_length,
                          int lane_idx, const std::string& path);

// Everything simulate produced, under fixed file names in `directory`
// (trajectory.csv, lane_counts.csv, events.csv, trajectory_lane<j>.svg).
void write_outputs(const Trajectory& trajectory, const RoadConfig& road,
                   const std::string& directory, bool svg);

std::string equilibrium_json(const EquilibriumSolution& eq);

// Per-lane single-lane stability analysis plus, for 2 or 3 lanes, the
// perturbation-threshold tables; `input_echo` is the round-trippable
// scenario configuration.
std::string stability_report_json(const ScenarioConfig& cfg);
std::string thresholds_json(const ScenarioConfig& cfg);

}  // namespace traffic

#endif
