#include "traffic/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "traffic/equilibrium.hpp"

namespace traffic {

using nlohmann::json;

namespace {

json profile_to_json(const VelocityProfile& p) {
  return json{{"v_off_mps", p.v_off}, {"v_amp_mps", p.v_amp},
              {"c1_per_m", p.c1},     {"c2", p.c2},
              {"vehicle_length_m", p.l_c}, {"security_distance_m", p.d_s},
              {"scale", p.scale}};
}

VelocityProfile profile_from_json(const json& j) {
  VelocityProfile p;
  p.v_off = j.at("v_off_mps").get<double>();
  p.v_amp = j.at("v_amp_mps").get<double>();
  p.c1 = j.at("c1_per_m").get<double>();
  p.c2 = j.value("c2", 0.0);
  p.l_c = j.at("vehicle_length_m").get<double>();
  p.d_s = j.at("security_distance_m").get<double>();
  p.scale = j.value("scale", 1.0);
  return p;
}

std::string kind_name(InitialSpec::Kind kind) {
  switch (kind) {
    case InitialSpec::Kind::global_equilibrium: return "global_equilibrium";
    case InitialSpec::Kind::uniform_headways: return "uniform_headways";
    case InitialSpec::Kind::lane_counts: return "lane_counts";
    case InitialSpec::Kind::jittered_counts: return "jittered_counts";
  }
  return "?";
}

InitialSpec::Kind kind_from_name(const std::string& name) {
  if (name == "global_equilibrium") return InitialSpec::Kind::global_equilibrium;
  if (name == "uniform_headways") return InitialSpec::Kind::uniform_headways;
  if (name == "lane_counts") return InitialSpec::Kind::lane_counts;
  if (name == "jittered_counts") return InitialSpec::Kind::jittered_counts;
  throw ConfigError("unknown initial condition kind: " + name);
}

}  // namespace

std::string serialize_config(const ScenarioConfig& cfg) {
  json lanes = json::array();
  for (const auto& p : cfg.road.profiles) lanes.push_back(profile_to_json(p));

  json initial{{"kind", kind_name(cfg.initial.kind)}};
  switch (cfg.initial.kind) {
    case InitialSpec::Kind::global_equilibrium:
      initial["total_vehicles"] = cfg.initial.total_vehicles;
      break;
    case InitialSpec::Kind::uniform_headways:
      initial["headways_m"] = cfg.initial.headways_m;
      break;
    case InitialSpec::Kind::lane_counts:
    case InitialSpec::Kind::jittered_counts:
      initial["counts"] = cfg.initial.counts;
      break;
  }
  if (cfg.initial.epsilon_lane) {
    initial["epsilon_m"] = cfg.initial.epsilon_m;
    initial["epsilon_lane"] = *cfg.initial.epsilon_lane + 1;
  }
  if (cfg.initial.kind == InitialSpec::Kind::jittered_counts) {
    initial["r_max_m"] = cfg.initial.r_max_m;
    json jl = json::array();
    for (int lane : cfg.initial.jitter_lanes) jl.push_back(lane + 1);
    initial["jitter_lanes"] = jl;
  }

  json root{
      {"road", {{"length_m", cfg.road.length}, {"lanes", lanes}}},
      {"model", {{"alpha_per_s", cfg.model.alpha}, {"beta_m2_per_s", cfg.model.beta}}},
      {"integrator",
       {{"dt_s", cfg.integrator.dt},
        {"t_final_s", cfg.integrator.t_final},
        {"seed", cfg.integrator.seed},
        {"lane_changes_per_s", cfg.integrator.nc},
        {"sample_stride", cfg.integrator.sample_stride}}},
      {"initial", initial},
  };
  json perturbation = json::object();
  if (cfg.insert_lane) perturbation["insert_vehicle_lane"] = *cfg.insert_lane + 1;
  if (cfg.remove_vehicle) perturbation["remove_vehicle_id"] = *cfg.remove_vehicle + 1;
  if (!perturbation.empty()) root["perturbation"] = perturbation;
  root["output"] = json{{"svg", cfg.write_svg}};
  return root.dump(2) + "\n";
}

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("config is not valid JSON: ") + err.what());
  }

  try {
    ScenarioConfig cfg;
    const json& road = root.at("road");
    cfg.road.length = road.at("length_m").get<double>();
    for (const auto& lane : road.at("lanes")) cfg.road.profiles.push_back(profile_from_json(lane));

    const json& model = root.at("model");
    cfg.model.alpha = model.at("alpha_per_s").get<double>();
    cfg.model.beta = model.at("beta_m2_per_s").get<double>();

    const json& integ = root.at("integrator");
    cfg.integrator.dt = integ.at("dt_s").get<double>();
    cfg.integrator.t_final = integ.at("t_final_s").get<double>();
    cfg.integrator.seed = integ.value("seed", std::uint64_t{0});
    cfg.integrator.nc = integ.value("lane_changes_per_s", 0.0);
    cfg.integrator.sample_stride = integ.value("sample_stride", 1);

    const json& initial = root.at("initial");
    cfg.initial.kind = kind_from_name(initial.at("kind").get<std::string>());
    cfg.initial.total_vehicles = initial.value("total_vehicles", 0);
    cfg.initial.headways_m = initial.value("headways_m", std::vector<double>{});
    cfg.initial.counts = initial.value("counts", std::vector<int>{});
    if (initial.contains("epsilon_lane")) {
      cfg.initial.epsilon_lane = initial.at("epsilon_lane").get<int>() - 1;
      cfg.initial.epsilon_m = initial.value("epsilon_m", 0.0);
    }
    cfg.initial.r_max_m = initial.value("r_max_m", 1.0);
    if (initial.contains("jitter_lanes"))
      for (const auto& lane : initial.at("jitter_lanes"))
        cfg.initial.jitter_lanes.push_back(lane.get<int>() - 1);

    if (root.contains("perturbation")) {
      const json& pert = root.at("perturbation");
      if (pert.contains("insert_vehicle_lane"))
        cfg.insert_lane = pert.at("insert_vehicle_lane").get<int>() - 1;
      if (pert.contains("remove_vehicle_id"))
        cfg.remove_vehicle = pert.at("remove_vehicle_id").get<int>() - 1;
    }
    if (root.contains("output")) cfg.write_svg = root.at("output").value("svg", true);

    validate(cfg.model);
    validate(cfg.road);
    return cfg;
  } catch (const json::exception& err) {
    throw ConfigError(std::string("bad config: ") + err.what());
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("bad config: ") + err.what());
  }
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

TrafficState build_initial_state(const ScenarioConfig& cfg, SimRng& rng) {
  const RoadConfig& road = cfg.road;
  const int n_lanes = road.lane_count();
  const double length = road.length;
  const InitialSpec& spec = cfg.initial;

  // resolve per-lane target headways
  std::vector<double> target(n_lanes, 0.0);
  switch (spec.kind) {
    case InitialSpec::Kind::global_equilibrium: {
      if (n_lanes == 1) {
        if (spec.total_vehicles < 1) throw ConfigError("total_vehicles must be >= 1");
        target[0] = length / spec.total_vehicles;
      } else {
        const EquilibriumSolution eq = multi_lane_equilibrium(road, spec.total_vehicles);
        target = eq.headway;
      }
      break;
    }
    case InitialSpec::Kind::uniform_headways: {
      if (static_cast<int>(spec.headways_m.size()) != n_lanes)
        throw ConfigError("headways_m must list one headway per lane");
      target = spec.headways_m;
      break;
    }
    case InitialSpec::Kind::lane_counts:
    case InitialSpec::Kind::jittered_counts: {
      if (static_cast<int>(spec.counts.size()) != n_lanes)
        throw ConfigError("counts must list one count per lane");
      for (int j = 0; j < n_lanes; ++j) {
        if (spec.counts[j] < 0) throw ConfigError("lane counts must be >= 0");
        target[j] = spec.counts[j] > 0 ? length / spec.counts[j] : 0.0;
      }
      break;
    }
  }

  if (spec.epsilon_lane) {
    const int lane = *spec.epsilon_lane;
    if (lane < 0 || lane >= n_lanes) throw ConfigError("epsilon_lane out of range");
    if (spec.kind == InitialSpec::Kind::lane_counts ||
        spec.kind == InitialSpec::Kind::jittered_counts)
      throw ConfigError("epsilon applies to headway-based initial conditions");
    target[lane] += spec.epsilon_m;
    if (!(target[lane] > 0.0)) throw ConfigError("perturbed headway must stay positive");
  }

  TrafficState state;
  int total = 0;
  for (int j = 0; j < n_lanes; ++j) {
    int count = 0;
    if (spec.kind == InitialSpec::Kind::lane_counts ||
        spec.kind == InitialSpec::Kind::jittered_counts) {
      count = spec.counts[j];
    } else if (target[j] > 0.0) {
      count = static_cast<int>(std::llround(length / target[j]));
    }
    if (count == 0) continue;
    total += count;

    const double headway = length / count;
    if (!(headway > 0.0)) throw ConfigError("non-positive headway in lane " + std::to_string(j + 1));

    const bool jittered = spec.kind == InitialSpec::Kind::jittered_counts &&
                          std::find(spec.jitter_lanes.begin(), spec.jitter_lanes.end(), j) !=
                              spec.jitter_lanes.end();
    std::vector<double> gaps(count, headway);
    if (jittered) {
      double mean = 0.0;
      std::vector<double> noise(count);
      for (int i = 0; i < count; ++i) {
        noise[i] = rng.uniform(-spec.r_max_m, spec.r_max_m);
        mean += noise[i];
      }
      mean /= count;
      for (int i = 0; i < count; ++i) {
        gaps[i] = headway + noise[i] - mean;
        if (!(gaps[i] > 0.0))
          throw ConfigError("jitter produced a non-positive headway; reduce r_max_m");
      }
    }

    const double speed =
        spec.kind == InitialSpec::Kind::lane_counts ? 0.0 : eval_velocity(road.profiles[j], headway);
    // Phase-shift lanes so no two lanes ever start with vehicles exactly
    // aligned; an irrational fraction of the headway avoids coincidences
    // between commensurate lane counts.
    double x = headway * j * 0.3819660112501051;
    for (int i = 0; i < count; ++i) {
      state.x.push_back(x);
      state.v.push_back(speed);
      state.lane.push_back(j);
      x += gaps[i];
    }
  }
  if (total < 1) throw ConfigError("initial condition has no vehicles");

  rebuild_neighbors(state, road);
  return state;
}

TrafficState insert_vehicle(const TrafficState& state, const RoadConfig& road,
                            int lane_idx) {
  if (lane_idx < 0 || lane_idx >= road.lane_count())
    throw std::invalid_argument("insert_vehicle: lane out of range");

  TrafficState next = state;
  const auto& order = state.lane_order[lane_idx];
  double position = 0.0;
  double speed = eval_velocity(road.profiles[lane_idx], road.length);
  if (!order.empty()) {
    const int ref = *std::max_element(order.begin(), order.end());
    const int succ = state.neighbors[ref].next[lane_idx];
    const double gap = succ == ref ? road.length : ring_gap(state.x[ref], state.x[succ], road.length);
    if (gap / 2.0 <= road.profiles[lane_idx].d_s)
      throw InsertionError("insert_vehicle: half gap " + std::to_string(gap / 2.0) +
                           " m would violate the security distance");
    position = state.x[ref] + gap / 2.0;
    speed = eval_velocity(road.profiles[lane_idx], road.length / order.size());
  }
  next.x.push_back(position);
  next.v.push_back(speed);
  next.lane.push_back(lane_idx);
  rebuild_neighbors(next, road);
  return next;
}

TrafficState remove_vehicle(const TrafficState& state, const RoadConfig& road,
                            int vehicle) {
  if (vehicle < 0 || vehicle >= state.size())
    throw std::invalid_argument("remove_vehicle: unknown vehicle id " +
                                std::to_string(vehicle));
  TrafficState next;
  next.t = state.t;
  for (int n = 0; n < state.size(); ++n) {
    if (n == vehicle) continue;
    next.x.push_back(state.x[n]);
    next.v.push_back(state.v[n]);
    next.lane.push_back(state.lane[n]);
  }
  rebuild_neighbors(next, road);
  return next;
}

TrafficState prepare_scenario(const ScenarioConfig& cfg, SimRng& rng) {
  TrafficState state = build_initial_state(cfg, rng);
  if (cfg.remove_vehicle) state = remove_vehicle(state, cfg.road, *cfg.remove_vehicle);
  if (cfg.insert_lane) state = insert_vehicle(state, cfg.road, *cfg.insert_lane);
  return state;
}

}  // namespace traffic
