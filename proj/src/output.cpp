#include "traffic/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace traffic {

using nlohmann::json;

namespace {

std::ofstream open_file(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

std::string num(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

double wrap(double x, double length) {
  double m = std::fmod(x, length);
  if (m < 0.0) m += length;
  return m;
}

int total_from_initial(const ScenarioConfig& cfg) {
  const InitialSpec& spec = cfg.initial;
  switch (spec.kind) {
    case InitialSpec::Kind::global_equilibrium:
      return spec.total_vehicles;
    case InitialSpec::Kind::uniform_headways: {
      int total = 0;
      for (const double h : spec.headways_m)
        total += static_cast<int>(std::llround(cfg.road.length / h));
      return total;
    }
    case InitialSpec::Kind::lane_counts:
    case InitialSpec::Kind::jittered_counts: {
      int total = 0;
      for (const int c : spec.counts) total += c;
      return total;
    }
  }
  return 0;
}

std::vector<int> counts_from_initial(const ScenarioConfig& cfg) {
  const InitialSpec& spec = cfg.initial;
  std::vector<int> counts;
  switch (spec.kind) {
    case InitialSpec::Kind::global_equilibrium: {
      if (cfg.road.lane_count() == 1) {
        counts.push_back(spec.total_vehicles);
      } else {
        const EquilibriumSolution eq = multi_lane_equilibrium(cfg.road, spec.total_vehicles);
        for (std::size_t j = 0; j < eq.headway.size(); ++j) {
          double h = eq.headway[j];
          if (spec.epsilon_lane && static_cast<int>(j) == *spec.epsilon_lane)
            h += spec.epsilon_m;
          counts.push_back(static_cast<int>(std::llround(cfg.road.length / h)));
        }
      }
      break;
    }
    case InitialSpec::Kind::uniform_headways:
      for (std::size_t j = 0; j < spec.headways_m.size(); ++j) {
        double h = spec.headways_m[j];
        if (spec.epsilon_lane && static_cast<int>(j) == *spec.epsilon_lane)
          h += spec.epsilon_m;
        counts.push_back(static_cast<int>(std::llround(cfg.road.length / h)));
      }
      break;
    case InitialSpec::Kind::lane_counts:
    case InitialSpec::Kind::jittered_counts:
      counts = spec.counts;
      break;
  }
  return counts;
}

const char* direction_name(ThresholdDirection direction) {
  switch (direction) {
    case ThresholdDirection::slow_to_fast: return "slow_to_fast";
    case ThresholdDirection::fast_to_slow: return "fast_to_slow";
    case ThresholdDirection::into_perturbed: return "into_perturbed";
  }
  return "?";
}

json report_to_json(const ThresholdReport& report) {
  json j{{"direction", direction_name(report.direction)},
         {"perturbed_lane", report.perturbed_lane + 1},
         {"positive_threshold_m", report.positive}};
  if (report.from_lane >= 0) {
    j["from_lane"] = report.from_lane + 1;
    j["to_lane"] = report.to_lane + 1;
  }
  if (std::isfinite(report.exact)) j["exact_threshold_m"] = report.exact;
  if (std::isfinite(report.first_order)) j["first_order_threshold_m"] = report.first_order;
  return j;
}

json thresholds_payload(const ScenarioConfig& cfg) {
  json out = json::object();
  if (cfg.road.lane_count() == 2) {
    const EquilibriumSolution eq = two_lane_equilibrium(cfg.road, total_from_initial(cfg));
    out["slow_lane"] = report_to_json(threshold_slow_lane(cfg.model, cfg.road, eq));
    out["fast_lane"] = report_to_json(threshold_fast_lane(cfg.model, cfg.road, eq));
  } else if (cfg.road.lane_count() == 3) {
    const EquilibriumSolution eq = multi_lane_equilibrium(cfg.road, total_from_initial(cfg));
    const auto reports = middle_lane_thresholds(cfg.model, cfg.road, eq);
    out["middle_inflow"] = report_to_json(reports[0]);
    out["middle_to_slow"] = report_to_json(reports[1]);
    out["middle_to_fast"] = report_to_json(reports[2]);
  } else {
    throw std::invalid_argument("thresholds need a 2- or 3-lane road");
  }
  return out;
}

}  // namespace

void write_trajectory_csv(const Trajectory& trajectory, double road_length,
                          const std::string& path) {
  auto out = open_file(path);
  out << "t,vehicle_id,lane,x_mod_L,v\n";
  for (std::size_t s = 0; s < trajectory.sample_count(); ++s) {
    const auto& xs = trajectory.x[s];
    for (std::size_t n = 0; n < xs.size(); ++n) {
      out << num(trajectory.times[s]) << ',' << n + 1 << ','
          << trajectory.lane[s][n] + 1 << ',' << num(wrap(xs[n], road_length)) << ','
          << num(trajectory.v[s][n]) << '\n';
    }
  }
}

void write_lane_counts_csv(const Trajectory& trajectory, const std::string& path) {
  auto out = open_file(path);
  out << 't';
  const std::size_t n_lanes = trajectory.lane_counts.empty() ? 0 : trajectory.lane_counts[0].size();
  for (std::size_t j = 1; j <= n_lanes; ++j) out << ",N_" << j;
  out << '\n';
  for (std::size_t s = 0; s < trajectory.sample_count(); ++s) {
    out << num(trajectory.times[s]);
    for (const int count : trajectory.lane_counts[s]) out << ',' << count;
    out << '\n';
  }
}

void write_events_csv(const Trajectory& trajectory, const std::string& path) {
  auto out = open_file(path);
  out << "t,vehicle_id,from,to,margin\n";
  for (const auto& event : trajectory.events) {
    out << num(event.t) << ',' << event.vehicle + 1 << ',' << event.from_lane + 1
        << ',' << event.to_lane + 1 << ',' << num(event.margin) << '\n';
  }
}

void write_trajectory_svg(const Trajectory& trajectory, double road_length,
                          int lane_idx, const std::string& path) {
  const double width = 960.0, height = 540.0;
  const double ml = 55.0, mr = 15.0, mt = 30.0, mb = 40.0;
  const double t0 = trajectory.times.empty() ? 0.0 : trajectory.times.front();
  const double t1 = trajectory.times.empty() ? 1.0 : std::max(trajectory.times.back(), t0 + 1e-9);
  const double sx = (width - ml - mr) / (t1 - t0);
  const double sy = (height - mt - mb) / road_length;
  auto px = [&](double t) { return ml + sx * (t - t0); };
  auto py = [&](double x) { return height - mb - sy * x; };

  auto out = open_file(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">lane "
      << lane_idx + 1 << ": position [m] vs time [s]</text>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << width - mr
      << "\" y2=\"" << py(0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << ml << "\" y2=\""
      << py(road_length) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double t = t0 + (t1 - t0) * i / 5.0;
    out << "<text x=\"" << px(t) << "\" y=\"" << height - mb + 18
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
        << num(t) << "</text>\n";
    const double x = road_length * i / 5.0;
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(x) + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
        << num(x) << "</text>\n";
  }

  const std::size_t n_vehicles = trajectory.x.empty() ? 0 : trajectory.x[0].size();
  for (std::size_t n = 0; n < n_vehicles; ++n) {
    std::string points;
    double prev_wrapped = 0.0;
    bool open = false;
    auto flush = [&]() {
      if (open && !points.empty())
        out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.6\" points=\""
            << points << "\"/>\n";
      points.clear();
      open = false;
    };
    for (std::size_t s = 0; s < trajectory.sample_count(); ++s) {
      if (trajectory.lane[s][n] != lane_idx) {
        flush();
        continue;
      }
      const double xw = wrap(trajectory.x[s][n], road_length);
      if (open && std::abs(xw - prev_wrapped) > road_length / 2.0) flush();
      points += num(px(trajectory.times[s]));
      points += ',';
      points += num(py(xw));
      points += ' ';
      prev_wrapped = xw;
      open = true;
    }
    flush();
  }
  out << "</svg>\n";
}

void write_outputs(const Trajectory& trajectory, const RoadConfig& road,
                   const std::string& directory, bool svg) {
  std::filesystem::create_directories(directory);
  const std::filesystem::path dir(directory);
  write_trajectory_csv(trajectory, road.length, (dir / "trajectory.csv").string());
  write_lane_counts_csv(trajectory, (dir / "lane_counts.csv").string());
  write_events_csv(trajectory, (dir / "events.csv").string());
  if (svg) {
    for (int j = 0; j < road.lane_count(); ++j) {
      write_trajectory_svg(trajectory, road.length, j,
                           (dir / ("trajectory_lane" + std::to_string(j + 1) + ".svg")).string());
    }
  }
}

std::string equilibrium_json(const EquilibriumSolution& eq) {
  json j{{"road_length_m", eq.road_length},
         {"headways_m", eq.headway},
         {"occupancy", eq.occupancy},
         {"counts", eq.count},
         {"v_eq_mps", eq.v_eq}};
  return j.dump(2) + "\n";
}

std::string stability_report_json(const ScenarioConfig& cfg) {
  const std::vector<int> counts = counts_from_initial(cfg);
  json lanes = json::array();
  for (int j = 0; j < cfg.road.lane_count(); ++j) {
    const VelocityProfile& profile = cfg.road.profiles[j];
    json lane{{"lane", j + 1}};
    const int n = j < static_cast<int>(counts.size()) ? counts[j] : 0;
    lane["initial_count"] = n;
    if (n >= 1) {
      const double h = cfg.road.length / n;
      lane["headway_m"] = h;
      const Stability cls = classify_stability(cfg.model, profile, h);
      lane["classification"] = cls == Stability::stable    ? "stable"
                               : cls == Stability::marginal ? "marginal"
                                                            : "unstable";
      if (n >= 2) lane["max_growth_rate_per_s"] = max_growth_rate(cfg.model, profile, h, n);
    }
    const int n_max = static_cast<int>(cfg.road.length / std::max(1.0, profile.d_s)) + 1;
    json n_ranges = json::array();
    for (const auto& [lo, hi] : stable_n_ranges(cfg.model, profile, cfg.road.length, n_max))
      n_ranges.push_back({lo, hi});
    lane["stable_n_ranges"] = n_ranges;
    json h_intervals = json::array();
    for (const auto& [lo, hi] :
         stable_ranges(cfg.model, profile, std::max(1.0, profile.d_s / 2.0), cfg.road.length))
      h_intervals.push_back({lo, hi});
    lane["stable_h_intervals_m"] = h_intervals;
    lanes.push_back(lane);
  }

  json root{{"input_echo", json::parse(serialize_config(cfg))}, {"per_lane", lanes}};
  if (cfg.road.lane_count() == 2 || cfg.road.lane_count() == 3)
    root["thresholds"] = thresholds_payload(cfg);
  return root.dump(2) + "\n";
}

std::string thresholds_json(const ScenarioConfig& cfg) {
  return thresholds_payload(cfg).dump(2) + "\n";
}

}  // namespace traffic
