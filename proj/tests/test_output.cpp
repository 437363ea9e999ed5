#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "traffic/output.hpp"

using namespace traffic;
namespace fs = std::filesystem;

namespace {

const VelocityProfile kV1{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 1.0};
const VelocityProfile kV2{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 2.0};

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path temp_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "traffic_output_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Trajectory equilibrium_run(const RoadConfig& road, const ModelParams& params,
                           double t_final) {
  ScenarioConfig cfg;
  cfg.road = road;
  cfg.model = params;
  cfg.integrator = {0.1, t_final, 11, 1.0, 1};
  cfg.initial.kind = InitialSpec::Kind::global_equilibrium;
  cfg.initial.total_vehicles = 100;
  SimRng rng(cfg.integrator.seed);
  const TrafficState initial = build_initial_state(cfg, rng);
  return simulate(initial, params, road, cfg.integrator);
}

}  // namespace

TEST_CASE("csv writers emit the documented schemas") {
  const RoadConfig road{1500.0, {kV1, kV2}};
  const ModelParams params{5.0, 100.0};
  const Trajectory run = equilibrium_run(road, params, 2.0);
  const fs::path dir = temp_dir("csv");
  write_outputs(run, road, dir.string(), false);

  const std::string trajectory = slurp(dir / "trajectory.csv");
  CHECK(trajectory.rfind("t,vehicle_id,lane,x_mod_L,v\n", 0) == 0);
  // row count: header + samples * vehicles
  const auto rows = std::count(trajectory.begin(), trajectory.end(), '\n');
  CHECK(rows == static_cast<long>(1 + run.sample_count() * run.x[0].size()));

  const std::string counts = slurp(dir / "lane_counts.csv");
  CHECK(counts.rfind("t,N_1,N_2\n", 0) == 0);
  // equilibrium: every data row carries the same counts
  std::istringstream lines(counts);
  std::string line;
  std::getline(lines, line);
  int data_rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.find(',')) == ",33,67");
    ++data_rows;
  }
  CHECK(data_rows == static_cast<int>(run.sample_count()));

  const std::string events = slurp(dir / "events.csv");
  CHECK(events.rfind("t,vehicle_id,from,to,margin\n", 0) == 0);
  // no lane changes from the coupled equilibrium
  CHECK(std::count(events.begin(), events.end(), '\n') == 1);

  CHECK_FALSE(fs::exists(dir / "trajectory_lane1.svg"));
}

TEST_CASE("svg plots are well-formed and split wrap-arounds") {
  const RoadConfig road{1500.0, {kV1, kV2}};
  const ModelParams params{5.0, 100.0};
  // long enough for every vehicle to wrap at least once
  const Trajectory run = equilibrium_run(road, params, 500.0);
  const fs::path dir = temp_dir("svg");
  write_outputs(run, road, dir.string(), true);

  for (const char* name : {"trajectory_lane1.svg", "trajectory_lane2.svg"}) {
    const std::string svg = slurp(dir / name);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
  }
  // wrap splitting: lane 1 has 33 vehicles travelling ~3.34 m/s for 500 s,
  // i.e. each crosses the origin at least once, so strictly more polylines
  // than vehicles
  const std::string svg = slurp(dir / "trajectory_lane1.svg");
  std::size_t polylines = 0;
  for (std::size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1))
    ++polylines;
  CHECK(polylines > 33);
}

TEST_CASE("report payloads are valid json with the expected fields") {
  ScenarioConfig cfg;
  cfg.road = {1500.0, {kV1, kV2}};
  cfg.model = {5.0, 100.0};
  cfg.integrator = {0.1, 500.0, 1, 1.0, 1};
  cfg.initial.kind = InitialSpec::Kind::global_equilibrium;
  cfg.initial.total_vehicles = 100;

  const EquilibriumSolution eq = two_lane_equilibrium(cfg.road, 100);
  const auto eq_json = nlohmann::json::parse(equilibrium_json(eq));
  CHECK(eq_json.at("headways_m")[0].get<double>() == doctest::Approx(45.4).epsilon(1e-2));
  CHECK(eq_json.at("counts")[1].get<int>() == 67);

  const auto thresholds = nlohmann::json::parse(thresholds_json(cfg));
  CHECK(thresholds.at("slow_lane").at("first_order_threshold_m").get<double>() ==
        doctest::Approx(-15.54).epsilon(1e-2));
  CHECK(thresholds.at("fast_lane").at("positive_threshold_m").get<double>() == 5.0);

  const auto report = nlohmann::json::parse(stability_report_json(cfg));
  CHECK(report.contains("input_echo"));
  CHECK(report.at("per_lane").size() == 2);
  CHECK(report.at("per_lane")[0].at("classification").get<std::string>() == "stable");
  CHECK(report.contains("thresholds"));

  // the echoed input parses back to the identical configuration
  const ScenarioConfig echoed = parse_config(report.at("input_echo").dump());
  CHECK(echoed == cfg);
}
