// Command-line front end: declarative scenario in, CSV/SVG/JSON out.
//
// Exit codes: 0 success, 2 configuration error, 3 collision abort,
// 1 any other runtime failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "traffic/output.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCollision = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> stride;
};

traffic::ScenarioConfig load(const CommonOptions& opts) {
  traffic::ScenarioConfig cfg = traffic::load_config(opts.config_path);
  if (opts.seed) cfg.integrator.seed = *opts.seed;
  if (opts.stride) cfg.integrator.sample_stride = *opts.stride;
  return cfg;
}

void write_text(const std::string& directory, const std::string& name,
                const std::string& payload) {
  std::filesystem::create_directories(directory);
  const auto path = std::filesystem::path(directory) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  out << payload;
  std::cout << "wrote " << path.string() << "\n";
}

int run_simulate(const CommonOptions& opts, bool svg_flag) {
  traffic::ScenarioConfig cfg = load(opts);
  traffic::SimRng rng(cfg.integrator.seed);
  traffic::TrafficState initial = traffic::prepare_scenario(cfg, rng);
  const traffic::Trajectory trajectory =
      traffic::simulate(initial, cfg.model, cfg.road, cfg.integrator);
  traffic::write_outputs(trajectory, cfg.road, opts.out_dir, svg_flag && cfg.write_svg);
  std::cout << "simulated " << trajectory.times.back() << " s, "
            << trajectory.events.size() << " lane-change events, outputs in "
            << opts.out_dir << "\n";
  if (trajectory.sub_security_steps > 0)
    std::cerr << "note: " << trajectory.sub_security_steps
              << " steps had a gap at or below the security distance\n";
  if (trajectory.aborted) {
    const auto& c = *trajectory.collision;
    std::cerr << "collision abort at t=" << c.time << " s between vehicles "
              << c.follower + 1 << " and " << c.leader + 1 << " (gap " << c.gap
              << " m); partial outputs written\n";
    return kExitCollision;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-lane ring-road traffic simulator and stability analyzer"};
  app.require_subcommand(1);

  CommonOptions opts;
  bool svg = true;

  auto add_common = [&](CLI::App* cmd, bool with_sim_flags) {
    cmd->add_option("config", opts.config_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory");
    if (with_sim_flags) {
      cmd->add_option("--seed", opts.seed, "override the config seed");
      cmd->add_option("--stride", opts.stride, "sample every k-th step");
      cmd->add_flag("--svg,!--no-svg", svg, "write per-lane SVG plots");
    }
  };

  auto* cmd_simulate = app.add_subcommand("simulate", "run a scenario and write outputs");
  add_common(cmd_simulate, true);
  auto* cmd_stability = app.add_subcommand("stability", "write the stability report");
  add_common(cmd_stability, false);
  auto* cmd_equilibrium = app.add_subcommand("equilibrium", "write the coupled equilibrium");
  add_common(cmd_equilibrium, false);
  auto* cmd_thresholds = app.add_subcommand("thresholds", "write the perturbation thresholds");
  add_common(cmd_thresholds, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_simulate->parsed()) return run_simulate(opts, svg);
    const traffic::ScenarioConfig cfg = load(opts);
    if (cmd_stability->parsed()) {
      write_text(opts.out_dir, "stability.json", traffic::stability_report_json(cfg));
    } else if (cmd_equilibrium->parsed()) {
      traffic::EquilibriumSolution eq;
      const int n = cfg.initial.kind == traffic::InitialSpec::Kind::global_equilibrium
                        ? cfg.initial.total_vehicles
                        : [&] {
                            int total = 0;
                            for (const int c : cfg.initial.counts) total += c;
                            for (const double h : cfg.initial.headways_m)
                              total += static_cast<int>(std::llround(cfg.road.length / h));
                            return total;
                          }();
      if (n < 1) throw traffic::ConfigError("equilibrium needs at least one vehicle");
      if (cfg.road.lane_count() == 1) {
        eq.road_length = cfg.road.length;
        eq.headway = {cfg.road.length / n};
        eq.occupancy = {static_cast<double>(n)};
        eq.count = {n};
        eq.v_eq = traffic::eval_velocity(cfg.road.profiles[0], cfg.road.length / n);
      } else if (cfg.road.lane_count() == 2) {
        eq = traffic::two_lane_equilibrium(cfg.road, n);
      } else {
        eq = traffic::multi_lane_equilibrium(cfg.road, n);
      }
      write_text(opts.out_dir, "equilibrium.json", traffic::equilibrium_json(eq));
    } else if (cmd_thresholds->parsed()) {
      write_text(opts.out_dir, "thresholds.json", traffic::thresholds_json(cfg));
    }
    return kExitOk;
  } catch (const traffic::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitOther;
  }
}
