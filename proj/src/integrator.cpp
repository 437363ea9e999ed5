#include "traffic/integrator.hpp"

#include <cmath>

namespace traffic {

namespace {

// Dormand-Prince 5(4) tableau, order-5 solution weights only.
constexpr int kStages = 6;
constexpr double kA[kStages][kStages - 1] = {
    {},
    {1.0 / 5.0},
    {3.0 / 40.0, 9.0 / 40.0},
    {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0},
    {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0},
    {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0,
     -5103.0 / 18656.0},
};
constexpr double kB[kStages] = {35.0 / 384.0,     0.0,        500.0 / 1113.0,
                                125.0 / 192.0,    -2187.0 / 6784.0,
                                11.0 / 84.0};

// Winding-aware gap of a consecutive same-lane pair: the additive offset
// is fixed at the start of a step, so a post-step value <= 0 means the
// follower passed its leader during the step.
struct PairGap {
  int follower;
  int leader;
  int lane;
  double offset;
};

std::vector<PairGap> collect_pairs(const TrafficState& state, double length) {
  std::vector<PairGap> pairs;
  pairs.reserve(state.x.size());
  for (int j = 0; j < static_cast<int>(state.lane_order.size()); ++j) {
    const auto& order = state.lane_order[j];
    const std::size_t count = order.size();
    for (std::size_t i = 0; i < count; ++i) {
      const int n = order[i];
      const int s = order[(i + 1) % count];
      const double gap = s == n ? length : ring_gap(state.x[n], state.x[s], length);
      pairs.push_back({n, s, j, gap - (state.x[s] - state.x[n])});
    }
  }
  return pairs;
}

int draw_budget(const IntegratorConfig& cfg, SimRng& rng) {
  const double expected = cfg.nc * cfg.dt;
  int budget = static_cast<int>(std::floor(expected));
  const double frac = expected - std::floor(expected);
  if (frac > 0.0 && rng.bernoulli(frac)) ++budget;
  return budget;
}

void record_sample(Trajectory& out, const TrafficState& state, int n_lanes) {
  out.times.push_back(state.t);
  out.x.push_back(state.x);
  out.v.push_back(state.v);
  out.lane.push_back(state.lane);
  std::vector<int> counts(n_lanes);
  for (int j = 0; j < n_lanes; ++j) counts[j] = state.lane_count(j);
  out.lane_counts.push_back(std::move(counts));
}

}  // namespace

TrafficState rk5_step(const TrafficState& state, double dt, const RhsFn& derivative) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk5_step: dt must be positive");
  const int n = state.size();

  StateDerivative k[kStages];
  k[0] = derivative(state);
  TrafficState stage = state;
  for (int s = 1; s < kStages; ++s) {
    for (int i = 0; i < n; ++i) {
      double ax = 0.0, av = 0.0;
      for (int q = 0; q < s; ++q) {
        ax += kA[s][q] * k[q].dx[i];
        av += kA[s][q] * k[q].dv[i];
      }
      stage.x[i] = state.x[i] + dt * ax;
      stage.v[i] = state.v[i] + dt * av;
    }
    k[s] = derivative(stage);
  }

  TrafficState next = state;
  for (int i = 0; i < n; ++i) {
    double bx = 0.0, bv = 0.0;
    for (int s = 0; s < kStages; ++s) {
      bx += kB[s] * k[s].dx[i];
      bv += kB[s] * k[s].dv[i];
    }
    next.x[i] = state.x[i] + dt * bx;
    next.v[i] = state.v[i] + dt * bv;
  }
  next.t = state.t + dt;
  return next;
}

TrafficState rk5_step(const TrafficState& state, const ModelParams& params,
                      const RoadConfig& road, double dt) {
  return rk5_step(state, dt, [&](const TrafficState& s) { return rhs(s, params, road); });
}

Trajectory simulate(const TrafficState& initial, const ModelParams& params,
                    const RoadConfig& road, const IntegratorConfig& cfg,
                    const ChangePolicy& change_policy) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
  if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("simulate: t_final must be >= 0");
  if (!(cfg.nc >= 0.0)) throw std::invalid_argument("simulate: nc must be >= 0");
  const int stride = cfg.sample_stride > 0 ? cfg.sample_stride : 1;
  const int n_lanes = road.lane_count();
  const long n_steps = std::lround(cfg.t_final / cfg.dt);

  TrafficState state = initial;
  rebuild_neighbors(state, road);

  SimRng rng(cfg.seed);
  Trajectory out;
  record_sample(out, state, n_lanes);

  for (long step = 1; step <= n_steps; ++step) {
    const int budget = draw_budget(cfg, rng);
    if (budget > 0) {
      rebuild_neighbors(state, road);  // cross-lane pointers go stale under motion
      auto events = change_policy(state, params, road, rng, budget);
      out.events.insert(out.events.end(), events.begin(), events.end());
    }

    const auto pairs = collect_pairs(state, road.length);
    try {
      state = rk5_step(state, params, road, cfg.dt);
    } catch (const CollisionError& err) {
      out.aborted = true;
      out.collision = CollisionInfo{state.t, err.follower, err.leader, err.gap};
      return out;
    }

    bool sub_security = false;
    for (const auto& pair : pairs) {
      const double gap = state.x[pair.leader] - state.x[pair.follower] + pair.offset;
      if (gap <= 0.0) {
        out.aborted = true;
        out.collision = CollisionInfo{state.t, pair.follower, pair.leader, gap};
        record_sample(out, state, n_lanes);
        return out;
      }
      if (gap <= road.profiles[pair.lane].d_s) sub_security = true;
    }
    if (sub_security) ++out.sub_security_steps;

    if (step % stride == 0 || step == n_steps) record_sample(out, state, n_lanes);
  }
  return out;
}

}  // namespace traffic
