#include "traffic/lane_change.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace traffic {

namespace {

double wrap(double x, double length) {
  double m = std::fmod(x, length);
  if (m < 0.0) m += length;
  return m;
}

// Acceleration of n against vehicle m as its successor in lane `lane_idx`;
// m == kNoVehicle means an open road ahead: gap L, matched speed.
double accel_against(const TrafficState& state, const ModelParams& params,
                     const RoadConfig& road, int n, int m, int lane_idx) {
  const double gap =
      (m == kNoVehicle || m == n) ? road.length : ring_gap(state.x[n], state.x[m], road.length);
  const double v_lead = (m == kNoVehicle || m == n) ? state.v[n] : state.v[m];
  return acceleration(params, road.profiles[lane_idx], gap, state.v[n], v_lead);
}

}  // namespace

IncentiveCheck incentive_ok(const TrafficState& state, const ModelParams& params,
                            const RoadConfig& road, int n, int target_lane) {
  const NeighborVector& nb = state.neighbors[n];
  IncentiveCheck check;
  check.target_accel = accel_against(state, params, road, n, nb.next[target_lane], target_lane);
  const double own_accel = accel_against(state, params, road, n, nb.next[nb.lane], nb.lane);
  check.margin = check.target_accel - own_accel;
  check.ok = check.margin > 0.0;
  return check;
}

SecurityCheck security_ok(const TrafficState& state, const RoadConfig& road,
                          int n, int target_lane) {
  const NeighborVector& nb = state.neighbors[n];
  const int s = nb.next[target_lane];
  const int p = nb.prev[target_lane];
  SecurityCheck check;
  check.gap_to_successor = s == kNoVehicle ? road.length : ring_gap(state.x[n], state.x[s], road.length);
  check.gap_from_predecessor = p == kNoVehicle ? road.length : ring_gap(state.x[p], state.x[n], road.length);
  // A target-lane vehicle exactly at n's position is neither strictly ahead
  // nor strictly behind, so the neighbour pointers skip it; the slot it
  // leaves has zero width. It is either the predecessor's successor (when
  // it differs from s) or, alone in its lane, s itself at wrap distance L.
  if (s != kNoVehicle && p != kNoVehicle) {
    const bool colocated =
        state.neighbors[p].next[target_lane] != s ||
        wrap(state.x[s] - state.x[n], road.length) == 0.0 ||
        wrap(state.x[n] - state.x[p], road.length) == 0.0;
    if (colocated) {
      check.gap_to_successor = 0.0;
      check.gap_from_predecessor = 0.0;
    }
  }
  const double d_s = road.profiles[target_lane].d_s;
  check.ok = check.gap_to_successor > d_s && check.gap_from_predecessor > d_s;
  return check;
}

ChangeDecision evaluate_change(const TrafficState& state, const ModelParams& params,
                               const RoadConfig& road, int n, int target_lane) {
  const NeighborVector& nb = state.neighbors[n];
  ChangeDecision decision;
  decision.vehicle = n;
  decision.from_lane = nb.lane;
  decision.to_lane = target_lane;

  const bool no_target_successor = nb.next[target_lane] == kNoVehicle;
  const bool no_target_predecessor = nb.prev[target_lane] == kNoVehicle;

  const SecurityCheck security = security_ok(state, road, n, target_lane);
  decision.gap_to_successor = security.gap_to_successor;
  decision.gap_from_predecessor = security.gap_from_predecessor;

  if (nb.next[nb.lane] == kNoVehicle) {
    // free-flowing on an open road: nothing to gain from a change
    decision.accept = false;
    decision.reason = RejectReason::no_own_leader;
    decision.target_accel = accel_against(state, params, road, n, nb.next[target_lane], target_lane);
    return decision;
  }

  const IncentiveCheck incentive = incentive_ok(state, params, road, n, target_lane);
  decision.margin = incentive.margin;
  decision.target_accel = incentive.target_accel;

  if (no_target_successor && no_target_predecessor) {
    decision.accept = true;
    return decision;
  }
  if (no_target_successor) {
    decision.accept = security.ok;
    decision.reason = security.ok ? RejectReason::none : RejectReason::security;
    return decision;
  }
  if (no_target_predecessor) {
    decision.accept = incentive.ok;
    decision.reason = incentive.ok ? RejectReason::none : RejectReason::incentive;
    return decision;
  }
  if (!incentive.ok) {
    decision.reason = RejectReason::incentive;
    return decision;
  }
  if (!security.ok) {
    decision.reason = RejectReason::security;
    return decision;
  }
  decision.accept = true;
  return decision;
}

std::optional<ChangeDecision> best_target(const TrafficState& state,
                                          const ModelParams& params,
                                          const RoadConfig& road, int n) {
  const int j = state.neighbors[n].lane;
  std::optional<ChangeDecision> best;
  for (const int target : {j - 1, j + 1}) {
    if (target < 0 || target >= road.lane_count()) continue;
    ChangeDecision decision = evaluate_change(state, params, road, n, target);
    if (!decision.accept) continue;
    if (!best || decision.target_accel > best->target_accel ||
        (decision.target_accel == best->target_accel && target > best->to_lane)) {
      best = decision;
    }
  }
  return best;
}

void apply_change(TrafficState& state, const RoadConfig& road, int n, int to_lane) {
  const int from_lane = state.neighbors[n].lane;
  const double length = road.length;
  const int n_vehicles = state.size();

  const int s_old = state.neighbors[n].next[from_lane];
  const int p_old = state.neighbors[n].prev[from_lane];
  const int s_new = state.neighbors[n].next[to_lane];
  const int p_new = state.neighbors[n].prev[to_lane];
  const bool from_lane_empties = s_old == n;
  const bool to_lane_was_empty = s_new == kNoVehicle;

  // membership
  auto& old_order = state.lane_order[from_lane];
  old_order.erase(std::find(old_order.begin(), old_order.end(), n));
  auto& new_order = state.lane_order[to_lane];
  const double xn = wrap(state.x[n], length);
  const auto pos = std::lower_bound(new_order.begin(), new_order.end(), xn,
                                    [&](int m, double value) {
                                      return wrap(state.x[m], length) < value;
                                    });
  new_order.insert(pos, n);
  state.lane[n] = to_lane;

  // the mover's own record
  NeighborVector& nb = state.neighbors[n];
  nb.lane = to_lane;
  nb.next[to_lane] = to_lane_was_empty ? n : s_new;
  nb.prev[to_lane] = to_lane_was_empty ? n : p_new;
  nb.next[from_lane] = from_lane_empties ? kNoVehicle : s_old;
  nb.prev[from_lane] = from_lane_empties ? kNoVehicle : p_old;

  // Everyone else. Departure reroutes any pointer at n in the old lane to
  // n's former neighbours; arrival inserts n wherever it is now the
  // nearest lane-to vehicle ahead or behind. Updating only n's own four
  // neighbours would not be enough: every vehicle between the new-lane
  // predecessor and n has its forward pointer move to n.
  for (int m = 0; m < n_vehicles; ++m) {
    if (m == n) continue;
    NeighborVector& mb = state.neighbors[m];
    if (mb.next[from_lane] == n) mb.next[from_lane] = from_lane_empties ? kNoVehicle : s_old;
    if (mb.prev[from_lane] == n) mb.prev[from_lane] = from_lane_empties ? kNoVehicle : p_old;
    if (mb.lane == to_lane) {
      if (m == p_new) mb.next[to_lane] = n;
      if (m == s_new) mb.prev[to_lane] = n;
    } else {
      if (to_lane_was_empty) {
        mb.next[to_lane] = n;
        mb.prev[to_lane] = n;
      } else {
        const double ahead_n = ring_gap(state.x[m], state.x[n], length);
        const double behind_n = ring_gap(state.x[n], state.x[m], length);
        const int cur_next = mb.next[to_lane];
        const int cur_prev = mb.prev[to_lane];
        if (ahead_n < ring_gap(state.x[m], state.x[cur_next], length)) mb.next[to_lane] = n;
        if (behind_n < ring_gap(state.x[cur_prev], state.x[m], length)) mb.prev[to_lane] = n;
      }
    }
  }
}

std::vector<LaneChangeEvent> lane_change_phase(TrafficState& state,
                                               const ModelParams& params,
                                               const RoadConfig& road, SimRng& rng,
                                               int budget) {
  std::vector<LaneChangeEvent> events;
  const int n_vehicles = state.size();
  if (budget <= 0 || n_vehicles == 0) return events;

  // partial Fisher-Yates draw without replacement
  std::vector<int> pool(n_vehicles);
  std::iota(pool.begin(), pool.end(), 0);
  const int draws = std::min(budget, n_vehicles);
  for (int i = 0; i < draws; ++i) {
    const int pick = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n_vehicles - i)));
    std::swap(pool[i], pool[pick]);
    const int candidate = pool[i];
    const auto decision = best_target(state, params, road, candidate);
    if (!decision) continue;  // a rejecting candidate still consumes budget
    apply_change(state, road, candidate, decision->to_lane);
    events.push_back({state.t, candidate, decision->from_lane, decision->to_lane,
                      decision->margin});
  }
  return events;
}

}  // namespace traffic
