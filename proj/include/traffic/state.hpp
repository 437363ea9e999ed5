#ifndef TRAFFIC_STATE_HPP
#define TRAFFIC_STATE_HPP

#include <vector>

#include "traffic/model.hpp"

namespace traffic {

inline constexpr int kNoVehicle = -1;

// Per-vehicle neighbourhood record: current lane plus, for every lane k,
// the nearest vehicle ahead (next[k]) and behind (prev[k]) by ring
// position. In the vehicle's own lane these are the follow-the-leader
// successor/predecessor (the vehicle itself when it is alone); in an
// empty lane both are kNoVehicle.
struct NeighborVector {
  int lane = 0;
  std::vector<int> next;
  std::vector<int> prev;

  bool operator==(const NeighborVector&) const = default;
};

// Full simulation state on the ring. Positions are unbounded reals,
// reduced modulo the road length only where a gap or an output value is
// computed, so trajectories stay smooth.
struct TrafficState {
  double t = 0.0;
  std::vector<double> x;    // position [m]
  std::vector<double> v;    // velocity [m/s]
  std::vector<int> lane;    // 0-based lane index
  // Per-lane vehicle indices in ring order (ascending x mod L at the last
  // rebuild; the cyclic order stays valid while gaps remain positive).
  std::vector<std::vector<int>> lane_order;
  std::vector<NeighborVector> neighbors;

  int size() const { return static_cast<int>(x.size()); }
  int lane_count(int j) const { return static_cast<int>(lane_order[j].size()); }

  // Same-lane successor of n (n itself when alone in its lane).
  int successor(int n) const { return neighbors[n].next[lane[n]]; }

  // Ring gap from n to its same-lane successor, in (0, L].
  double gap_to_successor(int n, double length) const {
    const int s = successor(n);
    return s == n ? length : ring_gap(x[n], x[s], length);
  }
};

// Sorts every lane by position to rebuild the ring orders, then derives
// all neighbor vectors from scratch. Throws DegenerateOrderingError if two
// vehicles in one lane share a position.
void rebuild_neighbors(TrafficState& state, const RoadConfig& road);

// Checks Sum_j |I_j| == N and that every stored neighbor vector matches a
// fresh rebuild; used by tests and by debug assertions.
bool neighbors_consistent(const TrafficState& state, const RoadConfig& road);

}  // namespace traffic

#endif
