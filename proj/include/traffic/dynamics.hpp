#ifndef TRAFFIC_DYNAMICS_HPP
#define TRAFFIC_DYNAMICS_HPP

#include "traffic/state.hpp"

namespace traffic {

struct StateDerivative {
  std::vector<double> dx;  // = v [m/s]
  std::vector<double> dv;  // [m/s^2]
};

// Right-hand side of the coupled lane ODEs with the lane topology frozen:
// dx_n = v_n, dv_n = acceleration against the same-lane successor. A
// vehicle alone in its lane sees gap L and zero velocity difference.
StateDerivative rhs(const TrafficState& state, const ModelParams& params,
                    const RoadConfig& road);

}  // namespace traffic

#endif
