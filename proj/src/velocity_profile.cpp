#include "traffic/velocity_profile.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace traffic {

namespace {

double raw_value(const VelocityProfile& p, double gap) {
  return p.v_off + p.v_amp * std::tanh(p.c1 * (gap - p.l_c) - p.c2);
}

void check_gap(double gap) {
  if (!(gap > 0.0)) {
    throw std::domain_error("velocity profile: gap must be positive, got " +
                            std::to_string(gap));
  }
}

}  // namespace

double eval_velocity(const VelocityProfile& profile, double gap) {
  check_gap(gap);
  if (gap <= profile.d_s) return 0.0;
  const double raw = raw_value(profile, gap);
  return raw > 0.0 ? profile.scale * raw : 0.0;
}

double eval_velocity_derivative(const VelocityProfile& profile, double gap) {
  check_gap(gap);
  if (gap <= profile.d_s) return 0.0;
  if (raw_value(profile, gap) <= 0.0) return 0.0;
  const double sech = 1.0 / std::cosh(profile.c1 * (gap - profile.l_c) - profile.c2);
  return profile.scale * profile.v_amp * profile.c1 * sech * sech;
}

double zero_gap(const VelocityProfile& profile) {
  // raw crosses zero where tanh(...) == -v_off/v_amp
  double cross = profile.d_s;
  if (profile.v_amp > 0.0 && profile.v_off < profile.v_amp) {
    const double arg = std::atanh(-profile.v_off / profile.v_amp);
    cross = profile.l_c + (arg + profile.c2) / profile.c1;
  }
  return std::max(profile.d_s, cross);
}

double invert_velocity(const VelocityProfile& profile, double speed) {
  if (!(speed > 0.0) || !(speed < profile.v_max())) {
    throw std::domain_error("invert_velocity: speed " + std::to_string(speed) +
                            " outside (0, " + std::to_string(profile.v_max()) + ")");
  }
  double lo = zero_gap(profile);
  double hi = lo + 1.0;
  while (eval_velocity(profile, hi) < speed) {
    hi = lo + 2.0 * (hi - lo);
    if (hi > 1e12) {
      throw std::domain_error("invert_velocity: failed to bracket speed");
    }
  }
  // V is strictly increasing on (lo, inf); plain bisection.
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (eval_velocity(profile, mid) < speed)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace traffic
