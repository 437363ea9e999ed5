#ifndef TRAFFIC_VELOCITY_PROFILE_HPP
#define TRAFFIC_VELOCITY_PROFILE_HPP

namespace traffic {

// Desired-velocity function of the headway, shifted-tanh family:
//
//   V(g) = scale * max{0, v_off + v_amp * tanh(c1*(g - l_c) - c2)},   g > d_s
//   V(g) = 0,                                                         g <= d_s
//
// Zero below the security distance, monotone above it, bounded by
// v_max() = scale*(v_off + v_amp). A lane family like V2 = 2*V1 is the
// same base profile with a different scale.
struct VelocityProfile {
  double v_off = 0.0;  // speed offset [m/s]
  double v_amp = 0.0;  // amplitude [m/s]
  double c1 = 0.0;     // slope [1/m]
  double c2 = 0.0;     // shift [-]
  double l_c = 0.0;    // vehicle length [m]
  double d_s = 0.0;    // security distance [m]
  double scale = 1.0;  // positive multiplier [-]

  double v_max() const { return scale * (v_off + v_amp); }

  bool operator==(const VelocityProfile&) const = default;
};

// V(gap). Throws std::domain_error for gap <= 0.
double eval_velocity(const VelocityProfile& profile, double gap);

// dV/dgap on the smooth branch, 0 on the clamped one.
// Throws std::domain_error for gap <= 0.
double eval_velocity_derivative(const VelocityProfile& profile, double gap);

// Unique gap on the increasing branch with V(gap) == speed, bisected to
// 1e-9 m. Requires 0 < speed < v_max().
double invert_velocity(const VelocityProfile& profile, double speed);

// Largest gap at which the profile still evaluates to zero (the start of
// the increasing branch).
double zero_gap(const VelocityProfile& profile);

}  // namespace traffic

#endif
