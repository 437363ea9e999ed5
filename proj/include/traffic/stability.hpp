#ifndef TRAFFIC_STABILITY_HPP
#define TRAFFIC_STABILITY_HPP

#include <complex>
#include <utility>
#include <vector>

#include "traffic/model.hpp"

namespace traffic {

// Linearizing the single-lane model about the uniform flow with headway h
// and expanding in ring Fourier modes exp(i*a_k*n + z*t), a_k = 2*pi*k/N,
// gives a quadratic for the complex rate z:
//
//   z^2 + z*(alpha - beta/h^2*(e^{i a_k} - 1)) - alpha*V'(h)*(e^{i a_k} - 1) = 0
//
// The uniform flow is stable when every mode's roots have negative real
// part, which reduces to V'(h) < alpha/2 + beta/h^2.

struct ModeRoots {
  int k = 0;
  double a_k = 0.0;  // wavenumber [rad]
  std::complex<double> z1;  // root with the larger real part
  std::complex<double> z2;
};

enum class Stability { stable, marginal, unstable };

// Both roots of the mode-k quadratic via the complex quadratic formula.
// Requires N >= 1, 0 <= k < N, h > 0.
ModeRoots dispersion_roots(const ModelParams& params, double h, double vprime,
                           int k, int N);

// Critical value of V'(h) at which mode a_k is marginal:
//   alpha/(2 cos^2(a_k/2)) + beta/h^2 + 2 tan^2(a_k/2) * beta/h^2 * (beta/(alpha h^2) + 1)
// Diverges at a_k = pi (throws std::domain_error).
double critical_curve(const ModelParams& params, double h, double a_k);

// Compares V'(h) against alpha/2 + beta/h^2; equality within 1e-12 is
// marginal.
Stability classify_stability(const ModelParams& params, const VelocityProfile& profile,
                             double h);

// Sign changes of g(h) = V'(h) - alpha/2 - beta/h^2 bracketed on a uniform
// grid and bisected to 1e-6 m; returns the maximal intervals with g < 0.
std::vector<std::pair<double, double>> stable_ranges(const ModelParams& params,
                                                     const VelocityProfile& profile,
                                                     double h_min, double h_max,
                                                     int grid_points = 10000);

// Maximal runs of vehicle counts N in [1, n_max] for which the uniform
// flow with h = L/N is classified stable (marginal counts as stable).
std::vector<std::pair<int, int>> stable_n_ranges(const ModelParams& params,
                                                 const VelocityProfile& profile,
                                                 double length, int n_max);

// max over k = 1..N-1 of the dominant root's real part [1/s]; the k = 0
// uniform translation mode is excluded. Requires N >= 2.
double max_growth_rate(const ModelParams& params, const VelocityProfile& profile,
                       double h, int N);

}  // namespace traffic

#endif
