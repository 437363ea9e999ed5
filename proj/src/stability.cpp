#include "traffic/stability.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "traffic/bisection.hpp"

namespace traffic {

ModeRoots dispersion_roots(const ModelParams& params, double h, double vprime,
                           int k, int N) {
  if (N < 1) throw std::domain_error("dispersion_roots: N must be >= 1");
  if (k < 0 || k >= N) throw std::domain_error("dispersion_roots: need 0 <= k < N");
  if (!(h > 0.0)) throw std::domain_error("dispersion_roots: h must be positive");

  ModeRoots roots;
  roots.k = k;
  roots.a_k = 2.0 * std::numbers::pi * k / N;

  const std::complex<double> unit(std::cos(roots.a_k), std::sin(roots.a_k));
  const std::complex<double> e = unit - 1.0;
  const std::complex<double> b = params.alpha - params.beta / (h * h) * e;
  const std::complex<double> c = -params.alpha * vprime * e;
  const std::complex<double> disc = std::sqrt(b * b - 4.0 * c);
  roots.z1 = 0.5 * (-b + disc);
  roots.z2 = 0.5 * (-b - disc);
  if (roots.z1.real() < roots.z2.real()) std::swap(roots.z1, roots.z2);
  return roots;
}

double critical_curve(const ModelParams& params, double h, double a_k) {
  const double cos_half = std::cos(0.5 * a_k);
  if (std::abs(cos_half) < 1e-12)
    throw std::domain_error("critical_curve: diverges at a_k = pi");
  const double tan_half = std::tan(0.5 * a_k);
  const double beta_h2 = params.beta / (h * h);
  return params.alpha / (2.0 * cos_half * cos_half) + beta_h2 +
         2.0 * tan_half * tan_half * beta_h2 * (params.beta / (params.alpha * h * h) + 1.0);
}

Stability classify_stability(const ModelParams& params, const VelocityProfile& profile,
                             double h) {
  if (!(h > 0.0)) throw std::domain_error("classify_stability: h must be positive");
  const double margin =
      eval_velocity_derivative(profile, h) - (0.5 * params.alpha + params.beta / (h * h));
  if (std::abs(margin) <= 1e-12) return Stability::marginal;
  return margin < 0.0 ? Stability::stable : Stability::unstable;
}

std::vector<std::pair<double, double>> stable_ranges(const ModelParams& params,
                                                     const VelocityProfile& profile,
                                                     double h_min, double h_max,
                                                     int grid_points) {
  if (!(h_min < h_max) || !(h_min > 0.0))
    throw std::invalid_argument("stable_ranges: need 0 < h_min < h_max");
  auto g = [&](double h) {
    return eval_velocity_derivative(profile, h) - 0.5 * params.alpha -
           params.beta / (h * h);
  };

  std::vector<double> boundaries;
  double prev_h = h_min;
  double prev_g = g(h_min);
  for (int i = 1; i <= grid_points; ++i) {
    const double h = h_min + (h_max - h_min) * i / grid_points;
    const double gh = g(h);
    if ((prev_g < 0.0) != (gh < 0.0)) boundaries.push_back(bisect(g, prev_h, h, 1e-6));
    prev_h = h;
    prev_g = gh;
  }

  std::vector<std::pair<double, double>> stable;
  double lo = h_min;
  bool in_stable = g(h_min) < 0.0;
  for (const double b : boundaries) {
    if (in_stable) stable.emplace_back(lo, b);
    lo = b;
    in_stable = !in_stable;
  }
  if (in_stable) stable.emplace_back(lo, h_max);
  return stable;
}

std::vector<std::pair<int, int>> stable_n_ranges(const ModelParams& params,
                                                 const VelocityProfile& profile,
                                                 double length, int n_max) {
  std::vector<std::pair<int, int>> ranges;
  int run_start = 0;
  for (int n = 1; n <= n_max + 1; ++n) {
    const bool ok =
        n <= n_max && classify_stability(params, profile, length / n) != Stability::unstable;
    if (ok && run_start == 0) run_start = n;
    if (!ok && run_start != 0) {
      ranges.emplace_back(run_start, n - 1);
      run_start = 0;
    }
  }
  return ranges;
}

double max_growth_rate(const ModelParams& params, const VelocityProfile& profile,
                       double h, int N) {
  if (N < 2) throw std::domain_error("max_growth_rate: N must be >= 2");
  const double vprime = eval_velocity_derivative(profile, h);
  double max_u = -std::numeric_limits<double>::infinity();
  for (int k = 1; k < N; ++k) {
    const ModeRoots roots = dispersion_roots(params, h, vprime, k, N);
    max_u = std::max(max_u, roots.z1.real());
  }
  return max_u;
}

}  // namespace traffic
