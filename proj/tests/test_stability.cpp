#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "traffic/stability.hpp"

using namespace traffic;

namespace {

const VelocityProfile kHT{6.75, 7.91, 0.13, 1.57, 5.0, 5.0, 1.0};
const VelocityProfile kV1{0.0, 5.0, 0.02, 0.0, 5.0, 5.0, 1.0};
const ModelParams kSingle{1.0, 100.0};

std::complex<double> quadratic_residual(const ModelParams& params, double h,
                                        double vprime, double a_k,
                                        std::complex<double> z) {
  const std::complex<double> e =
      std::complex<double>(std::cos(a_k), std::sin(a_k)) - 1.0;
  return z * z + z * (params.alpha - params.beta / (h * h) * e) -
         params.alpha * vprime * e;
}

}  // namespace

TEST_CASE("mode zero is the pure relaxation pair") {
  const ModeRoots roots = dispersion_roots(kSingle, 12.5, 1.0, 0, 121);
  CHECK(roots.a_k == 0.0);
  CHECK(std::abs(roots.z1) < 1e-15);
  CHECK(roots.z2.real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(roots.z2.imag() == doctest::Approx(0.0));
}

TEST_CASE("dispersion roots satisfy their quadratic") {
  const double vprime = eval_velocity_derivative(kHT, 12.5);
  const ModeRoots roots = dispersion_roots(kSingle, 12.5, vprime, 1, 121);
  CHECK(std::abs(quadratic_residual(kSingle, 12.5, vprime, roots.a_k, roots.z1)) < 1e-12);
  CHECK(std::abs(quadratic_residual(kSingle, 12.5, vprime, roots.a_k, roots.z2)) < 1e-12);
}

TEST_CASE("root residuals and Vieta identities over random draws") {
  std::mt19937_64 gen(123);
  std::uniform_real_distribution<double> alpha(0.1, 6.0);
  std::uniform_real_distribution<double> beta(0.0, 300.0);
  std::uniform_real_distribution<double> headway(5.0, 80.0);
  std::uniform_real_distribution<double> vp(0.0, 2.0);
  std::uniform_int_distribution<int> n_total(2, 200);

  for (int i = 0; i < 1000; ++i) {
    const ModelParams params{alpha(gen), beta(gen)};
    const double h = headway(gen);
    const double vprime = vp(gen);
    const int N = n_total(gen);
    const int k = static_cast<int>(gen() % static_cast<unsigned>(N));
    const ModeRoots roots = dispersion_roots(params, h, vprime, k, N);

    CHECK(std::abs(quadratic_residual(params, h, vprime, roots.a_k, roots.z1)) < 1e-10);
    CHECK(std::abs(quadratic_residual(params, h, vprime, roots.a_k, roots.z2)) < 1e-10);

    // sum and product against the coefficients
    const double beta_h2 = params.beta / (h * h);
    const std::complex<double> sum = roots.z1 + roots.z2;
    const std::complex<double> prod = roots.z1 * roots.z2;
    CHECK(sum.real() ==
          doctest::Approx(-params.alpha + beta_h2 * (std::cos(roots.a_k) - 1.0))
              .epsilon(1e-10).scale(1.0));
    CHECK(sum.imag() ==
          doctest::Approx(beta_h2 * std::sin(roots.a_k)).epsilon(1e-10).scale(1.0));
    CHECK(prod.real() ==
          doctest::Approx(-params.alpha * vprime * (std::cos(roots.a_k) - 1.0))
              .epsilon(1e-10).scale(1.0));
    // the product expansion carries u1 v2 + u2 v1; the quadratic pins its
    // value to -alpha V' sin(a_k)
    CHECK(prod.imag() ==
          doctest::Approx(-params.alpha * vprime * std::sin(roots.a_k))
              .epsilon(1e-10).scale(1.0));
    const double expanded = roots.z1.real() * roots.z2.imag() +
                            roots.z2.real() * roots.z1.imag();
    CHECK(prod.imag() == doctest::Approx(expanded).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("critical curve limits and reference value") {
  const ModelParams params{1.0, 100.0};

  // a_k -> 0 recovers the long-wave condition alpha/2 + beta/h^2
  const double limit = 0.5 * params.alpha + params.beta / (15.0 * 15.0);
  CHECK(critical_curve(params, 15.0, 1e-6) == doctest::Approx(limit).epsilon(1e-8));

  // beta = 0 collapses to the optimal-velocity critical curve
  const ModelParams bando{1.3, 0.0};
  for (double a : {0.3, 1.0, 2.0}) {
    const double expected = 1.3 / (2.0 * std::cos(a / 2.0) * std::cos(a / 2.0));
    CHECK(critical_curve(bando, 20.0, a) == doctest::Approx(expected).epsilon(1e-14));
  }

  // independent long-double evaluation at alpha=1, beta=100, h=15, a=pi/4
  {
    const long double a = std::numbers::pi_v<long double> / 4.0L;
    const long double bh2 = 100.0L / (15.0L * 15.0L);
    const long double expected =
        1.0L / (2.0L * std::cos(a / 2.0L) * std::cos(a / 2.0L)) + bh2 +
        2.0L * std::tan(a / 2.0L) * std::tan(a / 2.0L) * bh2 * (bh2 / 1.0L + 1.0L);
    CHECK(critical_curve(params, 15.0, std::numbers::pi / 4.0) ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-14));
  }

  CHECK_THROWS_AS(critical_curve(params, 15.0, std::numbers::pi), std::domain_error);
}

TEST_CASE("classification against the long-wave condition") {
  // L = 1500: N = 120 stable, N = 90 unstable
  CHECK(classify_stability(kSingle, kHT, 1500.0 / 120.0) == Stability::stable);
  CHECK(classify_stability(kSingle, kHT, 1500.0 / 90.0) == Stability::unstable);

  // beta = 0 with V'(h) = alpha/2 exactly: marginal
  const VelocityProfile linear{0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  // V(h) = tanh(h), V'(h) = sech^2(h); pick h with sech^2(h) = alpha/2
  const double h = std::atanh(std::sqrt(1.0 - 0.35));  // sech^2 = 0.35
  const ModelParams params{0.7, 0.0};
  CHECK(classify_stability(params, linear, h) == Stability::marginal);
}

TEST_CASE("stable ranges reproduce the vehicle-count windows") {
  const auto n_ranges = stable_n_ranges(kSingle, kHT, 1500.0, 300);
  REQUIRE(n_ranges.size() == 2);
  CHECK(n_ranges[0].first == 1);
  CHECK(n_ranges[0].second == 68);
  CHECK(n_ranges[1].first == 101);
  CHECK(n_ranges[1].second == 300);

  const auto h_ranges = stable_ranges(kSingle, kHT, 1.0, 100.0);
  REQUIRE(h_ranges.size() == 2);
  CHECK(h_ranges[0].first == doctest::Approx(1.0));
  CHECK(h_ranges[0].second == doctest::Approx(14.902).epsilon(1e-3));
  CHECK(h_ranges[1].first == doctest::Approx(21.923).epsilon(1e-3));
  CHECK(h_ranges[1].second == doctest::Approx(100.0));

  // the two-lane profile with alpha = 5 is stable for every count
  const ModelParams two{5.0, 100.0};
  const auto all = stable_n_ranges(two, kV1, 1500.0, 300);
  REQUIRE(all.size() == 1);
  CHECK(all[0] == std::pair<int, int>{1, 300});

  // overwhelming follow-the-leader coupling stabilizes everything
  const ModelParams huge{1.0, 1e9};
  CHECK(stable_n_ranges(huge, kHT, 1500.0, 300).size() == 1);
}

TEST_CASE("max growth rate agrees with the classification") {
  CHECK(max_growth_rate(kSingle, kHT, 1500.0 / 120.0, 120) < 0.0);
  CHECK(max_growth_rate(kSingle, kHT, 1500.0 / 90.0, 90) > 0.0);

  // N = 2 has a single mode at a_1 = pi
  const double vprime = eval_velocity_derivative(kHT, 40.0);
  const ModeRoots only = dispersion_roots(kSingle, 40.0, vprime, 1, 2);
  CHECK(max_growth_rate(kSingle, kHT, 40.0, 2) == doctest::Approx(only.z1.real()));

  CHECK_THROWS_AS(max_growth_rate(kSingle, kHT, 10.0, 1), std::domain_error);
}

TEST_CASE("classification boundary matches the sign change of growth rates") {
  // on a dense mode spectrum (large N at fixed h) the discrete growth-rate
  // sign must flip in the same grid cell as the long-wave classification
  const int kGrid = 40;
  const double h_lo = 13.0, h_hi = 17.0;
  std::vector<bool> by_class(kGrid + 1), by_growth(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) {
    const double h = h_lo + (h_hi - h_lo) * i / kGrid;
    by_class[i] = classify_stability(kSingle, kHT, h) == Stability::unstable;
    by_growth[i] = max_growth_rate(kSingle, kHT, h, 2000) > 0.0;
  }
  std::vector<int> flips_class, flips_growth;
  for (int i = 1; i <= kGrid; ++i) {
    if (by_class[i] != by_class[i - 1]) flips_class.push_back(i);
    if (by_growth[i] != by_growth[i - 1]) flips_growth.push_back(i);
  }
  REQUIRE(flips_class.size() == flips_growth.size());
  for (std::size_t i = 0; i < flips_class.size(); ++i)
    CHECK(std::abs(flips_class[i] - flips_growth[i]) <= 1);
}
