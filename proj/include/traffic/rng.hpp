#ifndef TRAFFIC_RNG_HPP
#define TRAFFIC_RNG_HPP

#include <cstdint>
#include <random>

namespace traffic {

// Seeded mt19937_64 with hand-rolled draw helpers. The standard engine is
// portable by specification but the standard distributions are not, and
// reproducible event logs need the exact draw sequence pinned down.
class SimRng {
 public:
  explicit SimRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased uniform integer in [0, n), n >= 1, by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0} / n));
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % n;
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace traffic

#endif
