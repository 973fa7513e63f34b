#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace mgpf {

/// Seeded random source. The transforms are written out rather than taken from
/// <random> distributions so that a seed produces the same stream with any
/// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Standard normal via Box-Muller; caches the second variate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform01();
    } while (u1 <= 0.0);
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Uniform point in the closed unit ball of dimension out.size().
  void unit_ball(std::span<double> out) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& v : out) {
        v = normal();
        norm2 += v * v;
      }
    } while (norm2 == 0.0);
    const double scale =
        std::pow(uniform01(), 1.0 / static_cast<double>(out.size())) / std::sqrt(norm2);
    for (double& v : out) v *= scale;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mgpf
