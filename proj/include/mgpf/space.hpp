#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mgpf/random.hpp"

namespace mgpf {

/// A point of the unit hypercube [0,1]^n.
using Config = std::vector<double>;

/// Closed axis-aligned box, one [lo, hi] interval per axis.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  bool contains(std::span<const double> x) const;
};

struct PathSegment {
  Config from;
  Config to;
  double length = 0.0;

  static PathSegment between(Config a, Config b);
};

/// Regular grid of identical boxes: per axis, cell k in [0, cells) holds the
/// interval [k * period + lo_offset, k * period + hi_offset]; every combination
/// of per-axis cells is an obstacle.
struct ObstacleLattice {
  int cells = 10;
  double period = 0.1;
  double lo_offset = 0.0125;
  double hi_offset = 0.0875;

  double lo(int k) const { return k * period + lo_offset; }
  double hi(int k) const { return k * period + hi_offset; }
};

/// Unit hypercube with closed box obstacles. Immutable after construction.
class Env {
 public:
  static constexpr double kDefaultResolution = 1e-4;
  static constexpr std::size_t kMonteCarloSamples = 1'000'000;

  /// One box of side 0.9 centered in the cube (free measure 1 - 0.9^dim).
  static Env center_obstacle(int dim);
  /// 10^dim boxes of width 0.075 with 0.025 gaps centred on cell boundaries.
  static Env uniform_hypercubes(int dim);
  /// Arbitrary boxes. Free measure is exact when the boxes are pairwise
  /// disjoint, otherwise it is a Monte Carlo estimate.
  static Env boxes(int dim, std::vector<Box> obstacles,
                   double collision_resolution = kDefaultResolution);

  int dim() const { return dim_; }
  double free_measure() const { return free_measure_; }
  double collision_resolution() const { return resolution_; }

  std::size_t obstacle_count() const;
  Box obstacle(std::size_t index) const;
  bool is_lattice() const { return lattice_.has_value(); }

  bool is_state_valid(std::span<const double> x) const;

  /// Discretized straight-line check: states a + (i/m)(b - a), i = 0..m,
  /// m = ceil(|b - a| / resolution), must all be valid. Endpoints are ordered
  /// lexicographically first, so the result is symmetric in (a, b).
  bool is_motion_valid(std::span<const double> a, std::span<const double> b) const;

 private:
  Env(int dim, double resolution) : dim_(dim), resolution_(resolution) {}

  bool inside_any_obstacle(std::span<const double> x) const;
  bool segment_hits_box(std::span<const double> a, std::span<const double> delta,
                        std::size_t steps, const Box& box) const;
  bool segment_hits_lattice(std::span<const double> a, std::span<const double> delta,
                            std::size_t steps) const;

  int dim_ = 0;
  double resolution_ = kDefaultResolution;
  double free_measure_ = 1.0;
  std::vector<Box> boxes_;
  std::optional<ObstacleLattice> lattice_;
};

/// Euclidean distance, the lower bound h used throughout.
double heuristic(std::span<const double> a, std::span<const double> b);

/// Rejection sampling over [0,1]^dim until a valid state is found.
Config sample_uniform_free(const Env& env, Rng& rng);

inline constexpr std::size_t kRejectionBudget = 1'000'000;

}  // namespace mgpf
