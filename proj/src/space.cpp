#include "mgpf/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "mgpf/error.hpp"

namespace mgpf {

namespace {

struct Interval {
  double lo;
  double hi;
};

// Parameters t in [0,1] with a + t*d inside [lo, hi], or nullopt.
std::optional<Interval> slab(double a, double d, double lo, double hi) {
  if (d == 0.0) {
    if (a < lo || a > hi) return std::nullopt;
    return Interval{0.0, 1.0};
  }
  double t0 = (lo - a) / d;
  double t1 = (hi - a) / d;
  if (t0 > t1) std::swap(t0, t1);
  t0 = std::max(t0, 0.0);
  t1 = std::min(t1, 1.0);
  // Slack keeps grazing contacts as candidates; probing decides exactly.
  if (t0 > t1 + 1e-9) return std::nullopt;
  return Interval{t0, t1};
}

std::vector<Interval> intersect(const std::vector<Interval>& x, const std::vector<Interval>& y) {
  std::vector<Interval> out;
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (lo <= hi + 1e-9) out.push_back({lo, std::max(lo, hi)});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

void interpolate(std::span<const double> a, std::span<const double> delta, std::size_t i,
                 std::size_t steps, std::span<double> out) {
  const double t = steps == 0 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + t * delta[k];
}

// Candidate step indices covering [t.lo, t.hi], widened by one on each side.
std::pair<std::size_t, std::size_t> candidate_range(Interval t, std::size_t steps) {
  const double m = static_cast<double>(steps);
  const double first = std::max(0.0, std::floor(t.lo * m) - 1.0);
  const double last = std::min(m, std::ceil(t.hi * m) + 1.0);
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

void check_dim(int dim) {
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "dimension must be >= 2, got " + std::to_string(dim));
}

bool boxes_overlap(const Box& x, const Box& y) {
  for (std::size_t k = 0; k < x.lo.size(); ++k) {
    if (x.hi[k] <= y.lo[k] || y.hi[k] <= x.lo[k]) return false;
  }
  return true;
}

}  // namespace

bool Box::contains(std::span<const double> x) const {
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  }
  return true;
}

PathSegment PathSegment::between(Config a, Config b) {
  const double length = heuristic(a, b);
  return PathSegment{std::move(a), std::move(b), length};
}

Env Env::center_obstacle(int dim) {
  check_dim(dim);
  Env env(dim, kDefaultResolution);
  env.boxes_.push_back(Box{std::vector<double>(dim, 0.05), std::vector<double>(dim, 0.95)});
  env.free_measure_ = 1.0 - std::pow(0.9, dim);
  return env;
}

Env Env::uniform_hypercubes(int dim) {
  check_dim(dim);
  Env env(dim, kDefaultResolution);
  env.lattice_ = ObstacleLattice{};
  env.free_measure_ = 1.0 - std::pow(0.75, dim);
  return env;
}

Env Env::boxes(int dim, std::vector<Box> obstacles, double collision_resolution) {
  check_dim(dim);
  if (!(collision_resolution > 0.0)) {
    throw Error(ErrorKind::Config, "collision resolution must be positive");
  }
  for (const Box& box : obstacles) {
    if (box.lo.size() != static_cast<std::size_t>(dim) || box.hi.size() != box.lo.size()) {
      throw Error(ErrorKind::DimensionMismatch, "obstacle box has wrong dimension");
    }
    for (int k = 0; k < dim; ++k) {
      if (!(box.lo[k] >= 0.0 && box.lo[k] <= box.hi[k] && box.hi[k] <= 1.0)) {
        throw Error(ErrorKind::Config, "obstacle box must satisfy 0 <= lo <= hi <= 1 on every axis");
      }
    }
  }
  Env env(dim, collision_resolution);
  env.boxes_ = std::move(obstacles);

  bool disjoint = true;
  for (std::size_t i = 0; i < env.boxes_.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < env.boxes_.size(); ++j) {
      if (boxes_overlap(env.boxes_[i], env.boxes_[j])) {
        disjoint = false;
        break;
      }
    }
  }
  if (disjoint) {
    double blocked = 0.0;
    for (const Box& box : env.boxes_) {
      double volume = 1.0;
      for (int k = 0; k < dim; ++k) volume *= box.hi[k] - box.lo[k];
      blocked += volume;
    }
    env.free_measure_ = 1.0 - blocked;
  } else {
    Rng rng(0x5eedf00dULL);
    Config x(dim);
    std::size_t free = 0;
    for (std::size_t s = 0; s < kMonteCarloSamples; ++s) {
      for (double& v : x) v = rng.uniform01();
      if (!env.inside_any_obstacle(x)) ++free;
    }
    env.free_measure_ = static_cast<double>(free) / static_cast<double>(kMonteCarloSamples);
  }
  if (!(env.free_measure_ > 0.0)) throw Error(ErrorKind::Config, "environment has no free space");
  return env;
}

std::size_t Env::obstacle_count() const {
  if (!lattice_) return boxes_.size();
  std::size_t count = 1;
  for (int k = 0; k < dim_; ++k) count *= static_cast<std::size_t>(lattice_->cells);
  return count;
}

Box Env::obstacle(std::size_t index) const {
  if (!lattice_) return boxes_.at(index);
  if (index >= obstacle_count()) throw Error(ErrorKind::UnknownNode, "obstacle index out of range");
  Box box{std::vector<double>(dim_), std::vector<double>(dim_)};
  // Axis 0 is the most significant digit.
  for (int k = dim_ - 1; k >= 0; --k) {
    const int cell = static_cast<int>(index % lattice_->cells);
    index /= lattice_->cells;
    box.lo[k] = lattice_->lo(cell);
    box.hi[k] = lattice_->hi(cell);
  }
  return box;
}

bool Env::inside_any_obstacle(std::span<const double> x) const {
  if (lattice_) {
    for (int k = 0; k < dim_; ++k) {
      const int cell = std::clamp(static_cast<int>(std::floor(x[k] / lattice_->period)), 0,
                                  lattice_->cells - 1);
      if (x[k] < lattice_->lo(cell) || x[k] > lattice_->hi(cell)) return false;
    }
    return true;
  }
  for (const Box& box : boxes_) {
    if (box.contains(x)) return true;
  }
  return false;
}

bool Env::is_state_valid(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw Error(ErrorKind::DimensionMismatch,
                "state has " + std::to_string(x.size()) + " coordinates, expected " + std::to_string(dim_));
  }
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) return false;
  }
  return !inside_any_obstacle(x);
}

bool Env::segment_hits_box(std::span<const double> a, std::span<const double> delta,
                           std::size_t steps, const Box& box) const {
  Interval t{0.0, 1.0};
  for (int k = 0; k < dim_; ++k) {
    const auto axis = slab(a[k], delta[k], box.lo[k], box.hi[k]);
    if (!axis) return false;
    t.lo = std::max(t.lo, axis->lo);
    t.hi = std::min(t.hi, axis->hi);
    if (t.lo > t.hi + 1e-9) return false;
  }
  const auto [first, last] = candidate_range(t, steps);
  Config x(dim_);
  // Probe from the middle out; a genuine crossing is found on the first probe.
  const std::size_t mid = first + (last - first) / 2;
  for (std::size_t offset = 0; mid + offset <= last || mid >= first + offset; ++offset) {
    if (mid + offset <= last) {
      interpolate(a, delta, mid + offset, steps, x);
      if (box.contains(x)) return true;
    }
    if (offset > 0 && mid >= first + offset) {
      interpolate(a, delta, mid - offset, steps, x);
      if (box.contains(x)) return true;
    }
  }
  return false;
}

bool Env::segment_hits_lattice(std::span<const double> a, std::span<const double> delta,
                               std::size_t steps) const {
  const ObstacleLattice& lat = *lattice_;
  std::vector<Interval> blocked{{0.0, 1.0}};
  std::vector<Interval> axis;
  for (int k = 0; k < dim_ && !blocked.empty(); ++k) {
    axis.clear();
    const double x0 = std::min(a[k], a[k] + delta[k]);
    const double x1 = std::max(a[k], a[k] + delta[k]);
    const int c0 = std::clamp(static_cast<int>(std::floor(x0 / lat.period)) - 1, 0, lat.cells - 1);
    const int c1 = std::clamp(static_cast<int>(std::floor(x1 / lat.period)) + 1, 0, lat.cells - 1);
    for (int c = c0; c <= c1; ++c) {
      if (auto t = slab(a[k], delta[k], lat.lo(c), lat.hi(c))) axis.push_back(*t);
    }
    std::sort(axis.begin(), axis.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
    blocked = intersect(blocked, axis);
  }
  if (blocked.empty()) return false;
  Config x(dim_);
  for (const Interval& t : blocked) {
    const auto [first, last] = candidate_range(t, steps);
    const std::size_t mid = first + (last - first) / 2;
    for (std::size_t offset = 0; mid + offset <= last || mid >= first + offset; ++offset) {
      if (mid + offset <= last) {
        interpolate(a, delta, mid + offset, steps, x);
        if (inside_any_obstacle(x)) return true;
      }
      if (offset > 0 && mid >= first + offset) {
        interpolate(a, delta, mid - offset, steps, x);
        if (inside_any_obstacle(x)) return true;
      }
    }
  }
  return false;
}

bool Env::is_motion_valid(std::span<const double> a, std::span<const double> b) const {
  if (!is_state_valid(a) || !is_state_valid(b)) {
    throw Error(ErrorKind::InvalidState, "motion endpoints must be valid states");
  }
  if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
  Config delta(dim_);
  for (int k = 0; k < dim_; ++k) delta[k] = b[k] - a[k];
  const double length = heuristic(a, b);
  const auto steps = static_cast<std::size_t>(std::ceil(length / resolution_));
  if (steps == 0) return true;
  if (lattice_) return !segment_hits_lattice(a, delta, steps);
  for (const Box& box : boxes_) {
    if (segment_hits_box(a, delta, steps, box)) return false;
  }
  return true;
}

double heuristic(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "heuristic on configs of different dimension");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Config sample_uniform_free(const Env& env, Rng& rng) {
  Config x(env.dim());
  for (std::size_t attempt = 0; attempt < kRejectionBudget; ++attempt) {
    for (double& v : x) v = rng.uniform01();
    if (env.is_state_valid(x)) return x;
  }
  throw Error(ErrorKind::SamplingFailure, "uniform free-space sampling exceeded its rejection budget");
}

}  // namespace mgpf
