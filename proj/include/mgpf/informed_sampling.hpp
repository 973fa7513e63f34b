#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgpf/random.hpp"
#include "mgpf/space.hpp"
#include "mgpf/terminal_graph.hpp"

namespace mgpf {

/// Prolate hyperspheroid {x : |x - a| + |x - b| <= c_best}. An infinite
/// c_best stands for the whole space.
struct InformedSet {
  Config focus_a;
  Config focus_b;
  double c_best = kInf;

  double c_min() const { return heuristic(focus_a, focus_b); }
};

/// Row-major dim x dim orthogonal matrix.
class OrthogonalMap {
 public:
  OrthogonalMap(int dim, std::vector<double> entries) : dim_(dim), m_(std::move(entries)) {}

  int dim() const { return dim_; }
  double at(int row, int col) const { return m_[static_cast<std::size_t>(row) * dim_ + col]; }
  void apply(std::span<const double> in, std::span<double> out) const;
  double determinant() const;

 private:
  int dim_;
  std::vector<double> m_;
};

/// Rotation C with C e1 = (b - a)/|b - a| and det C = +1, built from one
/// Householder reflection and a sign flip of one column.
OrthogonalMap rotation_to_world(std::span<const double> a, std::span<const double> b);

/// One valid state from the informed set (direct ellipsoid transform with
/// rejection of out-of-cube or colliding points).
Config sample_informed(const InformedSet& set, const Env& env, Rng& rng);

using SampleBatch = std::vector<Config>;

/// Draws `n_s` samples: for each, a pair by inverse CDF over `prob`, then a
/// state from that pair's informed set with c_best = cost_T. When
/// `draws_per_entry` is given it receives the per-entry draw counts.
SampleBatch add_samples(const ProbabilityTable& prob, const TerminalGraph& tg,
                        std::span<const Config> terminals, const Env& env, std::size_t n_s, Rng& rng,
                        std::vector<std::size_t>* draws_per_entry = nullptr);

}  // namespace mgpf
