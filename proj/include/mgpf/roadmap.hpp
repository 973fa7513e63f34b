#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mgpf/kdtree.hpp"
#include "mgpf/space.hpp"

namespace mgpf {

/// Dense roadmap node index; terminals occupy 0..num_terminals-1.
using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

struct Edge {
  NodeId to;
  double cost;
};

struct RadiusParams {
  double eta = 1.1;
  double free_measure = 1.0;
  int dim = 2;
};

/// PRM* radius eta * (2 (1 + 1/d) (free_measure / unit_ball_volume(d)) (ln q / q))^(1/d).
double connection_radius(std::size_t q, const RadiusParams& params);

/// Volume of the unit d-ball, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(int dim);

/// The sampled graph G = (V, E) with straight-line edges.
///
/// Edges are created at insertion time with the radius for the node count
/// after insertion, and kept when the radius later shrinks.
class Roadmap {
 public:
  Roadmap(Env env, double eta = 1.1);

  struct Insertion {
    NodeId id;
    std::vector<Edge> edges;
  };

  /// Inserts a valid state, connecting it to every existing node within the
  /// current radius whose straight segment passes `is_motion_valid`.
  Insertion add_node(std::span<const double> state);

  std::span<const Edge> neighbors(NodeId id) const;
  std::span<const double> config(NodeId id) const;
  Config config_copy(NodeId id) const;

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t num_terminals() const { return num_terminals_; }
  void set_num_terminals(std::size_t n) { num_terminals_ = n; }

  const Env& env() const { return env_; }
  const RadiusParams& radius_params() const { return radius_; }
  double current_radius() const;

 private:
  Env env_;
  RadiusParams radius_;
  std::vector<double> coords_;
  std::vector<std::vector<Edge>> adjacency_;
  KdTree index_;
  std::size_t edge_count_ = 0;
  std::size_t num_terminals_ = 0;
};

}  // namespace mgpf
