#include "mgpf/roadmap.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mgpf/error.hpp"

namespace mgpf {

double unit_ball_volume(int dim) {
  const double d = static_cast<double>(dim);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

double connection_radius(std::size_t q, const RadiusParams& params) {
  const double d = static_cast<double>(params.dim);
  const double n = static_cast<double>(q);
  const double base = 2.0 * (1.0 + 1.0 / d) * (params.free_measure / unit_ball_volume(params.dim)) *
                      (std::log(n) / n);
  return params.eta * std::pow(base, 1.0 / d);
}

Roadmap::Roadmap(Env env, double eta)
    : env_(std::move(env)), radius_{eta, env_.free_measure(), env_.dim()}, index_(env_.dim()) {
  if (!(eta > 1.0)) throw Error(ErrorKind::Config, "eta must exceed 1");
}

Roadmap::Insertion Roadmap::add_node(std::span<const double> state) {
  const Config x(state.begin(), state.end());
  if (!env_.is_state_valid(x)) throw Error(ErrorKind::InvalidState, "roadmap node must be a valid state");
  const auto id = static_cast<NodeId>(adjacency_.size());
  coords_.insert(coords_.end(), x.begin(), x.end());
  adjacency_.emplace_back();

  Insertion result{id, {}};
  if (id > 0) {
    const double radius = connection_radius(adjacency_.size(), radius_);
    for (NodeId other : index_.radius_query(x, radius, coords_)) {
      const auto y = config(other);
      if (!env_.is_motion_valid(x, y)) continue;
      const double cost = heuristic(x, y);
      adjacency_[id].push_back({other, cost});
      adjacency_[other].push_back({id, cost});
      result.edges.push_back({other, cost});
      ++edge_count_;
    }
  }
  index_.insert(id, coords_);
  return result;
}

std::span<const Edge> Roadmap::neighbors(NodeId id) const {
  if (id >= adjacency_.size()) throw Error(ErrorKind::UnknownNode, "node " + std::to_string(id) + " does not exist");
  return adjacency_[id];
}

std::span<const double> Roadmap::config(NodeId id) const {
  if (id >= adjacency_.size()) throw Error(ErrorKind::UnknownNode, "node " + std::to_string(id) + " does not exist");
  const auto dim = static_cast<std::size_t>(env_.dim());
  return std::span<const double>(coords_).subspan(id * dim, dim);
}

Config Roadmap::config_copy(NodeId id) const {
  const auto c = config(id);
  return Config(c.begin(), c.end());
}

double Roadmap::current_radius() const {
  return adjacency_.size() < 2 ? 0.0 : connection_radius(adjacency_.size(), radius_);
}

}  // namespace mgpf
