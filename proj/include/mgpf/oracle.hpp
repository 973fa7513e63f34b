#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mgpf/roadmap.hpp"

namespace mgpf::oracle {

/// Symmetric |T| x |T| matrix of roadmap shortest-path costs (+inf when
/// disconnected), row-major.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> entries;

  double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

/// One Dijkstra per terminal over the whole roadmap.
CostMatrix metric_completion(const Roadmap& rm, std::size_t num_terminals);

struct SpanningTree {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double weight = 0.0;
};

/// Kruskal with union-find over the finite entries; nullopt when the finite
/// graph does not span.
std::optional<SpanningTree> kruskal(const CostMatrix& costs);

struct Tour {
  std::vector<std::size_t> order;
  double cost = 0.0;
};

inline constexpr std::size_t kMaxExactTerminals = 12;

/// Held-Karp: cheapest Hamiltonian path from `s` to `d` through every
/// terminal, exact for |T| <= 12. Requires finite entries.
Tour optimal_mgpf(const CostMatrix& costs, std::size_t s, std::size_t d);

}  // namespace mgpf::oracle
