#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgpf/roadmap.hpp"
#include "mgpf/terminal_graph.hpp"

namespace mgpf {

/// Shortest-path forest rooted at the terminals. Node u carries g(u), the
/// cost of its tree path to root(u); unreached nodes have g = +inf and no root.
struct Forest {
  std::vector<double> g;
  std::vector<NodeId> parent;
  std::vector<NodeId> root;

  std::size_t size() const { return g.size(); }
  /// Grows the per-node arrays to `n` entries with unreached defaults.
  void resize(std::size_t n);
  /// Nodes from u up to its root (inclusive); empty when u is unreached.
  std::vector<NodeId> chain_to_root(NodeId u) const;
  /// Edges (u, parent(u)) for every reached non-terminal u.
  std::vector<std::pair<NodeId, NodeId>> tree_edges() const;
};

/// A meet between two differently-rooted trees that lowered cost_T.
struct MeetRecord {
  NodeId terminal_a;
  NodeId terminal_b;
  double cost;
  NodeId via_from;
  NodeId via_to;
};

/// Places the terminals (roadmap nodes 0..|T|-1) as roots and records every
/// direct terminal-terminal roadmap edge as a meet.
std::vector<MeetRecord> initialize_forest(const Roadmap& rm, Forest& forest, TerminalGraph& tg);

/// Inserts each sample into the roadmap and repairs the forest with a
/// Dijkstra-style relaxation seeded at the new node. Cross-root contacts seen
/// during the relaxation lower cost_T and store the realizing node path.
std::vector<MeetRecord> ripple(Roadmap& rm, Forest& forest, TerminalGraph& tg,
                               std::span<const Config> batch);

/// Independent check of the forest against multi-source Dijkstra from the
/// terminals: g within 1e-9 of the true distance to the nearest terminal and
/// root among the nearest terminals, for every node.
bool verify_forest(const Roadmap& rm, const Forest& forest);

}  // namespace mgpf
