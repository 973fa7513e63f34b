#include "mgpf/ripple.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <utility>

namespace mgpf {

void Forest::resize(std::size_t n) {
  g.resize(n, kInf);
  parent.resize(n, kNoNode);
  root.resize(n, kNoNode);
}

std::vector<NodeId> Forest::chain_to_root(NodeId u) const {
  std::vector<NodeId> chain;
  if (root[u] == kNoNode) return chain;
  chain.push_back(u);
  while (parent[u] != u) {
    u = parent[u];
    chain.push_back(u);
  }
  return chain;
}

std::vector<std::pair<NodeId, NodeId>> Forest::tree_edges() const {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < size(); ++u) {
    if (parent[u] != kNoNode && parent[u] != u) edges.emplace_back(u, parent[u]);
  }
  return edges;
}

namespace {

// Roadmap path root(x) -> x -> y -> root(y), oriented to start at `e.a`.
std::vector<NodeId> meet_path(const Forest& forest, NodeId x, NodeId y, TerminalPair e) {
  std::vector<NodeId> path = forest.chain_to_root(x);
  std::reverse(path.begin(), path.end());
  const std::vector<NodeId> tail = forest.chain_to_root(y);
  path.insert(path.end(), tail.begin(), tail.end());
  if (path.front() != e.a) std::reverse(path.begin(), path.end());
  return path;
}

using QueueEntry = std::pair<double, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

std::vector<MeetRecord> initialize_forest(const Roadmap& rm, Forest& forest, TerminalGraph& tg) {
  const auto terminals = static_cast<NodeId>(tg.size());
  forest.resize(rm.size());
  std::vector<MeetRecord> meets;
  for (NodeId t = 0; t < terminals; ++t) {
    forest.g[t] = 0.0;
    forest.parent[t] = t;
    forest.root[t] = t;
  }
  for (NodeId t = 0; t < terminals; ++t) {
    for (const Edge& edge : rm.neighbors(t)) {
      if (edge.to <= t || edge.to >= terminals) continue;
      const TerminalPair e = TerminalPair::of(t, edge.to);
      if (tg.lower_cost(e, edge.cost)) {
        tg.set_realization(e, {e.a, e.b});
        meets.push_back({t, edge.to, edge.cost, t, edge.to});
      }
    }
  }
  return meets;
}

std::vector<MeetRecord> ripple(Roadmap& rm, Forest& forest, TerminalGraph& tg,
                               std::span<const Config> batch) {
  std::vector<MeetRecord> meets;
  MinQueue queue;
  for (const Config& sample : batch) {
    const Roadmap::Insertion inserted = rm.add_node(sample);
    const NodeId s = inserted.id;
    forest.resize(rm.size());

    // Attach to the rooted neighbour minimising g(n) + cost(s, n); lowest id on ties.
    NodeId best = kNoNode;
    double best_g = kInf;
    for (const Edge& edge : inserted.edges) {
      if (forest.root[edge.to] == kNoNode) continue;
      const double candidate = forest.g[edge.to] + edge.cost;
      if (candidate < best_g || (candidate == best_g && edge.to < best)) {
        best_g = candidate;
        best = edge.to;
      }
    }
    if (best == kNoNode) continue;
    forest.g[s] = best_g;
    forest.root[s] = forest.root[best];
    forest.parent[s] = best;
    queue.emplace(best_g, s);

    while (!queue.empty()) {
      const auto [key, u] = queue.top();
      queue.pop();
      if (key > forest.g[u]) continue;
      for (const Edge& edge : rm.neighbors(u)) {
        const NodeId n = edge.to;
        const double through_u = forest.g[u] + edge.cost;
        if (through_u < forest.g[n]) {
          forest.g[n] = through_u;
          forest.root[n] = forest.root[u];
          forest.parent[n] = u;
          queue.emplace(through_u, n);
        } else if (forest.root[n] != forest.root[u]) {
          const double d = forest.g[n] + edge.cost + forest.g[u];
          const TerminalPair e = TerminalPair::of(forest.root[n], forest.root[u]);
          if (tg.lower_cost(e, d)) {
            tg.set_realization(e, meet_path(forest, n, u, e));
            meets.push_back({forest.root[n], forest.root[u], d, n, u});
          }
        }
      }
    }
  }
  return meets;
}

bool verify_forest(const Roadmap& rm, const Forest& forest) {
  const std::size_t n = rm.size();
  const std::size_t terminals = rm.num_terminals();
  if (forest.size() != n) return false;

  std::vector<double> dist(n, kInf);
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>> open;
  for (NodeId t = 0; t < terminals; ++t) {
    dist[t] = 0.0;
    open.emplace(0.0, t);
  }
  std::vector<char> done(n, 0);
  while (!open.empty()) {
    const auto [d, u] = open.top();
    open.pop();
    if (done[u]) continue;
    done[u] = 1;
    for (const Edge& edge : rm.neighbors(u)) {
      if (d + edge.cost < dist[edge.to]) {
        dist[edge.to] = d + edge.cost;
        open.emplace(dist[edge.to], edge.to);
      }
    }
  }

  for (NodeId u = 0; u < n; ++u) {
    if (u < terminals) {
      if (forest.g[u] != 0.0 || forest.root[u] != u || forest.parent[u] != u) return false;
      continue;
    }
    if (!std::isfinite(dist[u])) {
      if (forest.root[u] != kNoNode || std::isfinite(forest.g[u])) return false;
      continue;
    }
    if (forest.root[u] == kNoNode || std::abs(forest.g[u] - dist[u]) > 1e-9) return false;
    // The parent link must be a roadmap edge consistent with g and the root;
    // then g(u) is the cost of a real path to root(u), so with g(u) = dist(u)
    // that root is a nearest terminal.
    const NodeId p = forest.parent[u];
    if (p == kNoNode || p == u || forest.root[p] != forest.root[u]) return false;
    const auto adjacent = rm.neighbors(u);
    const auto link = std::find_if(adjacent.begin(), adjacent.end(), [&](const Edge& e) { return e.to == p; });
    if (link == adjacent.end()) return false;
    if (std::abs(forest.g[u] - (forest.g[p] + link->cost)) > 1e-9) return false;
  }
  return true;
}

}  // namespace mgpf
