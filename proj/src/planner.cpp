#include "mgpf/planner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "mgpf/error.hpp"
#include "mgpf/informed_sampling.hpp"

namespace mgpf {

namespace {

std::vector<Config> validated_terminals(const Env& env, std::vector<Config> terminals) {
  if (terminals.size() < 2) throw Error(ErrorKind::InvalidTerminals, "need at least two terminals");
  for (std::size_t i = 0; i < terminals.size(); ++i) {
    if (terminals[i].size() != static_cast<std::size_t>(env.dim()) || !env.is_state_valid(terminals[i])) {
      throw Error(ErrorKind::InvalidTerminals, "terminal " + std::to_string(i) + " is not a valid state");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (heuristic(terminals[i], terminals[j]) == 0.0) {
        throw Error(ErrorKind::InvalidTerminals,
                    "terminals " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
      }
    }
  }
  return terminals;
}

using QueueEntry = std::pair<double, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

std::vector<NodeId> shortest_path(const Roadmap& rm, NodeId from, NodeId to, double* cost) {
  const auto goal = rm.config(to);
  std::vector<double> g(rm.size(), kInf);
  std::vector<NodeId> came_from(rm.size(), kNoNode);
  std::vector<char> closed(rm.size(), 0);
  MinQueue open;
  g[from] = 0.0;
  open.emplace(heuristic(rm.config(from), goal), from);
  while (!open.empty()) {
    const NodeId u = open.top().second;
    open.pop();
    if (closed[u]) continue;
    if (u == to) break;
    closed[u] = 1;
    for (const Edge& edge : rm.neighbors(u)) {
      const double candidate = g[u] + edge.cost;
      if (candidate < g[edge.to]) {
        g[edge.to] = candidate;
        came_from[edge.to] = u;
        open.emplace(candidate + heuristic(rm.config(edge.to), goal), edge.to);
      }
    }
  }
  if (cost) *cost = g[to];
  if (!std::isfinite(g[to])) return {};
  std::vector<NodeId> path;
  for (NodeId v = to; v != kNoNode; v = came_from[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

MgpfPath extract_path(const Roadmap& rm, std::span<const TerminalPair> tree, std::size_t num_terminals) {
  if (num_terminals < 2 || tree.size() + 1 != num_terminals) {
    throw Error(ErrorKind::NotSpanning, "path extraction needs a spanning tree");
  }
  const std::size_t s = 0;
  const std::size_t d = num_terminals - 1;
  std::vector<std::vector<std::size_t>> adjacent(num_terminals);
  for (const TerminalPair& e : tree) {
    adjacent[e.a].push_back(e.b);
    adjacent[e.b].push_back(e.a);
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  // Mark the s-d tree path.
  std::vector<std::size_t> previous(num_terminals, num_terminals);
  std::vector<std::size_t> stack{s};
  previous[s] = s;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adjacent[u]) {
      if (previous[v] == num_terminals) {
        previous[v] = u;
        stack.push_back(v);
      }
    }
  }
  for (std::size_t v = 0; v < num_terminals; ++v) {
    if (previous[v] == num_terminals) throw Error(ErrorKind::NotSpanning, "tree does not span the terminals");
  }
  std::vector<char> on_path(num_terminals, 0);
  for (std::size_t v = d; v != s; v = previous[v]) on_path[v] = 1;
  on_path[s] = 1;

  MgpfPath path;
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t u, std::size_t from) {
    if (u != d) path.visit_order.push_back(u);
    std::vector<std::size_t> children;
    std::size_t towards_d = num_terminals;
    for (std::size_t v : adjacent[u]) {
      if (v == from) continue;
      if (on_path[v]) {
        towards_d = v;
      } else {
        children.push_back(v);
      }
    }
    for (std::size_t v : children) visit(v, u);
    if (towards_d != num_terminals) visit(towards_d, u);
    if (u == d) path.visit_order.push_back(d);
  };
  visit(s, num_terminals);

  path.cost = 0.0;
  path.nodes.push_back(static_cast<NodeId>(s));
  for (std::size_t k = 0; k + 1 < path.visit_order.size(); ++k) {
    double leg = 0.0;
    const std::vector<NodeId> piece = shortest_path(rm, static_cast<NodeId>(path.visit_order[k]),
                                                    static_cast<NodeId>(path.visit_order[k + 1]), &leg);
    if (piece.empty()) throw Error(ErrorKind::NotSpanning, "terminals are not connected in the roadmap");
    path.nodes.insert(path.nodes.end(), piece.begin() + 1, piece.end());
    path.cost += leg;
  }
  path.waypoints.reserve(path.nodes.size());
  for (NodeId v : path.nodes) path.waypoints.push_back(rm.config_copy(v));
  return path;
}

Planner::Planner(Env env, std::vector<Config> terminals, PlannerParams params)
    : params_(params),
      terminals_(validated_terminals(env, std::move(terminals))),
      roadmap_(std::move(env), params.eta),
      tg_(terminals_),
      rng_(params.seed) {
  if (params_.n_s == 0) throw Error(ErrorKind::Config, "n_s must be positive");
  for (const Config& t : terminals_) roadmap_.add_node(t);
  roadmap_.set_num_terminals(terminals_.size());
  forest_.resize(roadmap_.size());
}

const TraceRow& Planner::step() {
  if (trace_.empty()) started_ = std::chrono::steady_clock::now();
  advance();
  samples_ += params_.n_s;

  TraceRow row;
  row.iteration = trace_.size() + 1;
  row.samples_total = samples_;
  row.edges_active = edges_active();
  row.edges_pruned_cum = edges_pruned();
  row.tree_cost = tg_.tree_weight();
  if (tg_.tree_spans()) row.path_cost = extract_path().cost;
  row.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
  trace_.push_back(row);
  return trace_.back();
}

const PlannerTrace& Planner::run(const Observer& observer) {
  while (trace_.size() < params_.n_b) {
    const TraceRow& row = step();
    if (observer) observer(row);
  }
  return trace_;
}

MgpfPath Planner::extract_path() const { return mgpf::extract_path(roadmap_, tg_.tree(), terminals_.size()); }

IstStar::IstStar(Env env, std::vector<Config> terminals, PlannerParams params)
    : Planner(std::move(env), std::move(terminals), params) {
  last_meets_ = initialize_forest(roadmap_, forest_, tg_);
  probability_ = lower_bound_probability(tg_);
}

void IstStar::advance() {
  const SampleBatch batch = add_samples(probability_, tg_, terminals_, env(), params_.n_s, rng_);
  last_meets_ = ripple(roadmap_, forest_, tg_, batch);
  update_tree(tg_);
  if (params_.prune) {
    const std::vector<TerminalPair> removed = prune_edges(tg_);
    pruned_.insert(pruned_.end(), removed.begin(), removed.end());
  }
  probability_ = update_probability(tg_, probability_);
}

Baseline::Baseline(Env env, std::vector<Config> terminals, PlannerParams params)
    : Planner(std::move(env), std::move(terminals), params) {}

void Baseline::advance() {
  for (std::size_t k = 0; k < params_.n_s; ++k) roadmap_.add_node(sample_uniform_free(env(), rng_));
  TerminalGraph rebuilt(terminals_);
  rebuild_from_voronoi(roadmap_, terminals_, forest_, rebuilt);
  // Mathematically the new tree is never heavier; keep the incumbent if
  // floating-point noise says otherwise.
  if (!(rebuilt.tree_weight() > tg_.tree_weight())) tg_ = std::move(rebuilt);
}

void rebuild_from_voronoi(const Roadmap& rm, const std::vector<Config>& terminals, Forest& forest,
                          TerminalGraph& tg) {
  const auto num_terminals = static_cast<NodeId>(terminals.size());
  forest = Forest{};
  forest.resize(rm.size());
  MinQueue open;
  for (NodeId t = 0; t < num_terminals; ++t) {
    forest.g[t] = 0.0;
    forest.parent[t] = t;
    forest.root[t] = t;
    open.emplace(0.0, t);
  }
  while (!open.empty()) {
    const auto [key, u] = open.top();
    open.pop();
    if (key > forest.g[u]) continue;
    for (const Edge& edge : rm.neighbors(u)) {
      const double candidate = key + edge.cost;
      if (candidate < forest.g[edge.to]) {
        forest.g[edge.to] = candidate;
        forest.parent[edge.to] = u;
        forest.root[edge.to] = forest.root[u];
        open.emplace(candidate, edge.to);
      }
    }
  }

  std::vector<std::pair<NodeId, NodeId>> witness(static_cast<std::size_t>(num_terminals) * num_terminals,
                                                 {kNoNode, kNoNode});
  for (NodeId u = 0; u < rm.size(); ++u) {
    if (forest.root[u] == kNoNode) continue;
    for (const Edge& edge : rm.neighbors(u)) {
      const NodeId v = edge.to;
      if (v < u || forest.root[v] == kNoNode || forest.root[v] == forest.root[u]) continue;
      const TerminalPair e = TerminalPair::of(forest.root[u], forest.root[v]);
      if (tg.lower_cost(e, forest.g[u] + edge.cost + forest.g[v])) {
        witness[static_cast<std::size_t>(e.a) * num_terminals + e.b] = {u, v};
      }
    }
  }
  for (NodeId a = 0; a < num_terminals; ++a) {
    for (NodeId b = a + 1; b < num_terminals; ++b) {
      const auto [u, v] = witness[static_cast<std::size_t>(a) * num_terminals + b];
      if (u == kNoNode) continue;
      std::vector<NodeId> path = forest.chain_to_root(u);
      std::reverse(path.begin(), path.end());
      const std::vector<NodeId> tail = forest.chain_to_root(v);
      path.insert(path.end(), tail.begin(), tail.end());
      if (path.front() != a) std::reverse(path.begin(), path.end());
      tg.set_realization({a, b}, std::move(path));
    }
  }
  if (auto tree = spanning_tree_kruskal(tg)) tg.set_tree(std::move(*tree));
}

}  // namespace mgpf
