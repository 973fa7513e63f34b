#include "mgpf/terminal_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgpf/error.hpp"

namespace mgpf {

TerminalGraph::TerminalGraph(std::size_t n)
    : n_(n),
      cost_(n * n, kInf),
      h_(n * n, 0.0),
      active_(n * n, 0),
      in_tree_(n * n, 0),
      paths_(n * n),
      active_count_(n * (n - 1) / 2) {
  if (n < 2) throw Error(ErrorKind::InvalidTerminals, "need at least two terminals");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) active_[i * n + j] = 1;
  }
}

TerminalGraph::TerminalGraph(const std::vector<Config>& terminals) : TerminalGraph(terminals.size()) {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) h_[i * n_ + j] = heuristic(terminals[i], terminals[j]);
  }
}

bool TerminalGraph::lower_cost(TerminalPair e, double value) {
  double& current = cost_[index(e)];
  if (!(value < current)) return false;
  current = value;
  return true;
}

void TerminalGraph::deactivate(TerminalPair e) {
  char& flag = active_[index(e)];
  if (flag) {
    flag = 0;
    --active_count_;
  }
}

std::vector<TerminalPair> TerminalGraph::active_pairs() const {
  std::vector<TerminalPair> out;
  out.reserve(active_count_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint32_t j = i + 1; j < n_; ++j) {
      if (active_[i * n_ + j]) out.push_back({i, j});
    }
  }
  return out;
}

void TerminalGraph::set_tree(std::vector<TerminalPair> tree) {
  for (const TerminalPair& e : tree_) in_tree_[index(e)] = 0;
  tree_ = std::move(tree);
  for (TerminalPair& e : tree_) {
    e = TerminalPair::of(e.a, e.b);
    in_tree_[index(e)] = 1;
  }
  std::sort(tree_.begin(), tree_.end());
}

void TerminalGraph::swap_tree_edge(TerminalPair out, TerminalPair in) {
  out = TerminalPair::of(out.a, out.b);
  in = TerminalPair::of(in.a, in.b);
  auto it = std::find(tree_.begin(), tree_.end(), out);
  if (it == tree_.end()) throw Error(ErrorKind::NotSpanning, "swapped-out edge is not in the tree");
  *it = in;
  in_tree_[index(out)] = 0;
  in_tree_[index(in)] = 1;
  std::sort(tree_.begin(), tree_.end());
}

double TerminalGraph::tree_weight() const {
  if (!tree_spans()) return kInf;
  // Summing in ascending cost order makes the result monotone under edge
  // decreases and swaps, so an improving tree never reports a larger weight.
  std::vector<double> costs;
  costs.reserve(tree_.size());
  for (const TerminalPair& e : tree_) costs.push_back(cost(e));
  std::sort(costs.begin(), costs.end());
  double total = 0.0;
  for (double c : costs) total += c;
  return total;
}

CycleMax cycle_max_edge(const TerminalGraph& tg, TerminalPair e) {
  if (!tg.tree_spans()) throw Error(ErrorKind::NotSpanning, "cycle query needs a spanning tree");
  const std::size_t n = tg.size();
  std::vector<std::vector<std::uint32_t>> adjacent(n);
  for (const TerminalPair& t : tg.tree()) {
    adjacent[t.a].push_back(t.b);
    adjacent[t.b].push_back(t.a);
  }
  // Depth-first walk from e.a recording predecessors until e.b is reached.
  std::vector<std::uint32_t> previous(n, static_cast<std::uint32_t>(n));
  std::vector<std::uint32_t> stack{e.a};
  previous[e.a] = e.a;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    if (u == e.b) break;
    for (std::uint32_t v : adjacent[u]) {
      if (previous[v] == n) {
        previous[v] = u;
        stack.push_back(v);
      }
    }
  }
  if (previous[e.b] == n) throw Error(ErrorKind::NotSpanning, "tree does not connect the queried pair");

  CycleMax result;
  result.cost = -kInf;
  for (std::uint32_t v = e.b; v != e.a; v = previous[v]) {
    const TerminalPair step = TerminalPair::of(v, previous[v]);
    const double c = tg.cost(step);
    result.path.push_back(step);
    result.path_cost += c;
    if (c > result.cost || (c == result.cost && step < result.edge)) {
      result.cost = c;
      result.edge = step;
    }
  }
  std::reverse(result.path.begin(), result.path.end());
  return result;
}

std::optional<std::vector<TerminalPair>> spanning_tree_kruskal(const TerminalGraph& tg) {
  const std::size_t n = tg.size();
  std::vector<TerminalPair> candidates;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (std::isfinite(tg.cost({i, j}))) candidates.push_back({i, j});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](TerminalPair x, TerminalPair y) { return tg.cost(x) < tg.cost(y); });

  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<TerminalPair> tree;
  for (const TerminalPair& e : candidates) {
    const std::uint32_t ra = find(e.a);
    const std::uint32_t rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    tree.push_back(e);
    if (tree.size() + 1 == n) break;
  }
  if (tree.size() + 1 != n) return std::nullopt;
  return tree;
}

namespace {

// Concatenates the realizations of the tree edges joining e.a to e.b.
std::vector<NodeId> tree_path_realization(const TerminalGraph& tg, TerminalPair e, const CycleMax& cycle) {
  std::vector<NodeId> walk;
  std::uint32_t at = e.a;
  for (const TerminalPair& step : cycle.path) {
    std::vector<NodeId> piece = tg.realization(step);
    if (piece.empty()) return {};
    if (step.a != at) std::reverse(piece.begin(), piece.end());
    if (!walk.empty()) walk.pop_back();
    walk.insert(walk.end(), piece.begin(), piece.end());
    at = step.a == at ? step.b : step.a;
  }
  return walk;
}

}  // namespace

void update_tree(TerminalGraph& tg, std::span<const TerminalPair> scan_order) {
  if (!tg.tree_spans()) {
    if (auto tree = spanning_tree_kruskal(tg)) tg.set_tree(std::move(*tree));
    return;
  }
  std::vector<TerminalPair> order;
  if (scan_order.empty()) {
    for (const TerminalPair& e : tg.active_pairs()) {
      if (!tg.in_tree(e)) order.push_back(e);
    }
  } else {
    order.assign(scan_order.begin(), scan_order.end());
  }
  for (TerminalPair e : order) {
    e = TerminalPair::of(e.a, e.b);
    if (!tg.is_active(e) || tg.in_tree(e)) continue;
    const CycleMax cycle = cycle_max_edge(tg, e);
    if (cycle.cost > tg.cost(e)) {
      tg.swap_tree_edge(cycle.edge, e);
    } else if (cycle.path_cost < tg.cost(e)) {
      tg.lower_cost(e, cycle.path_cost);
      tg.set_realization(e, tree_path_realization(tg, e, cycle));
    }
  }
}

std::vector<TerminalPair> prune_edges(TerminalGraph& tg) {
  std::vector<TerminalPair> removed;
  if (!tg.tree_spans()) return removed;
  for (const TerminalPair& e : tg.active_pairs()) {
    if (tg.in_tree(e)) continue;
    if (tg.lower_bound(e) > cycle_max_edge(tg, e).cost) {
      tg.deactivate(e);
      removed.push_back(e);
    }
  }
  return removed;
}

ProbabilityTable lower_bound_probability(const TerminalGraph& tg) {
  ProbabilityTable table;
  double total = 0.0;
  for (const TerminalPair& e : tg.active_pairs()) {
    table.push_back({e, tg.lower_bound(e)});
    total += tg.lower_bound(e);
  }
  for (ProbabilityEntry& entry : table) {
    entry.probability = total > 0.0 ? entry.probability / total : 1.0 / static_cast<double>(table.size());
  }
  return table;
}

ProbabilityTable update_probability(const TerminalGraph& tg, const ProbabilityTable& prior) {
  if (!tg.tree_spans()) return prior;

  std::vector<ProbabilityEntry> mst;
  std::vector<ProbabilityEntry> non_mst;
  double mst_total = 0.0;
  double non_mst_total = 0.0;
  const std::vector<TerminalPair> active = tg.active_pairs();
  for (const TerminalPair& e : active) {
    if (tg.in_tree(e)) {
      const double gap = tg.cost(e) - tg.lower_bound(e);
      if (gap > 0.0) {
        mst.push_back({e, gap});
        mst_total += gap;
      }
      continue;
    }
    const CycleMax cycle = cycle_max_edge(tg, e);
    const double cost = std::isfinite(tg.cost(e)) ? tg.cost(e) : cycle.path_cost;
    const double gap = cost - cycle.cost;
    if (gap > 0.0) {
      non_mst.push_back({e, gap});
      non_mst_total += gap;
    }
  }

  ProbabilityTable table;
  if (mst.empty() && non_mst.empty()) {
    for (const TerminalPair& e : active) table.push_back({e, 1.0 / static_cast<double>(active.size())});
    return table;
  }
  const double count = static_cast<double>(mst.size() + non_mst.size());
  for (const ProbabilityEntry& entry : mst) {
    table.push_back({entry.edge, (static_cast<double>(mst.size()) / count) * (entry.probability / mst_total)});
  }
  for (const ProbabilityEntry& entry : non_mst) {
    table.push_back(
        {entry.edge, (static_cast<double>(non_mst.size()) / count) * (entry.probability / non_mst_total)});
  }
  std::sort(table.begin(), table.end(),
            [](const ProbabilityEntry& x, const ProbabilityEntry& y) { return x.edge < y.edge; });
  return table;
}

}  // namespace mgpf
