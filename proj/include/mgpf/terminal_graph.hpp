#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "mgpf/roadmap.hpp"
#include "mgpf/space.hpp"

namespace mgpf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Unordered pair of terminal indices, stored with a < b.
struct TerminalPair {
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  static TerminalPair of(std::uint32_t u, std::uint32_t v) {
    return u < v ? TerminalPair{u, v} : TerminalPair{v, u};
  }

  friend auto operator<=>(const TerminalPair&, const TerminalPair&) = default;
};

/// Terminal graph G_T = (T, A) with cost_T, lower bounds h, and the current
/// spanning tree S_T. Terminal i is roadmap node i.
class TerminalGraph {
 public:
  /// Lower bounds are the Euclidean distances between the terminals.
  explicit TerminalGraph(const std::vector<Config>& terminals);
  /// `n` terminals with zero lower bounds; see set_lower_bound.
  explicit TerminalGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t pair_count() const { return n_ * (n_ - 1) / 2; }

  double cost(TerminalPair e) const { return cost_[index(e)]; }
  double lower_bound(TerminalPair e) const { return h_[index(e)]; }
  void set_lower_bound(TerminalPair e, double h) { h_[index(e)] = h; }

  /// Lowers cost_T(e) to `value` if it is strictly cheaper; returns whether it did.
  bool lower_cost(TerminalPair e, double value);

  /// Roadmap node path realizing cost_T(e), from terminal e.a to e.b; empty if
  /// the current cost came from a tree-path bound rather than a roadmap walk.
  const std::vector<NodeId>& realization(TerminalPair e) const { return paths_[index(e)]; }
  void set_realization(TerminalPair e, std::vector<NodeId> path) { paths_[index(e)] = std::move(path); }

  bool is_active(TerminalPair e) const { return active_[index(e)]; }
  void deactivate(TerminalPair e);
  /// Active pairs in lexicographic order.
  std::vector<TerminalPair> active_pairs() const;
  std::size_t active_count() const { return active_count_; }
  std::size_t pruned_count() const { return pair_count() - active_count_; }

  const std::vector<TerminalPair>& tree() const { return tree_; }
  bool in_tree(TerminalPair e) const { return in_tree_[index(e)]; }
  void set_tree(std::vector<TerminalPair> tree);
  void swap_tree_edge(TerminalPair out, TerminalPair in);
  bool tree_spans() const { return n_ >= 2 && tree_.size() == n_ - 1; }
  /// Sum of cost_T over tree edges, +inf while there is no spanning tree.
  double tree_weight() const;

 private:
  std::size_t index(TerminalPair e) const {
    return e.a < e.b ? static_cast<std::size_t>(e.a) * n_ + e.b : static_cast<std::size_t>(e.b) * n_ + e.a;
  }

  std::size_t n_;
  std::vector<double> cost_;
  std::vector<double> h_;
  std::vector<char> active_;
  std::vector<char> in_tree_;
  std::vector<std::vector<NodeId>> paths_;
  std::vector<TerminalPair> tree_;
  std::size_t active_count_;
};

struct ProbabilityEntry {
  TerminalPair edge;
  double probability;
};

/// Sampling distribution over active terminal pairs, kept in pair order.
using ProbabilityTable = std::vector<ProbabilityEntry>;

/// Maximum-cost edge on the tree path joining e's endpoints.
struct CycleMax {
  TerminalPair edge;
  double cost = 0.0;
  /// Sum of cost_T along the tree path.
  double path_cost = 0.0;
  std::vector<TerminalPair> path;
};

/// Tree path between the endpoints of `e` (the cycle closed by e, minus e).
/// Ties on the maximum go to the lexicographically smallest pair.
CycleMax cycle_max_edge(const TerminalGraph& tg, TerminalPair e);

/// Kruskal over the pairs with finite cost_T; nullopt unless the result spans.
std::optional<std::vector<TerminalPair>> spanning_tree_kruskal(const TerminalGraph& tg);

/// Incremental MST repair. Installs a Kruskal tree if none exists yet;
/// otherwise scans the active non-tree pairs once, swapping a pair in when it
/// undercuts the maximum edge of its cycle and otherwise capping its cost_T at
/// the tree-path cost. `scan_order`, when non-empty, replaces the default
/// lexicographic order (pairs that are inactive or already in the tree are skipped).
void update_tree(TerminalGraph& tg, std::span<const TerminalPair> scan_order = {});

/// Removes active non-tree pairs whose lower bound exceeds their cycle maximum.
/// No-op without a spanning tree. Returns the removed pairs.
std::vector<TerminalPair> prune_edges(TerminalGraph& tg);

/// Prob(e) = h(e) / sum h over the active set.
ProbabilityTable lower_bound_probability(const TerminalGraph& tg);

/// Gap-driven redistribution. Returns `prior` unchanged while there is no tree.
ProbabilityTable update_probability(const TerminalGraph& tg, const ProbabilityTable& prior);

}  // namespace mgpf
