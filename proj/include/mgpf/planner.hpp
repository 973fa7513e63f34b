#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mgpf/random.hpp"
#include "mgpf/ripple.hpp"
#include "mgpf/roadmap.hpp"
#include "mgpf/space.hpp"
#include "mgpf/terminal_graph.hpp"

namespace mgpf {

struct PlannerParams {
  std::size_t n_s = 200;  // samples per batch
  std::size_t n_b = 1;    // batches
  double eta = 1.1;
  std::uint64_t seed = 0;
  /// Edge pruning; switched off only to study the unpruned terminal graph.
  bool prune = true;
};

struct TraceRow {
  std::size_t iteration = 0;
  std::size_t samples_total = 0;
  std::size_t edges_active = 0;
  std::size_t edges_pruned_cum = 0;
  double tree_cost = kInf;
  double path_cost = kInf;
  double wall_time_s = 0.0;
};

using PlannerTrace = std::vector<TraceRow>;
/// Called once per iteration with the new row; must not touch the planner.
using Observer = std::function<void(const TraceRow&)>;

/// A multi-goal path: terminal visiting order from s (terminal 0) to d (the
/// last terminal) and the roadmap nodes realizing it.
struct MgpfPath {
  std::vector<std::size_t> visit_order;
  std::vector<NodeId> nodes;
  std::vector<Config> waypoints;
  double cost = kInf;
};

/// Walks the tree depth-first from s, entering the subtree that holds d last
/// and placing d at the end, then joins consecutive terminals by roadmap
/// shortest paths. Cost is at most twice the tree weight.
MgpfPath extract_path(const Roadmap& rm, std::span<const TerminalPair> tree, std::size_t num_terminals);

/// Shortest roadmap path (A* with the Euclidean heuristic). Empty if unreachable.
std::vector<NodeId> shortest_path(const Roadmap& rm, NodeId from, NodeId to, double* cost = nullptr);

/// Shared driver: roadmap seeded with the terminals, seeded RNG, trace rows.
class Planner {
 public:
  virtual ~Planner() = default;

  /// Runs one batch and appends a trace row.
  const TraceRow& step();
  /// Runs the remaining batches up to params.n_b.
  const PlannerTrace& run(const Observer& observer = {});

  const Roadmap& roadmap() const { return roadmap_; }
  const Env& env() const { return roadmap_.env(); }
  const std::vector<Config>& terminals() const { return terminals_; }
  const PlannerParams& params() const { return params_; }
  const PlannerTrace& trace() const { return trace_; }
  const Forest& forest() const { return forest_; }
  const TerminalGraph& terminal_graph() const { return tg_; }

  double tree_cost() const { return tg_.tree_weight(); }
  /// Throws NotSpanning until a spanning tree exists.
  MgpfPath extract_path() const;

 protected:
  Planner(Env env, std::vector<Config> terminals, PlannerParams params);

  virtual void advance() = 0;
  virtual std::size_t edges_active() const = 0;
  virtual std::size_t edges_pruned() const = 0;

  PlannerParams params_;
  std::vector<Config> terminals_;
  Roadmap roadmap_;
  Forest forest_;
  TerminalGraph tg_;
  Rng rng_;
  PlannerTrace trace_;
  std::chrono::steady_clock::time_point started_;
  std::size_t samples_ = 0;
};

/// Informed sampling + Ripple + incremental MST + pruning.
class IstStar final : public Planner {
 public:
  IstStar(Env env, std::vector<Config> terminals, PlannerParams params);

  const ProbabilityTable& probability() const { return probability_; }
  const std::vector<MeetRecord>& last_meets() const { return last_meets_; }
  const std::vector<TerminalPair>& pruned_pairs() const { return pruned_; }

 private:
  void advance() override;
  std::size_t edges_active() const override { return tg_.active_count(); }
  std::size_t edges_pruned() const override { return tg_.pruned_count(); }

  ProbabilityTable probability_;
  std::vector<MeetRecord> last_meets_;
  std::vector<TerminalPair> pruned_;
};

/// Uniform PRM* densification; the tree is rebuilt each batch from scratch
/// (multi-source Dijkstra, Voronoi boundary edges, Kruskal).
class Baseline final : public Planner {
 public:
  Baseline(Env env, std::vector<Config> terminals, PlannerParams params);

 private:
  void advance() override;
  std::size_t edges_active() const override { return tg_.pair_count(); }
  std::size_t edges_pruned() const override { return 0; }
};

/// Builds the forest and terminal graph of the current roadmap in one pass:
/// multi-source Dijkstra from the terminals, then every cross-root roadmap
/// edge proposes g(u) + c + g(v) for its root pair, then Kruskal.
void rebuild_from_voronoi(const Roadmap& rm, const std::vector<Config>& terminals, Forest& forest,
                          TerminalGraph& tg);

}  // namespace mgpf
