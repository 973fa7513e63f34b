#include "mgpf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mgpf/error.hpp"

namespace mgpf::oracle {

namespace {

constexpr double kUnreached = std::numeric_limits<double>::infinity();

// Binary min-heap keyed on distance, kept separate from the planner's queues.
class DistanceHeap {
 public:
  void push(double key, NodeId node) {
    heap_.push_back({key, node});
    std::size_t i = heap_.size() - 1;
    while (i > 0) {
      const std::size_t up = (i - 1) / 2;
      if (!(heap_[i].key < heap_[up].key)) break;
      std::swap(heap_[i], heap_[up]);
      i = up;
    }
  }

  std::pair<double, NodeId> pop() {
    const Item top = heap_.front();
    heap_.front() = heap_.back();
    heap_.pop_back();
    std::size_t i = 0;
    while (true) {
      const std::size_t l = 2 * i + 1;
      const std::size_t r = l + 1;
      std::size_t smallest = i;
      if (l < heap_.size() && heap_[l].key < heap_[smallest].key) smallest = l;
      if (r < heap_.size() && heap_[r].key < heap_[smallest].key) smallest = r;
      if (smallest == i) break;
      std::swap(heap_[i], heap_[smallest]);
      i = smallest;
    }
    return {top.key, top.node};
  }

  bool empty() const { return heap_.empty(); }

 private:
  struct Item {
    double key;
    NodeId node;
  };
  std::vector<Item> heap_;
};

std::vector<double> single_source(const Roadmap& rm, NodeId source) {
  std::vector<double> dist(rm.size(), kUnreached);
  std::vector<char> settled(rm.size(), 0);
  DistanceHeap heap;
  dist[source] = 0.0;
  heap.push(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (const Edge& edge : rm.neighbors(u)) {
      const double candidate = d + edge.cost;
      if (candidate < dist[edge.to]) {
        dist[edge.to] = candidate;
        heap.push(candidate, edge.to);
      }
    }
  }
  return dist;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

}  // namespace

CostMatrix metric_completion(const Roadmap& rm, std::size_t num_terminals) {
  CostMatrix costs{num_terminals, std::vector<double>(num_terminals * num_terminals, kUnreached)};
  for (std::size_t i = 0; i < num_terminals; ++i) {
    const std::vector<double> dist = single_source(rm, static_cast<NodeId>(i));
    for (std::size_t j = 0; j < num_terminals; ++j) costs.at(i, j) = dist[j];
  }
  // Symmetrize against floating-point differences between the two directions.
  for (std::size_t i = 0; i < num_terminals; ++i) {
    costs.at(i, i) = 0.0;
    for (std::size_t j = i + 1; j < num_terminals; ++j) {
      const double c = std::min(costs.at(i, j), costs.at(j, i));
      costs.at(i, j) = c;
      costs.at(j, i) = c;
    }
  }
  return costs;
}

std::optional<SpanningTree> kruskal(const CostMatrix& costs) {
  struct Candidate {
    double cost;
    std::size_t i;
    std::size_t j;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < costs.n; ++i) {
    for (std::size_t j = i + 1; j < costs.n; ++j) {
      if (std::isfinite(costs.at(i, j))) candidates.push_back({costs.at(i, j), i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return x.cost != y.cost ? x.cost < y.cost : std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  DisjointSets sets(costs.n);
  SpanningTree tree;
  for (const Candidate& c : candidates) {
    if (!sets.unite(c.i, c.j)) continue;
    tree.edges.emplace_back(c.i, c.j);
    tree.weight += c.cost;
  }
  if (costs.n > 0 && tree.edges.size() + 1 != costs.n) return std::nullopt;
  return tree;
}

Tour optimal_mgpf(const CostMatrix& costs, std::size_t s, std::size_t d) {
  const std::size_t n = costs.n;
  if (n > kMaxExactTerminals) {
    throw Error(ErrorKind::SizeLimit, "exact MGPF limited to " + std::to_string(kMaxExactTerminals) + " terminals");
  }
  if (n < 2 || s >= n || d >= n || s == d) throw Error(ErrorKind::InvalidTerminals, "need distinct s and d");
  for (double c : costs.entries) {
    if (!std::isfinite(c)) throw Error(ErrorKind::NotSpanning, "exact MGPF needs a connected metric completion");
  }

  // best[mask][v]: cheapest path from s visiting exactly `mask`, ending at v.
  const std::size_t full = std::size_t{1} << n;
  std::vector<double> best(full * n, kUnreached);
  std::vector<std::size_t> from(full * n, n);
  best[(std::size_t{1} << s) * n + s] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!(mask & (std::size_t{1} << s))) continue;
    for (std::size_t v = 0; v < n; ++v) {
      const double here = best[mask * n + v];
      if (!std::isfinite(here)) continue;
      for (std::size_t w = 0; w < n; ++w) {
        if (mask & (std::size_t{1} << w)) continue;
        // d is only entered last.
        const std::size_t next = mask | (std::size_t{1} << w);
        if (w == d && next != full - 1) continue;
        const double candidate = here + costs.at(v, w);
        if (candidate < best[next * n + w]) {
          best[next * n + w] = candidate;
          from[next * n + w] = v;
        }
      }
    }
  }
  Tour tour;
  tour.cost = best[(full - 1) * n + d];
  std::size_t mask = full - 1;
  for (std::size_t v = d; v != n;) {
    tour.order.push_back(v);
    const std::size_t previous = from[mask * n + v];
    mask &= ~(std::size_t{1} << v);
    v = previous;
  }
  std::reverse(tour.order.begin(), tour.order.end());
  return tour;
}

}  // namespace mgpf::oracle
