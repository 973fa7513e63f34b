#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mgpf {

/// Incremental k-d tree over points stored by the caller in a flat
/// row-major buffer (point i occupies [i*dim, (i+1)*dim)). Points are appended
/// in id order and never removed. No rebalancing: roadmap samples arrive in
/// random order, which keeps the expected depth logarithmic.
class KdTree {
 public:
  explicit KdTree(int dim) : dim_(dim) {}

  /// Inserts point `id`; `coords` is the caller's buffer, which must already
  /// hold the point.
  void insert(std::uint32_t id, std::span<const double> coords);

  /// All ids with Euclidean distance <= radius from `query`, ascending by id.
  /// Exact: candidates are confirmed with the same distance formula used by
  /// `heuristic`.
  std::vector<std::uint32_t> radius_query(std::span<const double> query, double radius,
                                          std::span<const double> coords) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct Node {
    std::uint32_t id;
    std::uint32_t left = kNone;
    std::uint32_t right = kNone;
    int axis = 0;
  };

  int dim_;
  std::vector<Node> nodes_;
};

}  // namespace mgpf
