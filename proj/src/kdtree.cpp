#include "mgpf/kdtree.hpp"

#include <algorithm>

#include "mgpf/space.hpp"

namespace mgpf {

void KdTree::insert(std::uint32_t id, std::span<const double> coords) {
  const double* point = coords.data() + static_cast<std::size_t>(id) * dim_;
  const auto slot = static_cast<std::uint32_t>(nodes_.size());
  if (nodes_.empty()) {
    nodes_.push_back(Node{id, kNone, kNone, 0});
    return;
  }
  std::uint32_t current = 0;
  int depth = 0;
  while (true) {
    Node& node = nodes_[current];
    const double split = coords[static_cast<std::size_t>(node.id) * dim_ + node.axis];
    std::uint32_t& child = point[node.axis] < split ? node.left : node.right;
    ++depth;
    if (child == kNone) {
      child = slot;
      break;
    }
    current = child;
  }
  nodes_.push_back(Node{id, kNone, kNone, depth % dim_});
}

std::vector<std::uint32_t> KdTree::radius_query(std::span<const double> query, double radius,
                                                std::span<const double> coords) const {
  std::vector<std::uint32_t> out;
  if (nodes_.empty()) return out;
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    const std::span<const double> point = coords.subspan(static_cast<std::size_t>(node.id) * dim_, dim_);
    if (heuristic(query, point) <= radius) out.push_back(node.id);
    const double diff = query[node.axis] - point[node.axis];
    // Points on the left satisfy p[axis] < split; on the right p[axis] >= split.
    if (node.left != kNone && diff - radius < 1e-12) stack.push_back(node.left);
    if (node.right != kNone && diff + radius >= -1e-12) stack.push_back(node.right);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mgpf
