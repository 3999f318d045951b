#include "facecap/spatial.hpp"

#include <algorithm>
#include <numeric>

#include "facecap/common.hpp"

namespace facecap {

namespace {
constexpr int kLeafSize = 16;
}

PointIndex::PointIndex(const std::vector<Eigen::Vector3d>& points)
    : points_(points) {
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!points_.empty()) {
    nodes_.reserve(2 * points_.size() / kLeafSize + 8);
    root_ = build(0, static_cast<int>(points_.size()), 0);
  }
}

int PointIndex::build(int begin, int end, int depth) {
  Node node;
  node.begin = begin;
  node.end = end;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  // Split on the widest axis at the median sample.
  Eigen::Vector3d lo = points_[order_[begin]], hi = lo;
  for (int i = begin + 1; i < end; ++i) {
    lo = lo.cwiseMin(points_[order_[i]]);
    hi = hi.cwiseMax(points_[order_[i]]);
  }
  int axis = 0;
  (hi - lo).maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int a, int b) {
                     if (points_[a][axis] != points_[b][axis])
                       return points_[a][axis] < points_[b][axis];
                     return a < b;
                   });
  const double split = points_[order_[mid]][axis];
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

std::vector<int> PointIndex::radius_neighbors(const Eigen::Vector3d& center,
                                              double r) const {
  check(r > 0.0, "radius_neighbors: radius must be positive");
  std::vector<int> result;
  if (root_ < 0) return result;
  const double r2 = r * r;

  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const Node& node = nodes_[stack.back()];
    stack.pop_back();
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int idx = order_[i];
        if ((points_[idx] - center).squaredNorm() <= r2) result.push_back(idx);
      }
      continue;
    }
    const double d = center[node.axis] - node.split;
    // Points equal to the split value can land on either side of the
    // partition, so recurse whenever the slab intersects the ball.
    if (d <= r) stack.push_back(node.left);
    if (d >= -r) stack.push_back(node.right);
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace facecap
