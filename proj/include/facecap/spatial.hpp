#pragma once

#include <Eigen/Core>
#include <vector>

namespace facecap {

// Axis-aligned splitting tree over a fixed point set. Built once; queries
// are exact (the tree only prunes, it never approximates).
class PointIndex {
 public:
  explicit PointIndex(const std::vector<Eigen::Vector3d>& points);

  // Indices i with ||points[i] - center|| <= r, ascending. Throws for r <= 0.
  std::vector<int> radius_neighbors(const Eigen::Vector3d& center,
                                    double r) const;

  int size() const { return static_cast<int>(points_.size()); }

 private:
  struct Node {
    int left = -1, right = -1;   // children, -1 for leaf
    int begin = 0, end = 0;      // leaf range into order_
    int axis = 0;
    double split = 0;
  };

  int build(int begin, int end, int depth);

  std::vector<Eigen::Vector3d> points_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace facecap
