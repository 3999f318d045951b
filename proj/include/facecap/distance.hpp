#pragma once

#include <Eigen/Core>
#include <vector>

#include "facecap/mesh.hpp"

namespace facecap {

// Exact point on a triangle nearest to p (face interior, edge or vertex).
Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p,
                                          const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b,
                                          const Eigen::Vector3d& c);

// AABB tree over mesh triangles for exact nearest-surface queries.
class TriangleBvh {
 public:
  explicit TriangleBvh(const TriMesh& mesh);  // throws for an empty mesh

  double distance(const Eigen::Vector3d& p) const;
  Eigen::Vector3d closest_point(const Eigen::Vector3d& p) const;

 private:
  struct Node {
    Eigen::Vector3d lo, hi;
    int left = -1, right = -1;
    int begin = 0, end = 0;
  };

  int build(int begin, int end);
  void closest(int node_id, const Eigen::Vector3d& p, double* best_d2,
               Eigen::Vector3d* best_point) const;

  std::vector<Eigen::Vector3d> va_, vb_, vc_;  // triangle vertices by order
  std::vector<Eigen::Vector3d> tri_centroid_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

// One-shot convenience; builds a BVH internally. Use TriangleBvh directly
// for repeated queries against the same mesh.
double point_to_surface_distance(const Eigen::Vector3d& point,
                                 const TriMesh& mesh);

}  // namespace facecap
