#include "facecap/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "facecap/common.hpp"

namespace facecap {

// Ericson, "Real-Time Collision Detection", closest point via voronoi regions.
Eigen::Vector3d closest_point_on_triangle(const Eigen::Vector3d& p,
                                          const Eigen::Vector3d& a,
                                          const Eigen::Vector3d& b,
                                          const Eigen::Vector3d& c) {
  const Eigen::Vector3d ab = b - a;
  const Eigen::Vector3d ac = c - a;
  const Eigen::Vector3d ap = p - a;
  const double d1 = ab.dot(ap);
  const double d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Eigen::Vector3d bp = p - b;
  const double d3 = ab.dot(bp);
  const double d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
    const double v = d1 / (d1 - d3);
    return a + v * ab;
  }

  const Eigen::Vector3d cp = p - c;
  const double d5 = ab.dot(cp);
  const double d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
    const double w = d2 / (d2 - d6);
    return a + w * ac;
  }

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + w * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  const double v = vb * denom;
  const double w = vc * denom;
  return a + ab * v + ac * w;
}

namespace {
constexpr int kLeafTris = 4;

double aabb_distance2(const Eigen::Vector3d& lo, const Eigen::Vector3d& hi,
                      const Eigen::Vector3d& p) {
  double d2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double v = std::max({lo[k] - p[k], 0.0, p[k] - hi[k]});
    d2 += v * v;
  }
  return d2;
}
}  // namespace

TriangleBvh::TriangleBvh(const TriMesh& mesh) {
  check(!mesh.empty(), "TriangleBvh: empty mesh");
  const int m = mesh.num_faces();
  va_.resize(m);
  vb_.resize(m);
  vc_.resize(m);
  tri_centroid_.resize(m);
  for (int f = 0; f < m; ++f) {
    va_[f] = mesh.vertices[mesh.faces[f][0]];
    vb_[f] = mesh.vertices[mesh.faces[f][1]];
    vc_[f] = mesh.vertices[mesh.faces[f][2]];
    tri_centroid_[f] = (va_[f] + vb_[f] + vc_[f]) / 3.0;
  }
  order_.resize(m);
  std::iota(order_.begin(), order_.end(), 0);
  nodes_.reserve(2 * m / kLeafTris + 8);
  root_ = build(0, m);
}

int TriangleBvh::build(int begin, int end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.lo.setConstant(std::numeric_limits<double>::max());
  node.hi.setConstant(std::numeric_limits<double>::lowest());
  for (int i = begin; i < end; ++i) {
    const int t = order_[i];
    node.lo = node.lo.cwiseMin(va_[t]).cwiseMin(vb_[t]).cwiseMin(vc_[t]);
    node.hi = node.hi.cwiseMax(va_[t]).cwiseMax(vb_[t]).cwiseMax(vc_[t]);
  }
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafTris) return id;

  int axis = 0;
  (node.hi - node.lo).maxCoeff(&axis);
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid,
                   order_.begin() + end, [&](int ta, int tb) {
                     if (tri_centroid_[ta][axis] != tri_centroid_[tb][axis])
                       return tri_centroid_[ta][axis] < tri_centroid_[tb][axis];
                     return ta < tb;
                   });
  const int left = build(begin, mid);
  const int right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void TriangleBvh::closest(int node_id, const Eigen::Vector3d& p,
                          double* best_d2, Eigen::Vector3d* best_point) const {
  const Node& node = nodes_[node_id];
  if (aabb_distance2(node.lo, node.hi, p) >= *best_d2) return;
  if (node.left < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int t = order_[i];
      const Eigen::Vector3d q =
          closest_point_on_triangle(p, va_[t], vb_[t], vc_[t]);
      const double d2 = (q - p).squaredNorm();
      if (d2 < *best_d2) {
        *best_d2 = d2;
        *best_point = q;
      }
    }
    return;
  }
  // Visit the nearer child first for tighter pruning.
  const double dl = aabb_distance2(nodes_[node.left].lo, nodes_[node.left].hi, p);
  const double dr =
      aabb_distance2(nodes_[node.right].lo, nodes_[node.right].hi, p);
  if (dl <= dr) {
    closest(node.left, p, best_d2, best_point);
    closest(node.right, p, best_d2, best_point);
  } else {
    closest(node.right, p, best_d2, best_point);
    closest(node.left, p, best_d2, best_point);
  }
}

Eigen::Vector3d TriangleBvh::closest_point(const Eigen::Vector3d& p) const {
  double best_d2 = std::numeric_limits<double>::max();
  Eigen::Vector3d best = va_[order_[0]];
  closest(root_, p, &best_d2, &best);
  return best;
}

double TriangleBvh::distance(const Eigen::Vector3d& p) const {
  return (closest_point(p) - p).norm();
}

double point_to_surface_distance(const Eigen::Vector3d& point,
                                 const TriMesh& mesh) {
  TriangleBvh bvh(mesh);
  return bvh.distance(point);
}

}  // namespace facecap
