#include "facecap/mesh.hpp"

#include <algorithm>
#include <limits>

#include "facecap/common.hpp"

namespace facecap {

void TriMesh::validate() const {
  const int n = num_vertices();
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      check(f[k] >= 0 && f[k] < n, "TriMesh: face index out of range");
    }
    check(f[0] != f[1] && f[1] != f[2] && f[0] != f[2],
          "TriMesh: degenerate face (repeated vertex index)");
  }
}

std::vector<std::pair<int, int>> TriMesh::undirected_edges() const {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(faces.size() * 3);
  for (const auto& f : faces) {
    for (int k = 0; k < 3; ++k) {
      int u = f[k], v = f[(k + 1) % 3];
      if (u > v) std::swap(u, v);
      edges.emplace_back(u, v);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void TriMesh::bounding_box(Eigen::Vector3d* lo, Eigen::Vector3d* hi) const {
  check(!vertices.empty(), "TriMesh: bounding box of empty mesh");
  lo->setConstant(std::numeric_limits<double>::max());
  hi->setConstant(std::numeric_limits<double>::lowest());
  for (const auto& v : vertices) {
    *lo = lo->cwiseMin(v);
    *hi = hi->cwiseMax(v);
  }
}

double TriMesh::bounding_box_diagonal() const {
  Eigen::Vector3d lo, hi;
  bounding_box(&lo, &hi);
  return (hi - lo).norm();
}

Eigen::Vector3d TriMesh::centroid() const {
  check(!vertices.empty(), "TriMesh: centroid of empty mesh");
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

Eigen::Vector3d face_normal_scaled(const TriMesh& mesh, int face) {
  const auto& f = mesh.faces[face];
  const Eigen::Vector3d& a = mesh.vertices[f[0]];
  const Eigen::Vector3d& b = mesh.vertices[f[1]];
  const Eigen::Vector3d& c = mesh.vertices[f[2]];
  return (b - a).cross(c - a);
}

bool face_front_facing(const TriMesh& mesh, int face,
                       const Eigen::Vector3d& camera_center) {
  const Eigen::Vector3d n = face_normal_scaled(mesh, face);
  const Eigen::Vector3d& a = mesh.vertices[mesh.faces[face][0]];
  return n.dot(camera_center - a) > 0.0;
}

VertexNormals vertex_normals(const TriMesh& mesh) {
  check(!mesh.empty(), "vertex_normals: empty mesh");
  VertexNormals out;
  out.normals.assign(mesh.vertices.size(), Eigen::Vector3d::Zero());
  out.valid.assign(mesh.vertices.size(), 0);
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const Eigen::Vector3d n = face_normal_scaled(mesh, f);  // area-weighted
    for (int k = 0; k < 3; ++k) out.normals[mesh.faces[f][k]] += n;
  }
  for (size_t i = 0; i < out.normals.size(); ++i) {
    const double len = out.normals[i].norm();
    if (len > 1e-20) {
      out.normals[i] /= len;
      out.valid[i] = 1;
    } else {
      out.normals[i].setZero();
    }
  }
  return out;
}

}  // namespace facecap
