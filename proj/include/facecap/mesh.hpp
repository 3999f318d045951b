#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace facecap {

// Fixed-topology triangle mesh. The undirected edge set is derived from the
// faces; topology is never mutated by the pipeline, only vertex positions.
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_faces() const { return static_cast<int>(faces.size()); }
  bool empty() const { return vertices.empty() || faces.empty(); }

  void validate() const;  // index bounds, no repeated index within a face

  // Undirected edge list with u < v, sorted, unique.
  std::vector<std::pair<int, int>> undirected_edges() const;

  void bounding_box(Eigen::Vector3d* lo, Eigen::Vector3d* hi) const;
  double bounding_box_diagonal() const;
  Eigen::Vector3d centroid() const;
};

// Unnormalized face normal (cross product, magnitude = 2 * area).
Eigen::Vector3d face_normal_scaled(const TriMesh& mesh, int face);

// True iff the face's geometric normal points toward the camera center.
bool face_front_facing(const TriMesh& mesh, int face,
                       const Eigen::Vector3d& camera_center);

struct VertexNormals {
  std::vector<Eigen::Vector3d> normals;  // unit where valid, zero otherwise
  std::vector<uint8_t> valid;            // 0 for vertices with no area support
};

// Area-weighted average of incident face normals, normalized per vertex.
// Vertices with no incident non-degenerate face are flagged, not fatal.
VertexNormals vertex_normals(const TriMesh& mesh);

}  // namespace facecap
