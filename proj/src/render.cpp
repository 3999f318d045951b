#include "facecap/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "facecap/common.hpp"
#include "facecap/parallel.hpp"

namespace facecap {

namespace {

constexpr double kZNear = 1e-9;

struct ClipVertex {
  Eigen::Vector3d cam;   // camera-frame position
  Eigen::Vector3d bary;  // barycentric w.r.t. the original triangle
};

// Sutherland-Hodgman against z = kZNear. Input 3 vertices, output up to 4.
int clip_near(const ClipVertex in[3], ClipVertex out[4]) {
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const ClipVertex& a = in[i];
    const ClipVertex& b = in[(i + 1) % 3];
    const bool a_in = a.cam.z() > kZNear;
    const bool b_in = b.cam.z() > kZNear;
    if (a_in) out[n++] = a;
    if (a_in != b_in) {
      const double t = (kZNear - a.cam.z()) / (b.cam.z() - a.cam.z());
      out[n].cam = a.cam + t * (b.cam - a.cam);
      out[n].bary = a.bary + t * (b.bary - a.bary);
      ++n;
    }
  }
  return n;
}

struct ScreenVertex {
  double x, y, z;        // pixel coords + camera depth
  Eigen::Vector3d bary;
};

struct PreparedTri {
  int face;
  ScreenVertex v[3];
  float normal[3];  // unit camera-frame face normal, toward the camera
  int y_min, y_max, x_min, x_max;
};

double edge_function(const ScreenVertex& a, const ScreenVertex& b, double px,
                     double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// Top-left fill rule: boundary pixels belong to top and left edges only.
bool edge_includes_boundary(const ScreenVertex& a, const ScreenVertex& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return dy < 0.0 || (dy == 0.0 && dx > 0.0);
}

}  // namespace

RasterOutput render_geometry(const TriMesh& mesh, const CameraPose& pose,
                             const Intrinsics& intr) {
  check(!mesh.empty(), "render_geometry: empty mesh");
  intr.validate();
  const int w = intr.width, h = intr.height;

  RasterOutput out;
  out.depth = DepthMap(w, h);
  out.depth.allocate_normals();
  out.face_index.assign(static_cast<size_t>(w) * h, -1);
  out.barycentric.assign(static_cast<size_t>(w) * h * 3, 0.f);

  // Camera-frame vertices.
  std::vector<Eigen::Vector3d> cam(mesh.vertices.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i)
    cam[i] = pose.to_camera(mesh.vertices[i]);

  // Cull, clip and project each face; fan-triangulate clipped polygons.
  std::vector<PreparedTri> tris;
  tris.reserve(mesh.faces.size());
  for (int f = 0; f < mesh.num_faces(); ++f) {
    const auto& face = mesh.faces[f];
    const Eigen::Vector3d& a = cam[face[0]];
    const Eigen::Vector3d& b = cam[face[1]];
    const Eigen::Vector3d& c = cam[face[2]];
    Eigen::Vector3d n = (b - a).cross(c - a);
    const double n_norm = n.norm();
    if (n_norm < 1e-30) continue;
    n /= n_norm;
    if (n.dot(a) >= 0.0) continue;  // back-facing or edge-on

    const ClipVertex in[3] = {{a, {1, 0, 0}}, {b, {0, 1, 0}}, {c, {0, 0, 1}}};
    ClipVertex poly[4];
    const int nv = clip_near(in, poly);
    if (nv < 3) continue;

    ScreenVertex sv[4];
    for (int i = 0; i < nv; ++i) {
      const Eigen::Vector3d& p = poly[i].cam;
      sv[i] = {intr.fx * p.x() / p.z() + intr.cx,
               intr.fy * p.y() / p.z() + intr.cy, p.z(), poly[i].bary};
    }
    for (int k = 2; k < nv; ++k) {
      PreparedTri t;
      t.face = f;
      t.v[0] = sv[0];
      t.v[1] = sv[k - 1];
      t.v[2] = sv[k];
      const double area = edge_function(t.v[0], t.v[1], t.v[2].x, t.v[2].y);
      if (area == 0.0) continue;
      if (area < 0.0) std::swap(t.v[1], t.v[2]);
      t.normal[0] = static_cast<float>(n.x());
      t.normal[1] = static_cast<float>(n.y());
      t.normal[2] = static_cast<float>(n.z());
      const double xs[3] = {t.v[0].x, t.v[1].x, t.v[2].x};
      const double ys[3] = {t.v[0].y, t.v[1].y, t.v[2].y};
      t.x_min = std::max(0, static_cast<int>(
                                std::ceil(*std::min_element(xs, xs + 3))));
      t.x_max = std::min(w - 1, static_cast<int>(std::floor(
                                    *std::max_element(xs, xs + 3))));
      t.y_min = std::max(0, static_cast<int>(
                                std::ceil(*std::min_element(ys, ys + 3))));
      t.y_max = std::min(h - 1, static_cast<int>(std::floor(
                                    *std::max_element(ys, ys + 3))));
      if (t.x_min > t.x_max || t.y_min > t.y_max) continue;
      tris.push_back(t);
    }
  }

  // Bin triangles per row in submission order, then rasterize rows
  // independently; per-pixel updates stay in one thread, so the result is
  // identical for any thread count.
  std::vector<std::vector<int>> rows(h);
  for (int i = 0; i < static_cast<int>(tris.size()); ++i) {
    for (int y = tris[i].y_min; y <= tris[i].y_max; ++y) rows[y].push_back(i);
  }

  parallel_for(0, h, [&](int64_t y) {
    for (const int ti : rows[y]) {
      const PreparedTri& t = tris[ti];
      const double py = static_cast<double>(y);
      for (int x = t.x_min; x <= t.x_max; ++x) {
        const double px = static_cast<double>(x);
        double e[3];
        bool inside = true;
        for (int k = 0; k < 3; ++k) {
          e[k] = edge_function(t.v[k], t.v[(k + 1) % 3], px, py);
          if (e[k] < 0.0 ||
              (e[k] == 0.0 && !edge_includes_boundary(t.v[k], t.v[(k + 1) % 3]))) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        const double sum = e[0] + e[1] + e[2];
        if (sum <= 0.0) continue;
        // Screen barycentrics; e[k] spans the edge opposite v[(k+2)%3].
        const double l0 = e[1] / sum, l1 = e[2] / sum, l2 = e[0] / sum;
        const double inv_z =
            l0 / t.v[0].z + l1 / t.v[1].z + l2 / t.v[2].z;
        const double depth = 1.0 / inv_z;
        const size_t idx = static_cast<size_t>(y) * w + x;
        if (out.depth.valid[idx] && out.depth.depth[idx] <= depth) continue;
        out.depth.depth[idx] = static_cast<float>(depth);
        out.depth.valid[idx] = 1;
        out.face_index[idx] = t.face;
        const Eigen::Vector3d bary =
            depth * (l0 / t.v[0].z * t.v[0].bary + l1 / t.v[1].z * t.v[1].bary +
                     l2 / t.v[2].z * t.v[2].bary);
        out.barycentric[3 * idx + 0] = static_cast<float>(bary.x());
        out.barycentric[3 * idx + 1] = static_cast<float>(bary.y());
        out.barycentric[3 * idx + 2] = static_cast<float>(bary.z());
        out.depth.normals[3 * idx + 0] = t.normal[0];
        out.depth.normals[3 * idx + 1] = t.normal[1];
        out.depth.normals[3 * idx + 2] = t.normal[2];
      }
    }
  });
  return out;
}

DepthMap render_depth(const TriMesh& mesh, const CameraPose& pose,
                      const Intrinsics& intr) {
  return render_geometry(mesh, pose, intr).depth;
}

}  // namespace facecap
