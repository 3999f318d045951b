#include "facecap/viewsel.hpp"

#include <algorithm>
#include <cmath>

#include "facecap/common.hpp"
#include "facecap/parallel.hpp"
#include "facecap/render.hpp"

namespace facecap {

void ViewSelConfig::validate() const {
  check(sigma1 > 0 && sigma2 > 0, "ViewSelConfig: sigmas must be positive");
  check(theta0 >= 0, "ViewSelConfig: theta0 must be >= 0");
  check(num_sources >= 1, "ViewSelConfig: num_sources must be >= 1");
}

double gaussian_weight(double theta_deg, const ViewSelConfig& cfg) {
  check(theta_deg >= 0.0 && theta_deg <= 180.0,
        "gaussian_weight: theta outside [0, 180]");
  const double d = theta_deg - cfg.theta0;
  const double sigma = theta_deg <= cfg.theta0 ? cfg.sigma1 : cfg.sigma2;
  return std::exp(-d * d / (2.0 * sigma * sigma));
}

double baseline_angle_deg(const Eigen::Vector3d& center_i,
                          const Eigen::Vector3d& center_j,
                          const Eigen::Vector3d& p) {
  const Eigen::Vector3d u = center_i - p;
  const Eigen::Vector3d v = center_j - p;
  const double nu = u.norm(), nv = v.norm();
  check(nu > 1e-12 && nv > 1e-12,
        "baseline_angle: point coincides with a camera center");
  const double c = std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
  return rad_to_deg(std::acos(c));
}

double pair_score(const Keyframe& kf_i, const Keyframe& kf_j,
                  const std::vector<Eigen::Vector3d>& shared_points,
                  const ViewSelConfig& cfg) {
  const Eigen::Vector3d ci = kf_i.pose.center();
  const Eigen::Vector3d cj = kf_j.pose.center();
  double score = 0.0;
  for (const auto& p : shared_points) {
    score += gaussian_weight(baseline_angle_deg(ci, cj, p), cfg);
  }
  return score;
}

std::vector<std::vector<uint8_t>> vertex_visibility(
    const std::vector<Keyframe>& keyframes, const TriMesh& prior_mesh) {
  const int n = static_cast<int>(keyframes.size());
  const int v = prior_mesh.num_vertices();
  std::vector<std::vector<uint8_t>> vis(n, std::vector<uint8_t>(v, 0));
  parallel_for(0, n, [&](int64_t k) {
    const Keyframe& kf = keyframes[k];
    const DepthMap zbuf = render_depth(prior_mesh, kf.pose, kf.intrinsics);
    for (int i = 0; i < v; ++i) {
      const auto proj = project(kf.pose, kf.intrinsics, prior_mesh.vertices[i]);
      if (!proj) continue;
      const int px = static_cast<int>(std::lround(proj->pixel.x()));
      const int py = static_cast<int>(std::lround(proj->pixel.y()));
      if (!zbuf.in_bounds(px, py) || !zbuf.is_valid(px, py)) continue;
      const double z = zbuf.depth_at(px, py);
      if (std::abs(proj->depth - z) <= 0.01 * z) vis[k][i] = 1;
    }
  });
  return vis;
}

std::vector<std::vector<int>> select_source_views(
    const std::vector<Keyframe>& keyframes, const TriMesh& prior_mesh,
    const ViewSelConfig& cfg) {
  cfg.validate();
  check(keyframes.size() >= 2, "select_source_views: need >= 2 keyframes");
  const int n = static_cast<int>(keyframes.size());
  const auto vis = vertex_visibility(keyframes, prior_mesh);

  // Score all unordered pairs over the vertices visible in both views.
  std::vector<double> scores(static_cast<size_t>(n) * n, 0.0);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  parallel_for(0, static_cast<int64_t>(pairs.size()), [&](int64_t pi) {
    const auto [i, j] = pairs[pi];
    const Eigen::Vector3d ci = keyframes[i].pose.center();
    const Eigen::Vector3d cj = keyframes[j].pose.center();
    double s = 0.0;
    for (int v = 0; v < prior_mesh.num_vertices(); ++v) {
      if (vis[i][v] && vis[j][v]) {
        s += gaussian_weight(
            baseline_angle_deg(ci, cj, prior_mesh.vertices[v]), cfg);
      }
    }
    scores[static_cast<size_t>(i) * n + j] = s;
    scores[static_cast<size_t>(j) * n + i] = s;
  });

  std::vector<std::vector<int>> selected(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> others;
    others.reserve(n - 1);
    for (int j = 0; j < n; ++j)
      if (j != i) others.push_back(j);
    std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
      const double sa = scores[static_cast<size_t>(i) * n + a];
      const double sb = scores[static_cast<size_t>(i) * n + b];
      if (sa != sb) return sa > sb;
      return keyframes[a].id < keyframes[b].id;
    });
    const int take = std::min<int>(cfg.num_sources, static_cast<int>(others.size()));
    for (int k = 0; k < take; ++k)
      selected[i].push_back(keyframes[others[k]].id);
  }
  return selected;
}

}  // namespace facecap
