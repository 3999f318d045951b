#pragma once

#include <Eigen/Core>
#include <vector>

#include "facecap/camera.hpp"
#include "facecap/mesh.hpp"

namespace facecap {

struct ViewSelConfig {
  double theta0 = 10.0;  // degrees
  double sigma1 = 5.0;
  double sigma2 = 10.0;
  int num_sources = 12;

  void validate() const;
};

// Piecewise Gaussian weight of a baseline angle, peaking at theta0 with the
// narrow branch below and the wide branch above. Throws outside [0, 180].
double gaussian_weight(double theta_deg, const ViewSelConfig& cfg);

// Angle in degrees subtended at p by the two camera centers (rays are
// normalized before the arccos). Throws if p coincides with a center.
double baseline_angle_deg(const Eigen::Vector3d& center_i,
                          const Eigen::Vector3d& center_j,
                          const Eigen::Vector3d& p);

// s(i, j): sum of baseline-angle weights over the shared 3D points, in the
// order given.
double pair_score(const Keyframe& kf_i, const Keyframe& kf_j,
                  const std::vector<Eigen::Vector3d>& shared_points,
                  const ViewSelConfig& cfg);

// Visibility of each prior-mesh vertex per keyframe: projected into bounds
// and within 1% relative depth of the Z-buffer.
std::vector<std::vector<uint8_t>> vertex_visibility(
    const std::vector<Keyframe>& keyframes, const TriMesh& prior_mesh);

// For every reference keyframe, the num_sources best-scoring other
// keyframes (ids, descending score, ties by ascending id). Shared points
// are the prior-mesh vertices visible in both views.
std::vector<std::vector<int>> select_source_views(
    const std::vector<Keyframe>& keyframes, const TriMesh& prior_mesh,
    const ViewSelConfig& cfg);

}  // namespace facecap
