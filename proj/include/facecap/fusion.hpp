#pragma once

#include <vector>

#include "facecap/camera.hpp"
#include "facecap/depthmap.hpp"
#include "facecap/pointcloud.hpp"

namespace facecap {

struct FusionConfig {
  int min_consistent_views = 3;
  double rel_depth_eps = 0.01;
  double normal_agreement_deg = 30.0;

  void validate() const;
};

// Projects every valid, unconsumed depth pixel into the other maps and
// keeps it when at least min_consistent_views maps (including its own)
// agree in depth and normal. The kept position is the mean of the agreeing
// backprojections; agreeing pixels are consumed so each surface sample
// produces one point. Colors come from the reference images, normals are
// averaged world-frame depth-map normals.
PointCloud fuse_depth_maps(const std::vector<Keyframe>& keyframes,
                           const std::vector<DepthMap>& depths,
                           const FusionConfig& cfg);

}  // namespace facecap
