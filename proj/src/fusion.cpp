#include "facecap/fusion.hpp"

#include <cmath>

#include "facecap/common.hpp"

namespace facecap {

void FusionConfig::validate() const {
  check(min_consistent_views >= 1, "FusionConfig: min_consistent_views >= 1");
  check(rel_depth_eps > 0, "FusionConfig: rel_depth_eps > 0");
  check(normal_agreement_deg > 0, "FusionConfig: normal_agreement_deg > 0");
}

PointCloud fuse_depth_maps(const std::vector<Keyframe>& keyframes,
                           const std::vector<DepthMap>& depths,
                           const FusionConfig& cfg) {
  cfg.validate();
  check(keyframes.size() == depths.size(),
        "fuse_depth_maps: keyframes/depths length mismatch");
  const int n = static_cast<int>(keyframes.size());
  bool all_normals = n > 0;
  bool all_images = n > 0;
  for (int k = 0; k < n; ++k) {
    check(depths[k].width == keyframes[k].intrinsics.width &&
              depths[k].height == keyframes[k].intrinsics.height,
          "fuse_depth_maps: depth map does not match keyframe intrinsics");
    all_normals = all_normals && depths[k].has_normals();
    all_images = all_images && !keyframes[k].image.empty();
  }
  const double cos_thresh = std::cos(deg_to_rad(cfg.normal_agreement_deg));

  std::vector<std::vector<uint8_t>> used(n);
  for (int k = 0; k < n; ++k) used[k].assign(depths[k].size(), 0);

  PointCloud cloud;
  struct Hit {
    int view;
    size_t pixel;
    Eigen::Vector3d point;
    Eigen::Vector3d normal;
  };
  std::vector<Hit> hits;

  for (int r = 0; r < n; ++r) {
    const Keyframe& ref = keyframes[r];
    const DepthMap& dm = depths[r];
    for (int y = 0; y < dm.height; ++y) {
      for (int x = 0; x < dm.width; ++x) {
        const size_t idx = dm.index(x, y);
        if (!dm.valid[idx] || used[r][idx]) continue;
        const Eigen::Vector3d p_world = backproject(
            ref.pose, ref.intrinsics, {double(x), double(y)}, dm.depth[idx]);
        Eigen::Vector3d n_world = Eigen::Vector3d::Zero();
        if (all_normals) {
          const Eigen::Vector3d n_cam(dm.normals[3 * idx],
                                      dm.normals[3 * idx + 1],
                                      dm.normals[3 * idx + 2]);
          n_world = ref.pose.rotation.transpose() * n_cam;
        }

        hits.clear();
        hits.push_back({r, idx, p_world, n_world});
        for (int s = 0; s < n; ++s) {
          if (s == r) continue;
          const auto proj = project(keyframes[s].pose, keyframes[s].intrinsics,
                                    p_world);
          if (!proj) continue;
          const int sx = static_cast<int>(std::lround(proj->pixel.x()));
          const int sy = static_cast<int>(std::lround(proj->pixel.y()));
          if (!depths[s].in_bounds(sx, sy)) continue;
          const size_t sidx = depths[s].index(sx, sy);
          if (!depths[s].valid[sidx] || used[s][sidx]) continue;
          const double ds = depths[s].depth[sidx];
          if (std::abs(proj->depth - ds) > cfg.rel_depth_eps * ds) continue;
          Eigen::Vector3d ns_world = Eigen::Vector3d::Zero();
          if (all_normals) {
            const Eigen::Vector3d ns_cam(depths[s].normals[3 * sidx],
                                         depths[s].normals[3 * sidx + 1],
                                         depths[s].normals[3 * sidx + 2]);
            ns_world = keyframes[s].pose.rotation.transpose() * ns_cam;
            if (ns_world.dot(n_world) < cos_thresh) continue;
          }
          hits.push_back(
              {s, sidx,
               backproject(keyframes[s].pose, keyframes[s].intrinsics,
                           {double(sx), double(sy)}, ds),
               ns_world});
        }

        if (static_cast<int>(hits.size()) < cfg.min_consistent_views) continue;

        Eigen::Vector3d mean_p = Eigen::Vector3d::Zero();
        Eigen::Vector3d mean_n = Eigen::Vector3d::Zero();
        for (const Hit& hit : hits) {
          mean_p += hit.point;
          mean_n += hit.normal;
          used[hit.view][hit.pixel] = 1;
        }
        mean_p /= static_cast<double>(hits.size());
        cloud.points.push_back(mean_p);
        cloud.support_count.push_back(static_cast<int>(hits.size()));
        if (all_normals) {
          const double len = mean_n.norm();
          cloud.normals.push_back(len > 1e-12 ? Eigen::Vector3d(mean_n / len)
                                              : n_world);
        }
        if (all_images) {
          const Image& img = ref.image;
          const float g0 = img.at(x, y, 0);
          const float g1 = img.channels == 3 ? img.at(x, y, 1) : g0;
          const float g2 = img.channels == 3 ? img.at(x, y, 2) : g0;
          auto to_u8 = [](float v) {
            return static_cast<uint8_t>(
                std::lround(std::clamp(v, 0.f, 1.f) * 255.f));
          };
          cloud.colors.push_back({to_u8(g0), to_u8(g1), to_u8(g2)});
        }
      }
    }
  }
  return cloud;
}

}  // namespace facecap
