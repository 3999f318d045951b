#pragma once

#include <cstdint>
#include <vector>

#include "facecap/common.hpp"

namespace facecap {

// Per-pixel depth (z_cam) with an explicit validity mask. Normals are unit
// camera-frame vectors and costs are matching costs in [0, 2]; both are
// optional and empty when absent. In files, invalid pixels are +inf (PFM).
struct DepthMap {
  int width = 0;
  int height = 0;
  std::vector<float> depth;
  std::vector<uint8_t> valid;
  std::vector<float> normals;  // 3 floats per pixel when present
  std::vector<float> cost;

  DepthMap() = default;
  DepthMap(int w, int h) : width(w), height(h) {
    check(w > 0 && h > 0, "DepthMap: bad dimensions");
    depth.assign(static_cast<size_t>(w) * h, 0.f);
    valid.assign(static_cast<size_t>(w) * h, 0);
  }

  size_t size() const { return depth.size(); }
  bool has_normals() const { return !normals.empty(); }
  bool has_cost() const { return !cost.empty(); }
  void allocate_normals() { normals.assign(size() * 3, 0.f); }
  void allocate_cost(float fill = 0.f) { cost.assign(size(), fill); }

  size_t index(int x, int y) const {
    return static_cast<size_t>(y) * width + x;
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  bool is_valid(int x, int y) const { return valid[index(x, y)] != 0; }
  float depth_at(int x, int y) const { return depth[index(x, y)]; }

  int valid_count() const {
    int n = 0;
    for (uint8_t v : valid) n += (v != 0);
    return n;
  }

  void validate() const;  // positive depths, unit normals where valid
};

}  // namespace facecap
