#include "facecap/depthmap.hpp"

#include <cmath>

namespace facecap {

void DepthMap::validate() const {
  check(static_cast<size_t>(width) * height == depth.size() &&
            depth.size() == valid.size(),
        "DepthMap: size mismatch");
  check(normals.empty() || normals.size() == depth.size() * 3,
        "DepthMap: normals size mismatch");
  check(cost.empty() || cost.size() == depth.size(),
        "DepthMap: cost size mismatch");
  for (size_t i = 0; i < depth.size(); ++i) {
    if (!valid[i]) continue;
    check(std::isfinite(depth[i]) && depth[i] > 0.f,
          "DepthMap: non-positive depth on valid pixel");
    if (!normals.empty()) {
      const double nx = normals[3 * i], ny = normals[3 * i + 1],
                   nz = normals[3 * i + 2];
      const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
      check(std::abs(norm - 1.0) < 1e-6, "DepthMap: non-unit normal");
    }
  }
}

}  // namespace facecap
