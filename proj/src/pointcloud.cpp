#include "facecap/pointcloud.hpp"

#include <cmath>

#include "facecap/common.hpp"

namespace facecap {

void PointCloud::validate() const {
  const size_t n = points.size();
  check(normals.empty() || normals.size() == n,
        "PointCloud: normals size mismatch");
  check(colors.empty() || colors.size() == n,
        "PointCloud: colors size mismatch");
  check(support_count.empty() || support_count.size() == n,
        "PointCloud: support_count size mismatch");
  for (const auto& nrm : normals) {
    check(std::abs(nrm.norm() - 1.0) < 1e-6, "PointCloud: non-unit normal");
  }
  for (int s : support_count) {
    check(s >= 1, "PointCloud: support_count must be >= 1");
  }
}

}  // namespace facecap
