#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <vector>

namespace facecap {

// Fused oriented points. normals / colors / support_count are optional and
// either empty or sized like points. support_count is the number of depth
// maps that agreed on the point, including the reference.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<Eigen::Vector3d> normals;
  std::vector<std::array<uint8_t, 3>> colors;
  std::vector<int> support_count;

  int size() const { return static_cast<int>(points.size()); }
  bool empty() const { return points.empty(); }
  bool has_normals() const { return !normals.empty(); }
  bool has_colors() const { return !colors.empty(); }
  bool has_support() const { return !support_count.empty(); }

  void validate() const;
};

}  // namespace facecap
