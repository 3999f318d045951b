#include "facecap/camera.hpp"

#include "facecap/common.hpp"

namespace facecap {

void Intrinsics::validate() const {
  check(fx > 0 && fy > 0, "Intrinsics: focal lengths must be positive");
  check(width > 0 && height > 0, "Intrinsics: image size must be positive");
  check(cx > 0 && cx < width, "Intrinsics: cx outside image");
  check(cy > 0 && cy < height, "Intrinsics: cy outside image");
}

void CameraPose::validate() const {
  const Eigen::Matrix3d rtr = rotation.transpose() * rotation;
  check((rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-9,
        "CameraPose: rotation not orthonormal");
  check(std::abs(rotation.determinant() - 1.0) < 1e-9,
        "CameraPose: rotation determinant != +1");
}

void Keyframe::validate() const {
  intrinsics.validate();
  pose.validate();
  if (!image.empty()) {
    check(image.width == intrinsics.width && image.height == intrinsics.height,
          "Keyframe: image dimensions do not match intrinsics");
  }
}

std::optional<Projection> project(const CameraPose& pose,
                                  const Intrinsics& intr,
                                  const Eigen::Vector3d& x_world) {
  const Eigen::Vector3d xc = pose.to_camera(x_world);
  if (xc.z() <= 0.0) return std::nullopt;
  Projection p;
  p.pixel = {intr.fx * xc.x() / xc.z() + intr.cx,
             intr.fy * xc.y() / xc.z() + intr.cy};
  p.depth = xc.z();
  return p;
}

Eigen::Vector3d backproject(const CameraPose& pose, const Intrinsics& intr,
                            const Eigen::Vector2d& pixel, double depth) {
  check(depth > 0.0, "backproject: depth must be positive");
  const Eigen::Vector3d xc((pixel.x() - intr.cx) / intr.fx * depth,
                           (pixel.y() - intr.cy) / intr.fy * depth, depth);
  return pose.to_world(xc);
}

Eigen::Vector3d pixel_ray(const Intrinsics& intr, double px, double py) {
  return {(px - intr.cx) / intr.fx, (py - intr.cy) / intr.fy, 1.0};
}

}  // namespace facecap
