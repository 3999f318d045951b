#pragma once

#include <Eigen/Core>
#include <optional>

#include "facecap/image.hpp"

namespace facecap {

// Pinhole intrinsics in pixels. k1/k2 are carried through file IO but never
// applied: input images are expected pre-undistorted, and a nonzero value
// only triggers a warning at load time.
struct Intrinsics {
  double fx = 0, fy = 0, cx = 0, cy = 0;
  int width = 0, height = 0;
  double k1 = 0, k2 = 0;

  void validate() const;
};

// World-to-camera transform: x_cam = R * x_world + t. The camera looks along
// +z; a point is in front of the camera iff z_cam > 0.
struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  void validate() const;  // R'R = I and det(R) = +1 within 1e-9

  Eigen::Vector3d center() const {
    return -rotation.transpose() * translation;
  }
  Eigen::Vector3d to_camera(const Eigen::Vector3d& x_world) const {
    return rotation * x_world + translation;
  }
  Eigen::Vector3d to_world(const Eigen::Vector3d& x_cam) const {
    return rotation.transpose() * (x_cam - translation);
  }
};

struct Keyframe {
  int id = 0;
  Image image;
  CameraPose pose;
  Intrinsics intrinsics;

  void validate() const;  // image dimensions match intrinsics
};

struct Projection {
  Eigen::Vector2d pixel;
  double depth = 0;
};

// Pinhole projection. Returns nullopt for points at or behind the camera
// plane (z_cam <= 0); the returned pixel may lie outside image bounds.
std::optional<Projection> project(const CameraPose& pose,
                                  const Intrinsics& intr,
                                  const Eigen::Vector3d& x_world);

// Inverse of project for a given depth (z_cam). Throws for depth <= 0.
Eigen::Vector3d backproject(const CameraPose& pose, const Intrinsics& intr,
                            const Eigen::Vector2d& pixel, double depth);

// Camera-frame ray direction with unit z for a pixel.
Eigen::Vector3d pixel_ray(const Intrinsics& intr, double px, double py);

}  // namespace facecap
