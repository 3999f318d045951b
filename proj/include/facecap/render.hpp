#pragma once

#include <cstdint>
#include <vector>

#include "facecap/camera.hpp"
#include "facecap/depthmap.hpp"
#include "facecap/mesh.hpp"

namespace facecap {

// Rasterization output for one view. face_index is -1 where no triangle
// covers the pixel; barycentric holds perspective-correct coordinates with
// respect to the original (unclipped) triangle vertices.
struct RasterOutput {
  DepthMap depth;                  // normals filled with camera-frame face normals
  std::vector<int32_t> face_index;
  std::vector<float> barycentric;  // 3 per pixel

  bool covered(int x, int y) const {
    return face_index[static_cast<size_t>(y) * depth.width + x] >= 0;
  }
};

// Z-buffered, backface-culled, perspective-correct rasterization at the
// resolution given by the intrinsics. Pixel samples sit at integer
// coordinates; boundary ownership follows the top-left fill convention.
// Deterministic for any thread count.
RasterOutput render_geometry(const TriMesh& mesh, const CameraPose& pose,
                             const Intrinsics& intr);

// Depth-only variant of render_geometry.
DepthMap render_depth(const TriMesh& mesh, const CameraPose& pose,
                      const Intrinsics& intr);

}  // namespace facecap
