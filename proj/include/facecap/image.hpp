#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "facecap/common.hpp"

namespace facecap {

// Row-major float raster, values nominally in [0, 1]. channels is 1 (gray)
// or 3 (RGB).
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> data;

  Image() = default;
  Image(int w, int h, int c, float fill = 0.f)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {
    check(w > 0 && h > 0 && (c == 1 || c == 3), "Image: bad dimensions");
  }

  bool empty() const { return data.empty(); }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }

  float& at(int x, int y, int c = 0) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }

  // Bilinear sample with clamp-to-edge; (x, y) in pixel coordinates where
  // integer coordinates are pixel centers.
  float bilinear(double x, double y, int c = 0) const {
    x = std::clamp(x, 0.0, static_cast<double>(width - 1));
    y = std::clamp(y, 0.0, static_cast<double>(height - 1));
    const int x0 = std::min(static_cast<int>(x), width - 2 >= 0 ? width - 2 : 0);
    const int y0 = std::min(static_cast<int>(y), height - 2 >= 0 ? height - 2 : 0);
    const int x1 = std::min(x0 + 1, width - 1);
    const int y1 = std::min(y0 + 1, height - 1);
    const float fx = static_cast<float>(x - x0);
    const float fy = static_cast<float>(y - y0);
    const float v00 = at(x0, y0, c), v10 = at(x1, y0, c);
    const float v01 = at(x0, y1, c), v11 = at(x1, y1, c);
    return (1 - fy) * ((1 - fx) * v00 + fx * v10) +
           fy * ((1 - fx) * v01 + fx * v11);
  }

  // Luma for RGB, identity for grayscale.
  Image to_gray() const {
    if (channels == 1) return *this;
    Image g(width, height, 1);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        g.at(x, y) = 0.299f * at(x, y, 0) + 0.587f * at(x, y, 1) +
                     0.114f * at(x, y, 2);
    return g;
  }
};

}  // namespace facecap
