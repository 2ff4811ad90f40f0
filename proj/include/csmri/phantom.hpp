#pragma once

#include "csmri/image.hpp"

#include <array>

namespace csmri {

/// One ellipse of the phantom table, in normalized [-1, 1] coordinates with
/// y pointing up. `angle_deg` rotates the ellipse counter-clockwise.
struct Ellipse {
  double intensity;
  double semi_x;
  double semi_y;
  double center_x;
  double center_y;
  double angle_deg;
};

/// The modified (high-contrast) Shepp-Logan ellipse table.
const std::array<Ellipse, 10> &shepp_logan_table();

/// Rasterizes the 10-ellipse Shepp-Logan phantom on an n x n grid and clips
/// to [0, 1]. Pixel (r, c) samples the point x = (2c - (n-1)) / (n-1),
/// y = ((n-1) - 2r) / (n-1). Throws std::invalid_argument for n < 8.
ImageGrid shepp_logan(Eigen::Index n);

} // namespace csmri
