#include "csmri/phantom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csmri {

const std::array<Ellipse, 10> &shepp_logan_table() {
  static const std::array<Ellipse, 10> table{{
      {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
      {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
      {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
      {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
      {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
      {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
      {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
      {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
      {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
      {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
  }};
  return table;
}

ImageGrid shepp_logan(Eigen::Index n) {
  if (n < 8)
    throw std::invalid_argument("shepp_logan: n must be at least 8");
  ImageGrid grid(n, n);
  const double half = static_cast<double>(n - 1) / 2.0;
  for (const Ellipse &e : shepp_logan_table()) {
    const double phi = e.angle_deg * std::numbers::pi / 180.0;
    const double cos_phi = std::cos(phi);
    const double sin_phi = std::sin(phi);
    const double inv_a2 = 1.0 / (e.semi_x * e.semi_x);
    const double inv_b2 = 1.0 / (e.semi_y * e.semi_y);
    for (Eigen::Index r = 0; r < n; ++r) {
      const double y = (half - static_cast<double>(r)) / half - e.center_y;
      for (Eigen::Index c = 0; c < n; ++c) {
        const double x = (static_cast<double>(c) - half) / half - e.center_x;
        const double u = x * cos_phi + y * sin_phi;
        const double v = -x * sin_phi + y * cos_phi;
        if (u * u * inv_a2 + v * v * inv_b2 <= 1.0)
          grid(r, c) += e.intensity;
      }
    }
  }
  grid.samples = grid.samples.cwiseMax(0.0).cwiseMin(1.0);
  return grid;
}

} // namespace csmri
