#include "csmri/mask.hpp"

#include "csmri/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace csmri {
namespace {

void check_dims(Eigen::Index n1, Eigen::Index n2) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("mask dimensions must be positive");
}

} // namespace

std::string MaskParams::descriptor() const {
  switch (shape) {
  case MaskShape::Square:
    return "square(" + format_number(fraction) + ")";
  case MaskShape::Circle:
    return "circle(" + format_number(a) + "," + format_number(b) + ")";
  case MaskShape::Radial:
    return "radial(" + std::to_string(lines) + ")";
  case MaskShape::Full:
    break;
  }
  return "full";
}

ImageGrid Mask::to_image() const { return ImageGrid(cells_.cast<double>()); }

Mask square_mask(Eigen::Index n1, Eigen::Index n2, double fraction) {
  check_dims(n1, n2);
  if (!(fraction >= 0.0) || fraction >= 0.5)
    throw std::invalid_argument("square_mask: fraction must lie in [0, 0.5)");
  const double half_rows = fraction * static_cast<double>(n1);
  const double half_cols = fraction * static_cast<double>(n2);
  const double center_r = static_cast<double>(n1) / 2.0;
  const double center_c = static_cast<double>(n2) / 2.0;
  Mask::Cells cells(n1, n2);
  for (Eigen::Index r = 0; r < n1; ++r) {
    const double rr = static_cast<double>(r);
    const bool row_in = center_r - half_rows <= rr && rr <= center_r + half_rows;
    for (Eigen::Index c = 0; c < n2; ++c) {
      const double cc = static_cast<double>(c);
      cells(r, c) = row_in && center_c - half_cols <= cc && cc <= center_c + half_cols;
    }
  }
  MaskParams p;
  p.shape = MaskShape::Square;
  p.fraction = fraction;
  return Mask(std::move(cells), p);
}

Mask circular_mask(Eigen::Index n1, Eigen::Index n2, double a, double b) {
  check_dims(n1, n2);
  if (!(b > 0.0))
    throw std::invalid_argument("circular_mask: b must be positive");
  if (!(a >= 0.0))
    throw std::invalid_argument("circular_mask: a must be non-negative");
  const double center_r = a * static_cast<double>(n1) / 2.0;
  const double center_c = a * static_cast<double>(n2) / 2.0;
  const double radius = static_cast<double>(std::min(n1, n2)) / b;
  const double radius2 = radius * radius;
  Mask::Cells cells(n1, n2);
  for (Eigen::Index r = 0; r < n1; ++r) {
    const double dr = static_cast<double>(r) - center_r;
    for (Eigen::Index c = 0; c < n2; ++c) {
      const double dc = static_cast<double>(c) - center_c;
      cells(r, c) = dr * dr + dc * dc <= radius2;
    }
  }
  MaskParams p;
  p.shape = MaskShape::Circle;
  p.a = a;
  p.b = b;
  return Mask(std::move(cells), p);
}

Mask radial_mask(Eigen::Index n1, Eigen::Index n2, int lines) {
  check_dims(n1, n2);
  if (lines < 1)
    throw std::invalid_argument("radial_mask: lines must be at least 1");
  Mask::Cells cells = Mask::Cells::Constant(n1, n2, false);
  const double center_r = static_cast<double>(n1 / 2);
  const double center_c = static_cast<double>(n2 / 2);
  // half-cell steps: t = step / 2
  const long long max_step = static_cast<long long>(std::min(n1, n2));
  for (int k = 0; k < lines; ++k) {
    const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(lines);
    const double dr = -std::sin(theta);
    const double dc = std::cos(theta);
    for (long long step = -max_step; step <= max_step; ++step) {
      const double t = static_cast<double>(step) / 2.0;
      const auto r = static_cast<Eigen::Index>(std::floor(center_r + t * dr + 0.5));
      const auto c = static_cast<Eigen::Index>(std::floor(center_c + t * dc + 0.5));
      if (r >= 0 && r < n1 && c >= 0 && c < n2)
        cells(r, c) = true;
    }
  }
  MaskParams p;
  p.shape = MaskShape::Radial;
  p.lines = lines;
  return Mask(std::move(cells), p);
}

Mask full_mask(Eigen::Index n1, Eigen::Index n2) {
  check_dims(n1, n2);
  return Mask(Mask::Cells::Constant(n1, n2, true), MaskParams{});
}

Mask make_mask(Eigen::Index n1, Eigen::Index n2, const MaskParams &params) {
  switch (params.shape) {
  case MaskShape::Square:
    return square_mask(n1, n2, params.fraction);
  case MaskShape::Circle:
    return circular_mask(n1, n2, params.a, params.b);
  case MaskShape::Radial:
    return radial_mask(n1, n2, params.lines);
  case MaskShape::Full:
    break;
  }
  return full_mask(n1, n2);
}

MaskStats mask_stats(const Mask &mask) {
  MaskStats s;
  const Eigen::Index total = mask.height() * mask.width();
  s.inside_count = mask.inside_count();
  s.outside_count = total - s.inside_count;
  s.coverage_fraction = static_cast<double>(s.inside_count) / static_cast<double>(total);
  return s;
}

} // namespace csmri
