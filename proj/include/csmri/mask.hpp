#pragma once

#include "csmri/image.hpp"

#include <string>

namespace csmri {

enum class MaskShape { Square, Circle, Radial, Full };

/// Constructor arguments that produced a mask; only the fields relevant to
/// `shape` are meaningful.
struct MaskParams {
  MaskShape shape = MaskShape::Full;
  double fraction = 0.1; // Square
  double a = 1.0;        // Circle: center scale
  double b = 6.0;        // Circle: radius divisor
  int lines = 0;         // Radial

  /// e.g. `square(0.1)`, `circle(1,6)`, `radial(22)`, `full`.
  std::string descriptor() const;

  bool operator==(const MaskParams &) const = default;
};

struct MaskStats {
  Eigen::Index inside_count = 0;
  Eigen::Index outside_count = 0;
  double coverage_fraction = 0.0;
};

/// Boolean frequency-plane mask, row-major, immutable once built.
class Mask {
public:
  using Cells = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Mask(Cells cells, MaskParams params) : cells_(std::move(cells)), params_(params) {}

  Eigen::Index height() const { return cells_.rows(); }
  Eigen::Index width() const { return cells_.cols(); }
  bool operator()(Eigen::Index r, Eigen::Index c) const { return cells_(r, c); }
  const Cells &cells() const { return cells_; }
  const MaskParams &params() const { return params_; }

  Eigen::Index inside_count() const { return cells_.count(); }

  /// 1.0 inside, 0.0 outside; matches the PGM convention of white = sampled.
  ImageGrid to_image() const;

private:
  Cells cells_;
  MaskParams params_;
};

/// Cells with |r - n1/2| <= fraction * n1 and |c - n2/2| <= fraction * n2.
/// Throws for fraction outside [0, 0.5).
Mask square_mask(Eigen::Index n1, Eigen::Index n2, double fraction = 0.1);

/// Cells with (r - a n1/2)^2 + (c - a n2/2)^2 <= (min(n1, n2) / b)^2.
/// Throws for b <= 0 or a < 0.
Mask circular_mask(Eigen::Index n1, Eigen::Index n2, double a, double b);

/// `lines` diameters through (n1/2, n2/2) (floor division) at angles
/// k pi / lines. Each is walked in 0.5-cell steps for |t| <= min(n1, n2)/2
/// and the nearest cell (round-half-up) is marked.
Mask radial_mask(Eigen::Index n1, Eigen::Index n2, int lines);

Mask full_mask(Eigen::Index n1, Eigen::Index n2);

/// Builds whichever mask `params` describes.
Mask make_mask(Eigen::Index n1, Eigen::Index n2, const MaskParams &params);

MaskStats mask_stats(const Mask &mask);

} // namespace csmri
