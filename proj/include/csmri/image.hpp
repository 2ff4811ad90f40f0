#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csmri {

template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real-valued H x W sample grid. `peak` is the MAX value used by PSNR;
/// it is 1.0 for any grid produced by load_pgm or a generator.
template <typename Scalar>
struct Image {
  Plane<Scalar> samples;
  Scalar peak = Scalar(1);

  Image() = default;
  Image(Eigen::Index height, Eigen::Index width, Scalar peak_value = Scalar(1))
      : samples(Plane<Scalar>::Zero(height, width)), peak(peak_value) {
    if (height < 1 || width < 1)
      throw std::invalid_argument("image dimensions must be positive");
  }
  explicit Image(Plane<Scalar> values, Scalar peak_value = Scalar(1))
      : samples(std::move(values)), peak(peak_value) {}

  Eigen::Index height() const { return samples.rows(); }
  Eigen::Index width() const { return samples.cols(); }
  Eigen::Index size() const { return samples.size(); }

  Scalar &operator()(Eigen::Index r, Eigen::Index c) { return samples(r, c); }
  Scalar operator()(Eigen::Index r, Eigen::Index c) const { return samples(r, c); }

  bool same_shape(const Image &other) const {
    return height() == other.height() && width() == other.width();
  }
};

using ImageGrid = Image<double>;

template <typename Scalar>
void require_same_shape(const Image<Scalar> &a, const Image<Scalar> &b, const char *what) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.height()) + "x" + std::to_string(a.width()) +
                                " vs " + std::to_string(b.height()) + "x" +
                                std::to_string(b.width()) + ")");
}

/// Rescales samples affinely onto [0, 1] and sets peak to 1. A constant
/// grid maps to all zeros.
template <typename Scalar>
Image<Scalar> normalize(const Image<Scalar> &grid) {
  const Scalar lo = grid.samples.minCoeff();
  const Scalar hi = grid.samples.maxCoeff();
  Image<Scalar> out(grid.height(), grid.width());
  if (hi > lo)
    out.samples = (grid.samples - lo) / (hi - lo);
  return out;
}

} // namespace csmri
