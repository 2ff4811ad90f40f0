#pragma once

#include "csmri/image.hpp"

#include <cmath>
#include <limits>

namespace csmri {

template <typename Scalar>
Scalar mse(const Image<Scalar> &reference, const Image<Scalar> &estimate) {
  require_same_shape(reference, estimate, "mse");
  return (reference.samples - estimate.samples).square().mean();
}

/// 10 log10(peak^2 / mse) using the reference's declared peak; +infinity
/// when the grids are identical.
template <typename Scalar>
Scalar psnr(const Image<Scalar> &reference, const Image<Scalar> &estimate) {
  const Scalar err = mse(reference, estimate);
  if (err == Scalar(0))
    return std::numeric_limits<Scalar>::infinity();
  return Scalar(10) * std::log10(reference.peak * reference.peak / err);
}

} // namespace csmri
