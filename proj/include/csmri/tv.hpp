#pragma once

#include "csmri/image.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace csmri {

/// Forward differences with Neumann boundary: the last row of `vertical` and
/// the last column of `horizontal` are zero.
template <typename Scalar>
struct Gradient {
  Plane<Scalar> vertical;
  Plane<Scalar> horizontal;
};

template <typename Scalar>
Gradient<Scalar> gradient(const Plane<Scalar> &u) {
  const Eigen::Index h = u.rows(), w = u.cols();
  Gradient<Scalar> g{Plane<Scalar>::Zero(h, w), Plane<Scalar>::Zero(h, w)};
  if (h > 1)
    g.vertical.topRows(h - 1) = u.bottomRows(h - 1) - u.topRows(h - 1);
  if (w > 1)
    g.horizontal.leftCols(w - 1) = u.rightCols(w - 1) - u.leftCols(w - 1);
  return g;
}

/// Negative adjoint of `gradient`: <gradient(u), p> = -<u, divergence(p)>.
template <typename Scalar>
Plane<Scalar> divergence(const Gradient<Scalar> &p) {
  const Eigen::Index h = p.vertical.rows(), w = p.vertical.cols();
  Plane<Scalar> d = Plane<Scalar>::Zero(h, w);
  if (h > 1) {
    d.topRows(h - 1) += p.vertical.topRows(h - 1);
    d.bottomRows(h - 1) -= p.vertical.topRows(h - 1);
  }
  if (w > 1) {
    d.leftCols(w - 1) += p.horizontal.leftCols(w - 1);
    d.rightCols(w - 1) -= p.horizontal.leftCols(w - 1);
  }
  return d;
}

/// Isotropic total variation, sum of sqrt(dv^2 + dh^2).
template <typename Scalar>
Scalar tv_norm(const Plane<Scalar> &u) {
  const auto g = gradient(u);
  return (g.vertical.square() + g.horizontal.square()).sqrt().sum();
}

template <typename Scalar>
Scalar tv_norm(const Image<Scalar> &grid) {
  return tv_norm(grid.samples);
}

/// Per-iteration observer for tv_denoise: (iteration, primal objective of
/// the current estimate, dual objective ||f - lambda div p||^2).
template <typename Scalar>
using TvObserver = std::function<void(int, Scalar, Scalar)>;

/// Chambolle dual projection for
///   argmin_u 0.5 ||u - f||^2 + lambda TV(u),
/// continuing from the dual field `dual` (updated in place) for exactly
/// `inner_iters` steps of size 1/8. A dual field of the wrong shape is reset
/// to zero first. The result is f - lambda div p.
template <typename Scalar>
Image<Scalar> tv_denoise_from(const Image<Scalar> &grid, Scalar lambda, int inner_iters,
                              Gradient<Scalar> &dual, const TvObserver<Scalar> &observer = {}) {
  if (!(lambda >= Scalar(0)))
    throw std::invalid_argument("tv_denoise: lambda must be non-negative");
  if (inner_iters < 1)
    throw std::invalid_argument("tv_denoise: inner_iters must be positive");
  if (lambda == Scalar(0))
    return grid;

  constexpr Scalar tau = Scalar(0.125);
  const Plane<Scalar> &f = grid.samples;
  if (dual.vertical.rows() != f.rows() || dual.vertical.cols() != f.cols() ||
      dual.horizontal.rows() != f.rows() || dual.horizontal.cols() != f.cols())
    dual = {Plane<Scalar>::Zero(f.rows(), f.cols()), Plane<Scalar>::Zero(f.rows(), f.cols())};
  const Plane<Scalar> f_scaled = f / lambda;
  Gradient<Scalar> &p = dual;
  Plane<Scalar> div_p = divergence(p);
  for (int it = 1; it <= inner_iters; ++it) {
    const auto g = gradient<Scalar>(div_p - f_scaled);
    const Plane<Scalar> denom =
        Scalar(1) + tau * (g.vertical.square() + g.horizontal.square()).sqrt();
    p.vertical = (p.vertical + tau * g.vertical) / denom;
    p.horizontal = (p.horizontal + tau * g.horizontal) / denom;
    div_p = divergence(p);
    if (observer) {
      const Plane<Scalar> u = f - lambda * div_p;
      const Scalar primal = Scalar(0.5) * (u - f).square().sum() + lambda * tv_norm(u);
      observer(it, primal, (f - lambda * div_p).square().sum());
    }
  }
  return Image<Scalar>(Plane<Scalar>(f - lambda * div_p), grid.peak);
}

/// Approximate prox of lambda * TV from a zero dual field; see
/// tv_denoise_from. `lambda = 0` returns the input unchanged.
template <typename Scalar>
Image<Scalar> tv_denoise(const Image<Scalar> &grid, Scalar lambda, int inner_iters,
                         const TvObserver<Scalar> &observer = {}) {
  Gradient<Scalar> dual;
  return tv_denoise_from(grid, lambda, inner_iters, dual, observer);
}

} // namespace csmri
