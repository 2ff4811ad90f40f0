#pragma once

#include "csmri/fft.hpp"
#include "csmri/image.hpp"

#include <cmath>
#include <complex>
#include <string_view>
#include <vector>

namespace csmri {

enum class Domain { DFT, DCT };

inline std::string_view domain_name(Domain d) { return d == Domain::DFT ? "dft" : "dct"; }

/// Transform-domain coefficients. DCT spectra keep imaginary parts at zero.
template <typename Scalar>
struct Spectrum {
  Domain domain = Domain::DFT;
  Plane<std::complex<Scalar>> coefficients;

  Eigen::Index height() const { return coefficients.rows(); }
  Eigen::Index width() const { return coefficients.cols(); }
};

using SpectrumGrid = Spectrum<double>;

template <typename Scalar>
struct InverseResult {
  Image<Scalar> image;
  /// Largest |imag| discarded when taking the real part.
  Scalar imaginary_residue = Scalar(0);
};

/// Unitary 2D transforms for a fixed H x W grid.
///
/// DFT: scale 1/sqrt(H W), DC moved to (H/2, W/2) with floor division.
/// DCT: orthonormal DCT-II per axis, computed from a length-n complex FFT of
/// the even/odd reordered input.
///
/// Immutable after construction; every method is const and reentrant.
template <typename Scalar>
class Transform2D {
public:
  using Complex = std::complex<Scalar>;
  using RealPlane = Plane<Scalar>;
  using ComplexPlane = Plane<Complex>;

  Transform2D(Eigen::Index height, Eigen::Index width)
      : height_(height), width_(width), row_plan_(checked(width)), col_plan_(checked(height)),
        row_dct_(dct_twiddles(width)), col_dct_(dct_twiddles(height)) {}

  Eigen::Index height() const { return height_; }
  Eigen::Index width() const { return width_; }

  ComplexPlane dft_centered(const RealPlane &x) const {
    check_shape(x.rows(), x.cols());
    ComplexPlane full = x.template cast<Complex>();
    fft2(full, -1);
    const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(height_ * width_));
    ComplexPlane out(height_, width_);
    const Eigen::Index h2 = height_ / 2, w2 = width_ / 2;
    for (Eigen::Index r = 0; r < height_; ++r)
      for (Eigen::Index c = 0; c < width_; ++c)
        out((r + h2) % height_, (c + w2) % width_) = full(r, c) * scale;
    return out;
  }

  ComplexPlane idft_centered(const ComplexPlane &spec) const {
    check_shape(spec.rows(), spec.cols());
    ComplexPlane full(height_, width_);
    const Eigen::Index h2 = height_ / 2, w2 = width_ / 2;
    for (Eigen::Index r = 0; r < height_; ++r)
      for (Eigen::Index c = 0; c < width_; ++c)
        full(r, c) = spec((r + h2) % height_, (c + w2) % width_);
    fft2(full, +1);
    const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(height_ * width_));
    return full * scale;
  }

  RealPlane dct(const RealPlane &x) const {
    check_shape(x.rows(), x.cols());
    RealPlane out = x;
    std::vector<Scalar> line;
    for (Eigen::Index r = 0; r < height_; ++r) {
      line.assign(out.row(r).data(), out.row(r).data() + width_);
      dct_line(line, row_plan_, row_dct_);
      for (Eigen::Index c = 0; c < width_; ++c)
        out(r, c) = line[static_cast<std::size_t>(c)];
    }
    line.resize(static_cast<std::size_t>(height_));
    for (Eigen::Index c = 0; c < width_; ++c) {
      for (Eigen::Index r = 0; r < height_; ++r)
        line[static_cast<std::size_t>(r)] = out(r, c);
      dct_line(line, col_plan_, col_dct_);
      for (Eigen::Index r = 0; r < height_; ++r)
        out(r, c) = line[static_cast<std::size_t>(r)];
    }
    return out;
  }

  RealPlane idct(const RealPlane &spec) const {
    check_shape(spec.rows(), spec.cols());
    RealPlane out = spec;
    std::vector<Scalar> line(static_cast<std::size_t>(height_));
    for (Eigen::Index c = 0; c < width_; ++c) {
      for (Eigen::Index r = 0; r < height_; ++r)
        line[static_cast<std::size_t>(r)] = out(r, c);
      idct_line(line, col_plan_, col_dct_);
      for (Eigen::Index r = 0; r < height_; ++r)
        out(r, c) = line[static_cast<std::size_t>(r)];
    }
    for (Eigen::Index r = 0; r < height_; ++r) {
      line.assign(out.row(r).data(), out.row(r).data() + width_);
      idct_line(line, row_plan_, row_dct_);
      for (Eigen::Index c = 0; c < width_; ++c)
        out(r, c) = line[static_cast<std::size_t>(c)];
    }
    return out;
  }

private:
  static std::size_t checked(Eigen::Index n) {
    if (n < 1)
      throw std::invalid_argument("Transform2D: dimensions must be positive");
    return static_cast<std::size_t>(n);
  }

  // exp(-i pi k / (2n)), k = 0..n-1
  static std::vector<Complex> dct_twiddles(Eigen::Index n) {
    std::vector<Complex> tw(checked(n));
    const Scalar pi = std::numbers::pi_v<Scalar>;
    for (std::size_t k = 0; k < tw.size(); ++k) {
      const Scalar angle = -pi * static_cast<Scalar>(k) / (Scalar(2) * static_cast<Scalar>(n));
      tw[k] = Complex(std::cos(angle), std::sin(angle));
    }
    return tw;
  }

  void check_shape(Eigen::Index h, Eigen::Index w) const {
    if (h != height_ || w != width_)
      throw std::invalid_argument("Transform2D: grid is " + std::to_string(h) + "x" +
                                  std::to_string(w) + ", expected " + std::to_string(height_) +
                                  "x" + std::to_string(width_));
  }

  void fft2(ComplexPlane &data, int sign) const {
    std::vector<Complex> line(static_cast<std::size_t>(width_));
    for (Eigen::Index r = 0; r < height_; ++r) {
      for (Eigen::Index c = 0; c < width_; ++c)
        line[static_cast<std::size_t>(c)] = data(r, c);
      sign < 0 ? row_plan_.forward(line) : row_plan_.inverse(line);
      for (Eigen::Index c = 0; c < width_; ++c)
        data(r, c) = line[static_cast<std::size_t>(c)];
    }
    line.resize(static_cast<std::size_t>(height_));
    for (Eigen::Index c = 0; c < width_; ++c) {
      for (Eigen::Index r = 0; r < height_; ++r)
        line[static_cast<std::size_t>(r)] = data(r, c);
      sign < 0 ? col_plan_.forward(line) : col_plan_.inverse(line);
      for (Eigen::Index r = 0; r < height_; ++r)
        data(r, c) = line[static_cast<std::size_t>(r)];
    }
  }

  // Orthonormal DCT-II of one line, in place.
  static void dct_line(std::vector<Scalar> &x, const FftPlan<Scalar> &plan,
                       const std::vector<Complex> &tw) {
    const std::size_t n = x.size();
    std::vector<Complex> v(n);
    for (std::size_t k = 0; 2 * k < n; ++k)
      v[k] = x[2 * k];
    for (std::size_t k = 0; 2 * k + 1 < n; ++k)
      v[n - 1 - k] = x[2 * k + 1];
    plan.forward(v);
    const Scalar s0 = std::sqrt(Scalar(1) / static_cast<Scalar>(n));
    const Scalar sk = std::sqrt(Scalar(2) / static_cast<Scalar>(n));
    for (std::size_t k = 0; k < n; ++k)
      x[k] = (tw[k] * v[k]).real() * (k == 0 ? s0 : sk);
  }

  // Inverse of dct_line (orthonormal DCT-III), in place.
  static void idct_line(std::vector<Scalar> &x, const FftPlan<Scalar> &plan,
                        const std::vector<Complex> &tw) {
    const std::size_t n = x.size();
    const Scalar u0 = std::sqrt(static_cast<Scalar>(n));
    const Scalar uk = std::sqrt(static_cast<Scalar>(n) / Scalar(2));
    std::vector<Scalar> y(n);
    for (std::size_t k = 0; k < n; ++k)
      y[k] = x[k] * (k == 0 ? u0 : uk);
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Scalar mirror = k == 0 ? Scalar(0) : y[n - k];
      v[k] = std::conj(tw[k]) * Complex(y[k], -mirror);
    }
    plan.inverse(v);
    const Scalar inv_n = Scalar(1) / static_cast<Scalar>(n);
    for (std::size_t k = 0; 2 * k < n; ++k)
      x[2 * k] = v[k].real() * inv_n;
    for (std::size_t k = 0; 2 * k + 1 < n; ++k)
      x[2 * k + 1] = v[n - 1 - k].real() * inv_n;
  }

  Eigen::Index height_;
  Eigen::Index width_;
  FftPlan<Scalar> row_plan_;
  FftPlan<Scalar> col_plan_;
  std::vector<Complex> row_dct_;
  std::vector<Complex> col_dct_;
};

template <typename Scalar>
Spectrum<Scalar> dft2_centered(const Image<Scalar> &grid) {
  const Transform2D<Scalar> t(grid.height(), grid.width());
  return {Domain::DFT, t.dft_centered(grid.samples)};
}

template <typename Scalar>
InverseResult<Scalar> idft2_centered(const Spectrum<Scalar> &spec) {
  if (spec.domain != Domain::DFT)
    throw std::invalid_argument("idft2_centered: spectrum is not in the DFT domain");
  const Transform2D<Scalar> t(spec.height(), spec.width());
  const auto full = t.idft_centered(spec.coefficients);
  InverseResult<Scalar> out{Image<Scalar>(full.real()), Scalar(0)};
  if (full.size() > 0)
    out.imaginary_residue = full.imag().abs().maxCoeff();
  return out;
}

template <typename Scalar>
Spectrum<Scalar> dct2_ortho(const Image<Scalar> &grid) {
  const Transform2D<Scalar> t(grid.height(), grid.width());
  return {Domain::DCT, t.dct(grid.samples).template cast<std::complex<Scalar>>()};
}

template <typename Scalar>
Image<Scalar> idct2_ortho(const Spectrum<Scalar> &spec) {
  if (spec.domain != Domain::DCT)
    throw std::invalid_argument("idct2_ortho: spectrum is not in the DCT domain");
  const Transform2D<Scalar> t(spec.height(), spec.width());
  return Image<Scalar>(t.idct(spec.coefficients.real()));
}

} // namespace csmri
