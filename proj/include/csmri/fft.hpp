#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace csmri {

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT for power-of-two lengths.
template <typename Scalar>
class Radix2Plan {
public:
  using Complex = std::complex<Scalar>;

  explicit Radix2Plan(std::size_t n) : n_(n), reversed_(n), twiddles_(n / 2) {
    if (!is_power_of_two(n))
      throw std::invalid_argument("Radix2Plan: length must be a power of two");
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n)
      ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b))
          r |= std::size_t{1} << (bits - 1 - b);
      reversed_[i] = r;
    }
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const Scalar angle = -two_pi * static_cast<Scalar>(k) / static_cast<Scalar>(n);
      twiddles_[k] = Complex(std::cos(angle), std::sin(angle));
    }
  }

  std::size_t size() const { return n_; }

  /// Unnormalized; sign -1 for forward, +1 for inverse.
  void run(std::span<Complex> data, int sign) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (i < reversed_[i])
        std::swap(data[i], data[reversed_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t j = 0; j < half; ++j) {
          Complex w = twiddles_[j * stride];
          if (sign > 0)
            w = std::conj(w);
          const Complex t = w * data[start + j + half];
          data[start + j + half] = data[start + j] - t;
          data[start + j] += t;
        }
      }
    }
  }

private:
  std::size_t n_;
  std::vector<std::size_t> reversed_;
  std::vector<Complex> twiddles_;
};

} // namespace detail

/// Complex DFT of arbitrary length. Power-of-two lengths use radix-2
/// directly; all other lengths go through Bluestein's chirp-z convolution on
/// a power-of-two grid of size >= 2n - 1. The plan is immutable after
/// construction, so const member calls are safe from several threads.
template <typename Scalar>
class FftPlan {
public:
  using Complex = std::complex<Scalar>;

  explicit FftPlan(std::size_t n) : n_(n), inner_(inner_size(n)) {
    if (n == 0)
      throw std::invalid_argument("FftPlan: length must be positive");
    if (detail::is_power_of_two(n))
      return;
    // chirp_k = exp(-i pi k^2 / n); k^2 is reduced mod 2n before scaling
    chirp_.resize(n);
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t kk = (static_cast<std::uint64_t>(k) * k) % period;
      const Scalar angle = -pi * static_cast<Scalar>(kk) / static_cast<Scalar>(n);
      chirp_[k] = Complex(std::cos(angle), std::sin(angle));
    }
    const std::size_t m = inner_.size();
    filter_.assign(m, Complex(0));
    filter_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
      filter_[k] = std::conj(chirp_[k]);
      filter_[m - k] = std::conj(chirp_[k]);
    }
    inner_.run(filter_, -1);
  }

  std::size_t size() const { return n_; }

  /// X_k = sum_j x_j exp(-2 pi i jk / n), unnormalized.
  void forward(std::span<Complex> data) const { transform(data, -1); }

  /// x_j = sum_k X_k exp(+2 pi i jk / n), unnormalized.
  void inverse(std::span<Complex> data) const { transform(data, +1); }

private:
  static std::size_t inner_size(std::size_t n) {
    if (detail::is_power_of_two(n))
      return n;
    std::size_t m = 1;
    while (m < 2 * n - 1)
      m <<= 1;
    return m;
  }

  void transform(std::span<Complex> data, int sign) const {
    if (data.size() != n_)
      throw std::invalid_argument("FftPlan: buffer length does not match plan");
    if (chirp_.empty()) {
      inner_.run(data, sign);
      return;
    }
    // inverse(x) = conj(forward(conj(x)))
    const std::size_t m = inner_.size();
    std::vector<Complex> work(m, Complex(0));
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex x = sign > 0 ? std::conj(data[k]) : data[k];
      work[k] = x * chirp_[k];
    }
    inner_.run(work, -1);
    for (std::size_t k = 0; k < m; ++k)
      work[k] *= filter_[k];
    inner_.run(work, +1);
    const Scalar inv_m = Scalar(1) / static_cast<Scalar>(m);
    for (std::size_t k = 0; k < n_; ++k) {
      const Complex y = work[k] * inv_m * chirp_[k];
      data[k] = sign > 0 ? std::conj(y) : y;
    }
  }

  std::size_t n_;
  detail::Radix2Plan<Scalar> inner_;
  std::vector<Complex> chirp_;
  std::vector<Complex> filter_;
};

} // namespace csmri
