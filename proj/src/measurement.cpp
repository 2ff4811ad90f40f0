#include "csmri/measurement.hpp"

#include <stdexcept>

namespace csmri {

MeasurementOperator::MeasurementOperator(PlanRef plan)
    : plan_(plan ? std::move(plan) : throw std::invalid_argument("null sampling plan")),
      transform_(plan_->height, plan_->width) {}

void MeasurementOperator::check_length(const Eigen::VectorXcd &values) const {
  if (static_cast<std::size_t>(values.size()) != plan_->size())
    throw std::invalid_argument("measurement length " + std::to_string(values.size()) +
                                " does not match plan size " + std::to_string(plan_->size()));
}

Eigen::VectorXcd MeasurementOperator::apply(const ImageGrid &image) const {
  if (image.height() != plan_->height || image.width() != plan_->width)
    throw std::invalid_argument("forward: image is " + std::to_string(image.height()) + "x" +
                                std::to_string(image.width()) + ", plan expects " +
                                std::to_string(plan_->height) + "x" +
                                std::to_string(plan_->width));
  const auto &idx = plan_->indices;
  Eigen::VectorXcd y(static_cast<Eigen::Index>(idx.size()));
  if (plan_->domain == Domain::DFT) {
    const auto spec = transform_.dft_centered(image.samples);
    for (std::size_t i = 0; i < idx.size(); ++i)
      y(static_cast<Eigen::Index>(i)) = spec(idx[i]);
  } else {
    const auto spec = transform_.dct(image.samples);
    for (std::size_t i = 0; i < idx.size(); ++i)
      y(static_cast<Eigen::Index>(i)) = spec(idx[i]);
  }
  return y;
}

InverseResult<double> MeasurementOperator::adjoint_with_residue(
    const Eigen::VectorXcd &values) const {
  check_length(values);
  const auto &idx = plan_->indices;
  const Eigen::Index h = plan_->height, w = plan_->width;
  if (plan_->domain == Domain::DFT) {
    Plane<std::complex<double>> spec = Plane<std::complex<double>>::Zero(h, w);
    for (std::size_t i = 0; i < idx.size(); ++i)
      spec(idx[i]) = values(static_cast<Eigen::Index>(i));
    const auto full = transform_.idft_centered(spec);
    return {ImageGrid(full.real()), full.imag().abs().maxCoeff()};
  }
  // K is real for DCT plans, so Re(K^T v) = K^T Re(v).
  Plane<double> spec = Plane<double>::Zero(h, w);
  Plane<double> spec_imag = Plane<double>::Zero(h, w);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    spec(idx[i]) = values(static_cast<Eigen::Index>(i)).real();
    spec_imag(idx[i]) = values(static_cast<Eigen::Index>(i)).imag();
  }
  double residue = 0.0;
  if ((spec_imag != 0.0).any())
    residue = transform_.idct(spec_imag).abs().maxCoeff();
  return {ImageGrid(transform_.idct(spec)), residue};
}

ImageGrid MeasurementOperator::adjoint(const Eigen::VectorXcd &values) const {
  check_length(values);
  const auto &idx = plan_->indices;
  const Eigen::Index h = plan_->height, w = plan_->width;
  if (plan_->domain == Domain::DFT) {
    Plane<std::complex<double>> spec = Plane<std::complex<double>>::Zero(h, w);
    for (std::size_t i = 0; i < idx.size(); ++i)
      spec(idx[i]) = values(static_cast<Eigen::Index>(i));
    return ImageGrid(transform_.idft_centered(spec).real());
  }
  Plane<double> spec = Plane<double>::Zero(h, w);
  for (std::size_t i = 0; i < idx.size(); ++i)
    spec(idx[i]) = values(static_cast<Eigen::Index>(i)).real();
  return ImageGrid(transform_.idct(spec));
}

MeasurementVector forward(const ImageGrid &image, PlanRef plan) {
  const MeasurementOperator op(plan);
  return {op.apply(image), std::move(plan)};
}

ImageGrid adjoint(const MeasurementVector &meas) {
  return MeasurementOperator(meas.plan).adjoint(meas.values);
}

ImageGrid zero_fill_recon(const MeasurementVector &meas) { return adjoint(meas); }

} // namespace csmri
