#pragma once

#include "csmri/sampling.hpp"
#include "csmri/transforms.hpp"

#include <Eigen/Core>

namespace csmri {

/// Measured coefficients y, one per plan index in plan order. DCT values
/// carry zero imaginary parts.
struct MeasurementVector {
  Eigen::VectorXcd values;
  PlanRef plan;

  Eigen::Index size() const { return values.size(); }
};

/// K = gather(plan) . T, where T is the plan's unitary 2D transform.
/// Holds the FFT plans for the grid, so reuse one instance inside loops.
class MeasurementOperator {
public:
  explicit MeasurementOperator(PlanRef plan);

  const SamplingPlan &plan() const { return *plan_; }
  const PlanRef &plan_ref() const { return plan_; }

  Eigen::VectorXcd apply(const ImageGrid &image) const;

  /// Real part of K^H v. For DFT plans the discarded imaginary part is
  /// reported in `imaginary_residue`.
  InverseResult<double> adjoint_with_residue(const Eigen::VectorXcd &values) const;
  ImageGrid adjoint(const Eigen::VectorXcd &values) const;

private:
  void check_length(const Eigen::VectorXcd &values) const;

  PlanRef plan_;
  Transform2D<double> transform_;
};

MeasurementVector forward(const ImageGrid &image, PlanRef plan);

ImageGrid adjoint(const MeasurementVector &meas);

/// Zero-filled reconstruction; identical to adjoint for unitary transforms.
ImageGrid zero_fill_recon(const MeasurementVector &meas);

} // namespace csmri
