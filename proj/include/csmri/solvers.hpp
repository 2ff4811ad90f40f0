#pragma once

#include "csmri/measurement.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csmri {

struct SolverConfig {
  double lambda = 0.01;
  /// Two-step weight. Unset means the spectral-bound rule from `xi1`.
  std::optional<double> alpha;
  /// Step weight. Unset means the spectral-bound rule for TwIST and 1 for IST.
  std::optional<double> beta;
  /// Assumed lower bound of the spectrum of K^H K used by the default rule.
  double xi1 = 1e-2;
  int max_iters = 200;
  double rel_tol = 1e-4;
  int tv_inner_iters = 10;
  bool monotone = true;
  /// Carry the TV dual field from one outer iteration to the next instead
  /// of restarting it at zero inside every denoising step.
  bool tv_warm_start = true;

  /// rho = (1 - sqrt(xi1)) / (1 + sqrt(xi1)); alpha = rho^2 + 1.
  double twist_alpha() const;
  /// 2 alpha / (1 + xi1).
  double twist_beta() const;
  double ist_beta() const { return beta.value_or(1.0); }

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

enum class SolverStatus { Converged, MaxIters };

struct TraceRecord {
  int iteration = 0;
  double objective = 0.0;
  double rel_change = 0.0;
  std::optional<double> psnr_db;
};

struct SolverTrace {
  double initial_objective = 0.0;
  std::vector<TraceRecord> records;
  SolverStatus status = SolverStatus::MaxIters;
  /// Times the monotone guard rejected a candidate step.
  int guard_fallbacks = 0;

  /// `iter,objective,rel_change,psnr_db` with one row per record.
  std::string to_csv() const;
};

struct SolveResult {
  ImageGrid estimate;
  SolverTrace trace;
};

/// 0.5 ||y - Kx||^2 + lambda TV(x).
double objective(const ImageGrid &x, const MeasurementVector &meas, double lambda);

/// Gamma(x) = F_lambda(x + K^H (y - Kx)) with F_lambda = tv_denoise.
ImageGrid gamma_map(const ImageGrid &x, const MeasurementVector &meas, const SolverConfig &config);

/// x <- (1 - B) x + B Gamma(x).
///
/// x0 defaults to the zero-filled reconstruction. When `reference` is given
/// each trace record carries the PSNR of the iterate against it.
SolveResult ist_solve(const MeasurementVector &meas, const SolverConfig &config,
                      const std::optional<ImageGrid> &x0 = std::nullopt,
                      const ImageGrid *reference = nullptr);

/// x1 = Gamma(x0); x_{t+1} = (1 - a) x_{t-1} + (a - B) x_t + B Gamma(x_t).
///
/// With `monotone`, a candidate that raises the objective is replaced by a
/// plain Gamma step from x_t. If that also fails the gradient step is
/// shortened (step 1/s with lambda/s, s doubling up to 1024) and, failing
/// that, the iterate is held.
SolveResult twist_solve(const MeasurementVector &meas, const SolverConfig &config,
                        const std::optional<ImageGrid> &x0 = std::nullopt,
                        const ImageGrid *reference = nullptr);

} // namespace csmri
