#include "csmri/solvers.hpp"

#include "csmri/format.hpp"
#include "csmri/metrics.hpp"
#include "csmri/tv.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace csmri {
namespace {

constexpr double kMaxStepScale = 1024.0;

class Problem {
public:
  Problem(const MeasurementVector &meas, double lambda, int inner_iters, bool warm_start)
      : op_(meas.plan), y_(meas.values), lambda_(lambda), inner_iters_(inner_iters),
        warm_start_(warm_start) {
    if (y_.size() != static_cast<Eigen::Index>(op_.plan().size()))
      throw std::invalid_argument("measurement vector does not match its plan");
  }

  double objective(const ImageGrid &x) const {
    const Eigen::VectorXcd r = y_ - op_.apply(x);
    return 0.5 * r.squaredNorm() + lambda_ * tv_norm(x);
  }

  // F_{lambda/s}(x + K^H(y - Kx) / s)
  ImageGrid gamma(const ImageGrid &x, double step_scale) {
    const Eigen::VectorXcd r = y_ - op_.apply(x);
    ImageGrid z = op_.adjoint(r);
    if (step_scale == 1.0)
      z.samples += x.samples;
    else
      z.samples = x.samples + z.samples / step_scale;
    z.peak = x.peak;
    if (!warm_start_)
      dual_ = {};
    return tv_denoise_from(z, lambda_ / step_scale, inner_iters_, dual_);
  }

  ImageGrid zero_fill() const { return op_.adjoint(y_); }

private:
  MeasurementOperator op_;
  const Eigen::VectorXcd &y_;
  double lambda_;
  int inner_iters_;
  bool warm_start_;
  Gradient<double> dual_;
};

struct Weights {
  double alpha;
  double beta;
  bool two_step_start; // x1 = Gamma(x0)
};

SolveResult iterate(const MeasurementVector &meas, const SolverConfig &config, Weights weights,
                    const std::optional<ImageGrid> &x0, const ImageGrid *reference) {
  config.validate();
  Problem problem(meas, config.lambda, config.tv_inner_iters, config.tv_warm_start);
  ImageGrid x = x0 ? *x0 : problem.zero_fill();
  if (x.height() != meas.plan->height || x.width() != meas.plan->width)
    throw std::invalid_argument("initial estimate does not match plan dimensions");
  ImageGrid x_prev = x;
  double f = problem.objective(x);
  double step_scale = 1.0;

  SolveResult result{x, {}};
  SolverTrace &trace = result.trace;
  trace.initial_objective = f;
  trace.records.reserve(static_cast<std::size_t>(config.max_iters));

  const double a = weights.alpha;
  const double b = weights.beta;
  for (int t = 1; t <= config.max_iters; ++t) {
    ImageGrid candidate = problem.gamma(x, step_scale);
    if (!(t == 1 && weights.two_step_start)) {
      if (a == 1.0)
        candidate.samples = (1.0 - b) * x.samples + b * candidate.samples;
      else
        candidate.samples =
            (1.0 - a) * x_prev.samples + (a - b) * x.samples + b * candidate.samples;
    }
    double fc = problem.objective(candidate);

    if (config.monotone && fc > f) {
      ++trace.guard_fallbacks;
      for (;;) {
        candidate = problem.gamma(x, step_scale);
        fc = problem.objective(candidate);
        if (fc <= f)
          break;
        if (step_scale >= kMaxStepScale) {
          candidate = x;
          fc = f;
          break;
        }
        step_scale *= 2.0;
      }
    }

    TraceRecord rec;
    rec.iteration = t;
    rec.objective = fc;
    rec.rel_change = f > 0.0 ? std::abs(f - fc) / f : (fc == f ? 0.0 : HUGE_VAL);
    if (reference)
      rec.psnr_db = psnr(*reference, candidate);
    trace.records.push_back(rec);

    x_prev = std::move(x);
    x = std::move(candidate);
    f = fc;
    if (rec.rel_change < config.rel_tol) {
      trace.status = SolverStatus::Converged;
      break;
    }
  }
  result.estimate = std::move(x);
  return result;
}

} // namespace

double SolverConfig::twist_alpha() const {
  const double rho = (1.0 - std::sqrt(xi1)) / (1.0 + std::sqrt(xi1));
  return alpha.value_or(rho * rho + 1.0);
}

double SolverConfig::twist_beta() const {
  if (beta)
    return *beta;
  return 2.0 * twist_alpha() / (1.0 + xi1);
}

void SolverConfig::validate() const {
  if (!(lambda >= 0.0))
    throw std::invalid_argument("solver: lambda must be non-negative");
  if (alpha && !(*alpha > 0.0 && *alpha <= 2.0))
    throw std::invalid_argument("solver: alpha must lie in (0, 2]");
  if (beta && !(*beta > 0.0))
    throw std::invalid_argument("solver: beta must be positive");
  if (!(xi1 > 0.0 && xi1 <= 1.0))
    throw std::invalid_argument("solver: xi1 must lie in (0, 1]");
  if (max_iters < 1)
    throw std::invalid_argument("solver: max_iters must be positive");
  if (!(rel_tol > 0.0))
    throw std::invalid_argument("solver: rel_tol must be positive");
  if (tv_inner_iters < 1)
    throw std::invalid_argument("solver: tv_inner_iters must be positive");
}

std::string SolverTrace::to_csv() const {
  std::string out = "iter,objective,rel_change,psnr_db\n";
  for (const auto &r : records) {
    out += std::to_string(r.iteration) + "," + format_number(r.objective) + "," +
           format_number(r.rel_change) + "," + (r.psnr_db ? format_fixed(*r.psnr_db, 6) : "") +
           "\n";
  }
  return out;
}

double objective(const ImageGrid &x, const MeasurementVector &meas, double lambda) {
  return Problem(meas, lambda, 1, false).objective(x);
}

ImageGrid gamma_map(const ImageGrid &x, const MeasurementVector &meas,
                    const SolverConfig &config) {
  config.validate();
  return Problem(meas, config.lambda, config.tv_inner_iters, false).gamma(x, 1.0);
}

SolveResult ist_solve(const MeasurementVector &meas, const SolverConfig &config,
                      const std::optional<ImageGrid> &x0, const ImageGrid *reference) {
  return iterate(meas, config, {1.0, config.ist_beta(), false}, x0, reference);
}

SolveResult twist_solve(const MeasurementVector &meas, const SolverConfig &config,
                        const std::optional<ImageGrid> &x0, const ImageGrid *reference) {
  return iterate(meas, config, {config.twist_alpha(), config.twist_beta(), true}, x0,
                 reference);
}

} // namespace csmri
