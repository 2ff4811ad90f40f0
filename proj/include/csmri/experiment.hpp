#pragma once

#include "csmri/mask.hpp"
#include "csmri/solvers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csmri {

enum class SolverKind { TwIST, IST };

/// Config-file problem, with a 1-based line number (0 when not tied to a line).
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string &message, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ExperimentConfig {
  std::optional<std::filesystem::path> image_path;
  Eigen::Index phantom_n = 128;
  Domain domain = Domain::DFT;
  MaskParams mask;
  std::vector<double> pct_inside;
  std::vector<double> pct_outside;
  std::vector<std::uint64_t> seeds;
  SolverConfig solver;
  SolverKind solver_kind = SolverKind::TwIST;

  void validate() const;
};

/// Flat `key = value` text; `#` starts a comment, list values are
/// comma-separated. Keys: image, phantom_n, domain, mask_shape, fraction,
/// a, b, lines, pct_inside, pct_outside, seeds, solver, lambda, alpha, beta,
/// xi1, max_iters, rel_tol, tv_inner_iters, monotone.
ExperimentConfig parse_experiment_config(const std::string &text);
ExperimentConfig load_experiment_config(const std::filesystem::path &path);

struct RunOutcome {
  ImageGrid reconstruction;
  SolverTrace trace;
  Eigen::Index measurements = 0;
  double psnr_db = 0.0;
  double baseline_psnr_db = 0.0; // zero-filled
  double runtime_ms = 0.0;
};

/// draw_plan -> forward -> solver against a known ground truth.
RunOutcome run_reconstruction(const ImageGrid &truth, Domain domain, const MaskParams &mask,
                              double pct_inside, double pct_outside, std::uint64_t seed,
                              const SolverConfig &solver, SolverKind kind);

struct SweepResultRow {
  Domain domain = Domain::DFT;
  std::string mask;
  double pct_inside = 0.0;
  double pct_outside = 0.0;
  std::uint64_t seed = 0;
  Eigen::Index measurements = 0;
  double psnr_db = 0.0;
  int iterations = 0;
  bool converged = false;
  double runtime_ms = 0.0;
  /// Not part of the CSV; kept for callers checking solver invariants.
  SolverTrace trace;
};

ImageGrid load_ground_truth(const ExperimentConfig &config);

/// Cross product of pct_inside x pct_outside x seeds, run on up to `jobs`
/// threads. Rows come back sorted by (pct_inside, pct_outside, seed).
std::vector<SweepResultRow> run_sweep(const ExperimentConfig &config, int jobs = 1);

inline constexpr const char *kSweepCsvHeader =
    "domain,mask,pct_inside,pct_outside,seed,measurements,psnr_db,iterations,converged,"
    "runtime_ms";

std::string sweep_csv(const std::vector<SweepResultRow> &rows);

/// 800x600 line chart of mean-over-seeds PSNR against pct_outside, one
/// polyline per pct_inside.
std::string sweep_svg(const std::vector<SweepResultRow> &rows);

} // namespace csmri
