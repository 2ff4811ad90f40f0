// csmri: compressed-sensing reconstruction from masked DFT/DCT samples.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or config error.

#include "csmri/experiment.hpp"
#include "csmri/format.hpp"
#include "csmri/metrics.hpp"
#include "csmri/pgm.hpp"
#include "csmri/phantom.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using namespace csmri;

struct MaskFlags {
  std::string shape = "circle";
  double fraction = 0.1;
  double a = 1.0;
  double b = 6.0;
  int lines = 22;

  void add_to(CLI::App &cmd, const std::string &shape_flag) {
    cmd.add_option(shape_flag, shape, "Mask shape")
        ->check(CLI::IsMember({"square", "circle", "radial", "full"}))
        ->capture_default_str();
    cmd.add_option("--fraction", fraction, "Square half-width as a fraction of N")
        ->check(CLI::Range(0.0, 0.4999999999))
        ->capture_default_str();
    cmd.add_option("--a", a, "Circle center scale (center = a N / 2)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    cmd.add_option("--b", b, "Circle radius divisor (radius = N / b)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd.add_option("--lines", lines, "Radial line count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  MaskParams params() const {
    static const std::map<std::string, MaskShape> shapes{{"square", MaskShape::Square},
                                                         {"circle", MaskShape::Circle},
                                                         {"radial", MaskShape::Radial},
                                                         {"full", MaskShape::Full}};
    MaskParams p;
    p.shape = shapes.at(shape);
    p.fraction = fraction;
    p.a = a;
    p.b = b;
    p.lines = lines;
    return p;
  }
};

void write_text(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out)
    throw std::runtime_error("write failed for " + path);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compressed-sensing image reconstruction from masked DFT/DCT samples"};
  app.require_subcommand(1);

  // reconstruct
  auto *rec = app.add_subcommand("reconstruct", "Sample, reconstruct and report PSNR");
  std::string rec_image;
  Eigen::Index rec_phantom = 128;
  std::string rec_domain = "dft";
  MaskFlags rec_mask;
  double rec_inside = 100.0, rec_outside = 10.0;
  std::uint64_t rec_seed = 42;
  SolverConfig rec_solver;
  std::string rec_solver_name = "twist";
  bool rec_no_monotone = false;
  double rec_alpha = 0.0, rec_beta = 0.0;
  std::string rec_out = "reconstruction.pgm", rec_trace, rec_plan_out;
  int rec_bits = 8;
  auto *img_opt = rec->add_option("--image", rec_image, "Ground-truth PGM")->check(CLI::ExistingFile);
  rec->add_option("--phantom-n", rec_phantom, "Shepp-Logan phantom size")
      ->check(CLI::Range(8, 1 << 14))
      ->excludes(img_opt)
      ->capture_default_str();
  rec->add_option("--domain", rec_domain, "Measurement domain")
      ->check(CLI::IsMember({"dft", "dct"}))
      ->capture_default_str();
  rec_mask.add_to(*rec, "--mask-shape");
  rec->add_option("--inside", rec_inside, "Percent of mask cells sampled")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  rec->add_option("--outside", rec_outside, "Percent of cells outside the mask sampled")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  rec->add_option("--seed", rec_seed, "Sampling seed")->capture_default_str();
  rec->add_option("--lambda", rec_solver.lambda, "TV regularization weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  rec->add_option("--solver", rec_solver_name, "Solver")
      ->check(CLI::IsMember({"twist", "ist"}))
      ->capture_default_str();
  auto *alpha_opt = rec->add_option("--alpha", rec_alpha, "Two-step weight (default from xi1)");
  auto *beta_opt = rec->add_option("--beta", rec_beta, "Step weight (default from xi1)");
  rec->add_option("--xi1", rec_solver.xi1, "Assumed lower spectral bound")->capture_default_str();
  rec->add_option("--max-iters", rec_solver.max_iters)->check(CLI::PositiveNumber)->capture_default_str();
  rec->add_option("--rel-tol", rec_solver.rel_tol)->check(CLI::PositiveNumber)->capture_default_str();
  rec->add_option("--tv-inner-iters", rec_solver.tv_inner_iters)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  rec->add_flag("--no-monotone", rec_no_monotone, "Disable the monotone objective guard");
  rec->add_option("--out", rec_out, "Reconstruction PGM path")->capture_default_str();
  rec->add_option("--bit-depth", rec_bits, "Output PGM bit depth")
      ->check(CLI::IsMember({8, 16}))
      ->capture_default_str();
  rec->add_option("--trace", rec_trace, "Write the solver trace CSV here");
  rec->add_option("--plan-out", rec_plan_out, "Write the sampling plan here");

  // sweep
  auto *sweep = app.add_subcommand("sweep", "Run a PSNR sweep from a config file");
  std::string sweep_config, sweep_csv_path, sweep_svg_path;
  int sweep_jobs = 1;
  sweep->add_option("config", sweep_config, "key = value config file")->required();
  sweep->add_option("csv", sweep_csv_path, "Output CSV")->required();
  sweep->add_option("svg", sweep_svg_path, "Optional output SVG plot");
  sweep->add_option("--jobs", sweep_jobs, "Parallel runs")->check(CLI::PositiveNumber)->capture_default_str();

  // mask
  auto *mask_cmd = app.add_subcommand("mask", "Write a mask as a 0/255 PGM");
  MaskFlags mask_flags;
  Eigen::Index mask_n = 512, mask_n1 = 0, mask_n2 = 0;
  std::string mask_out = "mask.pgm";
  mask_flags.add_to(*mask_cmd, "--shape");
  mask_cmd->add_option("--n", mask_n, "Square grid size")->check(CLI::PositiveNumber)->capture_default_str();
  mask_cmd->add_option("--n1", mask_n1, "Grid height (overrides --n)")->check(CLI::PositiveNumber);
  mask_cmd->add_option("--n2", mask_n2, "Grid width (overrides --n)")->check(CLI::PositiveNumber);
  mask_cmd->add_option("--out", mask_out)->capture_default_str();

  // phantom
  auto *ph = app.add_subcommand("phantom", "Write a Shepp-Logan phantom PGM");
  Eigen::Index ph_n = 256;
  std::string ph_out = "phantom.pgm";
  int ph_bits = 8;
  ph->add_option("--n", ph_n)->check(CLI::Range(8, 1 << 14))->capture_default_str();
  ph->add_option("--out", ph_out)->capture_default_str();
  ph->add_option("--bit-depth", ph_bits)->check(CLI::IsMember({8, 16}))->capture_default_str();

  // psnr
  auto *ps = app.add_subcommand("psnr", "PSNR between two PGM files (first is the reference)");
  std::string ps_ref, ps_est;
  ps->add_option("reference", ps_ref)->required();
  ps->add_option("estimate", ps_est)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*rec) {
      const ImageGrid truth = rec_image.empty() ? shepp_logan(rec_phantom) : load_pgm(rec_image);
      if (*alpha_opt)
        rec_solver.alpha = rec_alpha;
      if (*beta_opt)
        rec_solver.beta = rec_beta;
      rec_solver.monotone = !rec_no_monotone;
      try {
        rec_solver.validate();
      } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n\n" << rec->help();
        return 2;
      }
      const Domain domain = rec_domain == "dft" ? Domain::DFT : Domain::DCT;
      const SolverKind kind = rec_solver_name == "twist" ? SolverKind::TwIST : SolverKind::IST;
      const MaskParams mp = rec_mask.params();
      if (!rec_plan_out.empty()) {
        const Mask m = make_mask(truth.height(), truth.width(), mp);
        save_plan(draw_plan(m, domain, rec_inside, rec_outside, rec_seed), rec_plan_out);
      }
      const RunOutcome run = run_reconstruction(truth, domain, mp, rec_inside, rec_outside,
                                                rec_seed, rec_solver, kind);
      save_pgm(run.reconstruction, rec_out, rec_bits);
      if (!rec_trace.empty())
        write_text(rec_trace, run.trace.to_csv());
      std::cout << "psnr_db=" << format_fixed(run.psnr_db, 4)
                << " iters=" << run.trace.records.size() << " measurements=" << run.measurements
                << "\n";
      return 0;
    }
    if (*sweep) {
      ExperimentConfig cfg;
      try {
        cfg = load_experiment_config(sweep_config);
      } catch (const ConfigError &e) {
        std::cerr << "error: " << sweep_config << ": " << e.what() << "\n";
        return 2;
      }
      const auto rows = run_sweep(cfg, sweep_jobs);
      write_text(sweep_csv_path, sweep_csv(rows));
      if (!sweep_svg_path.empty())
        write_text(sweep_svg_path, sweep_svg(rows));
      std::cout << "rows=" << rows.size() << "\n";
      return 0;
    }
    if (*mask_cmd) {
      const Eigen::Index n1 = mask_n1 ? mask_n1 : mask_n;
      const Eigen::Index n2 = mask_n2 ? mask_n2 : mask_n;
      const Mask m = make_mask(n1, n2, mask_flags.params());
      save_pgm(m.to_image(), mask_out, 8);
      const MaskStats st = mask_stats(m);
      std::cout << "inside=" << st.inside_count << " outside=" << st.outside_count
                << " coverage=" << format_fixed(st.coverage_fraction, 6) << "\n";
      return 0;
    }
    if (*ph) {
      save_pgm(shepp_logan(ph_n), ph_out, ph_bits);
      return 0;
    }
    if (*ps) {
      const ImageGrid ref = load_pgm(ps_ref);
      const ImageGrid est = load_pgm(ps_est);
      std::cout << "psnr_db=" << format_fixed(psnr(ref, est), 4) << "\n";
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
