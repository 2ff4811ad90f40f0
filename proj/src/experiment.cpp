#include "csmri/experiment.hpp"

#include "csmri/format.hpp"
#include "csmri/metrics.hpp"
#include "csmri/pgm.hpp"
#include "csmri/phantom.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iterator>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace csmri {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string &value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ','))
    out.push_back(trim(item));
  return out;
}

double to_double(const std::string &value, const std::string &key, std::size_t line) {
  double out = 0.0;
  if (!parse_number(value, out) || !std::isfinite(out))
    throw ConfigError("'" + key + "' expects a number, got '" + value + "'", line);
  return out;
}

long long to_int(const std::string &value, const std::string &key, std::size_t line) {
  const double d = to_double(value, key, line);
  if (d != std::floor(d))
    throw ConfigError("'" + key + "' expects an integer, got '" + value + "'", line);
  return static_cast<long long>(d);
}

std::uint64_t to_seed(const std::string &value, const std::string &key, std::size_t line) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw ConfigError("'" + key + "' expects unsigned integers, got '" + value + "'", line);
  return out;
}

bool to_bool(const std::string &value, const std::string &key, std::size_t line) {
  if (value == "true" || value == "1" || value == "yes")
    return true;
  if (value == "false" || value == "0" || value == "no")
    return false;
  throw ConfigError("'" + key + "' expects true or false, got '" + value + "'", line);
}

template <typename Fn>
auto to_list(const std::string &value, const std::string &key, std::size_t line, Fn convert) {
  std::vector<decltype(convert(value, key, line))> out;
  for (const auto &item : split_list(value)) {
    if (item.empty())
      throw ConfigError("'" + key + "' has an empty list entry", line);
    out.push_back(convert(item, key, line));
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

} // namespace

void ExperimentConfig::validate() const {
  if (pct_inside.empty() || pct_outside.empty() || seeds.empty())
    throw ConfigError("pct_inside, pct_outside and seeds each need at least one value", 0);
  for (double p : pct_inside)
    if (!(p >= 0.0 && p <= 100.0))
      throw ConfigError("pct_inside values must lie in [0, 100]", 0);
  for (double p : pct_outside)
    if (!(p >= 0.0 && p <= 100.0))
      throw ConfigError("pct_outside values must lie in [0, 100]", 0);
  if (!image_path && phantom_n < 8)
    throw ConfigError("phantom_n must be at least 8", 0);
  try {
    solver.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what(), 0);
  }
}

ExperimentConfig parse_experiment_config(const std::string &text) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("missing key before '='", line_no);
    if (value.empty())
      throw ConfigError("missing value for '" + key + "'", line_no);
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key '" + key + "'", line_no);

    if (key == "image") {
      cfg.image_path = value;
    } else if (key == "phantom_n") {
      cfg.phantom_n = to_int(value, key, line_no);
    } else if (key == "domain") {
      if (value == "dft" || value == "DFT")
        cfg.domain = Domain::DFT;
      else if (value == "dct" || value == "DCT")
        cfg.domain = Domain::DCT;
      else
        throw ConfigError("domain must be dft or dct", line_no);
    } else if (key == "mask_shape") {
      if (value == "square")
        cfg.mask.shape = MaskShape::Square;
      else if (value == "circle")
        cfg.mask.shape = MaskShape::Circle;
      else if (value == "radial")
        cfg.mask.shape = MaskShape::Radial;
      else if (value == "full")
        cfg.mask.shape = MaskShape::Full;
      else
        throw ConfigError("mask_shape must be square, circle, radial or full", line_no);
    } else if (key == "fraction") {
      cfg.mask.fraction = to_double(value, key, line_no);
    } else if (key == "a") {
      cfg.mask.a = to_double(value, key, line_no);
    } else if (key == "b") {
      cfg.mask.b = to_double(value, key, line_no);
    } else if (key == "lines") {
      cfg.mask.lines = static_cast<int>(to_int(value, key, line_no));
    } else if (key == "pct_inside") {
      cfg.pct_inside = to_list(value, key, line_no, to_double);
    } else if (key == "pct_outside") {
      cfg.pct_outside = to_list(value, key, line_no, to_double);
    } else if (key == "seeds") {
      cfg.seeds = to_list(value, key, line_no, to_seed);
    } else if (key == "solver") {
      if (value == "twist")
        cfg.solver_kind = SolverKind::TwIST;
      else if (value == "ist")
        cfg.solver_kind = SolverKind::IST;
      else
        throw ConfigError("solver must be twist or ist", line_no);
    } else if (key == "lambda") {
      cfg.solver.lambda = to_double(value, key, line_no);
    } else if (key == "alpha") {
      cfg.solver.alpha = to_double(value, key, line_no);
    } else if (key == "beta") {
      cfg.solver.beta = to_double(value, key, line_no);
    } else if (key == "xi1") {
      cfg.solver.xi1 = to_double(value, key, line_no);
    } else if (key == "max_iters") {
      cfg.solver.max_iters = static_cast<int>(to_int(value, key, line_no));
    } else if (key == "rel_tol") {
      cfg.solver.rel_tol = to_double(value, key, line_no);
    } else if (key == "tv_inner_iters") {
      cfg.solver.tv_inner_iters = static_cast<int>(to_int(value, key, line_no));
    } else if (key == "monotone") {
      cfg.solver.monotone = to_bool(value, key, line_no);
    } else {
      throw ConfigError("unknown key '" + key + "'", line_no);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open config " + path.string(), 0);
  return parse_experiment_config(std::string(std::istreambuf_iterator<char>(in), {}));
}

RunOutcome run_reconstruction(const ImageGrid &truth, Domain domain, const MaskParams &mask,
                              double pct_inside, double pct_outside, std::uint64_t seed,
                              const SolverConfig &solver, SolverKind kind) {
  const auto start = std::chrono::steady_clock::now();
  const Mask m = make_mask(truth.height(), truth.width(), mask);
  auto plan = std::make_shared<const SamplingPlan>(
      draw_plan(m, domain, pct_inside, pct_outside, seed));
  const MeasurementVector meas = forward(truth, plan);
  const ImageGrid baseline = zero_fill_recon(meas);
  SolveResult solved = kind == SolverKind::TwIST ? twist_solve(meas, solver, baseline, &truth)
                                                 : ist_solve(meas, solver, baseline, &truth);
  RunOutcome out;
  out.measurements = static_cast<Eigen::Index>(plan->size());
  out.psnr_db = psnr(truth, solved.estimate);
  out.baseline_psnr_db = psnr(truth, baseline);
  out.reconstruction = std::move(solved.estimate);
  out.trace = std::move(solved.trace);
  out.runtime_ms = elapsed_ms(start);
  return out;
}

ImageGrid load_ground_truth(const ExperimentConfig &config) {
  if (config.image_path)
    return load_pgm(*config.image_path);
  return shepp_logan(config.phantom_n);
}

std::vector<SweepResultRow> run_sweep(const ExperimentConfig &config, int jobs) {
  config.validate();
  const ImageGrid truth = load_ground_truth(config);

  struct Job {
    double pct_inside, pct_outside;
    std::uint64_t seed;
  };
  std::vector<Job> work;
  for (double pin : config.pct_inside)
    for (double pout : config.pct_outside)
      for (std::uint64_t seed : config.seeds)
        work.push_back({pin, pout, seed});

  std::vector<SweepResultRow> rows(work.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < work.size(); i = next++) {
      try {
        const Job &job = work[i];
        RunOutcome run = run_reconstruction(truth, config.domain, config.mask, job.pct_inside,
                                            job.pct_outside, job.seed, config.solver,
                                            config.solver_kind);
        SweepResultRow &row = rows[i];
        row.domain = config.domain;
        row.mask = config.mask.descriptor();
        row.pct_inside = job.pct_inside;
        row.pct_outside = job.pct_outside;
        row.seed = job.seed;
        row.measurements = run.measurements;
        row.psnr_db = run.psnr_db;
        row.iterations = static_cast<int>(run.trace.records.size());
        row.converged = run.trace.status == SolverStatus::Converged;
        row.runtime_ms = run.runtime_ms;
        row.trace = std::move(run.trace);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back(worker);
  }
  if (failure)
    std::rethrow_exception(failure);

  std::stable_sort(rows.begin(), rows.end(), [](const auto &l, const auto &r) {
    if (l.pct_inside != r.pct_inside)
      return l.pct_inside < r.pct_inside;
    if (l.pct_outside != r.pct_outside)
      return l.pct_outside < r.pct_outside;
    return l.seed < r.seed;
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepResultRow> &rows) {
  std::string out = std::string(kSweepCsvHeader) + "\n";
  for (const auto &r : rows) {
    out += std::string(r.domain == Domain::DFT ? "DFT" : "DCT") + ",\"" + r.mask + "\"," +
           format_number(r.pct_inside) + "," + format_number(r.pct_outside) + "," +
           std::to_string(r.seed) + "," + std::to_string(r.measurements) + "," +
           format_fixed(r.psnr_db, 6) + "," + std::to_string(r.iterations) + "," +
           (r.converged ? "true" : "false") + "," + format_fixed(r.runtime_ms, 3) + "\n";
  }
  return out;
}

std::string sweep_svg(const std::vector<SweepResultRow> &rows) {
  constexpr double kWidth = 800, kHeight = 600;
  constexpr double kLeft = 80, kRight = 160, kTop = 50, kBottom = 70;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  // pct_inside -> pct_outside -> (sum, count)
  std::map<double, std::map<double, std::pair<double, int>>> series;
  for (const auto &r : rows) {
    if (!std::isfinite(r.psnr_db))
      continue;
    auto &cell = series[r.pct_inside][r.pct_outside];
    cell.first += r.psnr_db;
    cell.second += 1;
  }
  double x_lo = HUGE_VAL, x_hi = -HUGE_VAL, y_lo = HUGE_VAL, y_hi = -HUGE_VAL;
  for (const auto &[pin, pts] : series)
    for (const auto &[pout, acc] : pts) {
      const double mean = acc.first / acc.second;
      x_lo = std::min(x_lo, pout);
      x_hi = std::max(x_hi, pout);
      y_lo = std::min(y_lo, mean);
      y_hi = std::max(y_hi, mean);
    }
  if (series.empty()) {
    x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  }
  if (x_hi <= x_lo)
    x_hi = x_lo + 1;
  if (y_hi - y_lo < 1e-9) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };
  auto fmt = [](double v) { return format_fixed(v, 2); };

  static const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  std::string mask = rows.empty() ? "" : rows.front().mask;
  std::string domain = rows.empty() ? "" : (rows.front().domain == Domain::DFT ? "DFT" : "DCT");

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
       "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"28\" text-anchor=\"middle\" "
       "font-size=\"16\">PSNR vs samples outside mask (" + domain + ", " + mask + ")</text>\n";
  s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"46\" text-anchor=\"middle\" "
       "fill=\"#555\">PSNR peak 1.0</text>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(plot_w) +
       "\" height=\"" + fmt(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double xv = x_lo + (x_hi - x_lo) * i / kTicks;
    const double yv = y_lo + (y_hi - y_lo) * i / kTicks;
    s += "<line x1=\"" + fmt(px(xv)) + "\" y1=\"" + fmt(kTop + plot_h) + "\" x2=\"" +
         fmt(px(xv)) + "\" y2=\"" + fmt(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kTop + plot_h + 20) +
         "\" text-anchor=\"middle\">" + format_fixed(xv, 1) + "</text>\n";
    s += "<line x1=\"" + fmt(kLeft - 5) + "\" y1=\"" + fmt(py(yv)) + "\" x2=\"" + fmt(kLeft) +
         "\" y2=\"" + fmt(py(yv)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(py(yv) + 4) +
         "\" text-anchor=\"end\">" + format_fixed(yv, 1) + "</text>\n";
  }
  s += "<text x=\"" + fmt(kLeft + plot_w / 2) + "\" y=\"" + fmt(kHeight - 20) +
       "\" text-anchor=\"middle\">samples outside mask (%)</text>\n";
  s += "<text x=\"20\" y=\"" + fmt(kTop + plot_h / 2) + "\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 20 " + fmt(kTop + plot_h / 2) + ")\">mean PSNR (dB)</text>\n";

  std::size_t k = 0;
  for (const auto &[pin, pts] : series) {
    const char *color = kColors[k % std::size(kColors)];
    std::string points;
    for (const auto &[pout, acc] : pts) {
      const double mean = acc.first / acc.second;
      points += fmt(px(pout)) + "," + fmt(py(mean)) + " ";
      s += "<circle cx=\"" + fmt(px(pout)) + "\" cy=\"" + fmt(py(mean)) + "\" r=\"3\" fill=\"" +
           color + "\"/>\n";
    }
    if (!points.empty())
      points.pop_back();
    s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
         "\" stroke-width=\"2\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 20 + 20 * static_cast<double>(k);
    s += "<line x1=\"" + fmt(kWidth - kRight + 15) + "\" y1=\"" + fmt(ly) + "\" x2=\"" +
         fmt(kWidth - kRight + 40) + "\" y2=\"" + fmt(ly) + "\" stroke=\"" + color +
         "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fmt(kWidth - kRight + 45) + "\" y=\"" + fmt(ly + 4) + "\">" +
         format_number(pin) + "% inside</text>\n";
    ++k;
  }
  s += "</svg>\n";
  return s;
}

} // namespace csmri
