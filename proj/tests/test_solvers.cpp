#include "csmri/solvers.hpp"

#include "csmri/metrics.hpp"
#include "csmri/phantom.hpp"
#include "csmri/tv.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <numbers>

using namespace csmri;
using cd = std::complex<double>;

namespace {

PlanRef share(SamplingPlan plan) { return std::make_shared<const SamplingPlan>(std::move(plan)); }

MeasurementVector measure(const ImageGrid &x, const Mask &m, Domain d, double pin, double pout,
                          std::uint64_t seed) {
  return forward(x, share(draw_plan(m, d, pin, pout, seed)));
}

// 0.5 ||y - Kx||^2 + lambda TV(x) with K evaluated by direct summation of
// the centered unitary DFT and TV by an explicit double loop.
double naive_objective(const ImageGrid &x, const MeasurementVector &meas, double lambda) {
  const SamplingPlan &plan = *meas.plan;
  const Eigen::Index h = plan.height, w = plan.width;
  double data = 0.0;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Eigen::Index u = (plan.row(i) - h / 2 + h) % h, v = (plan.col(i) - w / 2 + w) % w;
    cd acc = 0;
    for (Eigen::Index r = 0; r < h; ++r)
      for (Eigen::Index c = 0; c < w; ++c) {
        const double angle =
            -2.0 * std::numbers::pi * (double(u * r) / double(h) + double(v * c) / double(w));
        acc += x(r, c) * cd(std::cos(angle), std::sin(angle));
      }
    acc /= std::sqrt(double(h * w));
    data += std::norm(meas.values(static_cast<Eigen::Index>(i)) - acc);
  }
  double tv = 0.0;
  for (Eigen::Index r = 0; r < h; ++r)
    for (Eigen::Index c = 0; c < w; ++c) {
      const double dv = r + 1 < h ? x(r + 1, c) - x(r, c) : 0.0;
      const double dh = c + 1 < w ? x(r, c + 1) - x(r, c) : 0.0;
      tv += std::sqrt(dv * dv + dh * dh);
    }
  return 0.5 * data + lambda * tv;
}

void check_trace_invariants(const SolverTrace &trace, const SolverConfig &cfg) {
  CHECK(trace.records.size() <= static_cast<std::size_t>(cfg.max_iters));
  REQUIRE_FALSE(trace.records.empty());
  if (trace.status == SolverStatus::Converged)
    CHECK(trace.records.back().rel_change < cfg.rel_tol);
  else
    CHECK(trace.records.size() == static_cast<std::size_t>(cfg.max_iters));
  if (cfg.monotone) {
    double prev = trace.initial_objective;
    for (const auto &r : trace.records) {
      CHECK(r.objective <= prev + 1e-12);
      prev = r.objective;
    }
  }
}

} // namespace

TEST_CASE("default weights follow the spectral-bound rule") {
  SolverConfig cfg;
  const double rho = (1 - 0.1) / (1 + 0.1);
  CHECK(cfg.twist_alpha() == doctest::Approx(rho * rho + 1).epsilon(1e-15));
  CHECK(cfg.twist_beta() == doctest::Approx(2 * (rho * rho + 1) / 1.01).epsilon(1e-15));
  CHECK(cfg.twist_alpha() > 0);
  CHECK(cfg.twist_alpha() < 2);
  CHECK(cfg.ist_beta() == 1.0);
  cfg.alpha = 1.2;
  cfg.beta = 0.9;
  CHECK(cfg.twist_alpha() == 1.2);
  CHECK(cfg.twist_beta() == 0.9);
}

TEST_CASE("config validation") {
  SolverConfig bad;
  bad.lambda = -1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.beta = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.max_iters = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.rel_tol = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.tv_inner_iters = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  const ImageGrid x = test::random_image(8, 8, 1);
  const auto y = forward(x, share(full_plan(8, 8, Domain::DFT)));
  bad = {};
  bad.alpha = 2.5;
  CHECK_THROWS_AS(twist_solve(y, bad), std::invalid_argument);
  CHECK_THROWS_AS(ist_solve(y, SolverConfig{}, ImageGrid(8, 9)), std::invalid_argument);
}

TEST_CASE("objective examples") {
  const ImageGrid truth = shepp_logan(32);
  const auto full = forward(truth, share(full_plan(32, 32, Domain::DFT)));
  CHECK(objective(truth, full, 0.0) < 1e-18);

  const auto part = measure(truth, circular_mask(32, 32, 1, 4), Domain::DCT, 70, 10, 3);
  CHECK(objective(ImageGrid(32, 32), part, 0.05) ==
        doctest::Approx(0.5 * part.values.squaredNorm()).epsilon(1e-15));

  for (int t = 0; t < 5; ++t) {
    const ImageGrid x = test::random_image(8, 10, 40 + t);
    const auto meas =
        measure(test::random_image(8, 10, 50 + t), square_mask(8, 10, 0.3), Domain::DFT, 60, 30, t);
    const double got = objective(x, meas, 0.07);
    CHECK(std::abs(got - naive_objective(x, meas, 0.07)) <= 1e-12 * got);
  }
}

TEST_CASE("gamma_map examples") {
  SolverConfig cfg;
  cfg.lambda = 0.0;
  const ImageGrid truth = test::random_image(16, 16, 5);
  const auto full = forward(truth, share(full_plan(16, 16, Domain::DFT)));
  const ImageGrid arbitrary = test::random_image(16, 16, 6);
  CHECK((gamma_map(arbitrary, full, cfg).samples - truth.samples).abs().maxCoeff() < 1e-12);

  const auto part = measure(truth, circular_mask(16, 16, 1, 4), Domain::DFT, 80, 10, 2);
  const ImageGrid x = test::random_image(16, 16, 8);
  const MeasurementVector consistent = forward(x, part.plan);
  CHECK((gamma_map(x, consistent, cfg).samples == x.samples).all());

  SolverConfig reg;
  const ImageGrid phantom = shepp_logan(64);
  const auto y = measure(phantom, circular_mask(64, 64, 1, 6), Domain::DFT, 100, 10, 42);
  const ImageGrid x0 = zero_fill_recon(y);
  CHECK(objective(gamma_map(x0, y, reg), y, reg.lambda) < objective(x0, y, reg.lambda));
}

TEST_CASE("fixed points are stationary for both solvers") {
  SolverConfig cfg;
  cfg.lambda = 0.0;
  cfg.max_iters = 3;
  const ImageGrid x = test::random_image(16, 16, 9);
  const auto y = forward(x, share(draw_plan(square_mask(16, 16, 0.2), Domain::DCT, 90, 20, 1)));
  cfg.monotone = false;
  const auto ist = ist_solve(y, cfg, x);
  CHECK((ist.estimate.samples - x.samples).abs().maxCoeff() < 1e-12);
  const auto tw = twist_solve(y, cfg, x);
  CHECK((tw.estimate.samples - x.samples).abs().maxCoeff() < 1e-12);
  CHECK(tw.trace.status == SolverStatus::Converged);
  CHECK(tw.trace.records.size() == 1);

  SolverConfig one = cfg;
  one.max_iters = 1;
  CHECK((twist_solve(y, one, x).estimate.samples == x.samples).all());
}

TEST_CASE("ist_solve: full-grid plan reduces to the TV prox") {
  const ImageGrid truth = shepp_logan(64);
  const ImageGrid prox = tv_denoise(truth, 0.01, 500);
  for (Domain d : {Domain::DFT, Domain::DCT}) {
    const auto y = forward(truth, share(full_plan(64, 64, d)));
    SolverConfig cfg;
    cfg.beta = 1.0;
    const auto res = ist_solve(y, cfg);
    CHECK(std::sqrt(mse(prox, res.estimate)) < 1e-3);
    check_trace_invariants(res.trace, cfg);
  }
}

TEST_CASE("ist_solve: objective strictly decreases early on a square-mask problem") {
  const ImageGrid truth = shepp_logan(128);
  const auto y = measure(truth, square_mask(128, 128, 0.1), Domain::DFT, 80, 20, 7);
  SolverConfig cfg;
  cfg.max_iters = 10;
  cfg.rel_tol = 1e-12;
  const auto res = ist_solve(y, cfg);
  REQUIRE(res.trace.records.size() == 10);
  double prev = res.trace.initial_objective;
  for (const auto &r : res.trace.records) {
    CHECK(r.objective < prev);
    prev = r.objective;
  }
  check_trace_invariants(res.trace, cfg);
}

TEST_CASE("twist_solve with alpha = 1 matches ist_solve iterate by iterate") {
  const ImageGrid truth = shepp_logan(48);
  const auto y = measure(truth, circular_mask(48, 48, 1, 5), Domain::DFT, 90, 15, 11);
  SolverConfig cfg;
  cfg.alpha = 1.0;
  cfg.beta = 1.0;
  cfg.max_iters = 25;
  const auto tw = twist_solve(y, cfg, std::nullopt, &truth);
  const auto is = ist_solve(y, cfg, std::nullopt, &truth);
  REQUIRE(tw.trace.records.size() == is.trace.records.size());
  for (std::size_t i = 0; i < tw.trace.records.size(); ++i)
    CHECK(std::abs(tw.trace.records[i].objective - is.trace.records[i].objective) <= 1e-12);
  CHECK((tw.estimate.samples - is.estimate.samples).abs().maxCoeff() <= 1e-12);
}

TEST_CASE("twist_solve beats the zero-filled baseline") {
  const ImageGrid truth = shepp_logan(128);
  const auto y = measure(truth, circular_mask(128, 128, 1, 6), Domain::DFT, 100, 10, 42);
  SolverConfig cfg;
  const auto res = twist_solve(y, cfg, std::nullopt, &truth);
  const double base = psnr(truth, zero_fill_recon(y));
  CHECK(psnr(truth, res.estimate) >= base + 2.0);
  check_trace_invariants(res.trace, cfg);
  REQUIRE(res.trace.records.back().psnr_db.has_value());
  CHECK(*res.trace.records.back().psnr_db == doctest::Approx(psnr(truth, res.estimate)));
}

TEST_CASE("monotone guard holds across domains, masks and solvers") {
  const ImageGrid truth = shepp_logan(40);
  int k = 0;
  for (Domain d : {Domain::DFT, Domain::DCT})
    for (const Mask &m : {square_mask(40, 40, 0.15), circular_mask(40, 40, 1, 4),
                          circular_mask(40, 40, 0, 2), radial_mask(40, 40, 12)}) {
      const auto y = measure(truth, m, d, 100, 10, ++k);
      for (double lambda : {0.002, 0.01, 0.05}) {
        SolverConfig cfg;
        cfg.lambda = lambda;
        cfg.max_iters = 60;
        check_trace_invariants(twist_solve(y, cfg).trace, cfg);
        check_trace_invariants(ist_solve(y, cfg).trace, cfg);
        cfg.tv_warm_start = false;
        check_trace_invariants(twist_solve(y, cfg).trace, cfg);
      }
    }
}

TEST_CASE("non-monotone TwIST still runs to its budget") {
  const ImageGrid truth = shepp_logan(32);
  const auto y = measure(truth, circular_mask(32, 32, 1, 6), Domain::DFT, 100, 10, 1);
  SolverConfig cfg;
  cfg.monotone = false;
  cfg.max_iters = 30;
  cfg.rel_tol = 1e-14;
  const auto res = twist_solve(y, cfg);
  CHECK(res.trace.guard_fallbacks == 0);
  CHECK(res.trace.records.size() <= 30u);
  CHECK(std::isfinite(res.trace.records.back().objective));
}

TEST_CASE("solver runs are deterministic") {
  const ImageGrid truth = shepp_logan(32);
  const auto y = measure(truth, square_mask(32, 32, 0.1), Domain::DCT, 100, 20, 5);
  const auto a = twist_solve(y, SolverConfig{});
  const auto b = twist_solve(y, SolverConfig{});
  CHECK((a.estimate.samples == b.estimate.samples).all());
  CHECK(a.trace.to_csv() == b.trace.to_csv());
}

TEST_CASE("trace CSV layout") {
  SolverTrace t;
  t.records.push_back({1, 2.5, 0.125, std::nullopt});
  t.records.push_back({2, 2.0, 0.2, 31.25});
  CHECK(t.to_csv() == "iter,objective,rel_change,psnr_db\n1,2.5,0.125,\n2,2,0.2,31.250000\n");
}
