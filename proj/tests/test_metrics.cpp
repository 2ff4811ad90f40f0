#include "csmri/metrics.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace csmri;

TEST_CASE("mse") {
  const ImageGrid a = test::random_image(13, 17, 1);
  CHECK(mse(a, a) == 0.0);

  ImageGrid ones(4, 4), halves(4, 4);
  ones.samples.setOnes();
  halves.samples.setConstant(0.5);
  CHECK(mse(ones, halves) == 0.25);

  const ImageGrid b = test::random_image(13, 17, 2);
  double naive = 0.0;
  for (Eigen::Index r = 0; r < 13; ++r)
    for (Eigen::Index c = 0; c < 17; ++c)
      naive += (a(r, c) - b(r, c)) * (a(r, c) - b(r, c));
  naive /= 13.0 * 17.0;
  CHECK(std::abs(mse(a, b) - naive) < 1e-15);
  CHECK(mse(a, b) == mse(b, a));

  CHECK_THROWS_AS(mse(a, test::random_image(13, 16, 3)), std::invalid_argument);
}

TEST_CASE("psnr") {
  const ImageGrid a = test::random_image(8, 8, 4);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(psnr(a, a) > 0);

  ImageGrid ones(4, 4), halves(4, 4);
  ones.samples.setOnes();
  halves.samples.setConstant(0.5);
  CHECK(psnr(ones, halves) == doctest::Approx(6.0206).epsilon(1e-5));

  ImageGrid ref(3, 3, 255.0), est(3, 3, 255.0);
  ref.samples.setConstant(100.0);
  est.samples.setConstant(105.0);
  CHECK(psnr(ref, est) == doctest::Approx(34.1514).epsilon(1e-6));
}

TEST_CASE("psnr decreases as noise grows") {
  const ImageGrid ref = test::random_image(32, 32, 5);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> gauss;
  Plane<double> noise(32, 32);
  for (Eigen::Index i = 0; i < noise.size(); ++i)
    noise(i) = gauss(rng);
  double prev = HUGE_VAL;
  for (double amp : {1e-3, 1e-2, 1e-1}) {
    const ImageGrid est(Plane<double>(ref.samples + amp * noise));
    const double p = psnr(ref, est);
    CHECK(p < prev);
    prev = p;
  }
}
