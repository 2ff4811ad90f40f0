#include "csmri/pgm.hpp"
#include "csmri/phantom.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>

using namespace csmri;

namespace {

void write_bytes(const std::filesystem::path &p, const std::string &bytes) {
  std::ofstream(p, std::ios::binary) << bytes;
}

std::string read_bytes(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Independent rasterization: each ellipse tested by the quadratic form
// (p - c)^T R diag(1/a^2, 1/b^2) R^T (p - c) <= 1 built with Eigen.
ImageGrid rasterize_reference(Eigen::Index n) {
  ImageGrid out(n, n);
  for (const Ellipse &e : shepp_logan_table()) {
    const double t = e.angle_deg * std::numbers::pi / 180.0;
    Eigen::Matrix2d rot;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    const Eigen::Matrix2d q =
        rot * Eigen::Vector2d(1.0 / (e.semi_x * e.semi_x), 1.0 / (e.semi_y * e.semi_y)).asDiagonal() *
        rot.transpose();
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        const Eigen::Vector2d p(2.0 * double(c) / double(n - 1) - 1.0,
                                1.0 - 2.0 * double(r) / double(n - 1));
        const Eigen::Vector2d d = p - Eigen::Vector2d(e.center_x, e.center_y);
        if (d.dot(q * d) <= 1.0)
          out(r, c) += e.intensity;
      }
  }
  out.samples = out.samples.cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

} // namespace

TEST_CASE("load_pgm examples") {
  SUBCASE("2x2 ASCII") {
    const ImageGrid g = parse_pgm("P2\n# comment\n2 2\n255\n0 255\n255 0\n");
    CHECK(g.height() == 2);
    CHECK(g.width() == 2);
    CHECK(g(0, 0) == 0.0);
    CHECK(g(0, 1) == 1.0);
    CHECK(g(1, 0) == 1.0);
    CHECK(g(1, 1) == 0.0);
    CHECK(g.peak == 1.0);
  }
  SUBCASE("1x1 binary") {
    const ImageGrid g = parse_pgm(std::string("P5 1 1 255\n") + char(128));
    CHECK(g(0, 0) == 128.0 / 255.0);
  }
  SUBCASE("16-bit big-endian binary") {
    const ImageGrid g = parse_pgm(std::string("P5\n2 1\n1000\n") + char(0x01) + char(0xF4) +
                                  char(0x03) + char(0xE8));
    CHECK(g(0, 0) == 500.0 / 1000.0);
    CHECK(g(0, 1) == 1.0);
  }
  SUBCASE("from a file") {
    const auto p = test::temp_path("tiny.pgm");
    write_bytes(p, "P2 3 1 4 0 2 4");
    const ImageGrid g = load_pgm(p);
    CHECK(g(0, 1) == 0.5);
  }
}

TEST_CASE("load_pgm errors carry byte offsets") {
  SUBCASE("truncated payload names expected and actual counts") {
    try {
      parse_pgm("P5\n4 4\n255\n" + std::string(10, 'x'));
      FAIL("expected a throw");
    } catch (const PgmError &e) {
      const std::string msg = e.what();
      CHECK(msg.find("expected 16 bytes") != std::string::npos);
      CHECK(msg.find("found 10") != std::string::npos);
      CHECK(e.offset() == 21);
    }
  }
  SUBCASE("truncated ASCII payload") {
    CHECK_THROWS_AS(parse_pgm("P2 2 2 255 0 1 2"), PgmError);
  }
  SUBCASE("malformed header") {
    try {
      parse_pgm("P5\n4 x\n255\n");
      FAIL("expected a throw");
    } catch (const PgmError &e) {
      CHECK(e.offset() == 5);
    }
  }
  SUBCASE("maxval out of range") {
    CHECK_THROWS_AS(parse_pgm("P2 1 1 0 0"), PgmError);
    CHECK_THROWS_AS(parse_pgm("P2 1 1 65536 0"), PgmError);
  }
  SUBCASE("pixel above maxval") { CHECK_THROWS_AS(parse_pgm("P2 1 1 10 11"), PgmError); }
  SUBCASE("color input rejected") { CHECK_THROWS_AS(parse_pgm("P6 1 1 255 abc"), PgmError); }
  SUBCASE("bad magic") { CHECK_THROWS_AS(parse_pgm("GIF89a"), PgmError); }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_pgm(test::temp_path("does_not_exist.pgm")), PgmError);
  }
}

TEST_CASE("save_pgm quantization") {
  ImageGrid g(2, 2);
  g(0, 1) = 1.0;
  g(1, 0) = 1.0;
  const std::string bytes = encode_pgm(g, 8);
  CHECK(bytes == std::string("P5\n2 2\n255\n") + char(0) + char(255) + char(255) + char(0));

  CHECK(quantize_sample(0.5, 255) == 128);
  CHECK(quantize_sample(1.2, 255) == 255);
  CHECK(quantize_sample(-0.3, 255) == 0);
  CHECK(quantize_sample(std::nan(""), 255) == 0);

  const auto p = test::temp_path("save.pgm");
  save_pgm(g, p, 16);
  const ImageGrid back = load_pgm(p);
  CHECK((back.samples == g.samples).all());
  CHECK(read_bytes(p).size() == std::string("P5\n2 2\n65535\n").size() + 8);

  CHECK_THROWS_AS(encode_pgm(g, 12), std::invalid_argument);
  CHECK_THROWS_AS(save_pgm(g, "/nonexistent-dir/x.pgm"), PgmError);
}

TEST_CASE("16-bit round trip within half a quantization step") {
  for (int trial = 0; trial < 1000; ++trial) {
    const ImageGrid g = test::random_image(1 + trial % 7, 1 + trial % 5, 4000 + trial);
    const ImageGrid back = parse_pgm(encode_pgm(g, 16));
    CHECK((back.samples - g.samples).abs().maxCoeff() <= 1.0 / 131070.0 + 1e-15);
  }
  const ImageGrid g = test::random_image(9, 11, 1);
  const ImageGrid back8 = parse_pgm(encode_pgm(g, 8));
  CHECK((back8.samples - g.samples).abs().maxCoeff() <= 1.0 / 510.0 + 1e-15);
}

TEST_CASE("shepp_logan") {
  const ImageGrid p64 = shepp_logan(64);
  CHECK(p64(0, 0) == 0.0);
  CHECK(p64(32, 32) > 0.0);
  CHECK(p64.samples.minCoeff() >= 0.0);
  CHECK(p64.samples.maxCoeff() <= 1.0);
  CHECK(p64.peak == 1.0);

  const ImageGrid p128 = shepp_logan(128);
  CHECK((p128.samples == rasterize_reference(128).samples).all());
  CHECK((shepp_logan(128).samples == p128.samples).all());
  // skull rim is the brightest region
  CHECK(p128.samples.maxCoeff() == 1.0);

  CHECK_THROWS_AS(shepp_logan(7), std::invalid_argument);
}

TEST_CASE("normalize maps onto [0, 1]") {
  ImageGrid g(1, 3);
  g.samples << -2.0, 0.0, 6.0;
  g.peak = 255;
  const ImageGrid n = normalize(g);
  CHECK(n(0, 0) == 0.0);
  CHECK(n(0, 1) == 0.25);
  CHECK(n(0, 2) == 1.0);
  CHECK(n.peak == 1.0);
}
