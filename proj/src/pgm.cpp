#include "csmri/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>

namespace csmri {
namespace {

bool is_space(char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; }
bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

class Tokenizer {
public:
  Tokenizer(const std::string &bytes, std::size_t pos) : bytes_(bytes), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
          ++pos_;
      } else if (is_space(bytes_[pos_])) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::uint64_t read_uint(const std::string &field) {
    skip_space_and_comments();
    const std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < bytes_.size() && is_digit(bytes_[pos_])) {
      value = value * 10 + static_cast<std::uint64_t>(bytes_[pos_] - '0');
      if (value > 0xFFFFFFFFull)
        throw PgmError("malformed header: " + field + " is too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      if (at_end())
        throw PgmError("truncated file: expected " + field, start);
      throw PgmError("malformed header: expected " + field, start);
    }
    if (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#')
      throw PgmError("malformed header: junk after " + field, pos_);
    return value;
  }

  void skip_single_whitespace() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
      throw PgmError("malformed header: expected whitespace after maxval", pos_);
    ++pos_;
  }

private:
  const std::string &bytes_;
  std::size_t pos_;
};

} // namespace

std::uint32_t quantize_sample(double sample, std::uint32_t maxval) {
  double s = sample;
  if (!(s > 0.0)) // NaN lands here too
    s = 0.0;
  if (s > 1.0)
    s = 1.0;
  return static_cast<std::uint32_t>(std::floor(s * static_cast<double>(maxval) + 0.5));
}

ImageGrid parse_pgm(const std::string &bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P')
    throw PgmError("malformed header: missing PGM magic number", 0);
  const char kind = bytes[1];
  if (kind == '3' || kind == '6')
    throw PgmError("color PPM input is not supported, grayscale PGM required", 1);
  if (kind != '2' && kind != '5')
    throw PgmError(std::string("malformed header: unsupported magic number P") + kind, 1);

  Tokenizer tok(bytes, 2);
  const std::size_t width_pos = tok.pos();
  const std::uint64_t width = tok.read_uint("width");
  const std::uint64_t height = tok.read_uint("height");
  if (width == 0 || height == 0)
    throw PgmError("malformed header: zero image dimension", width_pos);
  const std::size_t maxval_pos = tok.pos();
  const std::uint64_t maxval = tok.read_uint("maxval");
  if (maxval < 1 || maxval > 65535)
    throw PgmError("malformed header: maxval " + std::to_string(maxval) +
                       " outside 1..65535",
                   maxval_pos);

  const auto h = static_cast<Eigen::Index>(height);
  const auto w = static_cast<Eigen::Index>(width);
  ImageGrid grid(h, w);
  const double scale = 1.0 / static_cast<double>(maxval);
  const std::uint64_t count = width * height;

  if (kind == '5') {
    tok.skip_single_whitespace();
    const std::size_t data_pos = tok.pos();
    const std::uint64_t bytes_per_sample = maxval > 255 ? 2 : 1;
    const std::uint64_t expected = count * bytes_per_sample;
    const std::uint64_t actual = bytes.size() - data_pos;
    if (actual < expected)
      throw PgmError("truncated pixel data: expected " + std::to_string(expected) +
                         " bytes, found " + std::to_string(actual),
                     bytes.size());
    const auto *data = reinterpret_cast<const unsigned char *>(bytes.data() + data_pos);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t level = 0;
      if (bytes_per_sample == 2)
        level = (std::uint32_t{data[2 * i]} << 8) | std::uint32_t{data[2 * i + 1]};
      else
        level = data[i];
      if (level > maxval)
        throw PgmError("pixel value exceeds maxval", data_pos + i * bytes_per_sample);
      grid.samples(static_cast<Eigen::Index>(i / width), static_cast<Eigen::Index>(i % width)) =
          static_cast<double>(level) * scale;
    }
  } else {
    for (std::uint64_t i = 0; i < count; ++i) {
      tok.skip_space_and_comments();
      if (tok.at_end())
        throw PgmError("truncated pixel data: expected " + std::to_string(count) +
                           " samples, found " + std::to_string(i),
                       tok.pos());
      const std::size_t at = tok.pos();
      const std::uint64_t level = tok.read_uint("pixel value");
      if (level > maxval)
        throw PgmError("pixel value exceeds maxval", at);
      grid.samples(static_cast<Eigen::Index>(i / width), static_cast<Eigen::Index>(i % width)) =
          static_cast<double>(level) * scale;
    }
  }
  return grid;
}

ImageGrid load_pgm(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw PgmError("cannot open " + path.string(), 0);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_pgm(bytes);
}

std::string encode_pgm(const ImageGrid &grid, int bit_depth) {
  if (bit_depth != 8 && bit_depth != 16)
    throw std::invalid_argument("bit_depth must be 8 or 16");
  const std::uint32_t maxval = bit_depth == 8 ? 255u : 65535u;
  std::string out = "P5\n" + std::to_string(grid.width()) + " " +
                    std::to_string(grid.height()) + "\n" + std::to_string(maxval) + "\n";
  out.reserve(out.size() + static_cast<std::size_t>(grid.size()) * (bit_depth / 8));
  for (Eigen::Index r = 0; r < grid.height(); ++r) {
    for (Eigen::Index c = 0; c < grid.width(); ++c) {
      const std::uint32_t level = quantize_sample(grid(r, c), maxval);
      if (bit_depth == 16)
        out.push_back(static_cast<char>((level >> 8) & 0xFF));
      out.push_back(static_cast<char>(level & 0xFF));
    }
  }
  return out;
}

void save_pgm(const ImageGrid &grid, const std::filesystem::path &path, int bit_depth) {
  const std::string bytes = encode_pgm(grid, bit_depth);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw PgmError("cannot open " + path.string() + " for writing", 0);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw PgmError("write failed for " + path.string(), 0);
}

} // namespace csmri
