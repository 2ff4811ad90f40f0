#pragma once

#include "csmri/image.hpp"

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace csmri {

/// Raised for any PGM read/write failure. `offset()` is the byte position in
/// the file where the problem was detected (0 for open/write failures).
class PgmError : public std::runtime_error {
public:
  PgmError(const std::string &message, std::size_t offset)
      : std::runtime_error(message + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// Reads a grayscale P2 or P5 file, 8- or 16-bit. Samples are divided by the
/// file's maxval so the result lies in [0, 1] with peak 1.
ImageGrid load_pgm(const std::filesystem::path &path);

/// Parses PGM bytes already in memory. Same contract as load_pgm.
ImageGrid parse_pgm(const std::string &bytes);

/// Writes binary P5. Samples are clamped to [0, 1] and quantized with
/// round-half-up to maxval = 255 (bit_depth 8) or 65535 (bit_depth 16).
void save_pgm(const ImageGrid &grid, const std::filesystem::path &path, int bit_depth = 8);

std::string encode_pgm(const ImageGrid &grid, int bit_depth = 8);

/// Quantizes one [0, 1] sample to an integer level in [0, maxval].
std::uint32_t quantize_sample(double sample, std::uint32_t maxval);

} // namespace csmri
