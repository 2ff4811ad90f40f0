#pragma once

#include "csmri/mask.hpp"
#include "csmri/transforms.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace csmri {

/// SplitMix64 keyed by (seed, counter): draw i is a pure function of the
/// seed and i, so sequences are identical on every platform.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return mix(seed_, counter_++); }

  /// Unbiased integer in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold)
        return x % bound;
    }
  }

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// A selection of coefficient cells. Together with `domain` and the grid
/// size it defines the measurement operator.
struct SamplingPlan {
  Domain domain = Domain::DFT;
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  /// Row-major linear indices r * width + c, strictly increasing.
  std::vector<Eigen::Index> indices;
  std::uint64_t seed = 0;
  double pct_inside = 100.0;
  double pct_outside = 0.0;
  MaskParams mask;

  std::size_t size() const { return indices.size(); }
  Eigen::Index row(std::size_t i) const { return indices[i] / width; }
  Eigen::Index col(std::size_t i) const { return indices[i] % width; }

  bool operator==(const SamplingPlan &) const = default;
};

using PlanRef = std::shared_ptr<const SamplingPlan>;

/// round-half-up(pct / 100 * count)
Eigen::Index sample_count(double pct, Eigen::Index count);

/// Picks sample_count(pct_inside, inside) mask cells and
/// sample_count(pct_outside, outside) complement cells uniformly without
/// replacement. Each candidate list is in row-major order and partially
/// Fisher-Yates shuffled; interior first, then complement, one generator.
SamplingPlan draw_plan(const Mask &mask, Domain domain, double pct_inside, double pct_outside,
                       std::uint64_t seed);

/// Every cell of an H x W grid.
SamplingPlan full_plan(Eigen::Index height, Eigen::Index width, Domain domain);

/// `csplan v1 <domain> <H> <W> <seed> <pct_inside> <pct_outside>` then one
/// `row col` line per index.
std::string serialize_plan(const SamplingPlan &plan);
SamplingPlan parse_plan(const std::string &text);

void save_plan(const SamplingPlan &plan, const std::filesystem::path &path);
SamplingPlan load_plan(const std::filesystem::path &path);

} // namespace csmri
