#include "csmri/sampling.hpp"

#include "csmri/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>

namespace csmri {
namespace {

void check_pct(double pct, const char *name) {
  if (!(pct >= 0.0 && pct <= 100.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 100]");
}

void pick(std::vector<Eigen::Index> &candidates, Eigen::Index k, CounterRng &rng,
          std::vector<Eigen::Index> &out) {
  const auto n = static_cast<std::uint64_t>(candidates.size());
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(k); ++i) {
    const std::uint64_t j = i + rng.below(n - i);
    std::swap(candidates[i], candidates[j]);
    out.push_back(candidates[i]);
  }
}

} // namespace

Eigen::Index sample_count(double pct, Eigen::Index count) {
  return static_cast<Eigen::Index>(std::floor(pct * static_cast<double>(count) / 100.0 + 0.5));
}

SamplingPlan draw_plan(const Mask &mask, Domain domain, double pct_inside, double pct_outside,
                       std::uint64_t seed) {
  check_pct(pct_inside, "pct_inside");
  check_pct(pct_outside, "pct_outside");
  std::vector<Eigen::Index> inside, outside;
  const Eigen::Index w = mask.width();
  for (Eigen::Index r = 0; r < mask.height(); ++r)
    for (Eigen::Index c = 0; c < w; ++c)
      (mask(r, c) ? inside : outside).push_back(r * w + c);

  const Eigen::Index n_in = sample_count(pct_inside, static_cast<Eigen::Index>(inside.size()));
  const Eigen::Index n_out = sample_count(pct_outside, static_cast<Eigen::Index>(outside.size()));
  if (n_in + n_out == 0)
    throw std::runtime_error("empty sampling plan: no coefficients selected");

  SamplingPlan plan;
  plan.domain = domain;
  plan.height = mask.height();
  plan.width = w;
  plan.seed = seed;
  plan.pct_inside = pct_inside;
  plan.pct_outside = pct_outside;
  plan.mask = mask.params();
  plan.indices.reserve(static_cast<std::size_t>(n_in + n_out));
  CounterRng rng(seed);
  pick(inside, n_in, rng, plan.indices);
  pick(outside, n_out, rng, plan.indices);
  std::sort(plan.indices.begin(), plan.indices.end());
  return plan;
}

SamplingPlan full_plan(Eigen::Index height, Eigen::Index width, Domain domain) {
  if (height < 1 || width < 1)
    throw std::invalid_argument("full_plan: dimensions must be positive");
  SamplingPlan plan;
  plan.domain = domain;
  plan.height = height;
  plan.width = width;
  plan.indices.resize(static_cast<std::size_t>(height * width));
  for (std::size_t i = 0; i < plan.indices.size(); ++i)
    plan.indices[i] = static_cast<Eigen::Index>(i);
  return plan;
}

std::string serialize_plan(const SamplingPlan &plan) {
  std::string out = "csplan v1 " + std::string(domain_name(plan.domain)) + " " +
                    std::to_string(plan.height) + " " + std::to_string(plan.width) + " " +
                    std::to_string(plan.seed) + " " + format_number(plan.pct_inside) + " " +
                    format_number(plan.pct_outside) + "\n";
  for (std::size_t i = 0; i < plan.size(); ++i)
    out += std::to_string(plan.row(i)) + " " + std::to_string(plan.col(i)) + "\n";
  return out;
}

SamplingPlan parse_plan(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("csplan: empty input");
  std::istringstream header(line);
  std::string magic, version, domain, pin, pout;
  SamplingPlan plan;
  if (!(header >> magic >> version >> domain >> plan.height >> plan.width >> plan.seed >> pin >>
        pout) ||
      magic != "csplan")
    throw std::invalid_argument("csplan: malformed header on line 1");
  if (version != "v1")
    throw std::invalid_argument("csplan: unsupported version " + version);
  if (domain == "dft")
    plan.domain = Domain::DFT;
  else if (domain == "dct")
    plan.domain = Domain::DCT;
  else
    throw std::invalid_argument("csplan: unknown domain " + domain);
  if (!parse_number(pin, plan.pct_inside) || !parse_number(pout, plan.pct_outside))
    throw std::invalid_argument("csplan: malformed percentages on line 1");
  if (plan.height < 1 || plan.width < 1)
    throw std::invalid_argument("csplan: dimensions must be positive");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty())
      continue;
    std::istringstream ls(line);
    Eigen::Index r = -1, c = -1;
    std::string extra;
    if (!(ls >> r >> c) || (ls >> extra) || r < 0 || c < 0 || r >= plan.height ||
        c >= plan.width)
      throw std::invalid_argument("csplan: bad index on line " + std::to_string(line_no));
    const Eigen::Index idx = r * plan.width + c;
    if (!plan.indices.empty() && idx <= plan.indices.back())
      throw std::invalid_argument("csplan: indices not strictly increasing at line " +
                                  std::to_string(line_no));
    plan.indices.push_back(idx);
  }
  return plan;
}

void save_plan(const SamplingPlan &plan, const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_plan(plan);
}

SamplingPlan load_plan(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  return parse_plan(std::string(std::istreambuf_iterator<char>(in), {}));
}

} // namespace csmri
