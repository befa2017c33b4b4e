#include "tlgpinn/sweep.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace tlgpinn::sweep {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Noise:
      return "noise";
    case Kind::Architecture:
      return "architecture";
    case Kind::DataSize:
      return "datasize";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  if (s == "noise") return Kind::Noise;
  if (s == "architecture") return Kind::Architecture;
  if (s == "datasize") return Kind::DataSize;
  throw pipeline::ConfigError(fmt::format("unknown sweep kind '{}'", s));
}

std::vector<std::string> SweepSpec::default_cases(Kind k) {
  if (k == Kind::Noise) return {"3.1.1", "3.1.2", "3.1.3", "3.1.4", "3.1.5"};
  return {"3.1.2", "3.1.3", "3.1.4", "3.1.5"};
}

std::vector<Cell> enumerate(const SweepSpec& spec, std::uint64_t base_seed) {
  const auto cases = spec.cases.empty() ? SweepSpec::default_cases(spec.kind) : spec.cases;
  std::vector<Cell> cells;
  for (const auto& id : cases) {
    switch (spec.kind) {
      case Kind::Noise:
        for (double l : spec.noise_levels) cells.push_back({id, l, {}, {}, {}, {}});
        break;
      case Kind::Architecture:
        for (int d : spec.depths)
          for (int w : spec.widths) cells.push_back({id, {}, d, w, {}, {}});
        break;
      case Kind::DataSize:
        for (auto n : spec.interior_sizes)
          for (std::size_t s = 0; s < spec.seeds; ++s) cells.push_back({id, {}, {}, {}, n, base_seed + s});
        break;
    }
  }
  if (cells.empty()) throw pipeline::ConfigError("sweep has no cells");
  return cells;
}

pipeline::RunConfig apply(const pipeline::RunConfig& base, const Cell& cell) {
  auto c = base;
  c.case_id = cell.case_id;
  if (cell.noise) c.noise = *cell.noise;
  if (cell.depth) c.branch_depth = *cell.depth;
  if (cell.width) c.branch_width = *cell.width;
  if (cell.n_interior) c.counts.interior = *cell.n_interior;
  if (cell.seed) c.sampling_seed = c.init_seed = *cell.seed;
  return c;
}

Aggregate aggregate(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("aggregate of no values");
  Aggregate a;
  a.max = *std::max_element(values.begin(), values.end());
  a.min = *std::min_element(values.begin(), values.end());
  for (double v : values) a.mean += v;
  a.mean = std::clamp(a.mean / static_cast<double>(values.size()), a.min, a.max);
  return a;
}

}  // namespace tlgpinn::sweep
