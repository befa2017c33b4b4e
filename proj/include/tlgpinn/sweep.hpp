#pragma once

// Robustness and sensitivity sweeps: noise levels, branch architecture, and
// interior data size over several seeds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlgpinn/pipeline.hpp"

namespace tlgpinn::sweep {

enum class Kind { Noise, Architecture, DataSize };

std::string to_string(Kind k);
Kind parse_kind(const std::string& s);

struct SweepSpec {
  Kind kind = Kind::Noise;
  std::vector<std::string> cases;
  std::vector<double> noise_levels{0.005, 0.01, 0.03, 0.05};
  std::vector<int> depths{4, 5};
  std::vector<int> widths{10, 20, 30, 40, 50};
  std::vector<std::size_t> interior_sizes{500, 1000, 1500, 2000, 2500, 3000};
  std::size_t seeds = 5;

  /// Default case list: every single-coefficient case for noise, the
  /// nonlinear-gamma ones otherwise.
  static std::vector<std::string> default_cases(Kind k);
};

struct Cell {
  std::string case_id;
  std::optional<double> noise;
  std::optional<int> depth;
  std::optional<int> width;
  std::optional<std::size_t> n_interior;
  std::optional<std::uint64_t> seed;
};

/// Cells in case-major order.  Data-size cells use seeds base_seed + s.
std::vector<Cell> enumerate(const SweepSpec& spec, std::uint64_t base_seed);

/// The base configuration with a cell's settings applied.
pipeline::RunConfig apply(const pipeline::RunConfig& base, const Cell& cell);

struct Aggregate {
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
};

Aggregate aggregate(const std::vector<double>& values);

}  // namespace tlgpinn::sweep
