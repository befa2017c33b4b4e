#pragma once

// Runs the three methods on one case:
//
//   PINN      minimize the PINN objective from a Xavier initialization
//   gPINN     minimize the gPINN objective from the same initialization
//   TL-gPINN  PINN stage, save a checkpoint, reload it, gPINN stage
//
// Every stage sees the same dataset, drawn from the sampling seed.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tlgpinn/loss.hpp"
#include "tlgpinn/metrics.hpp"
#include "tlgpinn/model.hpp"
#include "tlgpinn/optimizer.hpp"
#include "tlgpinn/sampling.hpp"

namespace tlgpinn::pipeline {

enum class MethodKind { Pinn, Gpinn, TlGpinn };

std::string to_string(MethodKind m);
/// Accepts "pinn", "gpinn", "tl-gpinn" (case-insensitive).
MethodKind parse_method(const std::string& s);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string case_id = "3.1.1";
  MethodKind method = MethodKind::TlGpinn;
  sampling::SampleCounts counts;
  std::uint64_t sampling_seed = 1;
  std::uint64_t init_seed = 1;
  optim::LbfgsConfig stage1 = default_stage(5000);
  optim::LbfgsConfig stage2 = default_stage(3000);
  double noise = 0.0;
  std::optional<int> branch_depth;  ///< overrides the case's branch architecture
  std::optional<int> branch_width;
  std::size_t chunk = 128;
  bool input_scaling = false;  ///< map network inputs from the domain onto [-1, 1]
  int workers = 1;
  std::filesystem::path output_dir;  ///< checkpoints go here; empty = none

  static optim::LbfgsConfig default_stage(std::size_t max_iter) {
    optim::LbfgsConfig c;
    c.max_iter = max_iter;
    return c;
  }
  /// The registry entry with any branch overrides applied.
  physics::CaseDefinition case_definition() const;
  /// Collocation count 40000 and 50000-iteration stage budgets.
  void make_full_scale();
  void validate() const;
};

struct StageResult {
  loss::Method objective = loss::Method::Pinn;
  optim::OptimResult optim;
  double seconds = 0.0;
  std::vector<loss::LossReport> history;  ///< one per iteration, starting at 0
  loss::LossReport final_loss;
};

struct RunResult {
  RunConfig config;
  std::vector<StageResult> stages;
  Model model;
  loss::LossReport final_loss;
  metrics::MetricBundle metrics;
  std::vector<std::filesystem::path> checkpoints;
  std::optional<std::string> failure;  ///< set when a stage ended in line-search failure

  double seconds() const;
};

/// Called after each accepted iteration with the stage index (0-based).
using IterationHook = std::function<void(std::size_t stage, std::size_t iteration, const loss::LossReport&)>;

sampling::Dataset make_dataset(const RunConfig& config);

/// Minimizes `objective` from `model`, which is updated in place.
StageResult run_stage(const loss::Objective& objective, Model& model, const optim::LbfgsConfig& lbfgs,
                      std::size_t stage_index = 0, const IterationHook& hook = {});

RunResult run(const RunConfig& config, const IterationHook& hook = {});

/// Second stage of TL-gPINN on top of a finished PINN run: checkpoint,
/// reload, minimize the gPINN objective.  `config` must describe the same
/// case and data as the PINN run.
RunResult transfer(const RunConfig& config, const RunResult& pinn, const IterationHook& hook = {});

}  // namespace tlgpinn::pipeline
