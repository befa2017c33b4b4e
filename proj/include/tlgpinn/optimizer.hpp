#pragma once

// Limited-memory BFGS with a strong-Wolfe line search (bracketing followed by
// cubic-interpolation zoom).

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlgpinn::optim {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LbfgsConfig {
  std::size_t memory = 50;
  std::size_t max_iter = 5000;
  double grad_tol = 1e-9;  ///< on the gradient's infinity norm
  double ftol = 1e-12;     ///< relative decrease between iterations
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  std::size_t max_linesearch = 40;

  void validate() const;
};

enum class StopReason { GradTol, FTol, MaxIter, LineSearchFail };

std::string to_string(StopReason r);

struct HistoryEntry {
  std::size_t iteration = 0;
  double f = 0.0;
  double grad_norm = 0.0;  ///< infinity norm
};

/// Reported after every accepted step and once for the starting point
/// (iteration 0, step 0).  dg0 and dg1 are the directional derivatives along
/// the search direction before and after the step.
struct IterationInfo {
  std::size_t iteration = 0;
  double f = 0.0;
  double grad_inf_norm = 0.0;
  double f_prev = 0.0;
  double step = 0.0;
  double dg0 = 0.0;
  double dg1 = 0.0;
  std::size_t evaluations = 0;
};

struct OptimResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  StopReason reason = StopReason::MaxIter;
  std::vector<HistoryEntry> history;
};

/// Returns f(x) and writes the gradient into `grad` (already sized).
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;
using ProgressFn = std::function<void(const IterationInfo&)>;

OptimResult minimize(const ObjectiveFn& objective, std::vector<double> x0, const LbfgsConfig& config,
                     const ProgressFn& progress = {});

}  // namespace tlgpinn::optim
