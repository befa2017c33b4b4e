#pragma once

// Text outputs of a run: key = value report blocks, the per-iteration loss
// history, coefficient curves and the predicted field, plus the three-method
// comparison table.

#include <filesystem>
#include <string>

#include "tlgpinn/pipeline.hpp"

namespace tlgpinn::report {

/// Metrics only, so identical configurations give identical bytes.
std::string metrics_text(const pipeline::RunResult& r);

/// Configuration, per-stage optimizer outcome and wall times, final loss
/// terms and metrics.
std::string run_text(const pipeline::RunResult& r);

/// One row per stage iteration: stage, objective, iteration, every loss term
/// and the total.  Gradient-term cells are empty for the PINN objective.
std::string history_csv(const pipeline::RunResult& r);

/// t, predicted, exact, abs_error at the coefficient evaluation points.
std::string curve_csv(const pipeline::RunResult& r, physics::Coefficient k);

/// x, t, predicted and exact u, v, |A| over the reference grid.
std::string field_csv(const pipeline::RunResult& r);

/// Writes report.txt, metrics.txt, history.csv, model.tlgp,
/// curves_<coefficient>.csv and field.csv into `dir`.
void write_run(const std::filesystem::path& dir, const pipeline::RunResult& r);

/// Rows "Elapsed time (s)", MAE, RE, ERR1 and ERR2 per learned coefficient;
/// columns PINN, gPINN, TL-gPINN.  The PINN ERR cells hold "-".
std::string comparison_table(const pipeline::RunResult& pinn, const pipeline::RunResult& gpinn,
                             const pipeline::RunResult& tl, bool with_time = true);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace tlgpinn::report
