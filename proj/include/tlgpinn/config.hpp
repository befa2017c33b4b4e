#pragma once

// Flat key = value run configuration.  Keys before any section header set run
// options; [stage1] and [stage2] set the optimizer of each stage.  '#' starts
// a comment.
//
//   case = 3.1.4
//   method = tl-gpinn
//   seed = 7
//   nf = 10000
//
//   [stage1]
//   max_iter = 5000

#include <filesystem>
#include <istream>
#include <string>

#include "tlgpinn/pipeline.hpp"

namespace tlgpinn::config {

/// Applies the settings in `in` on top of `base`.  Throws
/// pipeline::ConfigError naming the offending line.
pipeline::RunConfig parse(std::istream& in, pipeline::RunConfig base = {});
pipeline::RunConfig load(const std::filesystem::path& path, pipeline::RunConfig base = {});

/// The inverse of parse for every key it understands.
std::string render(const pipeline::RunConfig& c);

}  // namespace tlgpinn::config
