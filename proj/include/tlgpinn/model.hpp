#pragma once

// A trunk network (x, t) -> (u, v) plus one branch network t -> coefficient per
// learned coefficient.  The flat parameter vector is the trunk's followed by
// each branch's in registry order.

#include <cstdint>
#include <span>
#include <vector>

#include "tlgpinn/network.hpp"
#include "tlgpinn/physics.hpp"

namespace tlgpinn {

struct Model {
  nn::Mlp trunk;
  std::vector<nn::Mlp> branches;

  /// Xavier-initialized trunk and branches for a case.  The trunk draws from
  /// `seed`, branch k from `seed + k + 1`.
  static Model xavier(const physics::CaseDefinition& c, std::uint64_t seed);

  /// Maps every network's inputs from the case domain onto [-1, 1].
  void scale_inputs(const physics::CaseDefinition& c);

  std::size_t parameter_count() const;
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  std::array<physics::CoefficientModel, 3> coefficients(const physics::CaseDefinition& c) const {
    return physics::coefficient_models(c, branches);
  }
};

}  // namespace tlgpinn
