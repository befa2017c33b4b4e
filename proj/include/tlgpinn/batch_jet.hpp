#pragma once

// Batched forward and reverse passes of an Mlp carrying a fixed set of input
// derivatives through every layer.  Each derivative component is a
// (width x batch) matrix, so the linear layers become one matrix product per
// component and the activation applies the chain rule column-wise.
//
// Only the components the loss needs are propagated: the value alone for data
// terms, {value, x, t, xx} for the residual, and additionally {xt, tt, xxt}
// for its time derivative.  A component is computed by the same expression
// whichever larger set it belongs to, so shared components agree bit for bit.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tlgpinn/network.hpp"

namespace tlgpinn::nn {

enum Component : int { kValue = 0, kDx = 1, kDt = 2, kDxx = 3, kDxt = 4, kDtt = 5, kDxxt = 6 };
inline constexpr int kComponents = 7;

using ComponentMask = std::uint32_t;
constexpr ComponentMask bit(Component c) { return ComponentMask{1} << c; }
inline constexpr ComponentMask kValueOnly = bit(kValue);
inline constexpr ComponentMask kValueAndDt = bit(kValue) | bit(kDt);
inline constexpr ComponentMask kResidualSet = bit(kValue) | bit(kDx) | bit(kDt) | bit(kDxx);
inline constexpr ComponentMask kResidualTimeSet = (ComponentMask{1} << kComponents) - 1;

constexpr bool has(ComponentMask m, int c) { return (m >> c) & 1U; }

/// Throws ShapeError unless every lower-order derivative a component needs
/// is also present.
void validate_mask(ComponentMask m);

using ComponentStack = std::array<Eigen::MatrixXd, kComponents>;

/// Per-layer intermediates of one batched forward pass, reused across calls.
struct BatchTrace {
  ComponentMask mask = kValueOnly;
  std::vector<ComponentStack> pre;   ///< pre-activation of each weighted layer
  std::vector<ComponentStack> post;  ///< post[0] = inputs, post[l+1] = activation of pre[l]

  /// Network outputs (pre-activation of the last layer).
  const ComponentStack& output() const { return pre.back(); }
};

/// `inputs` is input_dim x batch.  For a two-input network row 0 is x and row
/// 1 is t; a one-input network reads t.
void batch_forward(const Mlp& net, ComponentMask mask, const Eigen::MatrixXd& inputs, BatchTrace& trace);

/// Accumulates into `grad` (the network's flat layout) the gradient of
/// sum_c <output_adjoint[c], output[c]>.  `output_adjoint` is consumed.
void batch_backward(const Mlp& net, BatchTrace& trace, ComponentStack& output_adjoint, std::span<double> grad);

}  // namespace tlgpinn::nn
