#pragma once

// Dense feed-forward networks: tanh (or identity) hidden layers and an affine
// output layer.  Parameters flatten layer by layer as the row-major weight
// matrix followed by the bias vector.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlgpinn/jet.hpp"

namespace tlgpinn::nn {

enum class Activation : std::uint32_t { Tanh = 0, Identity = 1 };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NetworkSpec {
  int input_dim = 2;
  int output_dim = 2;
  int depth = 8;  ///< weighted layers, i.e. hidden layers + output layer
  int width = 40;
  Activation hidden_activation = Activation::Tanh;

  void validate() const;
  int hidden_layers() const { return depth - 1; }
  /// Neurons per layer including the input layer: [in, w, ..., w, out].
  std::vector<int> layer_sizes() const;
  std::size_t parameter_count() const;

  bool operator==(const NetworkSpec&) const = default;
};

struct Layer {
  Eigen::MatrixXd weight;  ///< fan_out x fan_in
  Eigen::VectorXd bias;
};

/// Affine map scale * input + shift applied before the first layer.  Runtime
/// state only: checkpoints do not store it.
struct InputMap {
  std::array<double, 2> scale{1.0, 1.0};
  std::array<double, 2> shift{0.0, 0.0};

  /// Maps [lo_k, hi_k] onto [-1, 1] for each of the first ranges.size() inputs.
  static InputMap to_unit(std::span<const std::array<double, 2>> ranges);
  bool is_identity() const;
  bool operator==(const InputMap&) const = default;
};

class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(NetworkSpec spec);  ///< all-zero parameters

  static Mlp xavier(const NetworkSpec& spec, std::uint64_t seed);
  static Mlp unflatten(const NetworkSpec& spec, std::span<const double> flat);

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& layers() { return layers_; }
  std::size_t parameter_count() const { return spec_.parameter_count(); }

  const InputMap& input_map() const { return input_map_; }
  void set_input_map(const InputMap& m) { input_map_ = m; }
  /// Applies the input map to input k of a jet.
  template <typename J>
  J map_input(const J& in, int k) const {
    if (input_map_.is_identity()) return in;
    const auto i = static_cast<std::size_t>(k);
    return in * input_map_.scale[i] + J(input_map_.shift[i]);
  }

  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  /// Plain scalar forward pass.
  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;

  /// Forward pass on jets.  A branch network (input_dim 1) consumes only the
  /// t-jet; a trunk network consumes (x, t).
  template <typename T>
  std::vector<ad::Jet3<T>> forward_jet(const ad::Jet3<T>& x, const ad::Jet3<T>& t) const;

 private:
  NetworkSpec spec_;
  std::vector<Layer> layers_;
  InputMap input_map_;
};

/// Forward pass where the parameters are supplied as a flat array of any
/// scalar type (e.g. tape variables) and the activations are of type J.
template <typename S, typename J>
std::vector<J> forward_flat(const NetworkSpec& spec, std::span<const S> params,
                            std::vector<J> activations) {
  using std::tanh;
  spec.validate();
  if (params.size() != spec.parameter_count()) throw ShapeError("forward_flat: parameter length mismatch");
  if (activations.size() != static_cast<std::size_t>(spec.input_dim)) {
    throw ShapeError("forward_flat: input dimension mismatch");
  }
  const auto sizes = spec.layer_sizes();
  std::size_t offset = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    const auto fan_in = static_cast<std::size_t>(sizes[l - 1]);
    const auto fan_out = static_cast<std::size_t>(sizes[l]);
    const std::size_t bias_offset = offset + fan_in * fan_out;
    std::vector<J> next;
    next.reserve(fan_out);
    const bool is_output = l + 1 == sizes.size();
    for (std::size_t r = 0; r < fan_out; ++r) {
      J z = J(params[bias_offset + r]);
      for (std::size_t c = 0; c < fan_in; ++c) z = z + activations[c] * params[offset + r * fan_in + c];
      if (!is_output && spec.hidden_activation == Activation::Tanh) z = tanh(z);
      next.push_back(z);
    }
    activations = std::move(next);
    offset = bias_offset + fan_out;
  }
  return activations;
}

template <typename T>
std::vector<ad::Jet3<T>> Mlp::forward_jet(const ad::Jet3<T>& x, const ad::Jet3<T>& t) const {
  std::vector<ad::Jet3<T>> in;
  if (spec_.input_dim == 2) {
    in = {map_input(x, 0), map_input(t, 1)};
  } else if (spec_.input_dim == 1) {
    in = {map_input(t, 0)};
  } else {
    throw ShapeError("forward_jet: networks take (x, t) or t only");
  }
  const auto flat = flatten();
  std::vector<T> params(flat.begin(), flat.end());
  return forward_flat<T, ad::Jet3<T>>(spec_, std::span<const T>(params), std::move(in));
}

}  // namespace tlgpinn::nn
