#include "tlgpinn/network.hpp"

#include <cmath>
#include <random>

namespace tlgpinn::nn {

std::string to_string(Activation a) {
  switch (a) {
    case Activation::Tanh: return "tanh";
    case Activation::Identity: return "identity";
  }
  return "unknown";
}

Activation activation_from_string(const std::string& s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "identity" || s == "linear") return Activation::Identity;
  throw std::invalid_argument("unknown activation '" + s + "'");
}

void NetworkSpec::validate() const {
  if (input_dim < 1 || output_dim < 1) throw ShapeError("network dimensions must be positive");
  if (depth < 2) throw ShapeError("network depth must be at least 2");
  if (width < 1) throw ShapeError("network width must be at least 1");
}

std::vector<int> NetworkSpec::layer_sizes() const {
  std::vector<int> sizes;
  sizes.push_back(input_dim);
  for (int l = 0; l < hidden_layers(); ++l) sizes.push_back(width);
  sizes.push_back(output_dim);
  return sizes;
}

std::size_t NetworkSpec::parameter_count() const {
  const auto sizes = layer_sizes();
  std::size_t n = 0;
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    n += static_cast<std::size_t>(sizes[l]) * static_cast<std::size_t>(sizes[l - 1]) +
         static_cast<std::size_t>(sizes[l]);
  }
  return n;
}

Mlp::Mlp(NetworkSpec spec) : spec_(spec) {
  spec_.validate();
  const auto sizes = spec_.layer_sizes();
  for (std::size_t l = 1; l < sizes.size(); ++l) {
    layers_.push_back({Eigen::MatrixXd::Zero(sizes[l], sizes[l - 1]), Eigen::VectorXd::Zero(sizes[l])});
  }
}

Mlp Mlp::xavier(const NetworkSpec& spec, std::uint64_t seed) {
  Mlp net(spec);
  std::mt19937_64 rng(seed);
  for (auto& layer : net.layers_) {
    const double fan_in = static_cast<double>(layer.weight.cols());
    const double fan_out = static_cast<double>(layer.weight.rows());
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    // Row-major draw order so the stream matches the flat layout.
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = dist(rng);
  }
  return net;
}

Mlp Mlp::unflatten(const NetworkSpec& spec, std::span<const double> flat) {
  Mlp net(spec);
  net.assign(flat);
  return net;
}

std::vector<double> Mlp::flatten() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  for (const auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) flat.push_back(layer.weight(r, c));
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) flat.push_back(layer.bias(r));
  }
  return flat;
}

void Mlp::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) {
    throw ShapeError("parameter vector has length " + std::to_string(flat.size()) + ", expected " +
                     std::to_string(parameter_count()));
  }
  std::size_t k = 0;
  for (auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = flat[k++];
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = flat[k++];
  }
}

InputMap InputMap::to_unit(std::span<const std::array<double, 2>> ranges) {
  if (ranges.size() > 2) throw ShapeError("input map: at most two inputs");
  InputMap m;
  for (std::size_t k = 0; k < ranges.size(); ++k) {
    const auto [lo, hi] = ranges[k];
    if (!(hi > lo)) throw ShapeError("input map: empty range");
    m.scale[k] = 2.0 / (hi - lo);
    m.shift[k] = -(hi + lo) / (hi - lo);
  }
  return m;
}

bool InputMap::is_identity() const { return *this == InputMap{}; }

Eigen::VectorXd Mlp::forward(const Eigen::VectorXd& input) const {
  if (input.size() != spec_.input_dim) throw ShapeError("forward: input dimension mismatch");
  Eigen::VectorXd a = input;
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = map_input(a(k), static_cast<int>(k));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::VectorXd z = layers_[l].weight * a + layers_[l].bias;
    if (l + 1 < layers_.size() && spec_.hidden_activation == Activation::Tanh) z = z.array().tanh().matrix();
    a = std::move(z);
  }
  return a;
}

}  // namespace tlgpinn::nn
