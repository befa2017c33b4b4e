#include "tlgpinn/tape.hpp"

#include <cmath>

#include "tlgpinn/jet.hpp"

namespace tlgpinn::ad {

std::int64_t Tape::push(Node n) {
  nodes_.push_back(n);
  return static_cast<std::int64_t>(nodes_.size()) - 1;
}

Var Tape::parameter(double value) {
  Node n;
  n.value = value;
  const auto id = push(n);
  params_.push_back(id);
  return Var(this, id, value);
}

Var Tape::leaf(double value) {
  Node n;
  n.value = value;
  return Var(this, push(n), value);
}

Var Tape::unary(const Var& a, double value, double da) {
  if (a.is_constant()) return Var(value);
  Node n;
  n.parent[0] = a.node();
  n.partial[0] = da;
  n.value = value;
  return Var(this, push(n), value);
}

Var Tape::binary(const Var& a, const Var& b, double value, double da, double db) {
  if (a.is_constant() && b.is_constant()) return Var(value);
  Node n;
  int slot = 0;
  if (!a.is_constant()) {
    n.parent[slot] = a.node();
    n.partial[slot] = da;
    ++slot;
  }
  if (!b.is_constant()) {
    n.parent[slot] = b.node();
    n.partial[slot] = db;
  }
  n.value = value;
  return Var(this, push(n), value);
}

std::vector<double> Tape::adjoints(const Var& root) const {
  if (root.tape() != this || root.node() < 0 ||
      root.node() >= static_cast<std::int64_t>(nodes_.size())) {
    throw ContractError("backward: root is not a node of this tape");
  }
  std::vector<double> adj(nodes_.size(), 0.0);
  adj[static_cast<std::size_t>(root.node())] = 1.0;
  for (std::int64_t i = root.node(); i >= 0; --i) {
    const auto& n = nodes_[static_cast<std::size_t>(i)];
    const double a = adj[static_cast<std::size_t>(i)];
    if (a == 0.0) continue;
    for (int p = 0; p < 2; ++p) {
      if (n.parent[p] >= 0) adj[static_cast<std::size_t>(n.parent[p])] += a * n.partial[p];
    }
  }
  return adj;
}

std::vector<double> Tape::backward(const Var& root) const {
  const auto adj = adjoints(root);
  std::vector<double> grad(params_.size(), 0.0);
  for (std::size_t k = 0; k < params_.size(); ++k) grad[k] = adj[static_cast<std::size_t>(params_[k])];
  return grad;
}

namespace {

Tape* pick_tape(const Var& a, const Var& b) {
  if (a.tape() && b.tape() && a.tape() != b.tape()) {
    throw ContractError("operands recorded on different tapes");
  }
  return a.tape() ? a.tape() : b.tape();
}

}  // namespace

Var operator+(const Var& a, const Var& b) {
  Tape* t = pick_tape(a, b);
  const double v = a.value() + b.value();
  return t ? t->binary(a, b, v, 1.0, 1.0) : Var(v);
}

Var operator-(const Var& a, const Var& b) {
  Tape* t = pick_tape(a, b);
  const double v = a.value() - b.value();
  return t ? t->binary(a, b, v, 1.0, -1.0) : Var(v);
}

Var operator*(const Var& a, const Var& b) {
  Tape* t = pick_tape(a, b);
  const double v = a.value() * b.value();
  return t ? t->binary(a, b, v, b.value(), a.value()) : Var(v);
}

Var operator/(const Var& a, const Var& b) {
  Tape* t = pick_tape(a, b);
  if (b.value() == 0.0) throw DomainError("division by zero");
  const double v = a.value() / b.value();
  return t ? t->binary(a, b, v, 1.0 / b.value(), -v / b.value()) : Var(v);
}

Var operator-(const Var& a) {
  return a.tape() ? a.tape()->unary(a, -a.value(), -1.0) : Var(-a.value());
}

Var tanh(const Var& a) {
  const double y = std::tanh(a.value());
  return a.tape() ? a.tape()->unary(a, y, 1.0 - y * y) : Var(y);
}

Var exp(const Var& a) {
  const double y = std::exp(a.value());
  return a.tape() ? a.tape()->unary(a, y, y) : Var(y);
}

Var sin(const Var& a) {
  const double y = std::sin(a.value());
  return a.tape() ? a.tape()->unary(a, y, std::cos(a.value())) : Var(y);
}

Var cos(const Var& a) {
  const double y = std::cos(a.value());
  return a.tape() ? a.tape()->unary(a, y, -std::sin(a.value())) : Var(y);
}

Var log(const Var& a) {
  if (!(a.value() > 0.0)) throw DomainError("ln of a non-positive value");
  const double y = std::log(a.value());
  return a.tape() ? a.tape()->unary(a, y, 1.0 / a.value()) : Var(y);
}

Var sqrt(const Var& a) {
  if (!(a.value() > 0.0)) throw DomainError("sqrt of a non-positive value");
  const double y = std::sqrt(a.value());
  return a.tape() ? a.tape()->unary(a, y, 0.5 / y) : Var(y);
}

Var atan(const Var& a) {
  const double y = std::atan(a.value());
  return a.tape() ? a.tape()->unary(a, y, 1.0 / (1.0 + a.value() * a.value())) : Var(y);
}

}  // namespace tlgpinn::ad
