#pragma once

// Reverse-mode automatic differentiation on an explicit Wengert list.
//
// Every operation involving at least one recorded variable appends a node
// holding its value and the local partials with respect to (at most two)
// parents.  Parents always precede children, so a single reverse sweep over
// the node list accumulates exact adjoints.  Parameters are registered leaves;
// backward() returns the adjoint of each parameter in registration order.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace tlgpinn::ad {

class Tape;

class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A scalar that is either a plain constant or a node on a tape.
class Var {
 public:
  Var() = default;
  Var(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  double value() const { return value_; }
  bool is_constant() const { return tape_ == nullptr; }
  Tape* tape() const { return tape_; }
  std::int64_t node() const { return node_; }

 private:
  friend class Tape;
  Var(Tape* tape, std::int64_t node, double value) : tape_(tape), node_(node), value_(value) {}

  Tape* tape_ = nullptr;
  std::int64_t node_ = -1;
  double value_ = 0.0;
};

class Tape {
 public:
  struct Node {
    std::int64_t parent[2] = {-1, -1};
    double partial[2] = {0.0, 0.0};
    double value = 0.0;
  };

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Register a differentiable parameter leaf.  Gradients are reported in
  /// registration order.
  Var parameter(double value);

  /// A recorded leaf that is not a parameter (its adjoint is discarded).
  Var leaf(double value);

  Var unary(const Var& a, double value, double da);
  Var binary(const Var& a, const Var& b, double value, double da, double db);

  /// d(root)/d(parameter_k) for every registered parameter.
  std::vector<double> backward(const Var& root) const;

  /// Adjoints of every node for the given root (diagnostics and tests).
  std::vector<double> adjoints(const Var& root) const;

  std::size_t size() const { return nodes_.size(); }
  std::size_t parameter_count() const { return params_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }

  void clear() {
    nodes_.clear();
    params_.clear();
  }
  void reserve(std::size_t n) { nodes_.reserve(n); }

 private:
  std::int64_t push(Node n);

  std::vector<Node> nodes_;
  std::vector<std::int64_t> params_;
};

inline double plain_value(const Var& v) { return v.value(); }

Var operator+(const Var& a, const Var& b);
Var operator-(const Var& a, const Var& b);
Var operator*(const Var& a, const Var& b);
Var operator/(const Var& a, const Var& b);
Var operator-(const Var& a);

inline Var& operator+=(Var& a, const Var& b) { return a = a + b; }
inline Var& operator-=(Var& a, const Var& b) { return a = a - b; }
inline Var& operator*=(Var& a, const Var& b) { return a = a * b; }
inline Var& operator/=(Var& a, const Var& b) { return a = a / b; }

Var tanh(const Var& a);
Var exp(const Var& a);
Var sin(const Var& a);
Var cos(const Var& a);
Var log(const Var& a);
Var sqrt(const Var& a);
Var atan(const Var& a);

}  // namespace tlgpinn::ad
