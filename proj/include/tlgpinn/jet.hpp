#pragma once

// Bivariate truncated Taylor polynomials in (x, t).
//
// A Jet3<T> holds the Taylor coefficients c_ij of a function around a point
// for every multi-index with i + j <= 3.  Arithmetic is truncated polynomial
// arithmetic, so after composing a computation on seeded jets the partial
// derivative d^{i+j}/dx^i dt^j is recovered as i! * j! * c_ij.
//
// The scalar type is generic: Jet3<double> gives input-derivatives, and
// Jet3<ad::Var> additionally records every coefficient on a tape so that the
// input-derivatives can themselves be differentiated with respect to network
// parameters in one reverse sweep.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tlgpinn::ad {

struct MultiIndex {
  int dx = 0;
  int dt = 0;
  constexpr int order() const { return dx + dt; }
  constexpr bool operator==(const MultiIndex&) const = default;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidOrder : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline constexpr std::size_t kJetSize = 10;

inline constexpr std::array<MultiIndex, kJetSize> kJetIndices{{
    {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}, {1, 2}, {0, 3},
}};

/// Position of (dx, dt) in the coefficient array, or -1 when outside the
/// truncation.
constexpr int jet_slot(int dx, int dt) {
  for (std::size_t k = 0; k < kJetSize; ++k) {
    if (kJetIndices[k].dx == dx && kJetIndices[k].dt == dt) return static_cast<int>(k);
  }
  return -1;
}

struct ProductTerm {
  unsigned char lhs;
  unsigned char rhs;
  unsigned char out;
};

namespace detail {

constexpr std::size_t count_product_terms() {
  std::size_t n = 0;
  for (auto a : kJetIndices)
    for (auto b : kJetIndices)
      if (a.order() + b.order() <= 3) ++n;
  return n;
}

inline constexpr std::size_t kProductTerms = count_product_terms();

constexpr std::array<ProductTerm, kProductTerms> make_product_table() {
  std::array<ProductTerm, kProductTerms> table{};
  std::size_t n = 0;
  // Grouped by output slot so each coefficient accumulates in a fixed order.
  for (std::size_t k = 0; k < kJetSize; ++k)
    for (std::size_t i = 0; i < kJetSize; ++i)
      for (std::size_t j = 0; j < kJetSize; ++j) {
        const auto a = kJetIndices[i];
        const auto b = kJetIndices[j];
        if (a.dx + b.dx == kJetIndices[k].dx && a.dt + b.dt == kJetIndices[k].dt) {
          table[n++] = {static_cast<unsigned char>(i), static_cast<unsigned char>(j),
                        static_cast<unsigned char>(k)};
        }
      }
  return table;
}

}  // namespace detail

inline constexpr auto kJetProductTable = detail::make_product_table();

constexpr double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

template <typename T>
class Jet3 {
 public:
  using value_type = T;

  Jet3() { coeffs_.fill(T(0.0)); }
  Jet3(T value) {  // NOLINT(google-explicit-constructor): constants lift implicitly
    coeffs_.fill(T(0.0));
    coeffs_[0] = value;
  }

  static Jet3 constant(T value) { return Jet3(value); }

  static Jet3 seed_x(T x) {
    Jet3 j(x);
    j.coeffs_[1] = T(1.0);
    return j;
  }

  static Jet3 seed_t(T t) {
    Jet3 j(t);
    j.coeffs_[2] = T(1.0);
    return j;
  }

  T& operator[](std::size_t k) { return coeffs_[k]; }
  const T& operator[](std::size_t k) const { return coeffs_[k]; }

  const T& value() const { return coeffs_[0]; }
  const std::array<T, kJetSize>& coeffs() const { return coeffs_; }

  /// Taylor coefficient c_ij.
  const T& coeff(int dx, int dt) const {
    const int s = jet_slot(dx, dt);
    if (s < 0) throw InvalidOrder("jet coefficient order exceeds 3");
    return coeffs_[static_cast<std::size_t>(s)];
  }

  /// The partial derivative d^{dx+dt} / dx^dx dt^dt.
  T extract(int dx, int dt) const {
    if (dx < 0 || dt < 0 || dx + dt > 3) throw InvalidOrder("jet derivative order exceeds 3");
    return coeff(dx, dt) * T(factorial(dx) * factorial(dt));
  }

  Jet3& operator+=(const Jet3& o) {
    for (std::size_t k = 0; k < kJetSize; ++k) coeffs_[k] = coeffs_[k] + o.coeffs_[k];
    return *this;
  }
  Jet3& operator-=(const Jet3& o) {
    for (std::size_t k = 0; k < kJetSize; ++k) coeffs_[k] = coeffs_[k] - o.coeffs_[k];
    return *this;
  }
  Jet3& operator*=(const Jet3& o) { return *this = *this * o; }
  Jet3& operator/=(const Jet3& o) { return *this = *this / o; }

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }

  friend Jet3 operator-(const Jet3& a) {
    Jet3 r;
    for (std::size_t k = 0; k < kJetSize; ++k) r.coeffs_[k] = -a.coeffs_[k];
    return r;
  }

  friend Jet3 operator*(const Jet3& a, const Jet3& b) {
    std::array<T, kJetSize> c;
    c.fill(T(0.0));
    for (const auto& term : kJetProductTable) {
      c[term.out] = c[term.out] + a.coeffs_[term.lhs] * b.coeffs_[term.rhs];
    }
    Jet3 r;
    r.coeffs_ = c;
    return r;
  }

  friend Jet3 operator*(const Jet3& a, const T& s) {
    Jet3 r;
    for (std::size_t k = 0; k < kJetSize; ++k) r.coeffs_[k] = a.coeffs_[k] * s;
    return r;
  }
  friend Jet3 operator*(const T& s, const Jet3& a) { return a * s; }

 private:
  std::array<T, kJetSize> coeffs_;
};

template <typename T>
T plain_value(const T& v) {
  return v;
}

/// Value of the constant term as a double, through any nesting.
template <typename T>
double plain_value(const Jet3<T>& j) {
  return plain_value(j.value());
}

/// Derivatives f(a), f'(a), f''(a), f'''(a) of a univariate function.
template <typename T>
using Derivs3 = std::array<T, 4>;

/// Compose a univariate function with a jet given its first three derivatives
/// at the constant term:
///   f(a0 + h) = f + f' h + f''/2 h^2 + f'''/6 h^3   (h nilpotent past degree 3)
template <typename T>
Jet3<T> compose(const Jet3<T>& a, const Derivs3<T>& d) {
  Jet3<T> h = a;
  h[0] = T(0.0);
  const Jet3<T> h2 = h * h;
  const Jet3<T> h3 = h2 * h;
  Jet3<T> r;
  r[0] = d[0];
  const T c2 = d[2] * T(0.5);
  const T c3 = d[3] * T(1.0 / 6.0);
  for (std::size_t k = 1; k < kJetSize; ++k) {
    r[k] = d[1] * h[k] + c2 * h2[k] + c3 * h3[k];
  }
  return r;
}

namespace fn {

// Each returns {f, f', f'', f'''} at x using only arithmetic on T and the
// scalar functions below, so it works for double and for tape variables.

template <typename T>
Derivs3<T> tanh3(const T& x) {
  using std::tanh;
  const T y = tanh(x);
  const T d1 = T(1.0) - y * y;
  const T d2 = T(-2.0) * y * d1;
  const T d3 = T(-2.0) * (d1 * d1 + y * d2);
  return {y, d1, d2, d3};
}

template <typename T>
Derivs3<T> exp3(const T& x) {
  using std::exp;
  const T e = exp(x);
  return {e, e, e, e};
}

template <typename T>
Derivs3<T> sin3(const T& x) {
  using std::cos;
  using std::sin;
  const T s = sin(x);
  const T c = cos(x);
  return {s, c, -s, -c};
}

template <typename T>
Derivs3<T> cos3(const T& x) {
  using std::cos;
  using std::sin;
  const T s = sin(x);
  const T c = cos(x);
  return {c, -s, -c, s};
}

template <typename T>
Derivs3<T> log3(const T& x) {
  using std::log;
  if (!(plain_value(x) > 0.0)) throw DomainError("ln of a non-positive jet");
  const T inv = T(1.0) / x;
  const T inv2 = inv * inv;
  return {log(x), inv, -inv2, T(2.0) * inv2 * inv};
}

template <typename T>
Derivs3<T> sqrt3(const T& x) {
  using std::sqrt;
  if (!(plain_value(x) > 0.0)) throw DomainError("sqrt of a jet with non-positive value");
  const T r = sqrt(x);
  const T inv = T(1.0) / x;
  const T d1 = T(0.5) / r;
  const T d2 = T(-0.5) * d1 * inv;
  const T d3 = T(-1.5) * d2 * inv;
  return {r, d1, d2, d3};
}

template <typename T>
Derivs3<T> atan3(const T& x) {
  using std::atan;
  const T q = T(1.0) / (T(1.0) + x * x);
  const T d2 = T(-2.0) * x * q * q;
  const T d3 = (T(6.0) * x * x - T(2.0)) * q * q * q;
  return {atan(x), q, d2, d3};
}

template <typename T>
Derivs3<T> reciprocal3(const T& x) {
  if (plain_value(x) == 0.0) throw DomainError("division by a jet with zero constant term");
  const T q = T(1.0) / x;
  const T q2 = q * q;
  return {q, -q2, T(2.0) * q2 * q, T(-6.0) * q2 * q2};
}

}  // namespace fn

template <typename T>
Jet3<T> operator/(const Jet3<T>& a, const Jet3<T>& b) {
  return a * compose(b, fn::reciprocal3(b[0]));
}

template <typename T>
Jet3<T> tanh(const Jet3<T>& a) {
  return compose(a, fn::tanh3(a[0]));
}
template <typename T>
Jet3<T> exp(const Jet3<T>& a) {
  return compose(a, fn::exp3(a[0]));
}
template <typename T>
Jet3<T> sin(const Jet3<T>& a) {
  return compose(a, fn::sin3(a[0]));
}
template <typename T>
Jet3<T> cos(const Jet3<T>& a) {
  return compose(a, fn::cos3(a[0]));
}
template <typename T>
Jet3<T> log(const Jet3<T>& a) {
  return compose(a, fn::log3(a[0]));
}
template <typename T>
Jet3<T> sqrt(const Jet3<T>& a) {
  return compose(a, fn::sqrt3(a[0]));
}
template <typename T>
Jet3<T> atan(const Jet3<T>& a) {
  return compose(a, fn::atan3(a[0]));
}

enum class UnaryFn { Tanh, Exp, Sin, Cos, Ln, Sqrt, Atan };

template <typename T>
Jet3<T> apply(UnaryFn f, const Jet3<T>& a) {
  switch (f) {
    case UnaryFn::Tanh: return tanh(a);
    case UnaryFn::Exp: return exp(a);
    case UnaryFn::Sin: return sin(a);
    case UnaryFn::Cos: return cos(a);
    case UnaryFn::Ln: return log(a);
    case UnaryFn::Sqrt: return sqrt(a);
    case UnaryFn::Atan: return atan(a);
  }
  throw std::invalid_argument("unknown unary function");
}

/// Seed jets for the inputs (x, t).
template <typename T = double>
std::pair<Jet3<T>, Jet3<T>> lift_inputs(T x, T t) {
  return {Jet3<T>::seed_x(x), Jet3<T>::seed_t(t)};
}

}  // namespace tlgpinn::ad
