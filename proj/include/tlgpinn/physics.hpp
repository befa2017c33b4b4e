#pragma once

// The variable-coefficient nonlinear Schroedinger equation
//
//     i A_t + alpha(t) A_xx + beta(t) A + gamma(t) |A|^2 A = 0,  A = u + i v,
//
// its one-soliton family, and the real residual pair (f_u, f_v) together with
// the time derivatives (g_u, g_v) = d/dt (f_u, f_v).

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tlgpinn/jet.hpp"
#include "tlgpinn/network.hpp"

namespace tlgpinn::physics {

enum class ClosedForm {
  HalfT,         // t/2
  FifthT,        // t/5
  T,             // t
  TSquared,      // t^2
  HalfTSquared,  // t^2/2
  SinT,          // sin t
  TanhT,         // tanh t
  Inv1pT2,       // 1/(1+t^2)
  HalfInv1pT2,   // 1/(2(1+t^2))
  Zero,          // 0
};

std::string_view name(ClosedForm f);
bool is_linear(ClosedForm f);

/// Value of the closed form; S is double or a jet.
template <typename S>
S closed_value(ClosedForm f, const S& t) {
  using std::sin;
  using std::tanh;
  switch (f) {
    case ClosedForm::HalfT: return t * 0.5;
    case ClosedForm::FifthT: return t * 0.2;
    case ClosedForm::T: return t;
    case ClosedForm::TSquared: return t * t;
    case ClosedForm::HalfTSquared: return (t * t) * 0.5;
    case ClosedForm::SinT: return sin(t);
    case ClosedForm::TanhT: return tanh(t);
    case ClosedForm::Inv1pT2: return S(1.0) / (S(1.0) + t * t);
    case ClosedForm::HalfInv1pT2: return S(0.5) / (S(1.0) + t * t);
    case ClosedForm::Zero: return t * 0.0;
  }
  throw std::invalid_argument("unknown closed form");
}

double closed_derivative(ClosedForm f, double t);

/// An antiderivative in closed form (integration constant zero).
template <typename S>
S closed_antiderivative(ClosedForm f, const S& t) {
  using std::atan;
  using std::cos;
  using std::exp;
  using std::log;
  switch (f) {
    case ClosedForm::HalfT: return (t * t) * 0.25;
    case ClosedForm::FifthT: return (t * t) * 0.1;
    case ClosedForm::T: return (t * t) * 0.5;
    case ClosedForm::TSquared: return (t * t * t) * (1.0 / 3.0);
    case ClosedForm::HalfTSquared: return (t * t * t) * (1.0 / 6.0);
    case ClosedForm::SinT: return -cos(t);
    case ClosedForm::TanhT: return log((exp(t) + exp(-t)) * 0.5);
    case ClosedForm::Inv1pT2: return atan(t);
    case ClosedForm::HalfInv1pT2: return atan(t) * 0.5;
    case ClosedForm::Zero: return t * 0.0;
  }
  throw std::invalid_argument("unknown closed form");
}

enum class Coefficient { Alpha = 0, Beta = 1, Gamma = 2 };
inline constexpr std::array<Coefficient, 3> kCoefficients{Coefficient::Alpha, Coefficient::Beta,
                                                          Coefficient::Gamma};
std::string_view name(Coefficient c);

struct Domain {
  double x0 = -4.0;
  double x1 = 4.0;
  double t0 = -4.0;
  double t1 = 4.0;
};

class UnknownCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CaseDefinition {
  std::string id;
  std::string title;
  std::array<ClosedForm, 3> form{};    ///< exact alpha, beta, gamma
  std::array<bool, 3> learned{};       ///< which coefficients are inferred
  Domain domain;
  std::complex<double> k{1.0, 1.0};
  double eta = 0.0;
  double ratio = 0.25;  ///< gamma / (2 alpha (k + k*)^2), constant per case
  int grid_nx = 513;
  int grid_nt = 201;
  int trunk_depth = 8;
  int trunk_width = 40;
  int branch_depth = 4;
  int branch_width = 30;

  ClosedForm exact(Coefficient c) const { return form[static_cast<std::size_t>(c)]; }
  bool is_learned(Coefficient c) const { return learned[static_cast<std::size_t>(c)]; }
  /// Learned coefficients in (alpha, beta, gamma) order; this is the branch order.
  std::vector<Coefficient> learned_coefficients() const;
  /// Linear forms use identity branches, the others tanh.
  nn::Activation branch_activation(Coefficient c) const;
  nn::NetworkSpec trunk_spec() const;
  nn::NetworkSpec branch_spec(Coefficient c) const;
};

const std::vector<CaseDefinition>& case_registry();
const CaseDefinition& find_case(std::string_view id);
std::vector<std::string> case_ids();

// ---------------------------------------------------------------------------
// Exact solution

/// (u, v) of the one-soliton solution.  S is double or a jet, so the same code
/// yields exact derivatives of the reference solution.
template <typename S>
std::pair<S, S> exact_solution(const CaseDefinition& c, const S& x, const S& t) {
  using std::cos;
  using std::exp;
  using std::sin;
  const double kr = c.k.real();
  const double ki = c.k.imag();
  const S int_alpha = closed_antiderivative(c.exact(Coefficient::Alpha), t);
  const S int_beta = closed_antiderivative(c.exact(Coefficient::Beta), t);
  // theta = k x + i k^2 \int alpha + eta, split into real and imaginary parts.
  const S theta_re = x * kr + int_alpha * (-2.0 * kr * ki) + S(c.eta);
  const S theta_im = x * ki + int_alpha * (kr * kr - ki * ki);
  const S phase = int_beta + theta_im;
  // |A| = e^s / (1 + r e^{2s}), evaluated so that no exponential overflows.
  S modulus;
  if (ad::plain_value(theta_re) > 0.0) {
    const S e = exp(-theta_re);
    modulus = e / (e * e + S(c.ratio));
  } else {
    const S e = exp(theta_re);
    modulus = e / (S(1.0) + e * e * c.ratio);
  }
  return {modulus * cos(phase), modulus * sin(phase)};
}

/// |A| of the reference solution with the beta phase dropped (diagnostics).
double exact_modulus(const CaseDefinition& c, double x, double t);

// ---------------------------------------------------------------------------
// Coefficient models

template <typename T>
struct CoefficientSample {
  T value{};
  T dt{};
};

struct CoefficientModel {
  std::variant<ClosedForm, nn::Mlp> source;

  static CoefficientModel fixed(ClosedForm f) { return {f}; }
  static CoefficientModel learned(nn::Mlp branch) { return {std::move(branch)}; }
  bool is_learned() const { return std::holds_alternative<nn::Mlp>(source); }
};

/// (value, d/dt) of a coefficient at t.
CoefficientSample<double> coefficient_eval(const CoefficientModel& model, double t);

/// alpha, beta, gamma models for a case: fixed coefficients from the case,
/// learned ones from the given branches (in learned_coefficients() order).
std::array<CoefficientModel, 3> coefficient_models(const CaseDefinition& c,
                                                   std::span<const nn::Mlp> branches);
std::array<CoefficientModel, 3> exact_coefficient_models(const CaseDefinition& c);

// ---------------------------------------------------------------------------
// Residuals

/// Derivatives of one real field component at a point.
template <typename T>
struct FieldDerivatives {
  T value{};
  T t{};
  T xx{};
  T tt{};
  T xxt{};
};

template <typename T>
FieldDerivatives<T> field_derivatives(const ad::Jet3<T>& j) {
  return {j.extract(0, 0), j.extract(0, 1), j.extract(2, 0), j.extract(0, 2), j.extract(2, 1)};
}

template <typename T>
struct CoefficientTriple {
  CoefficientSample<T> alpha;
  CoefficientSample<T> beta;
  CoefficientSample<T> gamma;
};

template <typename T>
struct ResidualPoint {
  T f_u{};
  T f_v{};
  T g_u{};
  T g_v{};
};

/// f_u = -v_t + alpha u_xx + beta u + gamma (u^2+v^2) u
/// f_v =  u_t + alpha v_xx + beta v + gamma (u^2+v^2) v
template <typename T>
std::pair<T, T> pde_residual(const FieldDerivatives<T>& u, const FieldDerivatives<T>& v,
                             const CoefficientTriple<T>& c) {
  const T s = u.value * u.value + v.value * v.value;
  const T f_u = -v.t + c.alpha.value * u.xx + c.beta.value * u.value + c.gamma.value * s * u.value;
  const T f_v = u.t + c.alpha.value * v.xx + c.beta.value * v.value + c.gamma.value * s * v.value;
  return {f_u, f_v};
}

/// d f_u / dt and d f_v / dt expanded term by term.
template <typename T>
std::pair<T, T> pde_residual_t(const FieldDerivatives<T>& u, const FieldDerivatives<T>& v,
                               const CoefficientTriple<T>& c) {
  const T s = u.value * u.value + v.value * v.value;
  const T p = T(2.0) * u.value * u.t + T(2.0) * v.value * v.t;
  const T g_u = -v.tt + c.alpha.dt * u.xx + c.alpha.value * u.xxt + c.beta.dt * u.value +
                c.beta.value * u.t + c.gamma.dt * s * u.value + c.gamma.value * p * u.value +
                c.gamma.value * s * u.t;
  const T g_v = u.tt + c.alpha.dt * v.xx + c.alpha.value * v.xxt + c.beta.dt * v.value +
                c.beta.value * v.t + c.gamma.dt * s * v.value + c.gamma.value * p * v.value +
                c.gamma.value * s * v.t;
  return {g_u, g_v};
}

/// Reverse-mode partials of the residual terms.  Given the adjoints of
/// (f_u, f_v, g_u, g_v), accumulates adjoints of every input.
struct ResidualAdjoint {
  FieldDerivatives<double> u;
  FieldDerivatives<double> v;
  CoefficientTriple<double> coeff;
};

ResidualAdjoint residual_adjoint(const FieldDerivatives<double>& u, const FieldDerivatives<double>& v,
                                 const CoefficientTriple<double>& c, double bar_fu, double bar_fv,
                                 double bar_gu, double bar_gv);

/// Field derivatives from a trunk network at (x, t).
std::pair<FieldDerivatives<double>, FieldDerivatives<double>> trunk_derivatives(const nn::Mlp& trunk,
                                                                                 double x, double t);
/// Field derivatives of the exact solution at (x, t).
std::pair<FieldDerivatives<double>, FieldDerivatives<double>> exact_derivatives(const CaseDefinition& c,
                                                                                 double x, double t);

CoefficientTriple<double> sample_coefficients(const std::array<CoefficientModel, 3>& models, double t);

/// (f_u, f_v) of a trunk network with the given coefficient models.
ResidualPoint<double> residual(const nn::Mlp& trunk, const std::array<CoefficientModel, 3>& coeffs,
                               double x, double t);
/// (g_u, g_v) of a trunk network with the given coefficient models.
ResidualPoint<double> residual_t(const nn::Mlp& trunk, const std::array<CoefficientModel, 3>& coeffs,
                                 double x, double t);

/// All four residual components of the exact solution with the given models.
ResidualPoint<double> exact_residual(const CaseDefinition& c, const std::array<CoefficientModel, 3>& coeffs,
                                     double x, double t);

}  // namespace tlgpinn::physics
