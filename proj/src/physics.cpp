#include "tlgpinn/physics.hpp"

#include <algorithm>

namespace tlgpinn::physics {

std::string_view name(ClosedForm f) {
  switch (f) {
    case ClosedForm::HalfT: return "half_t";
    case ClosedForm::FifthT: return "fifth_t";
    case ClosedForm::T: return "t";
    case ClosedForm::TSquared: return "t_squared";
    case ClosedForm::HalfTSquared: return "half_t_squared";
    case ClosedForm::SinT: return "sin_t";
    case ClosedForm::TanhT: return "tanh_t";
    case ClosedForm::Inv1pT2: return "inv_1pt2";
    case ClosedForm::HalfInv1pT2: return "half_inv_1pt2";
    case ClosedForm::Zero: return "zero";
  }
  return "unknown";
}

bool is_linear(ClosedForm f) {
  return f == ClosedForm::HalfT || f == ClosedForm::FifthT || f == ClosedForm::T || f == ClosedForm::Zero;
}

double closed_derivative(ClosedForm f, double t) {
  switch (f) {
    case ClosedForm::HalfT: return 0.5;
    case ClosedForm::FifthT: return 0.2;
    case ClosedForm::T: return 1.0;
    case ClosedForm::TSquared: return 2.0 * t;
    case ClosedForm::HalfTSquared: return t;
    case ClosedForm::SinT: return std::cos(t);
    case ClosedForm::TanhT: {
      const double y = std::tanh(t);
      return 1.0 - y * y;
    }
    case ClosedForm::Inv1pT2: {
      const double d = 1.0 + t * t;
      return -2.0 * t / (d * d);
    }
    case ClosedForm::HalfInv1pT2: {
      const double d = 1.0 + t * t;
      return -t / (d * d);
    }
    case ClosedForm::Zero: return 0.0;
  }
  throw std::invalid_argument("unknown closed form");
}

std::string_view name(Coefficient c) {
  switch (c) {
    case Coefficient::Alpha: return "alpha";
    case Coefficient::Beta: return "beta";
    case Coefficient::Gamma: return "gamma";
  }
  return "unknown";
}

std::vector<Coefficient> CaseDefinition::learned_coefficients() const {
  std::vector<Coefficient> out;
  for (auto c : kCoefficients)
    if (is_learned(c)) out.push_back(c);
  return out;
}

nn::Activation CaseDefinition::branch_activation(Coefficient c) const {
  return is_linear(exact(c)) ? nn::Activation::Identity : nn::Activation::Tanh;
}

nn::NetworkSpec CaseDefinition::trunk_spec() const {
  return {2, 2, trunk_depth, trunk_width, nn::Activation::Tanh};
}

nn::NetworkSpec CaseDefinition::branch_spec(Coefficient c) const {
  return {1, 1, branch_depth, branch_width, branch_activation(c)};
}

namespace {

CaseDefinition make_case(std::string id, std::string title, ClosedForm a, ClosedForm b, ClosedForm g,
                         std::array<bool, 3> learned, Domain d, double ratio) {
  CaseDefinition c;
  c.id = std::move(id);
  c.title = std::move(title);
  c.form = {a, b, g};
  c.learned = learned;
  c.domain = d;
  c.ratio = ratio;
  return c;
}

std::vector<CaseDefinition> build_registry() {
  using F = ClosedForm;
  constexpr std::array<bool, 3> gamma_only{false, false, true};
  std::vector<CaseDefinition> r;
  r.push_back(make_case("3.1.1", "linear gamma", F::HalfT, F::FifthT, F::T, gamma_only, {-4, 4, -4, 4}, 0.25));
  r.push_back(make_case("3.1.2", "quadratic gamma", F::HalfTSquared, F::FifthT, F::TSquared, gamma_only,
                        {-4, 4, -2, 2}, 0.25));
  r.push_back(make_case("3.1.3", "sine gamma", F::SinT, F::FifthT, F::SinT, gamma_only, {-4, 4, -5, 5}, 0.125));
  r.push_back(
      make_case("3.1.4", "tanh gamma", F::TanhT, F::FifthT, F::TanhT, gamma_only, {-2, 4, -5, 5}, 0.125));
  r.push_back(make_case("3.1.5", "fractional gamma", F::HalfInv1pT2, F::FifthT, F::Inv1pT2, gamma_only,
                        {-4, 5, -5, 5}, 0.25));
  r.push_back(make_case("3.2.1", "beta and gamma", F::SinT, F::FifthT, F::SinT, {false, true, true},
                        {-4, 4, -5, 5}, 0.125));
  auto all_linear = make_case("3.2.2a", "all three, linear", F::HalfT, F::FifthT, F::T, {true, true, true},
                              {-4, 4, -4, 4}, 0.25);
  all_linear.branch_depth = 2;
  all_linear.branch_width = 10;
  r.push_back(all_linear);
  auto all_frac = make_case("3.2.2b", "all three, fractional", F::HalfInv1pT2, F::FifthT, F::Inv1pT2,
                            {true, true, true}, {-4, 5, -5, 5}, 0.25);
  all_frac.branch_depth = 4;
  all_frac.branch_width = 10;
  r.push_back(all_frac);
  return r;
}

}  // namespace

const std::vector<CaseDefinition>& case_registry() {
  static const std::vector<CaseDefinition> registry = build_registry();
  return registry;
}

const CaseDefinition& find_case(std::string_view id) {
  for (const auto& c : case_registry())
    if (c.id == id) return c;
  throw UnknownCase("unknown case '" + std::string(id) + "'");
}

std::vector<std::string> case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : case_registry()) ids.push_back(c.id);
  return ids;
}

double exact_modulus(const CaseDefinition& c, double x, double t) {
  const auto [u, v] = exact_solution(c, x, t);
  return std::hypot(u, v);
}

CoefficientSample<double> coefficient_eval(const CoefficientModel& model, double t) {
  if (const auto* f = std::get_if<ClosedForm>(&model.source)) {
    return {closed_value(*f, t), closed_derivative(*f, t)};
  }
  const auto& net = std::get<nn::Mlp>(model.source);
  const auto out = net.forward_jet(ad::Jet3<double>(0.0), ad::Jet3<double>::seed_t(t));
  return {out[0].extract(0, 0), out[0].extract(0, 1)};
}

std::array<CoefficientModel, 3> coefficient_models(const CaseDefinition& c, std::span<const nn::Mlp> branches) {
  const auto learned = c.learned_coefficients();
  if (branches.size() != learned.size()) {
    throw nn::ShapeError("expected " + std::to_string(learned.size()) + " branch networks for case " + c.id);
  }
  std::array<CoefficientModel, 3> models{CoefficientModel::fixed(c.form[0]), CoefficientModel::fixed(c.form[1]),
                                         CoefficientModel::fixed(c.form[2])};
  for (std::size_t k = 0; k < learned.size(); ++k) {
    models[static_cast<std::size_t>(learned[k])] = CoefficientModel::learned(branches[k]);
  }
  return models;
}

std::array<CoefficientModel, 3> exact_coefficient_models(const CaseDefinition& c) {
  return {CoefficientModel::fixed(c.form[0]), CoefficientModel::fixed(c.form[1]),
          CoefficientModel::fixed(c.form[2])};
}

ResidualAdjoint residual_adjoint(const FieldDerivatives<double>& u, const FieldDerivatives<double>& v,
                                 const CoefficientTriple<double>& c, double bfu, double bfv, double bgu,
                                 double bgv) {
  const double s = u.value * u.value + v.value * v.value;
  const double p = 2.0 * u.value * u.t + 2.0 * v.value * v.t;
  const double a = c.alpha.value, at = c.alpha.dt;
  const double b = c.beta.value, bt = c.beta.dt;
  const double g = c.gamma.value, gt = c.gamma.dt;
  const double uv = u.value * v.value;

  ResidualAdjoint r;
  // f_u
  r.v.t -= bfu;
  r.coeff.alpha.value += bfu * u.xx;
  r.u.xx += bfu * a;
  r.coeff.beta.value += bfu * u.value;
  r.u.value += bfu * (b + g * (s + 2.0 * u.value * u.value));
  r.v.value += bfu * g * 2.0 * uv;
  r.coeff.gamma.value += bfu * s * u.value;
  // f_v
  r.u.t += bfv;
  r.coeff.alpha.value += bfv * v.xx;
  r.v.xx += bfv * a;
  r.coeff.beta.value += bfv * v.value;
  r.v.value += bfv * (b + g * (s + 2.0 * v.value * v.value));
  r.u.value += bfv * g * 2.0 * uv;
  r.coeff.gamma.value += bfv * s * v.value;

  // g_u = -v_tt + at u_xx + a u_xxt + bt u + b u_t + gt s u + g p u + g s u_t
  r.v.tt -= bgu;
  r.coeff.alpha.dt += bgu * u.xx;
  r.u.xx += bgu * at;
  r.coeff.alpha.value += bgu * u.xxt;
  r.u.xxt += bgu * a;
  r.coeff.beta.dt += bgu * u.value;
  r.coeff.beta.value += bgu * u.t;
  r.coeff.gamma.dt += bgu * s * u.value;
  r.coeff.gamma.value += bgu * (p * u.value + s * u.t);
  r.u.value += bgu * (bt + gt * (s + 2.0 * u.value * u.value) + g * (p + 2.0 * u.t * u.value) +
                      g * 2.0 * u.value * u.t);
  r.v.value += bgu * (gt * 2.0 * uv + g * 2.0 * v.t * u.value + g * 2.0 * v.value * u.t);
  r.u.t += bgu * (b + g * 2.0 * u.value * u.value + g * s);
  r.v.t += bgu * g * 2.0 * uv;

  // g_v = u_tt + at v_xx + a v_xxt + bt v + b v_t + gt s v + g p v + g s v_t
  r.u.tt += bgv;
  r.coeff.alpha.dt += bgv * v.xx;
  r.v.xx += bgv * at;
  r.coeff.alpha.value += bgv * v.xxt;
  r.v.xxt += bgv * a;
  r.coeff.beta.dt += bgv * v.value;
  r.coeff.beta.value += bgv * v.t;
  r.coeff.gamma.dt += bgv * s * v.value;
  r.coeff.gamma.value += bgv * (p * v.value + s * v.t);
  r.v.value += bgv * (bt + gt * (s + 2.0 * v.value * v.value) + g * (p + 2.0 * v.t * v.value) +
                      g * 2.0 * v.value * v.t);
  r.u.value += bgv * (gt * 2.0 * uv + g * 2.0 * u.t * v.value + g * 2.0 * u.value * v.t);
  r.v.t += bgv * (b + g * 2.0 * v.value * v.value + g * s);
  r.u.t += bgv * g * 2.0 * uv;
  return r;
}

std::pair<FieldDerivatives<double>, FieldDerivatives<double>> trunk_derivatives(const nn::Mlp& trunk, double x,
                                                                                 double t) {
  if (trunk.spec().input_dim != 2 || trunk.spec().output_dim != 2) {
    throw nn::ShapeError("trunk network must map (x, t) to (u, v)");
  }
  const auto [jx, jt] = ad::lift_inputs(x, t);
  const auto out = trunk.forward_jet(jx, jt);
  return {field_derivatives(out[0]), field_derivatives(out[1])};
}

std::pair<FieldDerivatives<double>, FieldDerivatives<double>> exact_derivatives(const CaseDefinition& c, double x,
                                                                                 double t) {
  const auto [jx, jt] = ad::lift_inputs(x, t);
  const auto [u, v] = exact_solution(c, jx, jt);
  return {field_derivatives(u), field_derivatives(v)};
}

CoefficientTriple<double> sample_coefficients(const std::array<CoefficientModel, 3>& models, double t) {
  return {coefficient_eval(models[0], t), coefficient_eval(models[1], t), coefficient_eval(models[2], t)};
}

ResidualPoint<double> residual(const nn::Mlp& trunk, const std::array<CoefficientModel, 3>& coeffs, double x,
                               double t) {
  const auto [u, v] = trunk_derivatives(trunk, x, t);
  const auto [fu, fv] = pde_residual(u, v, sample_coefficients(coeffs, t));
  return {fu, fv, 0.0, 0.0};
}

ResidualPoint<double> residual_t(const nn::Mlp& trunk, const std::array<CoefficientModel, 3>& coeffs, double x,
                                 double t) {
  const auto [u, v] = trunk_derivatives(trunk, x, t);
  const auto [gu, gv] = pde_residual_t(u, v, sample_coefficients(coeffs, t));
  return {0.0, 0.0, gu, gv};
}

ResidualPoint<double> exact_residual(const CaseDefinition& c, const std::array<CoefficientModel, 3>& coeffs,
                                     double x, double t) {
  const auto [u, v] = exact_derivatives(c, x, t);
  const auto k = sample_coefficients(coeffs, t);
  const auto [fu, fv] = pde_residual(u, v, k);
  const auto [gu, gv] = pde_residual_t(u, v, k);
  return {fu, fv, gu, gv};
}

}  // namespace tlgpinn::physics
