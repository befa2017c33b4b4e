#pragma once

// PINN and gPINN objectives.
//
//   PINN:  MSE_u + MSE_v + MSE_fu + MSE_fv + MSE_u_in + MSE_v_in + sum_k MSE_coeff_k
//   gPINN: PINN + MSE_gu + MSE_gv
//
// Data terms cover the boundary and interior observations, residual terms the
// collocation points, and the gradient terms reuse the collocation points.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tlgpinn/batch_jet.hpp"
#include "tlgpinn/model.hpp"
#include "tlgpinn/physics.hpp"
#include "tlgpinn/sampling.hpp"

namespace tlgpinn::loss {

enum class Method { Pinn, Gpinn };

std::string to_string(Method m);

class LossError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-term multipliers.  The objectives in this library are unweighted; the
/// hook exists for experiments.
struct Weights {
  double u = 1.0;
  double v = 1.0;
  double fu = 1.0;
  double fv = 1.0;
  double u_in = 1.0;
  double v_in = 1.0;
  double gu = 1.0;
  double gv = 1.0;
  double coeff = 1.0;
};

struct LossReport {
  Method method = Method::Pinn;
  double mse_u = 0.0;
  double mse_v = 0.0;
  double mse_fu = 0.0;
  double mse_fv = 0.0;
  double mse_u_in = 0.0;
  double mse_v_in = 0.0;
  double mse_gu = 0.0;
  double mse_gv = 0.0;
  std::vector<double> mse_coeff;  ///< one per learned coefficient
  double total = 0.0;
};

double mse(std::span<const double> values);

/// Total in the canonical summation order: PINN terms first, then the
/// gradient terms, so a gPINN total is exactly the PINN total plus them.
double combine(const LossReport& r, const Weights& w);

struct EvalOptions {
  Weights weights;
  std::size_t chunk = 128;  ///< points per batched pass
  int workers = 1;
};

/// Evaluates one objective over a fixed dataset.  Holds scratch buffers, so
/// a single instance must not be used from two threads at once.
class Objective {
 public:
  Objective(const physics::CaseDefinition& c, sampling::Dataset data, Method method, EvalOptions opts = {});

  /// Loss terms and, if `grad` is non-null, the gradient with respect to
  /// model.flatten().
  LossReport evaluate(const Model& model, std::vector<double>* grad) const;

  Method method() const { return method_; }
  const sampling::Dataset& data() const { return data_; }
  const physics::CaseDefinition& case_definition() const { return case_; }
  const EvalOptions& options() const { return opts_; }

 private:
  struct Task;
  struct Scratch;

  physics::CaseDefinition case_;
  sampling::Dataset data_;
  Method method_;
  EvalOptions opts_;
  std::vector<Task> tasks_;
  mutable std::vector<Scratch> scratch_;
  mutable std::vector<std::vector<double>> task_grad_;
  mutable std::vector<double> res_fu_, res_fv_, res_gu_, res_gv_;
  mutable std::vector<double> res_bu_, res_bv_, res_iu_, res_iv_;
  mutable std::vector<std::vector<double>> res_anchor_;

 public:
  ~Objective();
  Objective(Objective&&) noexcept;
  Objective& operator=(Objective&&) noexcept;
};

LossReport assemble(Method method, const Model& model, const sampling::Dataset& data,
                    const physics::CaseDefinition& c);

std::pair<LossReport, std::vector<double>> loss_and_grad(Method method, const Model& model,
                                                         const sampling::Dataset& data,
                                                         const physics::CaseDefinition& c);

/// Point-by-point evaluation with scalar jets recorded on a tape.  Slow; used
/// to cross-check the batched path on small problems.
std::pair<LossReport, std::vector<double>> loss_and_grad_tape(Method method, const Model& model,
                                                              const sampling::Dataset& data,
                                                              const physics::CaseDefinition& c);

}  // namespace tlgpinn::loss
