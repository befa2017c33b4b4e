#include "tlgpinn/loss.hpp"

#include <algorithm>

#include "tlgpinn/parallel.hpp"
#include "tlgpinn/tape.hpp"

namespace tlgpinn::loss {

std::string to_string(Method m) { return m == Method::Pinn ? "pinn" : "gpinn"; }

double mse(std::span<const double> values) {
  if (values.empty()) throw LossError("mse of an empty list");
  double s = 0.0;
  for (double v : values) s += v * v;
  return s / static_cast<double>(values.size());
}

double combine(const LossReport& r, const Weights& w) {
  double total = w.u * r.mse_u;
  total += w.v * r.mse_v;
  total += w.fu * r.mse_fu;
  total += w.fv * r.mse_fv;
  total += w.u_in * r.mse_u_in;
  total += w.v_in * r.mse_v_in;
  for (double c : r.mse_coeff) total += w.coeff * c;
  if (r.method == Method::Gpinn) {
    total += w.gu * r.mse_gu;
    total += w.gv * r.mse_gv;
  }
  return total;
}

namespace {

using nn::ComponentStack;
using physics::CoefficientSample;
using physics::CoefficientTriple;
using physics::FieldDerivatives;

enum class TaskKind { Collocation, Boundary, Interior, Anchor };

double mse_or_zero(const std::vector<double>& v) { return v.empty() ? 0.0 : mse(v); }

void zero_stack(ComponentStack& s, nn::ComponentMask mask, Eigen::Index rows, Eigen::Index cols) {
  for (int c = 0; c < nn::kComponents; ++c)
    if (nn::has(mask, c)) s[c].setZero(rows, cols);
}

}  // namespace

struct Objective::Task {
  TaskKind kind;
  std::size_t begin;
  std::size_t end;
  std::size_t anchor_set = 0;
};

struct Objective::Scratch {
  nn::BatchTrace trunk;
  std::vector<nn::BatchTrace> branch;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd t_inputs;
  ComponentStack trunk_adj;
  std::vector<ComponentStack> branch_adj;
};

Objective::~Objective() = default;
Objective::Objective(Objective&&) noexcept = default;
Objective& Objective::operator=(Objective&&) noexcept = default;

Objective::Objective(const physics::CaseDefinition& c, sampling::Dataset data, Method method, EvalOptions opts)
    : case_(c), data_(std::move(data)), method_(method), opts_(opts) {
  if (data_.collocation.empty()) throw LossError("the residual terms need at least one collocation point");
  if (data_.anchors.size() != case_.learned_coefficients().size()) {
    throw LossError("dataset anchors do not match the case's learned coefficients");
  }
  if (opts_.chunk == 0) throw LossError("chunk size must be positive");
  auto add = [&](TaskKind kind, std::size_t n) {
    for (std::size_t s = 0; s < n; s += opts_.chunk) tasks_.push_back({kind, s, std::min(n, s + opts_.chunk)});
  };
  add(TaskKind::Collocation, data_.collocation.size());
  add(TaskKind::Boundary, data_.boundary.size());
  add(TaskKind::Interior, data_.interior.size());
  for (std::size_t k = 0; k < data_.anchors.size(); ++k) {
    if (!data_.anchors[k].points.empty()) {
      tasks_.push_back({TaskKind::Anchor, 0, data_.anchors[k].points.size(), k});
    }
  }
  scratch_.resize(static_cast<std::size_t>(std::max(opts_.workers, 1)));
  res_fu_.resize(data_.collocation.size());
  res_fv_.resize(data_.collocation.size());
  if (method_ == Method::Gpinn) {
    res_gu_.resize(data_.collocation.size());
    res_gv_.resize(data_.collocation.size());
  }
  res_bu_.resize(data_.boundary.size());
  res_bv_.resize(data_.boundary.size());
  res_iu_.resize(data_.interior.size());
  res_iv_.resize(data_.interior.size());
  res_anchor_.resize(data_.anchors.size());
  for (std::size_t k = 0; k < data_.anchors.size(); ++k) res_anchor_[k].resize(data_.anchors[k].points.size());
}

LossReport Objective::evaluate(const Model& model, std::vector<double>* grad) const {
  const auto learned = case_.learned_coefficients();
  if (model.branches.size() != learned.size()) throw LossError("model branches do not match the case");
  if (model.trunk.spec().input_dim != 2 || model.trunk.spec().output_dim != 2) {
    throw LossError("trunk must map (x, t) to (u, v)");
  }
  const bool gpinn = method_ == Method::Gpinn;
  const Weights& w = opts_.weights;
  const std::size_t n_params = model.parameter_count();
  std::vector<std::size_t> branch_offset;
  {
    std::size_t off = model.trunk.parameter_count();
    for (const auto& b : model.branches) {
      branch_offset.push_back(off);
      off += b.parameter_count();
    }
  }
  // coefficient slot -> branch index, or -1 for a closed form
  std::array<int, 3> branch_of{-1, -1, -1};
  for (std::size_t k = 0; k < learned.size(); ++k) branch_of[static_cast<std::size_t>(learned[k])] = static_cast<int>(k);

  if (grad) {
    task_grad_.resize(tasks_.size());
    for (auto& g : task_grad_) g.assign(n_params, 0.0);
  }

  const double n_f = static_cast<double>(data_.collocation.size());
  const nn::ComponentMask trunk_mask = gpinn ? nn::kResidualTimeSet : nn::kResidualSet;
  const nn::ComponentMask branch_mask = gpinn ? nn::kValueAndDt : nn::kValueOnly;

  auto trunk_grad = [&](std::size_t task) {
    return std::span<double>(task_grad_[task]).first(model.trunk.parameter_count());
  };
  auto branch_grad = [&](std::size_t task, std::size_t b) {
    return std::span<double>(task_grad_[task]).subspan(branch_offset[b], model.branches[b].parameter_count());
  };

  auto run_collocation = [&](const Task& task, std::size_t id, Scratch& sc) {
    const auto n = static_cast<Eigen::Index>(task.end - task.begin);
    sc.inputs.resize(2, n);
    sc.t_inputs.resize(1, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& p = data_.collocation[task.begin + static_cast<std::size_t>(j)];
      sc.inputs(0, j) = p.x;
      sc.inputs(1, j) = p.t;
      sc.t_inputs(0, j) = p.t;
    }
    nn::batch_forward(model.trunk, trunk_mask, sc.inputs, sc.trunk);
    sc.branch.resize(model.branches.size());
    sc.branch_adj.resize(model.branches.size());
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
      nn::batch_forward(model.branches[b], branch_mask, sc.t_inputs, sc.branch[b]);
      if (grad) zero_stack(sc.branch_adj[b], branch_mask, 1, n);
    }
    if (grad) zero_stack(sc.trunk_adj, trunk_mask, 2, n);

    const auto& out = sc.trunk.output();
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t i = task.begin + static_cast<std::size_t>(j);
      const double t = sc.t_inputs(0, j);
      FieldDerivatives<double> u{out[nn::kValue](0, j), out[nn::kDt](0, j), out[nn::kDxx](0, j), 0.0, 0.0};
      FieldDerivatives<double> v{out[nn::kValue](1, j), out[nn::kDt](1, j), out[nn::kDxx](1, j), 0.0, 0.0};
      if (gpinn) {
        u.tt = out[nn::kDtt](0, j);
        u.xxt = out[nn::kDxxt](0, j);
        v.tt = out[nn::kDtt](1, j);
        v.xxt = out[nn::kDxxt](1, j);
      }
      std::array<CoefficientSample<double>, 3> cs;
      for (std::size_t k = 0; k < 3; ++k) {
        if (branch_of[k] >= 0) {
          const auto& bo = sc.branch[static_cast<std::size_t>(branch_of[k])].output();
          cs[k].value = bo[nn::kValue](0, j);
          if (gpinn) cs[k].dt = bo[nn::kDt](0, j);
        } else {
          cs[k].value = physics::closed_value(case_.form[k], t);
          if (gpinn) cs[k].dt = physics::closed_derivative(case_.form[k], t);
        }
      }
      const CoefficientTriple<double> coeff{cs[0], cs[1], cs[2]};
      const auto [fu, fv] = physics::pde_residual(u, v, coeff);
      res_fu_[i] = fu;
      res_fv_[i] = fv;
      double gu = 0.0, gv = 0.0;
      if (gpinn) {
        std::tie(gu, gv) = physics::pde_residual_t(u, v, coeff);
        res_gu_[i] = gu;
        res_gv_[i] = gv;
      }
      if (!grad) continue;
      const auto r = physics::residual_adjoint(u, v, coeff, 2.0 * w.fu * fu / n_f, 2.0 * w.fv * fv / n_f,
                                               gpinn ? 2.0 * w.gu * gu / n_f : 0.0,
                                               gpinn ? 2.0 * w.gv * gv / n_f : 0.0);
      auto& ta = sc.trunk_adj;
      ta[nn::kValue](0, j) = r.u.value;
      ta[nn::kValue](1, j) = r.v.value;
      ta[nn::kDt](0, j) = r.u.t;
      ta[nn::kDt](1, j) = r.v.t;
      ta[nn::kDxx](0, j) = r.u.xx;
      ta[nn::kDxx](1, j) = r.v.xx;
      if (gpinn) {
        ta[nn::kDtt](0, j) = r.u.tt;
        ta[nn::kDtt](1, j) = r.v.tt;
        ta[nn::kDxxt](0, j) = r.u.xxt;
        ta[nn::kDxxt](1, j) = r.v.xxt;
      }
      const std::array<CoefficientSample<double>, 3> cbar{r.coeff.alpha, r.coeff.beta, r.coeff.gamma};
      for (std::size_t k = 0; k < 3; ++k) {
        if (branch_of[k] < 0) continue;
        auto& ba = sc.branch_adj[static_cast<std::size_t>(branch_of[k])];
        ba[nn::kValue](0, j) = cbar[k].value;
        if (gpinn) ba[nn::kDt](0, j) = cbar[k].dt;
      }
    }
    if (!grad) return;
    nn::batch_backward(model.trunk, sc.trunk, sc.trunk_adj, trunk_grad(id));
    for (std::size_t b = 0; b < model.branches.size(); ++b) {
      nn::batch_backward(model.branches[b], sc.branch[b], sc.branch_adj[b], branch_grad(id, b));
    }
  };

  auto run_data = [&](const Task& task, std::size_t id, Scratch& sc, const std::vector<sampling::Observation>& obs,
                      std::vector<double>& ru, std::vector<double>& rv, double wu, double wv) {
    const auto n = static_cast<Eigen::Index>(task.end - task.begin);
    sc.inputs.resize(2, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& o = obs[task.begin + static_cast<std::size_t>(j)];
      sc.inputs(0, j) = o.x;
      sc.inputs(1, j) = o.t;
    }
    nn::batch_forward(model.trunk, nn::kValueOnly, sc.inputs, sc.trunk);
    const auto& out = sc.trunk.output()[nn::kValue];
    const double scale = 2.0 / static_cast<double>(obs.size());
    if (grad) zero_stack(sc.trunk_adj, nn::kValueOnly, 2, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::size_t i = task.begin + static_cast<std::size_t>(j);
      ru[i] = out(0, j) - obs[i].u;
      rv[i] = out(1, j) - obs[i].v;
      if (grad) {
        sc.trunk_adj[nn::kValue](0, j) = scale * wu * ru[i];
        sc.trunk_adj[nn::kValue](1, j) = scale * wv * rv[i];
      }
    }
    if (grad) nn::batch_backward(model.trunk, sc.trunk, sc.trunk_adj, trunk_grad(id));
  };

  auto run_anchor = [&](const Task& task, std::size_t id, Scratch& sc) {
    const auto& set = data_.anchors[task.anchor_set];
    const auto n = static_cast<Eigen::Index>(set.points.size());
    sc.t_inputs.resize(1, n);
    for (Eigen::Index j = 0; j < n; ++j) sc.t_inputs(0, j) = set.points[static_cast<std::size_t>(j)].t;
    sc.branch.resize(model.branches.size());
    sc.branch_adj.resize(model.branches.size());
    auto& trace = sc.branch[task.anchor_set];
    const auto& net = model.branches[task.anchor_set];
    nn::batch_forward(net, nn::kValueOnly, sc.t_inputs, trace);
    auto& res = res_anchor_[task.anchor_set];
    const auto& out = trace.output()[nn::kValue];
    auto& adj = sc.branch_adj[task.anchor_set];
    if (grad) zero_stack(adj, nn::kValueOnly, 1, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      res[static_cast<std::size_t>(j)] = out(0, j) - set.points[static_cast<std::size_t>(j)].value;
      if (grad) adj[nn::kValue](0, j) = 2.0 * w.coeff * res[static_cast<std::size_t>(j)] / static_cast<double>(n);
    }
    if (grad) nn::batch_backward(net, trace, adj, branch_grad(id, task.anchor_set));
  };

  parallel_for(tasks_.size(), static_cast<int>(scratch_.size()), [&](std::size_t id, int worker) {
    const Task& task = tasks_[id];
    Scratch& sc = scratch_[static_cast<std::size_t>(worker)];
    switch (task.kind) {
      case TaskKind::Collocation: run_collocation(task, id, sc); break;
      case TaskKind::Boundary: run_data(task, id, sc, data_.boundary, res_bu_, res_bv_, w.u, w.v); break;
      case TaskKind::Interior: run_data(task, id, sc, data_.interior, res_iu_, res_iv_, w.u_in, w.v_in); break;
      case TaskKind::Anchor: run_anchor(task, id, sc); break;
    }
  });

  LossReport r;
  r.method = method_;
  r.mse_u = mse_or_zero(res_bu_);
  r.mse_v = mse_or_zero(res_bv_);
  r.mse_fu = mse(res_fu_);
  r.mse_fv = mse(res_fv_);
  r.mse_u_in = mse_or_zero(res_iu_);
  r.mse_v_in = mse_or_zero(res_iv_);
  if (gpinn) {
    r.mse_gu = mse(res_gu_);
    r.mse_gv = mse(res_gv_);
  }
  for (const auto& a : res_anchor_) r.mse_coeff.push_back(mse_or_zero(a));
  r.total = combine(r, w);

  if (grad) {
    grad->assign(n_params, 0.0);
    for (const auto& g : task_grad_)
      for (std::size_t k = 0; k < n_params; ++k) (*grad)[k] += g[k];
  }
  return r;
}

LossReport assemble(Method method, const Model& model, const sampling::Dataset& data,
                    const physics::CaseDefinition& c) {
  return Objective(c, data, method).evaluate(model, nullptr);
}

std::pair<LossReport, std::vector<double>> loss_and_grad(Method method, const Model& model,
                                                         const sampling::Dataset& data,
                                                         const physics::CaseDefinition& c) {
  std::vector<double> g;
  auto r = Objective(c, data, method).evaluate(model, &g);
  return {std::move(r), std::move(g)};
}

// ---------------------------------------------------------------------------

std::pair<LossReport, std::vector<double>> loss_and_grad_tape(Method method, const Model& model,
                                                              const sampling::Dataset& data,
                                                              const physics::CaseDefinition& c) {
  using ad::Jet3;
  using ad::Var;
  if (data.collocation.empty()) throw LossError("the residual terms need at least one collocation point");
  const auto learned = c.learned_coefficients();
  if (model.branches.size() != learned.size()) throw LossError("model branches do not match the case");
  const bool gpinn = method == Method::Gpinn;

  ad::Tape tape;
  std::vector<Var> trunk_p;
  for (double p : model.trunk.flatten()) trunk_p.push_back(tape.parameter(p));
  std::vector<std::vector<Var>> branch_p(model.branches.size());
  for (std::size_t b = 0; b < model.branches.size(); ++b)
    for (double p : model.branches[b].flatten()) branch_p[b].push_back(tape.parameter(p));

  auto trunk_at = [&](double x, double t) {
    std::vector<Jet3<Var>> in{model.trunk.map_input(Jet3<Var>::seed_x(Var(x)), 0),
                              model.trunk.map_input(Jet3<Var>::seed_t(Var(t)), 1)};
    return nn::forward_flat<Var, Jet3<Var>>(model.trunk.spec(), trunk_p, std::move(in));
  };
  auto branch_at = [&](std::size_t b, double t) {
    std::vector<Jet3<Var>> in{model.branches[b].map_input(Jet3<Var>::seed_t(Var(t)), 0)};
    return nn::forward_flat<Var, Jet3<Var>>(model.branches[b].spec(), branch_p[b], std::move(in))[0];
  };

  auto mean_sq = [](const std::vector<Var>& xs) {
    Var s(0.0);
    for (const auto& x : xs) s = s + x * x;
    return s / Var(static_cast<double>(xs.size()));
  };

  std::vector<Var> fu, fv, gu, gv;
  for (const auto& p : data.collocation) {
    const auto out = trunk_at(p.x, p.t);
    const auto u = physics::field_derivatives(out[0]);
    const auto v = physics::field_derivatives(out[1]);
    std::array<physics::CoefficientSample<Var>, 3> cs;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto it = std::find(learned.begin(), learned.end(), static_cast<physics::Coefficient>(k));
      if (it != learned.end()) {
        const auto j = branch_at(static_cast<std::size_t>(it - learned.begin()), p.t);
        cs[k] = {j.extract(0, 0), j.extract(0, 1)};
      } else {
        cs[k] = {Var(physics::closed_value(c.form[k], p.t)), Var(physics::closed_derivative(c.form[k], p.t))};
      }
    }
    const physics::CoefficientTriple<Var> coeff{cs[0], cs[1], cs[2]};
    const auto [a, b] = physics::pde_residual(u, v, coeff);
    fu.push_back(a);
    fv.push_back(b);
    if (gpinn) {
      const auto [ga, gb] = physics::pde_residual_t(u, v, coeff);
      gu.push_back(ga);
      gv.push_back(gb);
    }
  }
  auto data_terms = [&](const std::vector<sampling::Observation>& obs, std::vector<Var>& du, std::vector<Var>& dv) {
    for (const auto& o : obs) {
      const auto out = trunk_at(o.x, o.t);
      du.push_back(out[0].value() - Var(o.u));
      dv.push_back(out[1].value() - Var(o.v));
    }
  };
  std::vector<Var> bu, bv, iu, iv;
  data_terms(data.boundary, bu, bv);
  data_terms(data.interior, iu, iv);

  LossReport r;
  r.method = method;
  Var total(0.0);
  auto term = [&](const std::vector<Var>& xs, double& slot) {
    if (xs.empty()) return;
    const Var m = mean_sq(xs);
    slot = m.value();
    total = total + m;
  };
  term(bu, r.mse_u);
  term(bv, r.mse_v);
  term(fu, r.mse_fu);
  term(fv, r.mse_fv);
  term(iu, r.mse_u_in);
  term(iv, r.mse_v_in);
  for (std::size_t b = 0; b < data.anchors.size(); ++b) {
    std::vector<Var> d;
    for (const auto& a : data.anchors[b].points) d.push_back(branch_at(b, a.t).value() - Var(a.value));
    double slot = 0.0;
    term(d, slot);
    r.mse_coeff.push_back(slot);
  }
  if (gpinn) {
    term(gu, r.mse_gu);
    term(gv, r.mse_gv);
  }
  r.total = total.value();
  if (total.is_constant()) return {r, std::vector<double>(tape.parameter_count(), 0.0)};
  return {r, tape.backward(total)};
}

}  // namespace tlgpinn::loss
