#include "tlgpinn/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>

#include <fmt/format.h>

#include "tlgpinn/checkpoint.hpp"

namespace tlgpinn::pipeline {

namespace {

loss::Method stage_objective(MethodKind m) { return m == MethodKind::Gpinn ? loss::Method::Gpinn : loss::Method::Pinn; }

loss::EvalOptions eval_options(const RunConfig& c) {
  loss::EvalOptions o;
  o.chunk = c.chunk;
  o.workers = c.workers;
  return o;
}

bool same_bits(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

std::string to_string(MethodKind m) {
  switch (m) {
    case MethodKind::Pinn:
      return "pinn";
    case MethodKind::Gpinn:
      return "gpinn";
    case MethodKind::TlGpinn:
      return "tl-gpinn";
  }
  return "?";
}

MethodKind parse_method(const std::string& s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "pinn") return MethodKind::Pinn;
  if (lower == "gpinn") return MethodKind::Gpinn;
  if (lower == "tl-gpinn" || lower == "tlgpinn") return MethodKind::TlGpinn;
  throw ConfigError(fmt::format("unknown method '{}' (expected pinn, gpinn or tl-gpinn)", s));
}

void RunConfig::make_full_scale() {
  counts.collocation = 40000;
  stage1.max_iter = 50000;
  stage2.max_iter = 50000;
}

physics::CaseDefinition RunConfig::case_definition() const {
  physics::CaseDefinition c;
  try {
    c = physics::find_case(case_id);
  } catch (const physics::UnknownCase& e) {
    throw ConfigError(e.what());
  }
  if (branch_depth) c.branch_depth = *branch_depth;
  if (branch_width) c.branch_width = *branch_width;
  return c;
}

void RunConfig::validate() const {
  const auto c = case_definition();
  if (c.branch_depth < 1 || c.branch_width < 1) throw ConfigError("branch depth and width must be positive");
  try {
    stage1.validate();
    stage2.validate();
  } catch (const optim::ConfigError& e) {
    throw ConfigError(e.what());
  }
  if (counts.collocation == 0) throw ConfigError("need at least one collocation point");
  if (counts.boundary == 0 && counts.interior == 0) throw ConfigError("need at least one observation");
  if (!(noise >= 0.0)) throw ConfigError("noise level must be non-negative");
  if (chunk == 0) throw ConfigError("chunk must be positive");
  if (workers < 1) throw ConfigError("workers must be at least 1");
}

double RunResult::seconds() const {
  double s = 0.0;
  for (const auto& st : stages) s += st.seconds;
  return s;
}

sampling::Dataset make_dataset(const RunConfig& config) {
  const auto c = config.case_definition();
  auto data = sampling::sample_dataset(c, sampling::grid_for(c), config.counts, config.sampling_seed);
  if (config.noise > 0.0) data = sampling::corrupt(data, config.noise, config.sampling_seed);
  return data;
}

StageResult run_stage(const loss::Objective& objective, Model& model, const optim::LbfgsConfig& lbfgs,
                      std::size_t stage_index, const IterationHook& hook) {
  StageResult out;
  out.objective = objective.method();
  // The optimizer accepts the point it evaluated last, so the report from
  // the most recent evaluation belongs to each accepted iterate.
  loss::LossReport last;
  std::vector<double> last_x;
  std::vector<double> grad;
  auto fn = [&](std::span<const double> x, std::span<double> g) {
    model.assign(x);
    last = objective.evaluate(model, &grad);
    last_x.assign(x.begin(), x.end());
    std::copy(grad.begin(), grad.end(), g.begin());
    return last.total;
  };
  auto progress = [&](const optim::IterationInfo& info) {
    out.history.push_back(last);
    if (hook) hook(stage_index, info.iteration, last);
  };
  const auto start = std::chrono::steady_clock::now();
  out.optim = optim::minimize(fn, model.flatten(), lbfgs, progress);
  model.assign(out.optim.x);
  if (!same_bits(last_x, out.optim.x)) last = objective.evaluate(model, nullptr);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.final_loss = last;
  return out;
}

namespace {

void finish(RunResult& r) {
  const auto c = r.config.case_definition();
  r.final_loss = r.stages.back().final_loss;
  r.metrics = metrics::evaluate(r.model, c);
  for (const auto& st : r.stages) {
    if (st.optim.reason == optim::StopReason::LineSearchFail && !r.failure) {
      r.failure = fmt::format("line search failed in the {} stage after {} iterations", loss::to_string(st.objective),
                              st.optim.iterations);
    }
  }
}

}  // namespace

RunResult run(const RunConfig& config, const IterationHook& hook) {
  config.validate();
  if (config.method == MethodKind::TlGpinn) {
    RunConfig first = config;
    first.method = MethodKind::Pinn;
    return transfer(config, run(first, hook), hook);
  }
  const auto c = config.case_definition();
  RunResult r;
  r.config = config;
  r.model = Model::xavier(c, config.init_seed);
  if (config.input_scaling) r.model.scale_inputs(c);
  const loss::Objective objective(c, make_dataset(config), stage_objective(config.method), eval_options(config));
  r.stages.push_back(run_stage(objective, r.model, config.stage1, 0, hook));
  finish(r);
  return r;
}

RunResult transfer(const RunConfig& config, const RunResult& pinn, const IterationHook& hook) {
  config.validate();
  if (pinn.stages.size() != 1 || pinn.stages[0].objective != loss::Method::Pinn)
    throw ConfigError("transfer needs a finished single-stage PINN run");
  if (pinn.config.case_id != config.case_id || pinn.config.branch_depth != config.branch_depth ||
      pinn.config.branch_width != config.branch_width || pinn.config.input_scaling != config.input_scaling)
    throw ConfigError("transfer across different cases or architectures");
  const auto c = config.case_definition();

  RunResult r;
  r.config = config;
  r.config.method = MethodKind::TlGpinn;
  r.stages.push_back(pinn.stages[0]);
  r.checkpoints = pinn.checkpoints;

  // Stage 2 always starts from the saved parameters, so the round trip
  // through the file is part of the method rather than an option.
  std::string bytes;
  if (!config.output_dir.empty()) {
    std::filesystem::create_directories(config.output_dir);
    const auto path = config.output_dir / "stage1.tlgp";
    ckpt::save_model(path, pinn.model);
    r.checkpoints.push_back(path);
    r.model = ckpt::load_model(path);
  } else {
    std::vector<nn::Mlp> nets{pinn.model.trunk};
    nets.insert(nets.end(), pinn.model.branches.begin(), pinn.model.branches.end());
    auto loaded = ckpt::decode(ckpt::encode(nets));
    r.model.trunk = std::move(loaded.front());
    r.model.branches.assign(loaded.begin() + 1, loaded.end());
  }
  if (config.input_scaling) r.model.scale_inputs(c);

  const loss::Objective objective(c, make_dataset(config), loss::Method::Gpinn, eval_options(config));
  r.stages.push_back(run_stage(objective, r.model, config.stage2, 1, hook));
  finish(r);
  return r;
}

}  // namespace tlgpinn::pipeline
