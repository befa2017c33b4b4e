// Command-line front end: train one method, compare the three methods, run
// the robustness and sensitivity sweeps, re-evaluate a checkpoint, or export
// a case's dataset.
//
// Exit status: 0 success, 1 runtime failure, 2 usage error.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tlgpinn/checkpoint.hpp"
#include "tlgpinn/config.hpp"
#include "tlgpinn/parallel.hpp"
#include "tlgpinn/pipeline.hpp"
#include "tlgpinn/report.hpp"
#include "tlgpinn/sweep.hpp"

namespace fs = std::filesystem;
using namespace tlgpinn;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<std::string> config_file;
  std::optional<std::string> case_id;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> sampling_seed;
  std::optional<std::uint64_t> init_seed;
  std::optional<double> noise;
  std::optional<std::size_t> nf;
  std::optional<std::size_t> n_boundary;
  std::optional<std::size_t> n_interior;
  std::optional<std::size_t> max_iter;
  std::optional<std::size_t> max_iter1;
  std::optional<std::size_t> max_iter2;
  std::optional<std::size_t> chunk;
  std::optional<int> workers;
  std::optional<int> branch_depth;
  std::optional<int> branch_width;
  bool full = false;
  bool input_scaling = false;

  void add_to(CLI::App* app, bool with_method) {
    app->add_option("--config", config_file, "key = value run configuration file")->check(CLI::ExistingFile);
    app->add_option("--case", case_id, "case id, e.g. 3.1.1");
    if (with_method) app->add_option("--method", method, "pinn, gpinn or tl-gpinn");
    app->add_option("--seed", seed, "sampling and initialization seed");
    app->add_option("--sampling-seed", sampling_seed);
    app->add_option("--init-seed", init_seed);
    app->add_option("--noise", noise, "relative noise level, e.g. 0.01");
    app->add_option("--nf", nf, "collocation points");
    app->add_option("--n-boundary", n_boundary, "boundary observations");
    app->add_option("--n-interior", n_interior, "interior observations");
    app->add_option("--max-iter", max_iter, "iteration budget of every stage");
    app->add_option("--max-iter1", max_iter1, "iteration budget of the PINN stage");
    app->add_option("--max-iter2", max_iter2, "iteration budget of the gPINN stage");
    app->add_option("--chunk", chunk, "points per batched pass");
    app->add_option("--workers", workers, "threads (default TLGPINN_WORKERS or all cores)");
    app->add_option("--branch-depth", branch_depth);
    app->add_option("--branch-width", branch_width);
    app->add_flag("--input-scaling", input_scaling, "map network inputs from the domain onto [-1, 1]");
    app->add_flag("--full", full, "full scale: 40000 collocation points, 50000-iteration budgets");
  }

  pipeline::RunConfig resolve() const {
    pipeline::RunConfig c;
    c.workers = default_workers();
    if (config_file) c = config::load(*config_file, c);
    if (full) c.make_full_scale();
    if (case_id) c.case_id = *case_id;
    if (method) c.method = pipeline::parse_method(*method);
    if (seed) c.sampling_seed = c.init_seed = *seed;
    if (sampling_seed) c.sampling_seed = *sampling_seed;
    if (init_seed) c.init_seed = *init_seed;
    if (noise) c.noise = *noise;
    if (nf) c.counts.collocation = *nf;
    if (n_boundary) c.counts.boundary = *n_boundary;
    if (n_interior) c.counts.interior = *n_interior;
    if (max_iter) c.stage1.max_iter = c.stage2.max_iter = *max_iter;
    if (max_iter1) c.stage1.max_iter = *max_iter1;
    if (max_iter2) c.stage2.max_iter = *max_iter2;
    if (chunk) c.chunk = *chunk;
    if (workers) c.workers = *workers;
    if (branch_depth) c.branch_depth = *branch_depth;
    if (branch_width) c.branch_width = *branch_width;
    if (input_scaling) c.input_scaling = true;
    c.validate();
    return c;
  }
};

void log(const std::string& s) {
  std::fprintf(stderr, "%s\n", s.c_str());
  std::fflush(stderr);
}

pipeline::IterationHook progress_hook(const std::string& label, bool quiet) {
  if (quiet) return {};
  return [label](std::size_t stage, std::size_t it, const loss::LossReport& r) {
    if (it % 500 == 0) log(fmt::format("[{}] stage {} iteration {} loss {:.6e}", label, stage + 1, it, r.total));
  };
}

// PINN, gPINN from the same initialization, and TL-gPINN continuing the PINN
// run, so the PINN stage is trained once.
struct Comparison {
  pipeline::RunResult pinn, gpinn, tl;
};

Comparison compare_methods(pipeline::RunConfig c, const std::string& label, bool quiet) {
  Comparison out;
  c.method = pipeline::MethodKind::Pinn;
  out.pinn = pipeline::run(c, progress_hook(label + " pinn", quiet));
  c.method = pipeline::MethodKind::Gpinn;
  out.gpinn = pipeline::run(c, progress_hook(label + " gpinn", quiet));
  c.method = pipeline::MethodKind::TlGpinn;
  out.tl = pipeline::transfer(c, out.pinn, progress_hook(label + " tl-gpinn", quiet));
  return out;
}

std::string summary_line(const pipeline::RunResult& r) {
  std::string s = fmt::format("{} {}:", r.config.case_id, pipeline::to_string(r.config.method));
  for (const auto& c : r.metrics.coefficients)
    s += fmt::format(" MAE_{}={} RE_{}={}", physics::name(c.coefficient), metrics::format_error(c.error.mae),
                     physics::name(c.coefficient), metrics::format_error(c.error.re));
  s += fmt::format(" time={:.2f}s", r.seconds());
  if (r.failure) s += " (" + *r.failure + ")";
  return s;
}

int cmd_train(const Overrides& o, const std::string& out_dir) {
  auto c = o.resolve();
  const fs::path dir = out_dir.empty() ? fs::path("runs") / fmt::format("{}-{}", c.case_id, pipeline::to_string(c.method))
                                       : fs::path(out_dir);
  c.output_dir = dir;
  fs::create_directories(dir);
  report::write_text(dir / "config.txt", config::render(c));
  const auto r = pipeline::run(c, progress_hook(c.case_id, false));
  report::write_run(dir, r);
  std::cout << summary_line(r) << "\n" << "outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_compare(const Overrides& o, const std::string& out_dir) {
  auto c = o.resolve();
  const fs::path dir = out_dir.empty() ? fs::path("runs") / fmt::format("{}-compare", c.case_id) : fs::path(out_dir);
  fs::create_directories(dir);
  report::write_text(dir / "config.txt", config::render(c));
  c.output_dir = dir / "tl-gpinn";
  const auto cmp = compare_methods(c, c.case_id, false);
  report::write_run(dir / "pinn", cmp.pinn);
  report::write_run(dir / "gpinn", cmp.gpinn);
  report::write_run(dir / "tl-gpinn", cmp.tl);
  const auto table = report::comparison_table(cmp.pinn, cmp.gpinn, cmp.tl);
  report::write_text(dir / "comparison.txt", table);
  report::write_text(dir / "comparison_metrics.txt", report::comparison_table(cmp.pinn, cmp.gpinn, cmp.tl, false));
  std::cout << table;
  return 0;
}

std::string opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }
template <typename T>
std::string opt(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : "";
}

const pipeline::RunResult& result_of(const Comparison& c, pipeline::MethodKind m) {
  return m == pipeline::MethodKind::Pinn ? c.pinn : m == pipeline::MethodKind::Gpinn ? c.gpinn : c.tl;
}

int cmd_sweep(const Overrides& o, sweep::SweepSpec spec, const std::string& out_dir) {
  const auto base = o.resolve();
  if (spec.cases.empty()) spec.cases = sweep::SweepSpec::default_cases(spec.kind);
  for (const auto& id : spec.cases) {
    auto probe = base;
    probe.case_id = id;
    if (probe.case_definition().learned_coefficients().size() != 1)
      throw UsageError(fmt::format("sweeps cover single-coefficient cases; {} learns several", id));
  }
  const auto kind = sweep::to_string(spec.kind);
  const auto cells = sweep::enumerate(spec, base.sampling_seed);
  const fs::path dir = out_dir.empty() ? fs::path("runs") / fmt::format("sweep-{}", kind) : fs::path(out_dir);
  fs::create_directories(dir);
  report::write_text(dir / "config.txt", config::render(base));

  std::vector<Comparison> results(cells.size());
  log(fmt::format("sweep {}: {} cells on {} workers", kind, cells.size(), base.workers));
  parallel_for(cells.size(), base.workers, [&](std::size_t i, int) {
    auto c = sweep::apply(base, cells[i]);
    c.workers = 1;
    c.validate();
    results[i] = compare_methods(c, fmt::format("cell {}", i), true);
    log(fmt::format("cell {} done: {}", i, summary_line(results[i].tl)));
  });

  const std::array methods{pipeline::MethodKind::Pinn, pipeline::MethodKind::Gpinn, pipeline::MethodKind::TlGpinn};
  std::string table = "kind,case,noise,depth,width,n_interior,seed,method,mae,re,err1,err2\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    const auto& p = results[i].pinn.metrics.coefficients[0].error;
    for (auto m : methods) {
      const auto& e = result_of(results[i], m).metrics.coefficients[0].error;
      std::string err1 = "-", err2 = "-";
      if (m != pipeline::MethodKind::Pinn) {
        const auto rates = metrics::err_rates(p.mae, p.re, e.mae, e.re);
        err1 = metrics::format_percent(rates.err1);
        err2 = metrics::format_percent(rates.err2);
      }
      table += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", kind, cell.case_id, opt(cell.noise), opt(cell.depth),
                           opt(cell.width), opt(cell.n_interior), opt(cell.seed), pipeline::to_string(m),
                           metrics::format_error(e.mae), metrics::format_error(e.re), err1, err2);
    }
  }
  report::write_text(dir / "results.csv", table);

  if (spec.kind == sweep::Kind::Architecture) {
    for (const auto& id : spec.cases) {
      for (auto m : methods) {
        std::string heat = "depth";
        for (int w : spec.widths) heat += fmt::format(",{}", w);
        heat += "\n";
        for (int d : spec.depths) {
          heat += fmt::format("{}", d);
          for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i].case_id == id && cells[i].depth == d)
              heat += "," + metrics::format_error(result_of(results[i], m).metrics.coefficients[0].error.re);
          }
          heat += "\n";
        }
        report::write_text(dir / fmt::format("heatmap_{}_{}.csv", id, pipeline::to_string(m)), heat);
      }
    }
  }

  if (spec.kind == sweep::Kind::DataSize) {
    std::string per_seed = "case,n_interior,seed,gpinn_err2,tl-gpinn_err2\n";
    std::string summary = "case,n_interior,method,max_err2,min_err2,mean_err2\n";
    for (const auto& id : spec.cases) {
      for (auto n : spec.interior_sizes) {
        std::vector<double> g2, t2;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (cells[i].case_id != id || cells[i].n_interior != n) continue;
          const auto& p = results[i].pinn.metrics.coefficients[0].error;
          const auto& g = results[i].gpinn.metrics.coefficients[0].error;
          const auto& t = results[i].tl.metrics.coefficients[0].error;
          g2.push_back(metrics::err_rates(p.mae, p.re, g.mae, g.re).err2);
          t2.push_back(metrics::err_rates(p.mae, p.re, t.mae, t.re).err2);
          per_seed += fmt::format("{},{},{},{},{}\n", id, n, *cells[i].seed, metrics::format_percent(g2.back()),
                                  metrics::format_percent(t2.back()));
        }
        for (const auto& [name, values] : {std::pair{"gpinn", &g2}, std::pair{"tl-gpinn", &t2}}) {
          const auto a = sweep::aggregate(*values);
          summary += fmt::format("{},{},{},{},{},{}\n", id, n, name, metrics::format_percent(a.max),
                                 metrics::format_percent(a.min), metrics::format_percent(a.mean));
        }
      }
    }
    report::write_text(dir / "datasize_per_seed.csv", per_seed);
    report::write_text(dir / "datasize_summary.csv", summary);
  }
  std::cout << "wrote " << (dir / "results.csv").string() << "\n";
  return 0;
}

int cmd_eval(const std::string& checkpoint, const std::string& case_id, const std::string& out_dir,
             bool input_scaling) {
  pipeline::RunResult r;
  r.config.case_id = case_id;
  r.config.input_scaling = input_scaling;
  const auto c = physics::find_case(case_id);
  r.model = ckpt::load_model(checkpoint);
  const Model reference = Model::xavier(c, 0);
  bool ok = r.model.trunk.spec() == reference.trunk.spec() && r.model.branches.size() == reference.branches.size();
  for (std::size_t k = 0; ok && k < r.model.branches.size(); ++k)
    ok = r.model.branches[k].spec().input_dim == 1 && r.model.branches[k].spec().output_dim == 1;
  if (!ok) throw UsageError(fmt::format("checkpoint networks do not fit case {}", case_id));
  r.config.branch_depth = r.model.branches.front().spec().depth;
  r.config.branch_width = r.model.branches.front().spec().width;
  if (input_scaling) r.model.scale_inputs(r.config.case_definition());
  r.metrics = metrics::evaluate(r.model, r.config.case_definition());
  std::string text = fmt::format("case = {}\ncheckpoint = {}\n", case_id, checkpoint);
  for (const auto& m : r.metrics.coefficients)
    text += fmt::format("mae_{0} = {1}\nre_{0} = {2}\n", physics::name(m.coefficient),
                        metrics::format_error(m.error.mae), metrics::format_error(m.error.re));
  text += fmt::format("re_u = {}\nre_v = {}\nre_absA = {}\n", metrics::format_error(r.metrics.field.re_u),
                      metrics::format_error(r.metrics.field.re_v), metrics::format_error(r.metrics.field.re_absA));
  std::cout << text;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    report::write_text(fs::path(out_dir) / "metrics.txt", text);
    for (const auto& m : r.metrics.coefficients)
      report::write_text(fs::path(out_dir) / fmt::format("curves_{}.csv", physics::name(m.coefficient)),
                         report::curve_csv(r, m.coefficient));
    report::write_text(fs::path(out_dir) / "field.csv", report::field_csv(r));
  }
  return 0;
}

int cmd_export(const Overrides& o, const std::string& out_dir) {
  const auto c = o.resolve();
  const fs::path dir = out_dir.empty() ? fs::path("data") / c.case_id : fs::path(out_dir);
  fs::create_directories(dir);
  const auto data = pipeline::make_dataset(c);
  sampling::write_observations(dir / "boundary.csv", data.boundary);
  sampling::write_observations(dir / "interior.csv", data.interior);
  sampling::write_points(dir / "collocation.csv", data.collocation);
  sampling::write_anchors(dir / "anchors.csv", data.anchors);
  const auto def = c.case_definition();
  std::vector<sampling::Observation> grid;
  for (const auto& p : sampling::make_grid(sampling::grid_for(def))) {
    const auto [u, v] = physics::exact_solution(def, p.x, p.t);
    grid.push_back({p.x, p.t, u, v});
  }
  sampling::write_observations(dir / "exact_grid.csv", grid);
  std::string coeffs = "t";
  const auto exact = physics::exact_coefficient_models(def);
  for (auto k : physics::kCoefficients) coeffs += fmt::format(",{}", physics::name(k));
  coeffs += "\n";
  for (double t : metrics::equidistant(def.domain.t0, def.domain.t1, metrics::kCoefficientPoints)) {
    coeffs += fmt::format("{:.17g}", t);
    for (const auto& m : exact) coeffs += fmt::format(",{:.17g}", physics::coefficient_eval(m, t).value);
    coeffs += "\n";
  }
  report::write_text(dir / "coefficients.csv", coeffs);
  std::cout << "wrote dataset for case " << c.case_id << " to " << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse discovery of variable coefficients in the nonlinear Schrodinger equation with PINN, gPINN "
               "and transfer-learned gPINN"};
  app.require_subcommand(1);

  Overrides train_o, compare_o, sweep_o, export_o;
  std::string train_out, compare_out, sweep_out, export_out, eval_out;

  auto* train = app.add_subcommand("train", "train one method on one case");
  train_o.add_to(train, true);
  train->add_option("--out", train_out, "output directory");

  auto* compare = app.add_subcommand("compare", "run PINN, gPINN and TL-gPINN on identical data");
  compare_o.add_to(compare, false);
  compare->add_option("--out", compare_out, "output directory");

  std::string kind;
  sweep::SweepSpec spec;
  auto* sweep_cmd = app.add_subcommand("sweep", "noise, architecture or data-size sweep");
  sweep_cmd->add_option("--kind", kind, "noise, architecture or datasize")
      ->required()
      ->check(CLI::IsMember({"noise", "architecture", "datasize"}));
  sweep_cmd->add_option("--cases", spec.cases, "case ids (default: every single-coefficient case the sweep covers)");
  sweep_cmd->add_option("--levels", spec.noise_levels, "noise levels")->capture_default_str();
  sweep_cmd->add_option("--depths", spec.depths, "branch depths")->capture_default_str();
  sweep_cmd->add_option("--widths", spec.widths, "branch widths")->capture_default_str();
  sweep_cmd->add_option("--interior-sizes", spec.interior_sizes, "interior observation counts")->capture_default_str();
  sweep_cmd->add_option("--seeds", spec.seeds, "seeds per data-size cell")->capture_default_str()->check(CLI::PositiveNumber);
  sweep_o.add_to(sweep_cmd, false);
  sweep_cmd->add_option("--out", sweep_out, "output directory");

  std::string checkpoint, eval_case;
  bool eval_scaling = false;
  auto* eval = app.add_subcommand("eval", "recompute metrics from a checkpoint");
  eval->add_option("--checkpoint", checkpoint)->required()->check(CLI::ExistingFile);
  eval->add_option("--case", eval_case)->required();
  eval->add_option("--out", eval_out, "also write metrics, curves and field here");
  eval->add_flag("--input-scaling", eval_scaling, "the checkpoint was trained with --input-scaling");

  auto* export_data = app.add_subcommand("export-data", "write a case's sampled dataset and exact solution");
  export_o.add_to(export_data, false);
  export_data->add_option("--out", export_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : 2;
  }

  try {
    if (*train) return cmd_train(train_o, train_out);
    if (*compare) return cmd_compare(compare_o, compare_out);
    if (*sweep_cmd) {
      spec.kind = sweep::parse_kind(kind);
      return cmd_sweep(sweep_o, spec, sweep_out);
    }
    if (*eval) return cmd_eval(checkpoint, eval_case, eval_out, eval_scaling);
    if (*export_data) return cmd_export(export_o, export_out);
  } catch (const pipeline::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const physics::UnknownCase& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
