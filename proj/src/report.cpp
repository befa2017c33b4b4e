#include "tlgpinn/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "tlgpinn/checkpoint.hpp"

namespace tlgpinn::report {

namespace {

using metrics::format_error;
using metrics::format_percent;

std::string coeff_tag(physics::Coefficient k) { return std::string(physics::name(k)); }

const metrics::CoeffError& coeff_error(const pipeline::RunResult& r, physics::Coefficient k) {
  for (const auto& c : r.metrics.coefficients)
    if (c.coefficient == k) return c.error;
  throw std::invalid_argument("coefficient was not learned in this run");
}

std::string metric_lines(const pipeline::RunResult& r);

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
}

namespace {

std::string metric_lines(const pipeline::RunResult& r) {
  std::string out;
  for (const auto& c : r.metrics.coefficients) {
    out += fmt::format("mae_{} = {}\n", coeff_tag(c.coefficient), format_error(c.error.mae));
    out += fmt::format("re_{} = {}\n", coeff_tag(c.coefficient), format_error(c.error.re));
  }
  out += fmt::format("re_u = {}\nre_v = {}\nre_absA = {}\n", format_error(r.metrics.field.re_u),
                     format_error(r.metrics.field.re_v), format_error(r.metrics.field.re_absA));
  out += fmt::format("loss_total = {}\n", format_error(r.final_loss.total));
  return out;
}

}  // namespace

std::string metrics_text(const pipeline::RunResult& r) {
  return fmt::format("case = {}\nmethod = {}\n", r.config.case_id, pipeline::to_string(r.config.method)) +
         metric_lines(r);
}

std::string run_text(const pipeline::RunResult& r) {
  const auto& c = r.config;
  std::string out;
  out += fmt::format("case = {}\nmethod = {}\n", c.case_id, pipeline::to_string(c.method));
  out += fmt::format("sampling_seed = {}\ninit_seed = {}\n", c.sampling_seed, c.init_seed);
  out += fmt::format("n_boundary = {}\nn_interior = {}\nnf = {}\nnoise = {}\n", c.counts.boundary, c.counts.interior,
                     c.counts.collocation, c.noise);
  out += fmt::format("input_scaling = {}\n", c.input_scaling);
  out += "gpinn_init = shared with the PINN stage (same Xavier seed)\n";
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    const auto& st = r.stages[s];
    out += fmt::format("stage{}.objective = {}\n", s + 1, loss::to_string(st.objective));
    out += fmt::format("stage{}.iterations = {}\n", s + 1, st.optim.iterations);
    out += fmt::format("stage{}.evaluations = {}\n", s + 1, st.optim.evaluations);
    out += fmt::format("stage{}.stop = {}\n", s + 1, optim::to_string(st.optim.reason));
    out += fmt::format("stage{}.seconds = {:.3f}\n", s + 1, st.seconds);
    out += fmt::format("stage{}.loss_initial = {}\n", s + 1, format_error(st.history.front().total));
    out += fmt::format("stage{}.loss_final = {}\n", s + 1, format_error(st.final_loss.total));
  }
  out += fmt::format("elapsed_seconds = {:.3f}\n", r.seconds());
  const auto& l = r.final_loss;
  out += fmt::format("mse_u = {}\nmse_v = {}\nmse_fu = {}\nmse_fv = {}\nmse_u_in = {}\nmse_v_in = {}\n",
                     format_error(l.mse_u), format_error(l.mse_v), format_error(l.mse_fu), format_error(l.mse_fv),
                     format_error(l.mse_u_in), format_error(l.mse_v_in));
  if (l.method == loss::Method::Gpinn)
    out += fmt::format("mse_gu = {}\nmse_gv = {}\n", format_error(l.mse_gu), format_error(l.mse_gv));
  const auto learned = c.case_definition().learned_coefficients();
  for (std::size_t k = 0; k < l.mse_coeff.size(); ++k)
    out += fmt::format("mse_{} = {}\n", coeff_tag(learned[k]), format_error(l.mse_coeff[k]));
  if (r.failure) out += fmt::format("failure = {}\n", *r.failure);
  out += metric_lines(r);
  for (const auto& p : r.checkpoints) out += fmt::format("checkpoint = {}\n", p.string());
  return out;
}

std::string history_csv(const pipeline::RunResult& r) {
  const auto learned = r.config.case_definition().learned_coefficients();
  std::string out = "stage,objective,iteration,mse_u,mse_v,mse_fu,mse_fv,mse_u_in,mse_v_in";
  for (auto k : learned) out += ",mse_" + coeff_tag(k);
  out += ",mse_gu,mse_gv,total\n";
  for (std::size_t s = 0; s < r.stages.size(); ++s) {
    const auto& st = r.stages[s];
    for (std::size_t it = 0; it < st.history.size(); ++it) {
      const auto& h = st.history[it];
      out += fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", s + 1,
                         loss::to_string(st.objective), it, h.mse_u, h.mse_v, h.mse_fu, h.mse_fv, h.mse_u_in,
                         h.mse_v_in);
      for (double v : h.mse_coeff) out += fmt::format(",{:.17g}", v);
      if (st.objective == loss::Method::Gpinn) out += fmt::format(",{:.17g},{:.17g}", h.mse_gu, h.mse_gv);
      else out += ",,";
      out += fmt::format(",{:.17g}\n", h.total);
    }
  }
  return out;
}

std::string curve_csv(const pipeline::RunResult& r, physics::Coefficient k) {
  std::string out = "t,predicted,exact,abs_error\n";
  for (const auto& s : metrics::coefficient_curve(r.model, r.config.case_definition(), k))
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.t, s.predicted, s.exact, std::abs(s.predicted - s.exact));
  return out;
}

std::string field_csv(const pipeline::RunResult& r) {
  const auto c = r.config.case_definition();
  const auto points = sampling::make_grid(sampling::grid_for(c));
  const auto [u, v] = metrics::predict(r.model.trunk, points);
  std::string out = "x,t,u,v,abs_a,u_exact,v_exact,abs_a_exact\n";
  out.reserve(points.size() * 120);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto [ue, ve] = physics::exact_solution(c, points[k].x, points[k].t);
    out += fmt::format("{:.10g},{:.10g},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.10e}\n", points[k].x, points[k].t,
                       u[k], v[k], std::hypot(u[k], v[k]), ue, ve, std::hypot(ue, ve));
  }
  return out;
}

void write_run(const std::filesystem::path& dir, const pipeline::RunResult& r) {
  std::filesystem::create_directories(dir);
  write_text(dir / "report.txt", run_text(r));
  write_text(dir / "metrics.txt", metrics_text(r));
  write_text(dir / "history.csv", history_csv(r));
  for (auto k : r.config.case_definition().learned_coefficients())
    write_text(dir / fmt::format("curves_{}.csv", coeff_tag(k)), curve_csv(r, k));
  write_text(dir / "field.csv", field_csv(r));
  ckpt::save_model(dir / "model.tlgp", r.model);
}

std::string comparison_table(const pipeline::RunResult& pinn, const pipeline::RunResult& gpinn,
                             const pipeline::RunResult& tl, bool with_time) {
  std::vector<std::array<std::string, 4>> rows;
  rows.push_back({"Results", "PINN", "gPINN", "TL-gPINN"});
  if (with_time) {
    rows.push_back({"Elapsed time (s)", fmt::format("{:.2f}", pinn.seconds()), fmt::format("{:.2f}", gpinn.seconds()),
                    fmt::format("{:.2f}", tl.seconds())});
  }
  for (const auto& c : pinn.metrics.coefficients) {
    const auto k = c.coefficient;
    const auto tag = coeff_tag(k);
    const auto& p = c.error;
    const auto& g = coeff_error(gpinn, k);
    const auto& t = coeff_error(tl, k);
    const auto eg = metrics::err_rates(p.mae, p.re, g.mae, g.re);
    const auto et = metrics::err_rates(p.mae, p.re, t.mae, t.re);
    rows.push_back({"MAE_" + tag, format_error(p.mae), format_error(g.mae), format_error(t.mae)});
    rows.push_back({"RE_" + tag, format_error(p.re), format_error(g.re), format_error(t.re)});
    rows.push_back({"ERR1_" + tag, "-", format_percent(eg.err1) + "%", format_percent(et.err1) + "%"});
    rows.push_back({"ERR2_" + tag, "-", format_percent(eg.err2) + "%", format_percent(et.err2) + "%"});
  }
  std::array<std::size_t, 4> width{};
  for (const auto& row : rows)
    for (std::size_t i = 0; i < 4; ++i) width[i] = std::max(width[i], row[i].size());
  std::string out;
  for (const auto& row : rows) {
    out += fmt::format("{:<{}}  {:>{}}  {:>{}}  {:>{}}\n", row[0], width[0], row[1], width[1], row[2], width[2], row[3],
                       width[3]);
  }
  return out;
}

}  // namespace tlgpinn::report
