#include "tlgpinn/metrics.hpp"

#include <cmath>

#include <fmt/format.h>

#include "tlgpinn/batch_jet.hpp"

namespace tlgpinn::metrics {

namespace {

double relative_l2(std::span<const double> pred, std::span<const double> exact) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    num += (pred[k] - exact[k]) * (pred[k] - exact[k]);
    den += exact[k] * exact[k];
  }
  if (den == 0.0) throw MetricError("relative error undefined: exact values are all zero");
  return std::sqrt(num / den);
}

CoeffError errors_from(std::span<const double> p, std::span<const double> e) {
  double abs_sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) abs_sum += std::abs(p[k] - e[k]);
  return {abs_sum / static_cast<double>(p.size()), relative_l2(p, e)};
}

}  // namespace

std::vector<double> equidistant(double t0, double t1, std::size_t n) {
  if (n < 2) throw MetricError("need at least two evaluation points");
  std::vector<double> t(n);
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) t[k] = t0 + static_cast<double>(k) * h;
  t[n - 1] = t1;
  return t;
}

CoeffError coeff_errors(const std::function<double(double)>& predicted, const std::function<double(double)>& exact,
                        double t0, double t1, std::size_t n) {
  const auto ts = equidistant(t0, t1, n);
  std::vector<double> p(n), e(n);
  for (std::size_t k = 0; k < n; ++k) {
    p[k] = predicted(ts[k]);
    e[k] = exact(ts[k]);
  }
  return errors_from(p, e);
}

FieldErrors field_errors(std::span<const double> u, std::span<const double> v, std::span<const double> u_exact,
                         std::span<const double> v_exact) {
  const std::size_t n = u.size();
  if (v.size() != n || u_exact.size() != n || v_exact.size() != n) throw MetricError("field size mismatch");
  if (n == 0) throw MetricError("empty field");
  std::vector<double> a(n), a_exact(n);
  for (std::size_t k = 0; k < n; ++k) {
    a[k] = std::hypot(u[k], v[k]);
    a_exact[k] = std::hypot(u_exact[k], v_exact[k]);
  }
  return {relative_l2(u, u_exact), relative_l2(v, v_exact), relative_l2(a, a_exact)};
}

std::pair<std::vector<double>, std::vector<double>> predict(const nn::Mlp& trunk,
                                                            std::span<const sampling::Point> points) {
  constexpr std::size_t kChunk = 1024;
  std::vector<double> u(points.size()), v(points.size());
  nn::BatchTrace trace;
  Eigen::MatrixXd in;
  for (std::size_t start = 0; start < points.size(); start += kChunk) {
    const std::size_t b = std::min(kChunk, points.size() - start);
    in.resize(2, static_cast<Eigen::Index>(b));
    for (std::size_t k = 0; k < b; ++k) {
      in(0, static_cast<Eigen::Index>(k)) = points[start + k].x;
      in(1, static_cast<Eigen::Index>(k)) = points[start + k].t;
    }
    nn::batch_forward(trunk, nn::kValueOnly, in, trace);
    const auto& out = trace.output()[nn::kValue];
    for (std::size_t k = 0; k < b; ++k) {
      u[start + k] = out(0, static_cast<Eigen::Index>(k));
      v[start + k] = out(1, static_cast<Eigen::Index>(k));
    }
  }
  return {std::move(u), std::move(v)};
}

FieldErrors field_errors(const nn::Mlp& trunk, const physics::CaseDefinition& c, const sampling::GridSpec& grid) {
  const auto points = sampling::make_grid(grid);
  const auto [u, v] = predict(trunk, points);
  std::vector<double> ue(points.size()), ve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::tie(ue[k], ve[k]) = physics::exact_solution(c, points[k].x, points[k].t);
  }
  return field_errors(u, v, ue, ve);
}

double round_percent(double pct) { return std::round(pct * 100.0) / 100.0; }

ErrRates err_rates(double baseline_mae, double baseline_re, double new_mae, double new_re) {
  if (!(baseline_mae > 0.0) || !(baseline_re > 0.0)) throw MetricError("baseline errors must be positive");
  return {round_percent((baseline_mae - new_mae) / baseline_mae * 100.0),
          round_percent((baseline_re - new_re) / baseline_re * 100.0)};
}

std::vector<CurveSample> coefficient_curve(const Model& model, const physics::CaseDefinition& c,
                                           physics::Coefficient k, std::size_t n) {
  const auto models = model.coefficients(c);
  const auto& predicted = models[static_cast<std::size_t>(k)];
  const auto exact = physics::exact_coefficient_models(c)[static_cast<std::size_t>(k)];
  std::vector<CurveSample> out;
  for (double t : equidistant(c.domain.t0, c.domain.t1, n)) {
    out.push_back({t, physics::coefficient_eval(predicted, t).value, physics::coefficient_eval(exact, t).value});
  }
  return out;
}

MetricBundle evaluate(const Model& model, const physics::CaseDefinition& c) {
  MetricBundle b;
  for (auto k : c.learned_coefficients()) {
    std::vector<double> p, e;
    for (const auto& s : coefficient_curve(model, c, k)) {
      p.push_back(s.predicted);
      e.push_back(s.exact);
    }
    b.coefficients.push_back({k, errors_from(p, e)});
  }
  b.field = field_errors(model.trunk, c, sampling::grid_for(c));
  return b;
}

std::string format_error(double v) { return fmt::format("{:.6e}", v); }

std::string format_percent(double v) { return fmt::format("{:.2f}", v); }

}  // namespace tlgpinn::metrics
