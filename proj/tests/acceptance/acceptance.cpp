// Acceptance checks.  Each criterion prints one line
//
//   CRITERION <n> PASS|FAIL <title> (<details>)
//
// and the process exits non-zero if any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "err_fixture.hpp"
#include "tlgpinn/checkpoint.hpp"
#include "tlgpinn/loss.hpp"
#include "tlgpinn/metrics.hpp"
#include "tlgpinn/optimizer.hpp"
#include "tlgpinn/pipeline.hpp"
#include "tlgpinn/sampling.hpp"

using namespace tlgpinn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details += (details.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { details += (details.empty() ? "" : "; ") + what; }
};

// ---------------------------------------------------------------------------

Outcome residual_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  double worst_f = 0.0, worst_g = 0.0;
  for (const auto& c : physics::case_registry()) {
    const auto coeffs = physics::exact_coefficient_models(c);
    std::uniform_real_distribution<double> dx(c.domain.x0, c.domain.x1), dt(c.domain.t0, c.domain.t1);
    double f = 0.0, g = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const auto r = physics::exact_residual(c, coeffs, dx(rng), dt(rng));
      f = std::max({f, std::abs(r.f_u), std::abs(r.f_v)});
      g = std::max({g, std::abs(r.g_u), std::abs(r.g_v)});
    }
    o.require(f < 1e-8, fmt::format("case {} max |f| = {:.3e}", c.id, f));
    o.require(g < 1e-6, fmt::format("case {} max |g| = {:.3e}", c.id, g));
    worst_f = std::max(worst_f, f);
    worst_g = std::max(worst_g, g);
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 30.0, fmt::format("runtime {:.1f}s", elapsed));
  o.note(fmt::format("8 cases x 1e4 points, max |f| {:.2e}, max |g| {:.2e}, {:.2f}s", worst_f, worst_g, elapsed));
  return o;
}

// ---------------------------------------------------------------------------

// Trunk outputs in extended precision for finite differences.
std::array<long double, 2> trunk_ld(const nn::Mlp& net, const std::vector<long double>& p, long double x,
                                    long double t) {
  const auto out = nn::forward_flat<long double, long double>(net.spec(), p, {x, t});
  return {out[0], out[1]};
}

// Richardson-extrapolated central differences of order (i, j) in (x, t).
long double fd_derivative(const std::function<long double(long double, long double)>& f, long double x,
                          long double t, int i, int j, long double h) {
  auto stencil = [&](long double step) {
    std::function<long double(long double, long double, int, int)> d = [&](long double xx, long double tt, int a,
                                                                          int b) -> long double {
      if (a >= 2) return (d(xx + step, tt, a - 2, b) - 2 * d(xx, tt, a - 2, b) + d(xx - step, tt, a - 2, b)) / (step * step);
      if (a == 1) return (d(xx + step, tt, 0, b) - d(xx - step, tt, 0, b)) / (2 * step);
      if (b >= 2) return (d(xx, tt + step, 0, b - 2) - 2 * d(xx, tt, 0, b - 2) + d(xx, tt - step, 0, b - 2)) / (step * step);
      if (b == 1) return (d(xx, tt + step, 0, 0) - d(xx, tt - step, 0, 0)) / (2 * step);
      return f(xx, tt);
    };
    return d(x, t, i, j);
  };
  return (4 * stencil(h / 2) - stencil(h)) / 3;
}

double loss_fd(loss::Method m, Model& probe, const std::vector<double>& flat, std::size_t k,
               const sampling::Dataset& data, const physics::CaseDefinition& c) {
  auto at = [&](double step) {
    auto p = flat;
    p[k] += step;
    probe.assign(p);
    return loss::assemble(m, probe, data, c).total;
  };
  auto central = [&](double h) { return (at(h) - at(-h)) / (2 * h); };
  const double h = 1e-4;
  return (4 * central(h / 2) - central(h)) / 3;
}

Outcome autodiff_oracle() {
  Outcome o;
  const auto& c311 = physics::find_case("3.1.1");
  const auto trunk = nn::Mlp::xavier(c311.trunk_spec(), 99);
  const auto flat = trunk.flatten();
  const std::vector<long double> p(flat.begin(), flat.end());
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  const std::array<std::pair<int, int>, 5> orders{{{1, 0}, {0, 1}, {2, 0}, {0, 2}, {2, 1}}};
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const double x = u(rng), t = u(rng);
    const auto [jx, jt] = ad::lift_inputs(x, t);
    const auto out = trunk.forward_jet(jx, jt);
    for (int comp = 0; comp < 2; ++comp) {
      auto f = [&](long double xx, long double tt) { return trunk_ld(trunk, p, xx, tt)[static_cast<std::size_t>(comp)]; };
      for (auto [i, j] : orders) {
        const double jet = out[static_cast<std::size_t>(comp)].extract(i, j);
        const auto fd = static_cast<double>(fd_derivative(f, x, t, i, j, 1e-2L));
        const double rel = std::abs(jet - fd) / std::max(std::abs(fd), 1e-12);
        worst = std::max(worst, rel);
      }
    }
  }
  o.require(worst < 1e-5, fmt::format("jet vs finite differences rel {:.2e}", worst));

  // Loss gradient on a toy problem.
  physics::CaseDefinition toy = physics::find_case("3.1.3");
  toy.trunk_depth = 3;
  toy.trunk_width = 5;
  toy.branch_depth = 3;
  toy.branch_width = 5;
  const auto data = sampling::sample_dataset(toy, sampling::grid_for(toy), {10, 10, 20}, 3);
  double worst_grad = 0.0;
  for (auto m : {loss::Method::Pinn, loss::Method::Gpinn}) {
    const auto model = Model::xavier(toy, 5);
    const auto [report, grad] = loss::loss_and_grad(m, model, data, toy);
    const auto params = model.flatten();
    Model probe = model;
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double fd = loss_fd(m, probe, params, k, data, toy);
      worst_grad = std::max(worst_grad, std::abs(grad[k] - fd) / std::max(std::abs(fd), 1e-8));
    }
  }
  o.require(worst_grad < 1e-4, fmt::format("loss gradient vs finite differences rel {:.2e}", worst_grad));
  o.note(fmt::format("100 points x 2 outputs x 5 derivatives max rel {:.2e}; toy loss gradient max rel {:.2e}", worst,
                     worst_grad));
  return o;
}

// ---------------------------------------------------------------------------

Outcome optimizer_check() {
  Outcome o;
  const optim::LbfgsConfig cfg;
  std::size_t violations = 0;
  auto watch = [&](const optim::IterationInfo& info) {
    if (info.iteration == 0) return;
    const bool armijo = info.f <= info.f_prev + cfg.wolfe_c1 * info.step * info.dg0;
    const bool curvature = std::abs(info.dg1) <= cfg.wolfe_c2 * std::abs(info.dg0);
    if (!armijo || !curvature) ++violations;
  };
  const auto r = optim::minimize(
      [](std::span<const double> x, std::span<double> g) {
        const double a = 1 - x[0], b = x[1] - x[0] * x[0];
        g[0] = -2 * a - 400 * x[0] * b;
        g[1] = 200 * b;
        return a * a + 100 * b * b;
      },
      {-1.2, 1.0}, cfg, watch);
  const double dist = std::hypot(r.x[0] - 1.0, r.x[1] - 1.0);
  o.require(dist < 1e-8, fmt::format("distance {:.2e}", dist));
  o.require(r.iterations <= 200, fmt::format("{} iterations", r.iterations));
  o.require(violations == 0, fmt::format("{} Wolfe violations", violations));
  o.note(fmt::format("{} iterations, {} evaluations, |x - (1,1)| = {:.2e}, stop {}", r.iterations, r.evaluations, dist,
                     optim::to_string(r.reason)));
  return o;
}

// ---------------------------------------------------------------------------

Outcome err_reproduction() {
  Outcome o;
  const auto headline = metrics::err_rates(3.438509e-05, 1.732523e-05, 1.915842e-05, 9.511436e-06);
  o.require(std::abs(headline.err1 - 44.28) <= 0.01 + 1e-9, fmt::format("ERR1 {:.2f}", headline.err1));
  o.require(std::abs(headline.err2 - 45.10) <= 0.01 + 1e-9, fmt::format("ERR2 {:.2f}", headline.err2));
  std::set<std::string_view> mismatched;
  for (const auto& cell : fixture::kErrCells) {
    const auto r = metrics::err_rates(cell.baseline, cell.baseline, cell.value, cell.value);
    if (std::abs(r.err1 - cell.printed) > 0.01 + 1e-9) {
      mismatched.insert(cell.label);
      std::printf("ERRATUM %s: printed %.2f, computed %.2f\n", std::string(cell.label).c_str(), cell.printed, r.err1);
    }
  }
  const std::set<std::string_view> known(fixture::kKnownErrata.begin(), fixture::kKnownErrata.end());
  o.require(mismatched == known, fmt::format("{} cells disagree with their printed rate", mismatched.size()));
  o.note(fmt::format("headline 44.28%/45.10% reproduced; {} of {} cells reproduce, {} known printing errata",
                     fixture::kErrCells.size() - mismatched.size(), fixture::kErrCells.size(), known.size()));
  return o;
}

// ---------------------------------------------------------------------------

bool shared_terms_identical(const loss::LossReport& a, const loss::LossReport& b) {
  return a.mse_u == b.mse_u && a.mse_v == b.mse_v && a.mse_fu == b.mse_fu && a.mse_fv == b.mse_fv &&
         a.mse_u_in == b.mse_u_in && a.mse_v_in == b.mse_v_in && a.mse_coeff == b.mse_coeff;
}

Outcome transfer_invariant() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path() / "tlgpinn_acceptance_transfer";
  std::filesystem::remove_all(dir);
  for (const char* id : {"3.1.1", "3.1.4", "3.2.2b"}) {
    pipeline::RunConfig c;
    c.case_id = id;
    c.method = pipeline::MethodKind::TlGpinn;
    c.counts = {200, 500, 1000};
    c.stage1.max_iter = 100;
    c.stage2.max_iter = 5;
    c.output_dir = dir / id;
    const auto r = pipeline::run(c);
    const auto& end1 = r.stages[0].final_loss;
    const auto& start2 = r.stages[1].history.front();
    o.require(shared_terms_identical(end1, start2), fmt::format("case {} shared terms differ", id));
    o.require(start2.total == end1.total + start2.mse_gu + start2.mse_gv,
              fmt::format("case {} total {:.17g} vs {:.17g}", id, start2.total,
                          end1.total + start2.mse_gu + start2.mse_gv));
    o.note(fmt::format("{}: stage-1 final {:.6e}, stage-2 start {:.6e} (gradient terms {:.3e})", id, end1.total,
                       start2.total, start2.mse_gu + start2.mse_gv));
  }
  std::filesystem::remove_all(dir);
  return o;
}

// ---------------------------------------------------------------------------

Outcome desk_solve(std::size_t seeds) {
  Outcome o;
  std::size_t tl_not_worse = 0;
  for (std::size_t s = 1; s <= seeds; ++s) {
    pipeline::RunConfig c;
    c.case_id = "3.1.1";
    c.sampling_seed = c.init_seed = s;
    c.counts.collocation = 10000;
    c.stage1.max_iter = 5000;
    c.stage2.max_iter = 3000;
    c.method = pipeline::MethodKind::Pinn;
    const auto pinn = pipeline::run(c);
    c.method = pipeline::MethodKind::TlGpinn;
    const auto tl = pipeline::transfer(c, pinn);
    const double re_p = pinn.metrics.coefficients[0].error.re;
    const double re_t = tl.metrics.coefficients[0].error.re;
    if (re_t <= re_p) ++tl_not_worse;
    o.require(re_p < 5e-3, fmt::format("seed {} PINN RE_gamma {:.3e}", s, re_p));
    o.require(tl.seconds() < 1800.0, fmt::format("seed {} TL-gPINN took {:.0f}s", s, tl.seconds()));
    std::printf("  seed %zu: PINN RE_gamma %s (%.0fs, %zu it, %s), TL-gPINN RE_gamma %s (%.0fs total, %zu it, %s)\n", s,
                metrics::format_error(re_p).c_str(), pinn.seconds(), pinn.stages[0].optim.iterations,
                optim::to_string(pinn.stages[0].optim.reason).c_str(), metrics::format_error(re_t).c_str(),
                tl.seconds(), tl.stages[1].optim.iterations, optim::to_string(tl.stages[1].optim.reason).c_str());
    std::fflush(stdout);
  }
  const std::size_t needed = (3 * seeds + 4) / 5;
  o.require(tl_not_worse >= needed, fmt::format("TL-gPINN not worse in {} of {} runs", tl_not_worse, seeds));
  o.note(fmt::format("TL-gPINN RE_gamma <= PINN in {} of {} runs", tl_not_worse, seeds));
  return o;
}

// ---------------------------------------------------------------------------

bool stratified(const std::vector<sampling::Point>& pts, double x0, double x1, double t0, double t1) {
  const std::size_t n = pts.size();
  std::vector<int> bx(n, 0), bt(n, 0);
  for (const auto& p : pts) {
    const auto ix = static_cast<std::size_t>(std::floor((p.x - x0) / (x1 - x0) * static_cast<double>(n)));
    const auto it = static_cast<std::size_t>(std::floor((p.t - t0) / (t1 - t0) * static_cast<double>(n)));
    if (ix >= n || it >= n) return false;
    ++bx[ix];
    ++bt[it];
  }
  return std::all_of(bx.begin(), bx.end(), [](int v) { return v == 1; }) &&
         std::all_of(bt.begin(), bt.end(), [](int v) { return v == 1; });
}

bool same_observations(const std::vector<sampling::Observation>& a, const std::vector<sampling::Observation>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(sampling::Observation)) == 0;
}

Outcome sampling_check() {
  Outcome o;
  for (std::size_t n : {1, 4, 1000})
    o.require(stratified(sampling::latin_hypercube(n, -4, 4, -2, 2, 17), -4, 4, -2, 2),
              fmt::format("LHS n={} not stratified", n));
  const auto& c = physics::find_case("3.1.3");
  const auto grid = sampling::grid_for(c);
  const sampling::SampleCounts counts{200, 2000, 10000};
  const auto a = sampling::sample_dataset(c, grid, counts, 5);
  const auto b = sampling::sample_dataset(c, grid, counts, 5);
  const auto other = sampling::sample_dataset(c, grid, counts, 6);
  o.require(same_observations(a.interior, b.interior) && same_observations(a.boundary, b.boundary),
            "same seed gave different data");
  o.require(!same_observations(a.interior, other.interior), "different seeds gave identical data");
  const auto clean = sampling::corrupt(a, 0.0, 9);
  o.require(same_observations(clean.interior, a.interior) && same_observations(clean.boundary, a.boundary),
            "level 0 is not the identity");
  const auto noisy = sampling::corrupt(a, 0.05, 9);
  std::vector<double> du, clean_u;
  for (std::size_t k = 0; k < a.interior.size(); ++k) {
    du.push_back(noisy.interior[k].u - a.interior[k].u);
    clean_u.push_back(a.interior[k].u);
  }
  const double target = 0.05 * sampling::sample_std(clean_u);
  const double got = sampling::sample_std(du);
  o.require(std::abs(got / target - 1.0) < 0.1, fmt::format("noise std {:.4e} vs target {:.4e}", got, target));
  o.note(fmt::format("LHS exact for n in {{1,4,1000}}; noise std ratio {:.4f} over {} points", got / target, du.size()));
  return o;
}

// ---------------------------------------------------------------------------

Outcome checkpoint_check() {
  Outcome o;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dims(1, 12);
  std::size_t rejected = 0, corruptions = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<nn::Mlp> nets;
    for (int k = 0; k < 1 + trial % 3; ++k) {
      const nn::NetworkSpec spec{dims(rng) % 2 + 1, dims(rng) % 2 + 1, dims(rng) % 5 + 2, dims(rng),
                                 trial % 2 ? nn::Activation::Tanh : nn::Activation::Identity};
      nets.push_back(nn::Mlp::xavier(spec, rng()));
    }
    const auto bytes = ckpt::encode(nets);
    const auto back = ckpt::decode(bytes);
    bool same = back.size() == nets.size();
    for (std::size_t k = 0; same && k < nets.size(); ++k) {
      const auto fa = nets[k].flatten(), fb = back[k].flatten();
      same = nets[k].spec() == back[k].spec() && fa.size() == fb.size() &&
             std::memcmp(fa.data(), fb.data(), fa.size() * sizeof(double)) == 0;
    }
    o.require(same, fmt::format("trial {} round trip not bit-exact", trial));
    // Flip one bit somewhere after the header, truncate, and damage the header.
    std::uniform_int_distribution<std::size_t> pos(12, bytes.size() - 1);
    std::vector<std::string> bad;
    auto flipped = bytes;
    flipped[pos(rng)] ^= static_cast<char>(1 << (trial % 8));
    bad.push_back(flipped);
    bad.push_back(bytes.substr(0, bytes.size() - 1 - static_cast<std::size_t>(trial)));
    auto magic = bytes;
    magic[1] = 'X';
    bad.push_back(magic);
    auto version = bytes;
    version[4] = 9;
    bad.push_back(version);
    for (const auto& b : bad) {
      ++corruptions;
      try {
        ckpt::decode(b);
      } catch (const ckpt::CheckpointError&) {
        ++rejected;
      }
    }
  }
  const auto dir = std::filesystem::temp_directory_path() / "tlgpinn_acceptance_ckpt";
  std::filesystem::create_directories(dir);
  const auto model = Model::xavier(physics::find_case("3.2.2a"), 8);
  ckpt::save_model(dir / "m.tlgp", model);
  o.require(ckpt::load_model(dir / "m.tlgp").flatten() == model.flatten(), "file round trip differs");
  std::filesystem::remove_all(dir);
  o.require(rejected == corruptions, fmt::format("{} of {} corrupted files accepted", corruptions - rejected, corruptions));
  o.note(fmt::format("20 random network lists round-trip bit-exactly; {} of {} corrupted files rejected", rejected,
                     corruptions));
  return o;
}

// ---------------------------------------------------------------------------

Outcome exact_solution_check() {
  Outcome o;
  const auto& c = physics::find_case("3.1.1");
  const auto [u0, v0] = physics::exact_solution(c, 0.0, 0.0);
  o.require(std::abs(u0 - 0.8) < 1e-15 && std::abs(v0) < 1e-15, fmt::format("origin ({}, {})", u0, v0));
  double worst_peak = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double t = -4.0 + 8.0 * k / 19.0;
    // The modulus is sech-shaped in x; maximize it by golden-section search.
    double a = -20.0, b = 20.0;
    const double g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 200; ++it) {
      const double m1 = b - g * (b - a), m2 = a + g * (b - a);
      if (physics::exact_modulus(c, m1, t) < physics::exact_modulus(c, m2, t)) a = m1;
      else b = m2;
    }
    worst_peak = std::max(worst_peak, std::abs(physics::exact_modulus(c, 0.5 * (a + b), t) - 1.0));
  }
  o.require(worst_peak < 1e-10, fmt::format("peak deviation {:.2e}", worst_peak));
  // Changing beta only rotates the phase.
  auto gauge = c;
  gauge.form[static_cast<std::size_t>(physics::Coefficient::Beta)] = physics::ClosedForm::Zero;
  double worst_gauge = 0.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng), t = u(rng);
    worst_gauge = std::max(worst_gauge, std::abs(physics::exact_modulus(c, x, t) - physics::exact_modulus(gauge, x, t)));
  }
  o.require(worst_gauge <= 4 * std::numeric_limits<double>::epsilon(), fmt::format("gauge {:.2e}", worst_gauge));
  o.note(fmt::format("A(0,0) = ({}, {}); max |peak - 1| {:.2e} over 20 times; beta gauge deviation {:.2e}", u0, v0,
                     worst_peak, worst_gauge));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> selected;
  std::size_t seeds = 5;
  app.add_option("--criterion", selected, "criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
  app.add_option("--seeds", seeds, "runs for the desk-scale solve")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"residual oracle", residual_oracle},
      {"autodiff oracle", autodiff_oracle},
      {"optimizer on Rosenbrock", optimizer_check},
      {"ERR reproduction", err_reproduction},
      {"transfer invariant", transfer_invariant},
      {"desk-scale inverse solve", [&] { return desk_solve(seeds); }},
      {"sampling properties", sampling_check},
      {"checkpoint round trip", checkpoint_check},
      {"exact-solution checks", exact_solution_check},
  };
  bool all = true;
  for (int n : selected) {
    const auto& [title, fn] = criteria[static_cast<std::size_t>(n - 1)];
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.details = std::string("exception: ") + e.what();
    }
    std::printf("CRITERION %d %s %s (%s)\n", n, r.pass ? "PASS" : "FAIL", title.c_str(), r.details.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
