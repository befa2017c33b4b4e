#include "tlgpinn/sampling.hpp"

#include <fmt/format.h>
#include <fmt/os.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace tlgpinn::sampling {

namespace {

// Independent streams per purpose, all derived from one user seed.
std::mt19937_64 stream(std::uint64_t seed, std::uint64_t purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose)};
  return std::mt19937_64(seq);
}

enum Stream : std::uint64_t { kBoundary = 1, kInterior = 2, kCollocation = 3, kNoise = 4 };

std::vector<Observation> observe(const physics::CaseDefinition& c, const GridSpec& g,
                                 const std::vector<std::size_t>& idx) {
  std::vector<Observation> out;
  out.reserve(idx.size());
  for (auto k : idx) {
    const int i = static_cast<int>(k % static_cast<std::size_t>(g.nx));
    const int j = static_cast<int>(k / static_cast<std::size_t>(g.nx));
    const double x = g.x_at(i);
    const double t = g.t_at(j);
    const auto [u, v] = physics::exact_solution(c, x, t);
    out.push_back({x, t, u, v});
  }
  return out;
}

std::vector<std::size_t> draw(const std::vector<std::size_t>& population, std::size_t n, std::mt19937_64& rng,
                              const char* what) {
  if (n > population.size()) {
    throw SamplingError(fmt::format("cannot draw {} {} points from a set of {}", n, what, population.size()));
  }
  std::vector<std::size_t> picked;
  picked.reserve(n);
  std::sample(population.begin(), population.end(), std::back_inserter(picked), n, rng);
  return picked;
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

}  // namespace

void GridSpec::validate() const {
  if (nx < 2 || nt < 2) throw SamplingError("grid needs at least two points per axis");
  if (!(x1 > x0) || !(t1 > t0)) throw SamplingError("grid bounds must be increasing");
}

double GridSpec::x_at(int i) const {
  if (i == nx - 1) return x1;
  return x0 + i * ((x1 - x0) / (nx - 1));
}

double GridSpec::t_at(int j) const {
  if (j == nt - 1) return t1;
  return t0 + j * ((t1 - t0) / (nt - 1));
}

GridSpec grid_for(const physics::CaseDefinition& c) {
  return {c.domain.x0, c.domain.x1, c.domain.t0, c.domain.t1, c.grid_nx, c.grid_nt};
}

std::vector<Point> make_grid(const GridSpec& g) {
  g.validate();
  std::vector<Point> pts;
  pts.reserve(g.size());
  for (int j = 0; j < g.nt; ++j)
    for (int i = 0; i < g.nx; ++i) pts.push_back({g.x_at(i), g.t_at(j)});
  return pts;
}

std::vector<std::size_t> boundary_indices(const GridSpec& g) {
  g.validate();
  const auto nx = static_cast<std::size_t>(g.nx);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < nx; ++i) idx.push_back(i);
  for (std::size_t j = 1; j < static_cast<std::size_t>(g.nt); ++j) {
    idx.push_back(j * nx);
    idx.push_back(j * nx + nx - 1);
  }
  return idx;
}

std::vector<std::size_t> interior_indices(const GridSpec& g) {
  g.validate();
  const auto nx = static_cast<std::size_t>(g.nx);
  std::vector<std::size_t> idx;
  for (std::size_t j = 1; j + 1 < static_cast<std::size_t>(g.nt); ++j)
    for (std::size_t i = 1; i + 1 < nx; ++i) idx.push_back(j * nx + i);
  return idx;
}

bool on_boundary(const GridSpec& g, double x, double t) { return t == g.t0 || x == g.x0 || x == g.x1; }

bool strictly_inside(const GridSpec& g, double x, double t) {
  return x > g.x0 && x < g.x1 && t > g.t0 && t < g.t1;
}

std::vector<Point> latin_hypercube(std::size_t n, double x0, double x1, double t0, double t1, std::uint64_t seed) {
  if (n == 0) throw SamplingError("latin hypercube needs at least one point");
  auto rng = stream(seed, kCollocation);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::size_t> px(n), pt(n);
  std::iota(px.begin(), px.end(), std::size_t{0});
  std::iota(pt.begin(), pt.end(), std::size_t{0});
  std::shuffle(px.begin(), px.end(), rng);
  std::shuffle(pt.begin(), pt.end(), rng);
  const double dn = static_cast<double>(n);
  std::vector<Point> pts(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ux = (static_cast<double>(px[k]) + unit(rng)) / dn;
    const double ut = (static_cast<double>(pt[k]) + unit(rng)) / dn;
    pts[k] = {x0 + ux * (x1 - x0), t0 + ut * (t1 - t0)};
  }
  return pts;
}

std::vector<AnchorSet> anchors_for(const physics::CaseDefinition& c) {
  std::vector<AnchorSet> out;
  const double t0 = c.domain.t0;
  const double t1 = c.domain.t1;
  for (auto coeff : c.learned_coefficients()) {
    const auto form = c.exact(coeff);
    AnchorSet set;
    set.coefficient = coeff;
    set.points.push_back({t0, physics::closed_value(form, t0)});
    if (!physics::is_linear(form)) set.points.push_back({t1, physics::closed_value(form, t1)});
    constexpr int kRef = 500;
    std::vector<double> ref(kRef);
    for (int k = 0; k < kRef; ++k) ref[k] = physics::closed_value(form, t0 + k * (t1 - t0) / (kRef - 1));
    set.scale = sample_std(ref);
    out.push_back(std::move(set));
  }
  return out;
}

Dataset sample_dataset(const physics::CaseDefinition& c, const GridSpec& g, const SampleCounts& n,
                       std::uint64_t seed) {
  g.validate();
  Dataset d;
  auto rb = stream(seed, kBoundary);
  auto ri = stream(seed, kInterior);
  d.boundary = observe(c, g, draw(boundary_indices(g), n.boundary, rb, "boundary"));
  d.interior = observe(c, g, draw(interior_indices(g), n.interior, ri, "interior"));
  d.anchors = anchors_for(c);
  d.collocation = latin_hypercube(n.collocation, g.x0, g.x1, g.t0, g.t1, seed);
  return d;
}

double sample_std(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

Dataset corrupt(const Dataset& d, double level, std::uint64_t seed) {
  if (level < 0.0) throw SamplingError("noise level must be non-negative");
  Dataset out = d;
  if (level == 0.0) return out;
  auto rng = stream(seed, kNoise);
  std::normal_distribution<double> normal(0.0, 1.0);

  auto perturb = [&](std::vector<Observation>& obs) {
    std::vector<double> us, vs;
    for (const auto& o : obs) {
      us.push_back(o.u);
      vs.push_back(o.v);
    }
    const double su = level * sample_std(us);
    const double sv = level * sample_std(vs);
    for (auto& o : obs) {
      o.u += su * normal(rng);
      o.v += sv * normal(rng);
    }
  };
  perturb(out.boundary);
  perturb(out.interior);
  for (auto& set : out.anchors) {
    for (auto& a : set.points) a.value += level * set.scale * normal(rng);
  }
  return out;
}

void write_observations(const std::filesystem::path& path, const std::vector<Observation>& obs) {
  auto f = fmt::output_file(path.string());
  f.print("x,t,u,v\n");
  for (const auto& o : obs) f.print("{},{},{},{}\n", g17(o.x), g17(o.t), g17(o.u), g17(o.v));
}

std::vector<Observation> read_observations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x,t,u,v") {
    throw std::runtime_error(path.string() + ": expected header x,t,u,v");
  }
  std::vector<Observation> obs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    Observation o;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(ss >> o.x >> c1 >> o.t >> c2 >> o.u >> c3 >> o.v) || c1 != ',' || c2 != ',' || c3 != ',') {
      throw std::runtime_error(path.string() + ": malformed record '" + line + "'");
    }
    obs.push_back(o);
  }
  return obs;
}

void write_points(const std::filesystem::path& path, const std::vector<Point>& pts) {
  auto f = fmt::output_file(path.string());
  f.print("x,t\n");
  for (const auto& p : pts) f.print("{},{}\n", g17(p.x), g17(p.t));
}

void write_anchors(const std::filesystem::path& path, const std::vector<AnchorSet>& anchors) {
  auto f = fmt::output_file(path.string());
  f.print("coefficient,t,value\n");
  for (const auto& set : anchors)
    for (const auto& a : set.points) f.print("{},{},{}\n", physics::name(set.coefficient), g17(a.t), g17(a.value));
}

}  // namespace tlgpinn::sampling
