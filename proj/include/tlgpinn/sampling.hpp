#pragma once

// Training data: the equidistant reference grid, random boundary and interior
// subsets carrying exact (u, v), coefficient anchors, Latin-hypercube
// collocation points, and additive Gaussian corruption.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlgpinn/physics.hpp"

namespace tlgpinn::sampling {

class SamplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  double x0 = -4.0;
  double x1 = 4.0;
  double t0 = -4.0;
  double t1 = 4.0;
  int nx = 513;
  int nt = 201;

  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt); }
  double x_at(int i) const;
  double t_at(int j) const;
};

GridSpec grid_for(const physics::CaseDefinition& c);

struct Point {
  double x = 0.0;
  double t = 0.0;
};

/// Grid points, row-major with one row per time level: index = j * nx + i.
std::vector<Point> make_grid(const GridSpec& g);

struct Observation {
  double x = 0.0;
  double t = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct Anchor {
  double t = 0.0;
  double value = 0.0;
};

struct AnchorSet {
  physics::Coefficient coefficient = physics::Coefficient::Gamma;
  std::vector<Anchor> points;
  double scale = 0.0;  ///< noise reference: std of the exact coefficient over [t0, t1]
};

struct Dataset {
  std::vector<Observation> boundary;
  std::vector<Observation> interior;
  std::vector<AnchorSet> anchors;  ///< one per learned coefficient, registry order
  std::vector<Point> collocation;
};

/// Grid indices (j * nx + i) of the boundary set: the t = t0 row and both
/// spatial edges over the remaining time levels.
std::vector<std::size_t> boundary_indices(const GridSpec& g);
/// Grid indices strictly inside the domain.
std::vector<std::size_t> interior_indices(const GridSpec& g);

bool on_boundary(const GridSpec& g, double x, double t);
bool strictly_inside(const GridSpec& g, double x, double t);

std::vector<Point> latin_hypercube(std::size_t n, double x0, double x1, double t0, double t1,
                                   std::uint64_t seed);

std::vector<AnchorSet> anchors_for(const physics::CaseDefinition& c);

struct SampleCounts {
  std::size_t boundary = 200;
  std::size_t interior = 2000;
  std::size_t collocation = 10000;
};

Dataset sample_dataset(const physics::CaseDefinition& c, const GridSpec& g, const SampleCounts& n,
                       std::uint64_t seed);

/// Additive zero-mean Gaussian noise with standard deviation level * sigma,
/// sigma being the sample std of each clean slice (boundary u, boundary v,
/// interior u, interior v) or the anchor set's reference scale.
Dataset corrupt(const Dataset& d, double level, std::uint64_t seed);

double sample_std(const std::vector<double>& values);

// Delimited text: header "x,t,u,v", 17 significant digits.
void write_observations(const std::filesystem::path& path, const std::vector<Observation>& obs);
std::vector<Observation> read_observations(const std::filesystem::path& path);
void write_points(const std::filesystem::path& path, const std::vector<Point>& pts);
void write_anchors(const std::filesystem::path& path, const std::vector<AnchorSet>& anchors);

}  // namespace tlgpinn::sampling
