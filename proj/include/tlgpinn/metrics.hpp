#pragma once

// Error measures: coefficient MAE and relative L2 error on an equidistant
// time grid, field relative L2 errors over the reference grid, and the error
// reduction rate of a method against the PINN baseline.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlgpinn/model.hpp"
#include "tlgpinn/physics.hpp"
#include "tlgpinn/sampling.hpp"

namespace tlgpinn::metrics {

inline constexpr std::size_t kCoefficientPoints = 500;

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CoeffError {
  double mae = 0.0;
  double re = 0.0;
};

/// t0 + k (t1 - t0) / (n - 1) for k = 0..n-1, with the last point exactly t1.
std::vector<double> equidistant(double t0, double t1, std::size_t n);

CoeffError coeff_errors(const std::function<double(double)>& predicted, const std::function<double(double)>& exact,
                        double t0, double t1, std::size_t n = kCoefficientPoints);

struct FieldErrors {
  double re_u = 0.0;
  double re_v = 0.0;
  double re_absA = 0.0;
};

FieldErrors field_errors(std::span<const double> u, std::span<const double> v, std::span<const double> u_exact,
                         std::span<const double> v_exact);

/// Trunk outputs at the points, evaluated in batches.
std::pair<std::vector<double>, std::vector<double>> predict(const nn::Mlp& trunk,
                                                            std::span<const sampling::Point> points);

FieldErrors field_errors(const nn::Mlp& trunk, const physics::CaseDefinition& c, const sampling::GridSpec& grid);

struct ErrRates {
  double err1 = 0.0;  ///< MAE reduction, percent
  double err2 = 0.0;  ///< RE reduction, percent
};

/// Reduction rates in percent, rounded to 0.01.
ErrRates err_rates(double baseline_mae, double baseline_re, double new_mae, double new_re);

double round_percent(double pct);

struct CoefficientMetrics {
  physics::Coefficient coefficient = physics::Coefficient::Gamma;
  CoeffError error;
};

struct MetricBundle {
  std::vector<CoefficientMetrics> coefficients;  ///< learned ones, registry order
  FieldErrors field;
};

MetricBundle evaluate(const Model& model, const physics::CaseDefinition& c);

struct CurveSample {
  double t = 0.0;
  double predicted = 0.0;
  double exact = 0.0;
};

std::vector<CurveSample> coefficient_curve(const Model& model, const physics::CaseDefinition& c,
                                           physics::Coefficient k, std::size_t n = kCoefficientPoints);

/// Six significant digits in scientific notation, e.g. 1.915842e-05.
std::string format_error(double v);
/// Two decimals, e.g. 44.28.
std::string format_percent(double v);

}  // namespace tlgpinn::metrics
