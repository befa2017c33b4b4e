#include "tlgpinn/optimizer.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <deque>
#include <limits>

#include <Eigen/Core>

namespace tlgpinn::optim {

namespace {

using Vec = Eigen::VectorXd;
using CMap = Eigen::Map<const Vec>;

double inf_norm(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Minimizer of the cubic through (a, fa, ga) and (b, fb, gb); NaN when the
// cubic has no interior minimum.
double cubic_min(double a, double fa, double ga, double b, double fb, double gb) {
  const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - ga * gb;
  if (!(disc >= 0.0) || !std::isfinite(disc)) return std::numeric_limits<double>::quiet_NaN();
  const double d2 = std::copysign(std::sqrt(disc), b - a);
  const double denom = gb - ga + 2.0 * d2;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return b - (b - a) * (gb + d2 - d1) / denom;
}

struct Trial {
  double alpha = 0.0;
  double f = 0.0;
  double dg = 0.0;
  Vec x;
  Vec g;
};

enum class SearchStatus { Ok, Failed };

class LineSearch {
 public:
  LineSearch(const ObjectiveFn& fn, const LbfgsConfig& cfg, std::size_t& evals)
      : fn_(fn), cfg_(cfg), evals_(evals) {}

  // On success `out` holds the accepted point, which is also the last point
  // evaluated.  On failure it holds the lowest sufficient-decrease point, or
  // alpha = 0 if none was found.
  SearchStatus run(const Vec& x, double f0, const Vec& g0, const Vec& p, double alpha0, Trial& out) {
    x_ = &x;
    p_ = &p;
    f0_ = f0;
    dg0_ = g0.dot(p);
    trials_ = 0;
    best_ = Trial{0.0, f0, dg0_, x, g0};

    Trial prev = best_;
    double alpha = alpha0;
    for (bool first = true;; first = false) {
      if (trials_ >= cfg_.max_linesearch) break;
      Trial cur = evaluate(alpha);
      if (!armijo(cur) || (!first && cur.f >= prev.f)) {
        return zoom(std::move(prev), std::move(cur), out);
      }
      if (std::abs(cur.dg) <= -cfg_.wolfe_c2 * dg0_) {
        out = std::move(cur);
        return SearchStatus::Ok;
      }
      if (cur.dg >= 0.0) return zoom(std::move(cur), std::move(prev), out);
      double next = cubic_min(prev.alpha, prev.f, prev.dg, cur.alpha, cur.f, cur.dg);
      const double lo = cur.alpha + 1.1 * (cur.alpha - prev.alpha);
      const double hi = cur.alpha + 10.0 * (cur.alpha - prev.alpha);
      if (!std::isfinite(next) || next < lo) next = lo;
      if (next > hi) next = hi;
      prev = std::move(cur);
      alpha = next;
    }
    out = best_;
    return SearchStatus::Failed;
  }

 private:
  Trial evaluate(double alpha) {
    Trial t;
    t.alpha = alpha;
    t.x = *x_ + alpha * *p_;
    t.g.resize(t.x.size());
    t.f = fn_(std::span<const double>(t.x.data(), static_cast<std::size_t>(t.x.size())),
              std::span<double>(t.g.data(), static_cast<std::size_t>(t.g.size())));
    ++evals_;
    ++trials_;
    t.dg = t.g.dot(*p_);
    if (!std::isfinite(t.f) || !std::isfinite(t.dg)) {
      t.f = std::numeric_limits<double>::infinity();
      t.dg = std::numeric_limits<double>::quiet_NaN();
    } else if (armijo(t) && t.f < best_.f) {
      best_ = t;
    }
    return t;
  }

  bool armijo(const Trial& t) const { return t.f <= f0_ + cfg_.wolfe_c1 * t.alpha * dg0_; }

  // lo satisfies sufficient decrease with the lowest value seen so far and
  // its slope points towards hi.
  SearchStatus zoom(Trial lo, Trial hi, Trial& out) {
    while (trials_ < cfg_.max_linesearch) {
      const double a = std::min(lo.alpha, hi.alpha), b = std::max(lo.alpha, hi.alpha);
      const double width = b - a;
      if (width <= DBL_EPSILON * std::max(1.0, b)) break;
      double alpha = std::isfinite(hi.f) ? cubic_min(lo.alpha, lo.f, lo.dg, hi.alpha, hi.f, hi.dg)
                                         : std::numeric_limits<double>::quiet_NaN();
      if (!std::isfinite(alpha) || alpha < a + 0.1 * width || alpha > b - 0.1 * width) alpha = 0.5 * (a + b);
      Trial cur = evaluate(alpha);
      if (!armijo(cur) || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.dg) <= -cfg_.wolfe_c2 * dg0_) {
        out = std::move(cur);
        return SearchStatus::Ok;
      }
      if (cur.dg * (hi.alpha - lo.alpha) >= 0.0) hi = std::move(lo);
      lo = std::move(cur);
    }
    out = best_;
    return SearchStatus::Failed;
  }

  const ObjectiveFn& fn_;
  const LbfgsConfig& cfg_;
  std::size_t& evals_;
  const Vec* x_ = nullptr;
  const Vec* p_ = nullptr;
  double f0_ = 0.0;
  double dg0_ = 0.0;
  std::size_t trials_ = 0;
  Trial best_;
};

struct Pair {
  Vec s;
  Vec y;
  double rho;
};

Vec two_loop(const std::deque<Pair>& pairs, const Vec& g) {
  Vec q = -g;
  std::vector<double> a(pairs.size());
  for (std::size_t i = pairs.size(); i-- > 0;) {
    a[i] = pairs[i].rho * pairs[i].s.dot(q);
    q -= a[i] * pairs[i].y;
  }
  if (!pairs.empty()) {
    const Pair& last = pairs.back();
    q *= last.s.dot(last.y) / last.y.squaredNorm();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double b = pairs[i].rho * pairs[i].y.dot(q);
    q += (a[i] - b) * pairs[i].s;
  }
  return q;
}

}  // namespace

void LbfgsConfig::validate() const {
  if (memory < 1) throw ConfigError("L-BFGS memory must be at least 1");
  if (!(wolfe_c1 > 0.0 && wolfe_c1 < wolfe_c2 && wolfe_c2 < 1.0))
    throw ConfigError("Wolfe constants must satisfy 0 < c1 < c2 < 1");
  if (!(grad_tol >= 0.0) || !(ftol >= 0.0)) throw ConfigError("tolerances must be non-negative");
  if (max_linesearch < 1) throw ConfigError("max_linesearch must be at least 1");
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::GradTol:
      return "GradTol";
    case StopReason::FTol:
      return "FTol";
    case StopReason::MaxIter:
      return "MaxIter";
    case StopReason::LineSearchFail:
      return "LineSearchFail";
  }
  return "?";
}

OptimResult minimize(const ObjectiveFn& objective, std::vector<double> x0, const LbfgsConfig& config,
                     const ProgressFn& progress) {
  config.validate();
  OptimResult result;
  Vec x = CMap(x0.data(), static_cast<Eigen::Index>(x0.size()));
  Vec g(x.size());
  double f = objective(std::span<const double>(x.data(), x0.size()), std::span<double>(g.data(), x0.size()));
  result.evaluations = 1;
  result.history.push_back({0, f, inf_norm(g)});
  if (progress) progress({0, f, inf_norm(g), f, 0.0, 0.0, 0.0, result.evaluations});

  std::deque<Pair> pairs;
  LineSearch search(objective, config, result.evaluations);
  result.reason = StopReason::MaxIter;
  if (!std::isfinite(f)) result.reason = StopReason::LineSearchFail;

  while (result.reason == StopReason::MaxIter) {
    if (inf_norm(g) <= config.grad_tol) {
      result.reason = StopReason::GradTol;
      break;
    }
    if (result.iterations >= config.max_iter) break;

    Vec p = two_loop(pairs, g);
    double dg0 = g.dot(p);
    if (!(dg0 < 0.0)) {
      pairs.clear();
      p = -g;
      dg0 = g.dot(p);
    }
    const double alpha0 = pairs.empty() ? std::min(1.0, 1.0 / p.norm()) : 1.0;

    Trial next;
    const SearchStatus status = search.run(x, f, g, p, alpha0, next);
    if (status == SearchStatus::Failed) {
      if (next.alpha > 0.0) {
        x = std::move(next.x);
        g = std::move(next.g);
        f = next.f;
      }
      result.reason = StopReason::LineSearchFail;
      break;
    }

    const double f_prev = f;
    Vec s = next.x - x;
    Vec y = next.g - g;
    x = std::move(next.x);
    g = std::move(next.g);
    f = next.f;
    ++result.iterations;

    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      pairs.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (pairs.size() > config.memory) pairs.pop_front();
    }

    const double gnorm = inf_norm(g);
    result.history.push_back({result.iterations, f, gnorm});
    if (progress) progress({result.iterations, f, gnorm, f_prev, next.alpha, dg0, next.dg, result.evaluations});

    const double scale = std::max({std::abs(f_prev), std::abs(f), DBL_MIN});
    if ((f_prev - f) / scale <= config.ftol && gnorm > config.grad_tol) result.reason = StopReason::FTol;
  }

  result.x.assign(x.data(), x.data() + x.size());
  result.f = f;
  return result;
}

}  // namespace tlgpinn::optim
