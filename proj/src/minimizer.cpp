#include "mif/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <fmt/format.h>

#include "mif/error.hpp"

namespace mif {

namespace {

constexpr std::size_t kMaxTrials = 40;
// Upper bound on how far any particle may move on a first line-search trial.
constexpr double kMaxTrialDisplacement = 0.3;

double dotp(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_particle_norm(std::span<const double> d) {
  double m = 0.0;
  for (std::size_t i = 0; i + 2 < d.size(); i += 3) {
    m = std::max(m, std::sqrt(d[i] * d[i] + d[i + 1] * d[i + 1] + d[i + 2] * d[i + 2]));
  }
  return m;
}

// Energy at a trial point; domain violations (e.g. a Kihara core overlap)
// count as +inf so the line search backs off.
double evaluate(const PotentialModel& m, std::span<const double> x, std::span<double> g) {
  try {
    return energy_and_gradient(m, x, g);
  } catch (const Error& e) {
    if (e.code() == Errc::domain) return std::numeric_limits<double>::infinity();
    throw;
  }
}

struct Trial {
  double a = 0.0;
  double f = 0.0;
  double df = 0.0;
  std::vector<double> x;
  std::vector<double> g;
};

class LineSearch {
 public:
  LineSearch(const PotentialModel& m, std::span<const double> x0, std::span<const double> d, double f0,
             double df0, const RelaxOptions& opts)
      : m_(m), x0_(x0), d_(d), f0_(f0), df0_(df0), c1_(opts.line_search_c1), c2_(opts.line_search_c2),
        // Energy differences below this are indistinguishable from round-off.
        noise_(1e-13 * std::max(1.0, std::abs(f0))) {}

  std::optional<Trial> run(double a_init) {
    Trial prev{0.0, f0_, df0_, {x0_.begin(), x0_.end()}, {}};
    double a = a_init;
    for (bool first = true; trials_ < kMaxTrials; first = false) {
      Trial t = eval(a);
      if (!std::isfinite(t.f) || !sufficient(t) || (!first && t.f > prev.f + noise_)) {
        return zoom(std::move(prev), std::move(t));
      }
      if (curvature(t)) return t;
      if (t.df >= 0.0) return zoom(std::move(t), std::move(prev));
      prev = std::move(t);
      a *= 2.0;
    }
    return std::nullopt;
  }

 private:
  Trial eval(double a) {
    ++trials_;
    Trial t;
    t.a = a;
    t.x.resize(x0_.size());
    t.g.resize(x0_.size());
    for (std::size_t i = 0; i < x0_.size(); ++i) t.x[i] = x0_[i] + a * d_[i];
    t.f = evaluate(m_, t.x, t.g);
    t.df = std::isfinite(t.f) ? dotp(t.g, d_) : std::numeric_limits<double>::quiet_NaN();
    return t;
  }

  bool sufficient(const Trial& t) const { return t.f <= f0_ + c1_ * t.a * df0_ + noise_; }
  bool curvature(const Trial& t) const { return std::abs(t.df) <= -c2_ * df0_; }

  // Minimizer of the cubic matching values and slopes at both ends,
  // safeguarded to the interior of the bracket; falls back to bisection.
  static double interpolate(const Trial& lo, const Trial& hi) {
    const double mid = 0.5 * (lo.a + hi.a);
    if (!std::isfinite(hi.f) || !std::isfinite(hi.df)) return mid;
    const double d1 = lo.df + hi.df - 3.0 * (lo.f - hi.f) / (lo.a - hi.a);
    const double disc = d1 * d1 - lo.df * hi.df;
    if (disc < 0.0) return mid;
    const double d2 = std::copysign(std::sqrt(disc), hi.a - lo.a);
    const double denom = hi.df - lo.df + 2.0 * d2;
    if (denom == 0.0) return mid;
    const double a = hi.a - (hi.a - lo.a) * (hi.df + d2 - d1) / denom;
    const double left = std::min(lo.a, hi.a);
    const double width = std::abs(hi.a - lo.a);
    if (!std::isfinite(a) || a < left + 0.1 * width || a > left + 0.9 * width) return mid;
    return a;
  }

  std::optional<Trial> zoom(Trial lo, Trial hi) {
    while (trials_ < kMaxTrials) {
      if (std::abs(hi.a - lo.a) <= 1e-16 * std::max(1.0, lo.a)) break;
      Trial t = eval(interpolate(lo, hi));
      if (!std::isfinite(t.f) || !sufficient(t) || t.f > lo.f + noise_) {
        hi = std::move(t);
        continue;
      }
      if (curvature(t)) return t;
      if (t.df * (hi.a - lo.a) >= 0.0) hi = std::move(lo);
      lo = std::move(t);
    }
    // Out of trials: a point with sufficient decrease is still a valid step.
    if (lo.a > 0.0) return lo;
    return std::nullopt;
  }

  const PotentialModel& m_;
  std::span<const double> x0_;
  std::span<const double> d_;
  double f0_;
  double df0_;
  double c1_;
  double c2_;
  double noise_;
  std::size_t trials_ = 0;
};

void require_finite_state(double f, std::span<const double> g, std::size_t iter) {
  if (!std::isfinite(f) || !std::isfinite(norm(g))) {
    throw Error(Errc::numeric_breakdown, fmt::format("non-finite energy or gradient at iteration {}", iter));
  }
}

}  // namespace

void RelaxOptions::validate() const {
  if (!(grad_tol > 0.0)) throw Error(Errc::argument, "grad_tol must be positive");
  if (!(line_search_c1 > 0.0 && line_search_c1 < line_search_c2 && line_search_c2 < 1.0)) {
    throw Error(Errc::argument, "line search constants must satisfy 0 < c1 < c2 < 1");
  }
  if (!(delta0 > 0.0 && delta0 < 1.0)) throw Error(Errc::argument, "delta0 must lie in (0, 1)");
}

RelaxResult relax(const PotentialModel& m, const Cluster& c, const RelaxOptions& opts,
                  const IterationTrace& trace) {
  opts.validate();
  if (c.size() < 2) throw Error(Errc::argument, "relaxation needs at least two particles");
  const std::size_t n = c.size();
  const std::size_t max_iters = opts.max_iters ? opts.max_iters : 200 * n;
  const std::size_t restart_period = opts.restart_period ? opts.restart_period : 3 * n;

  std::vector<double> x = c.coordinates();
  std::vector<double> g(x.size());
  double f = energy_and_gradient(m, x, g);
  require_finite_state(f, g, 0);
  const double f_start = f;
  if (trace) trace({0, f, norm(g), 0.0});

  std::vector<double> d(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
  bool steepest = true;
  std::size_t since_restart = 0;
  std::size_t iter = 0;
  double prev_alpha = 0.0;
  double prev_gtd = 0.0;
  bool converged = false;

  while (true) {
    const double gn = norm(g);
    if (gn <= opts.grad_tol) {
      converged = true;
      break;
    }
    if (iter >= max_iters) break;

    double gtd = dotp(g, d);
    if (!(gtd < 0.0)) {
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
      gtd = -gn * gn;
      steepest = true;
      since_restart = 0;
    }

    const double dn = norm(d);
    double a0 = (prev_alpha > 0.0) ? prev_alpha * prev_gtd / gtd : 1.0 / dn;
    if (!(a0 > 0.0) || !std::isfinite(a0)) a0 = 1.0 / dn;
    a0 = std::min(a0, kMaxTrialDisplacement / max_particle_norm(d));

    LineSearch ls(m, x, d, f, gtd, opts);
    auto step = ls.run(a0);
    if (!step) {
      if (steepest) break;
      for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i];
      steepest = true;
      since_restart = 0;
      prev_alpha = 0.0;
      continue;
    }

    require_finite_state(step->f, step->g, iter + 1);
    double gg = 0.0;
    double pr = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      gg += g[i] * g[i];
      pr += step->g[i] * (step->g[i] - g[i]);
    }
    double beta = std::max(0.0, pr / gg);
    if (++since_restart >= restart_period) {
      beta = 0.0;
      since_restart = 0;
    }
    steepest = (beta == 0.0);

    prev_alpha = step->a;
    prev_gtd = gtd;
    const double step_length = step->a * dn;
    x = std::move(step->x);
    g = std::move(step->g);
    f = step->f;
    for (std::size_t i = 0; i < g.size(); ++i) d[i] = -g[i] + beta * d[i];
    ++iter;
    if (trace) trace({iter, f, norm(g), step_length});
  }

  std::optional<std::vector<SiteIndex>> labels;
  if (c.has_labels()) labels.emplace(c.labels().begin(), c.labels().end());
  if (f > f_start) {
    // Only reachable through round-off-level acceptances; never return worse than the input.
    return RelaxResult{c, f_start, norm(cluster_gradient(m, c)), iter, false};
  }
  return RelaxResult{Cluster::from_coordinates(x, std::move(labels)), f, norm(g), iter, converged};
}

bool is_stationary(const PotentialModel& m, const Cluster& c, double delta0) {
  const double e = cluster_energy(m, c);
  if (e == 0.0) throw Error(Errc::domain, "stationarity ratio is undefined at zero energy");
  const double gn = norm(cluster_gradient(m, c));
  return gn <= 1e-4 && gn / std::abs(e) < delta0;
}

}  // namespace mif
