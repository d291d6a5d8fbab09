#include "mif/potentials.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mif/error.hpp"

namespace mif {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

inline double pow6(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(Errc::argument, fmt::format("{} must be positive and finite (got {})", what, v));
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(Errc::argument, fmt::format("{} must be finite", what));
}

void require_positive_distance(double r) {
  if (!(r > 0.0)) throw Error(Errc::domain, fmt::format("pair distance must be positive (got {})", r));
}

// Derivatives of 4 eps (u^12 - u^6) with u = s / r.
struct Lj {
  double eps, s;
  double e(double r) const {
    const double u6 = pow6(s / r);
    return 4.0 * eps * (u6 * u6 - u6);
  }
  double d1(double r) const {
    const double u6 = pow6(s / r);
    return 4.0 * eps * (-12.0 * u6 * u6 + 6.0 * u6) / r;
  }
  double d2(double r) const {
    const double u6 = pow6(s / r);
    return 4.0 * eps * (156.0 * u6 * u6 - 42.0 * u6) / (r * r);
  }
};

// Kihara in terms of w = r / sigma - gamma: V = 4 eps ((1-g)^12 / w^12 - (1-g)^6 / w^6).
struct Ki {
  double eps, sigma, gamma;
  double w(double r) const {
    const double v = r / sigma - gamma;
    if (!(v > 0.0)) {
      throw Error(Errc::domain,
                  fmt::format("Kihara pair distance {} is inside the hard core (r/sigma <= gamma)", r));
    }
    return v;
  }
  double e(double r) const {
    const double u6 = pow6((1.0 - gamma) / w(r));
    return 4.0 * eps * (u6 * u6 - u6);
  }
  double d1(double r) const {
    const double ww = w(r);
    const double u6 = pow6((1.0 - gamma) / ww);
    return 4.0 * eps * (-12.0 * u6 * u6 + 6.0 * u6) / (ww * sigma);
  }
  double d2(double r) const {
    const double ww = w(r);
    const double u6 = pow6((1.0 - gamma) / ww);
    return 4.0 * eps * (156.0 * u6 * u6 - 42.0 * u6) / (ww * ww * sigma * sigma);
  }
};

// (1 - exp(-a (r - 1)))^2 - 1
struct Mo {
  double a;
  double e(double r) const {
    const double x = 1.0 - std::exp(-a * (r - 1.0));
    return x * x - 1.0;
  }
  double d1(double r) const {
    const double ex = std::exp(-a * (r - 1.0));
    return 2.0 * a * ex * (1.0 - ex);
  }
  double d2(double r) const {
    const double ex = std::exp(-a * (r - 1.0));
    return 2.0 * a * a * ex * (2.0 * ex - 1.0);
  }
};

struct Bu {
  double a, b, g;
  double e(double r) const { return a * std::exp(b * r) + g / pow6(r); }
  double d1(double r) const { return a * b * std::exp(b * r) - 6.0 * g / (pow6(r) * r); }
  double d2(double r) const { return a * b * b * std::exp(b * r) + 42.0 * g / (pow6(r) * r * r); }
};

template <class F>
double dispatch(const PotentialModel& m, double r, F&& f) {
  return std::visit(
      overloaded{
          [&](const LennardJones& p) {
            require_positive_distance(r);
            return f(Lj{p.epsilon0, p.sigma}, r);
          },
          [&](const Morse& p) {
            if (!(r >= 0.0)) throw Error(Errc::domain, "pair distance must be nonnegative");
            return f(Mo{p.alpha}, r);
          },
          [&](const Buckingham& p) {
            require_positive_distance(r);
            return f(Bu{p.alpha, p.beta, p.gamma}, r);
          },
          [&](const Kihara& p) {
            require_positive_distance(r);
            return f(Ki{p.epsilon0, p.sigma, p.gamma}, r);
          },
      },
      m.params());
}

// Neumaier-compensated running sum; keeps energy round-off near machine
// precision so the line search can resolve tiny decreases.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

PotentialModel::PotentialModel(Params p) : params_(std::move(p)) {
  std::visit(overloaded{
                 [](const LennardJones& q) {
                   require_positive(q.epsilon0, "LJ epsilon0");
                   require_positive(q.sigma, "LJ sigma");
                 },
                 [](const Morse& q) { require_positive(q.alpha, "Morse alpha"); },
                 [](const Buckingham& q) {
                   require_finite(q.alpha, "Buckingham alpha");
                   require_finite(q.beta, "Buckingham beta");
                   require_finite(q.gamma, "Buckingham gamma");
                 },
                 [](const Kihara& q) {
                   require_positive(q.epsilon0, "Kihara epsilon0");
                   require_positive(q.sigma, "Kihara sigma");
                   require_finite(q.gamma, "Kihara gamma");
                   if (q.gamma >= 1.0) throw Error(Errc::argument, "Kihara gamma must be < 1");
                 },
             },
             params_);
}

const char* PotentialModel::name() const {
  return std::visit(overloaded{[](const LennardJones&) { return "LJ"; },
                               [](const Morse&) { return "MO"; },
                               [](const Buckingham&) { return "BU"; },
                               [](const Kihara&) { return "KI"; }},
                    params_);
}

double pair_energy(const PotentialModel& m, double r) {
  return dispatch(m, r, [](const auto& f, double x) { return f.e(x); });
}

double pair_energy_d1(const PotentialModel& m, double r) {
  return dispatch(m, r, [](const auto& f, double x) { return f.d1(x); });
}

double pair_energy_d2(const PotentialModel& m, double r) {
  return dispatch(m, r, [](const auto& f, double x) { return f.d2(x); });
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double energy_and_gradient(const PotentialModel& m, std::span<const double> xyz,
                           std::span<double> grad) {
  const std::size_t n = xyz.size() / 3;
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);

  auto body = [&](const auto& f) {
    CompensatedSum energy;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dx = xyz[3 * i] - xyz[3 * j];
        const double dy = xyz[3 * i + 1] - xyz[3 * j + 1];
        const double dz = xyz[3 * i + 2] - xyz[3 * j + 2];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        energy.add(f.e(r));
        if (want_grad) {
          const double s = f.d1(r) / r;
          grad[3 * i] += s * dx;
          grad[3 * i + 1] += s * dy;
          grad[3 * i + 2] += s * dz;
          grad[3 * j] -= s * dx;
          grad[3 * j + 1] -= s * dy;
          grad[3 * j + 2] -= s * dz;
        }
      }
    }
    return energy.value();
  };

  // Domain checks happen per pair below through the evaluator structs; the LJ
  // and Buckingham forms need an explicit positivity guard.
  return std::visit(
      overloaded{
          [&](const LennardJones& p) {
            struct Guarded : Lj {
              double e(double r) const {
                require_positive_distance(r);
                return Lj::e(r);
              }
            };
            return body(Guarded{{p.epsilon0, p.sigma}});
          },
          [&](const Morse& p) { return body(Mo{p.alpha}); },
          [&](const Buckingham& p) {
            struct Guarded : Bu {
              double e(double r) const {
                require_positive_distance(r);
                return Bu::e(r);
              }
            };
            return body(Guarded{{p.alpha, p.beta, p.gamma}});
          },
          [&](const Kihara& p) { return body(Ki{p.epsilon0, p.sigma, p.gamma}); },
      },
      m.params());
}

double cluster_energy(const PotentialModel& m, const Cluster& c) {
  if (c.size() < 2) throw Error(Errc::argument, "cluster energy needs at least two points");
  const auto xyz = c.coordinates();
  return energy_and_gradient(m, xyz, {});
}

std::vector<double> cluster_gradient(const PotentialModel& m, const Cluster& c) {
  if (c.size() < 2) throw Error(Errc::argument, "cluster gradient needs at least two points");
  const auto xyz = c.coordinates();
  std::vector<double> g(xyz.size());
  energy_and_gradient(m, xyz, g);
  return g;
}

std::vector<double> normalized_gradient(const PotentialModel& m, const Cluster& c) {
  auto g = cluster_gradient(m, c);
  const double n = norm(g);
  if (!(n > 1e-14)) {
    throw Error(Errc::degenerate_direction,
                fmt::format("gradient norm {} is too small to normalize", n));
  }
  for (double& x : g) x /= n;
  return g;
}

std::vector<DistanceClass> distance_classes(const Cluster& c, double tol) {
  if (c.size() < 2) throw Error(Errc::argument, "distance classes need at least two points");
  if (!(tol > 0.0)) throw Error(Errc::argument, "class tolerance must be positive");
  std::vector<double> d;
  d.reserve(c.size() * (c.size() - 1) / 2);
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) d.push_back(distance(c[i], c[j]));
  std::sort(d.begin(), d.end());

  std::vector<DistanceClass> out;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (count > 0 && d[k] - d[k - 1] > tol) {
      out.push_back({sum / static_cast<double>(count), count});
      sum = 0.0;
      count = 0;
    }
    sum += d[k];
    ++count;
  }
  out.push_back({sum / static_cast<double>(count), count});
  return out;
}

double classed_energy(const PotentialModel& m, std::span<const DistanceClass> classes) {
  if (classes.empty()) throw Error(Errc::argument, "no distance classes given");
  CompensatedSum e;
  for (const auto& cls : classes) {
    e.add(static_cast<double>(cls.multiplicity) * pair_energy(m, cls.representative_distance));
  }
  return e.value();
}

}  // namespace mif
