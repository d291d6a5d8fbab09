#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "mif/geometry.hpp"

namespace mif {

struct LennardJones {
  double epsilon0 = 1.0;
  double sigma = 1.0;
};

struct Morse {
  double alpha = 6.0;
};

// alpha * exp(beta * r) + gamma / r^6
struct Buckingham {
  double alpha = 1.0;
  double beta = -1.0;
  double gamma = -1.0;
};

// Lennard-Jones with a hard core: u = (1 - gamma) / (r / sigma - gamma).
struct Kihara {
  double epsilon0 = 1.0;
  double sigma = 1.0;
  double gamma = 0.0;
};

class PotentialModel {
 public:
  using Params = std::variant<LennardJones, Morse, Buckingham, Kihara>;

  PotentialModel() = default;  // LJ(1, 1)
  PotentialModel(Params p);    // validates parameter constraints

  const Params& params() const { return params_; }
  const char* name() const;

 private:
  Params params_{LennardJones{}};
};

// Reduced-unit Lennard-Jones pair properties.
struct LjScalarProperties {
  static inline const double r_star = std::pow(2.0, 1.0 / 6.0);
  static constexpr double e_at_r_star = -1.0;
  // Interval on which E'' > 0 (the convex basin of the pair well).
  static constexpr double basin_lo = 1.0536668;
  static constexpr double basin_hi = 1.2444551;
  static constexpr double basin_energy_bound = -0.78698215;
  // E(r* + xi) ~ -1 + K xi^2
  static inline const double series_k = 18.0 * std::pow(2.0, 2.0 / 3.0);
};

double pair_energy(const PotentialModel& m, double r);
double pair_energy_d1(const PotentialModel& m, double r);
double pair_energy_d2(const PotentialModel& m, double r);

double cluster_energy(const PotentialModel& m, const Cluster& c);
std::vector<double> cluster_gradient(const PotentialModel& m, const Cluster& c);
// Throws Errc::degenerate_direction when the gradient norm is <= 1e-14.
std::vector<double> normalized_gradient(const PotentialModel& m, const Cluster& c);

// Energy and gradient over a flat coordinate buffer (3n entries). `grad` may be
// empty to skip the gradient. Used by the minimizer's inner loop.
double energy_and_gradient(const PotentialModel& m, std::span<const double> xyz,
                           std::span<double> grad);

double norm(std::span<const double> v);

struct DistanceClass {
  double representative_distance = 0.0;
  std::size_t multiplicity = 0;
};

inline constexpr double kDefaultClassTolerance = 1e-6;

// Pair distances grouped by single linkage: a sorted distance starts a new
// class when it exceeds the previous member by more than `tol`. The
// representative is the class mean.
std::vector<DistanceClass> distance_classes(const Cluster& c, double tol = kDefaultClassTolerance);

double classed_energy(const PotentialModel& m, std::span<const DistanceClass> classes);

}  // namespace mif
