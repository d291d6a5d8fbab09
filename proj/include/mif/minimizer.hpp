#pragma once

#include <cstddef>
#include <functional>

#include "mif/geometry.hpp"
#include "mif/potentials.hpp"

namespace mif {

struct RelaxOptions {
  double grad_tol = 1e-8;
  // 0 selects the size-dependent defaults: 200 n iterations, restart every 3 n.
  std::size_t max_iters = 0;
  std::size_t restart_period = 0;
  double line_search_c1 = 1e-4;
  double line_search_c2 = 0.4;
  double delta0 = 1e-6;

  void validate() const;
};

struct IterationRecord {
  std::size_t iteration;
  double energy;
  double grad_norm;
  double step_length;  // Euclidean length of the accepted displacement
};

// Optional per-iteration observer; called once for the starting point
// (iteration 0, step 0) and once per accepted step.
using IterationTrace = std::function<void(const IterationRecord&)>;

struct RelaxResult {
  Cluster cluster;
  double energy = 0.0;
  double grad_norm = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Local minimization by Polak-Ribiere-plus conjugate gradients with a
// strong-Wolfe line search. Labels of the input cluster are carried through.
// Throws Errc::numeric_breakdown if an accepted iterate is not finite.
RelaxResult relax(const PotentialModel& m, const Cluster& c, const RelaxOptions& opts = {},
                  const IterationTrace& trace = {});

// True iff |grad| <= 1e-4 and |grad| / |E| < delta0. Throws Errc::domain when
// the energy is exactly zero.
bool is_stationary(const PotentialModel& m, const Cluster& c, double delta0 = 1e-6);

}  // namespace mif
