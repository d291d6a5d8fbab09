#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mif/geometry.hpp"

namespace mif {

// Radial spacing between consecutive icosahedral shells.
inline constexpr double kShellStep = 1.08183839;

// Neighbour cutoff as a multiple of the nearest-neighbour distance: the upper
// end of the LJ convex basin (1.2444551) divided by the pair minimum 2^(1/6).
inline constexpr double kNeighborCutoffFactor = 1.2444551 / 1.122462048309373;

enum class Sublattice : std::uint8_t { IC, FC };

const char* to_string(Sublattice s);

struct Site {
  Point3 position;
  std::size_t shell = 0;
  Sublattice sublattice = Sublattice::IC;
  // Position of this site in the IF lattice with the same shell count; equal to
  // the lattice position for gen_if, preserved for the gen_ic/gen_fc subsets.
  SiteIndex index = 0;
};

// Immutable site set with a uniform-grid spatial index.
class Lattice {
 public:
  Lattice(std::vector<Site> sites, std::size_t shells, double step = kShellStep);

  std::size_t size() const { return sites_.size(); }
  const Site& operator[](std::size_t i) const { return sites_[i]; }
  std::span<const Site> sites() const { return sites_; }
  std::size_t shells() const { return shells_; }
  double step() const { return step_; }
  // Center-to-vertex separation of the innermost icosahedron.
  double nn_distance() const { return step_; }
  double default_cutoff() const { return kNeighborCutoffFactor * nn_distance(); }

  // Positions j != i within `cutoff` of site i, ascending.
  std::vector<std::size_t> neighbors(std::size_t i, double cutoff) const;
  std::vector<std::size_t> neighbors(std::size_t i) const { return neighbors(i, default_cutoff()); }

  // The unique site within `tol` of p. Throws Errc::ambiguous_match when two
  // or more sites qualify.
  std::optional<std::size_t> locate(const Point3& p, double tol) const;

 private:
  template <class F>
  void for_each_near(const Point3& p, double radius, F&& f) const;

  std::vector<Site> sites_;
  std::size_t shells_;
  double step_;

  Point3 origin_;
  double cell_;
  std::int64_t dims_[3] = {1, 1, 1};
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> cell_items_;
};

// Closed-form site count of gen_if(shells).
std::size_t if_site_count(std::size_t shells);

// IC Mackay shells plus FC stacking sites, shell by shell; within a shell IC
// sites come first, each group in canonical cylindrical order.
Lattice gen_if(std::size_t shells);
Lattice gen_ic(std::size_t shells);
Lattice gen_fc(std::size_t shells);

// Smallest shell count whose outer shell encloses `radius`, plus one.
std::size_t shells_enclosing(double radius, double step = kShellStep);

}  // namespace mif
