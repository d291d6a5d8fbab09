#pragma once

#include <memory>
#include <span>
#include <vector>

#include "mif/geometry.hpp"
#include "mif/lattice.hpp"
#include "mif/minimizer.hpp"
#include "mif/potentials.hpp"

namespace mif {

// A cluster as a set of site indices of one lattice. Indices are kept sorted.
class IndexCluster {
 public:
  IndexCluster(std::shared_ptr<const Lattice> lattice, std::vector<SiteIndex> indices);

  const Lattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const Lattice>& lattice_ptr() const { return lattice_; }
  std::span<const SiteIndex> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(SiteIndex i) const;

  // Lattice positions in ascending index order, labelled with the indices.
  Cluster positions() const;

  bool operator==(const IndexCluster& o) const {
    return lattice_ == o.lattice_ && indices_ == o.indices_;
  }

 private:
  std::shared_ptr<const Lattice> lattice_;
  std::vector<SiteIndex> indices_;
};

// On = |b \ a|, Off = |a \ b|, Adj = |a symmetric-difference b|.
std::size_t on_count(const IndexCluster& a, const IndexCluster& b);
std::size_t off_count(const IndexCluster& a, const IndexCluster& b);
std::size_t adj(const IndexCluster& a, const IndexCluster& b);

// Removable members: those with a vacant neighbour (default cutoff), those on
// the lattice's outermost shell (the truncated lattice continues beyond it),
// and the central site when it is a member.
std::vector<SiteIndex> k_c(const IndexCluster& c);

// Addable frontier: vacant sites within the default cutoff of some member.
std::vector<SiteIndex> k_if(const IndexCluster& c);

// Candidate energies closer than this count as ties; ties go to the lowest
// site index (for swaps: lowest removed index, then lowest added index).
inline constexpr double kEnergyTieTolerance = 1e-9;

struct PeelResult {
  IndexCluster cluster;
  RelaxResult relaxed;  // relaxed.cluster is labelled with site indices
  double e_init = 0.0;  // energy of the chosen candidate before relaxation
};

// Greedy moves of the modified peeling method. Every candidate is seeded from
// `geometry` (labelled with the member indices; members keep these possibly
// off-lattice coordinates) plus exact lattice positions for added sites, then
// relaxed. Candidates are evaluated concurrently; selection is deterministic.
PeelResult peel_forward(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                        const RelaxOptions& opts = {});
PeelResult peel_forward(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts = {});

PeelResult peel_backward(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                         const RelaxOptions& opts = {});
PeelResult peel_backward(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts = {});

// Best single swap. When no swap beats the relaxed input by more than the tie
// tolerance, the input index set is returned with its own relaxation.
PeelResult peel_itself(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                       const RelaxOptions& opts = {});
PeelResult peel_itself(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts = {});

enum class GeometricType : int { IC = 1, ID = 2, TO = 3, FC = 5 };

const char* to_string(GeometricType t);
GeometricType geometric_type_from_code(int code);

struct ClassifyOptions {
  double com_radius_factor = 0.6;  // times nn_distance
  double axis_tolerance = 1e-3;    // radians from +Y
  double cone_tolerance = 1e-6;
};

// FC if any member is FC-tagged; TO if every member lies in the closed cone
// spanned by one icosahedral face; ID if a particle within the COM radius of
// the relaxed centre of mass sits on the +Y semi-axis; otherwise IC.
GeometricType classify(const IndexCluster& c, const Cluster& relaxed, const ClassifyOptions& opts = {});

}  // namespace mif
