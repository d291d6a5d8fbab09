#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mif/cluster_ops.hpp"

namespace mif {

// One row of the directory: how to get C_n from C_{n+1} (or, for the seed
// n = n_max, the full member list in `on_indices`).
struct CatalogEntry {
  std::size_t n = 0;
  std::vector<SiteIndex> on_indices;
  std::vector<SiteIndex> off_indices;
  std::optional<GeometricType> type;
  std::optional<double> e_init;
  std::optional<double> e_min;
  std::optional<std::size_t> adj_count;

  bool operator==(const CatalogEntry&) const = default;
};

// Site table plus a contiguous chain of entries n_max, n_max-1, ..., n_min.
// The constructor checks chain integrity and throws Errc::catalog_integrity.
class Catalog {
 public:
  Catalog(std::vector<Point3> site_table, std::vector<CatalogEntry> entries);
  // As above with explicit site tags (parallel to site_table) instead of
  // recovering them by locating the sites on a generated IF lattice.
  Catalog(std::vector<Point3> site_table, std::vector<CatalogEntry> entries,
          std::vector<std::pair<std::size_t, Sublattice>> tags);

  std::span<const Point3> site_table() const { return site_table_; }
  // Entries in descending n.
  std::span<const CatalogEntry> entries() const { return entries_; }
  const CatalogEntry& entry(std::size_t n) const;
  std::size_t n_min() const { return entries_.back().n; }
  std::size_t n_max() const { return entries_.front().n; }

  // The site table as a lattice (site i of the table is lattice site i).
  const std::shared_ptr<const Lattice>& lattice() const { return lattice_; }

  bool operator==(const Catalog& o) const {
    return site_table_ == o.site_table_ && entries_ == o.entries_;
  }

 private:
  void validate() const;

  std::vector<Point3> site_table_;
  std::vector<CatalogEntry> entries_;
  std::shared_ptr<const Lattice> lattice_;
};

// Applies the delta chain from the seed down to n.
IndexCluster reconstruct(const Catalog& cat, std::size_t n);

// Expected energies/types are compared within this tolerance.
inline constexpr double kCatalogEnergyTolerance = 1e-4;

struct LookupResult {
  IndexCluster cluster;
  RelaxResult relaxed;
  double e_init = 0.0;
  GeometricType type = GeometricType::IC;
  // False when the entry carries an expectation (type, e_init, e_min) that the
  // computation does not reproduce.
  bool matches_expected = true;
};

LookupResult lookup_and_relax(const Catalog& cat, const PotentialModel& m, std::size_t n,
                              const RelaxOptions& opts = {});

// Chain of clusters with sizes descending by exactly one on a shared lattice.
// Referenced sites are re-indexed densely in lattice order.
Catalog build_catalog(std::span<const IndexCluster> chain);

// Fills type, e_init and e_min of every entry from lookup_and_relax.
Catalog annotate(const Catalog& cat, const PotentialModel& m, const RelaxOptions& opts = {});

// Maps every member through `r` back onto the same lattice. Throws
// Errc::symmetry_violation if a rotated site is not a lattice site.
IndexCluster rotate_sites(const IndexCluster& c, const Rotation& r, double tol = 1e-6);

// Re-expresses `c` on `target` by locating each member position.
IndexCluster relocate(const IndexCluster& c, std::shared_ptr<const Lattice> target, double tol = 1e-6);

struct Alignment {
  Rotation rotation;
  std::size_t adj = 0;
  std::size_t rotation_index = 0;
};

// Rotation from `rotations` minimizing Adj(fixed, rotated movable); ties go to
// the earliest rotation.
Alignment align_min_adj(const IndexCluster& fixed, const IndexCluster& movable,
                        std::span<const Rotation> rotations);

// Minimal-site-set construction over a descending chain: the largest cluster
// is rotated to put as many outer-shell members as possible on +Y, then each
// smaller cluster is rotated to minimize Adj against its aligned predecessor.
std::vector<IndexCluster> align_chain(std::span<const IndexCluster> chain,
                                      std::span<const Rotation> rotations);

// Greedy peeling chain around `seed`: forward moves up to n_max, backward
// moves down to n_min, each move seeded from the previous relaxed geometry.
// Returned in descending size order, ready for align_chain/build_catalog.
// A forward frontier running dry throws Errc::frontier_exhausted.
std::vector<IndexCluster> peel_chain(const PotentialModel& m, const IndexCluster& seed, std::size_t n_min,
                                     std::size_t n_max, const RelaxOptions& opts = {});

struct RefineOptions {
  std::size_t max_sweeps = 4;
  bool swaps = false;  // also try peel_itself at every size (much slower)
};

// Per-size improvement of a descending chain on one lattice. Each sweep
// proposes, for every size n, a forward move from the n-1 entry, a backward
// move from the n+1 entry and optionally the best swap at n; a proposal
// replaces the entry when relaxing it from its lattice positions (the lookup
// energy) is lower by more than kEnergyTieTolerance. Stops after a sweep
// without changes.
std::vector<IndexCluster> refine_chain(const PotentialModel& m, std::vector<IndexCluster> chain,
                                       const RelaxOptions& opts = {}, const RefineOptions& refine = {});

Catalog parse_catalog(std::string_view text);
std::string serialize_catalog(const Catalog& cat);

Catalog read_catalog(const std::filesystem::path& path);
void write_catalog(const std::filesystem::path& path, const Catalog& cat);

}  // namespace mif
