#include "mif/cluster_ops.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

#include <fmt/format.h>

#include "mif/error.hpp"
#include "parallel.hpp"

namespace mif {

IndexCluster::IndexCluster(std::shared_ptr<const Lattice> lattice, std::vector<SiteIndex> indices)
    : lattice_(std::move(lattice)), indices_(std::move(indices)) {
  if (!lattice_) throw Error(Errc::argument, "index cluster needs a lattice");
  if (indices_.empty()) throw Error(Errc::argument, "index cluster must be nonempty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw Error(Errc::argument, "index cluster contains a repeated site");
  }
  if (indices_.back() >= lattice_->size()) {
    throw Error(Errc::argument, fmt::format("site index {} out of range for a lattice of {} sites",
                                            indices_.back(), lattice_->size()));
  }
}

bool IndexCluster::contains(SiteIndex i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

Cluster IndexCluster::positions() const {
  std::vector<Point3> pts;
  pts.reserve(indices_.size());
  for (auto i : indices_) pts.push_back((*lattice_)[i].position);
  return Cluster(std::move(pts), indices_);
}

namespace {

void require_same_lattice(const IndexCluster& a, const IndexCluster& b) {
  if (a.lattice_ptr() != b.lattice_ptr()) {
    throw Error(Errc::argument, "index clusters refer to different lattices");
  }
}

std::size_t count_difference(std::span<const SiteIndex> a, std::span<const SiteIndex> b) {
  // |a \ b| for sorted inputs
  std::size_t n = 0;
  auto j = b.begin();
  for (auto i : a) {
    while (j != b.end() && *j < i) ++j;
    if (j == b.end() || *j != i) ++n;
  }
  return n;
}

}  // namespace

std::size_t on_count(const IndexCluster& a, const IndexCluster& b) {
  require_same_lattice(a, b);
  return count_difference(b.indices(), a.indices());
}

std::size_t off_count(const IndexCluster& a, const IndexCluster& b) {
  require_same_lattice(a, b);
  return count_difference(a.indices(), b.indices());
}

std::size_t adj(const IndexCluster& a, const IndexCluster& b) { return on_count(a, b) + off_count(a, b); }

std::vector<SiteIndex> k_c(const IndexCluster& c) {
  const Lattice& lat = c.lattice();
  std::vector<SiteIndex> out;
  for (auto i : c.indices()) {
    const auto& site = lat[i];
    bool removable = site.shell == 0 || site.shell >= lat.shells();
    if (!removable) {
      for (auto j : lat.neighbors(i)) {
        if (!c.contains(j)) {
          removable = true;
          break;
        }
      }
    }
    if (removable) out.push_back(i);
  }
  return out;
}

std::vector<SiteIndex> k_if(const IndexCluster& c) {
  const Lattice& lat = c.lattice();
  std::vector<SiteIndex> out;
  for (auto i : c.indices()) {
    for (auto j : lat.neighbors(i)) {
      if (!c.contains(j)) out.push_back(j);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Coordinates for members come from the caller's geometry, others from the lattice.
class Seeder {
 public:
  Seeder(const IndexCluster& c, const Cluster& geometry) : lattice_(c.lattice()) {
    const auto labels = geometry.labels();
    if (labels.size() != c.size()) {
      throw Error(Errc::argument, "geometry size does not match the index cluster");
    }
    for (std::size_t k = 0; k < labels.size(); ++k) {
      if (!c.contains(labels[k])) {
        throw Error(Errc::argument, fmt::format("geometry label {} is not a cluster member", labels[k]));
      }
      pos_.emplace(labels[k], geometry[k]);
    }
  }

  Cluster seed(const std::vector<SiteIndex>& idx) const {
    std::vector<Point3> pts;
    pts.reserve(idx.size());
    for (auto i : idx) {
      auto it = pos_.find(i);
      pts.push_back(it != pos_.end() ? it->second : lattice_[i].position);
    }
    return Cluster(std::move(pts), idx);
  }

 private:
  const Lattice& lattice_;
  std::unordered_map<SiteIndex, Point3> pos_;
};

struct Evaluated {
  std::optional<Cluster> seed;
  double e_init = 0.0;
  std::optional<RelaxResult> relaxed;
};

std::vector<Evaluated> relax_all(const PotentialModel& m, const Seeder& seeder,
                                 const std::vector<std::vector<SiteIndex>>& sets, const RelaxOptions& opts) {
  std::vector<Evaluated> out(sets.size());
  detail::parallel_for(sets.size(), [&](std::size_t k) {
    Cluster s = seeder.seed(sets[k]);
    out[k].e_init = cluster_energy(m, s);
    out[k].relaxed = relax(m, s, opts);
    out[k].seed = std::move(s);
  });
  return out;
}

// Index of the minimum-energy candidate; candidates are in tie-break order.
std::size_t select_best(const std::vector<Evaluated>& ev) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < ev.size(); ++k) {
    if (ev[k].relaxed->energy < ev[best].relaxed->energy - kEnergyTieTolerance) best = k;
  }
  return best;
}

PeelResult make_result(const IndexCluster& c, std::vector<SiteIndex> idx, Evaluated&& ev) {
  return {IndexCluster(c.lattice_ptr(), std::move(idx)), std::move(*ev.relaxed), ev.e_init};
}

std::vector<SiteIndex> with(std::span<const SiteIndex> base, SiteIndex add) {
  std::vector<SiteIndex> out(base.begin(), base.end());
  out.insert(std::upper_bound(out.begin(), out.end(), add), add);
  return out;
}

std::vector<SiteIndex> without(std::span<const SiteIndex> base, SiteIndex drop) {
  std::vector<SiteIndex> out;
  out.reserve(base.size());
  for (auto i : base)
    if (i != drop) out.push_back(i);
  return out;
}

}  // namespace

PeelResult peel_forward(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                        const RelaxOptions& opts) {
  const auto frontier = k_if(c);
  if (frontier.empty()) throw Error(Errc::frontier_exhausted, "no vacant neighbour site to add");
  Seeder seeder(c, geometry);
  std::vector<std::vector<SiteIndex>> sets;
  sets.reserve(frontier.size());
  for (auto j : frontier) sets.push_back(with(c.indices(), j));
  auto ev = relax_all(m, seeder, sets, opts);
  const auto best = select_best(ev);
  return make_result(c, std::move(sets[best]), std::move(ev[best]));
}

PeelResult peel_forward(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts) {
  return peel_forward(m, c, c.positions(), opts);
}

PeelResult peel_backward(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                         const RelaxOptions& opts) {
  if (c.size() < 3) throw Error(Errc::argument, "backward move needs at least three particles");
  const auto removable = k_c(c);
  if (removable.empty()) throw Error(Errc::frontier_exhausted, "no removable particle");
  Seeder seeder(c, geometry);
  std::vector<std::vector<SiteIndex>> sets;
  sets.reserve(removable.size());
  for (auto k : removable) sets.push_back(without(c.indices(), k));
  auto ev = relax_all(m, seeder, sets, opts);
  const auto best = select_best(ev);
  return make_result(c, std::move(sets[best]), std::move(ev[best]));
}

PeelResult peel_backward(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts) {
  return peel_backward(m, c, c.positions(), opts);
}

PeelResult peel_itself(const PotentialModel& m, const IndexCluster& c, const Cluster& geometry,
                       const RelaxOptions& opts) {
  Seeder seeder(c, geometry);
  const std::vector<SiteIndex> self(c.indices().begin(), c.indices().end());
  auto base = relax_all(m, seeder, {self}, opts);

  const auto removable = k_c(c);
  const auto frontier = k_if(c);
  std::vector<std::vector<SiteIndex>> sets;
  sets.reserve(removable.size() * frontier.size());
  for (auto k : removable) {
    const auto reduced = without(c.indices(), k);
    for (auto j : frontier) sets.push_back(with(reduced, j));
  }
  if (sets.empty()) return make_result(c, self, std::move(base[0]));

  auto ev = relax_all(m, seeder, sets, opts);
  const auto best = select_best(ev);
  if (ev[best].relaxed->energy < base[0].relaxed->energy - kEnergyTieTolerance) {
    return make_result(c, std::move(sets[best]), std::move(ev[best]));
  }
  return make_result(c, self, std::move(base[0]));
}

PeelResult peel_itself(const PotentialModel& m, const IndexCluster& c, const RelaxOptions& opts) {
  return peel_itself(m, c, c.positions(), opts);
}

const char* to_string(GeometricType t) {
  switch (t) {
    case GeometricType::IC: return "IC";
    case GeometricType::ID: return "ID";
    case GeometricType::TO: return "TO";
    case GeometricType::FC: return "FC";
  }
  return "?";
}

GeometricType geometric_type_from_code(int code) {
  switch (code) {
    case 1: return GeometricType::IC;
    case 2: return GeometricType::ID;
    case 3: return GeometricType::TO;
    case 5: return GeometricType::FC;
    default: throw Error(Errc::argument, fmt::format("unknown geometric type code {}", code));
  }
}

namespace {

bool inside_face_cone(const std::array<Point3, 3>& axes, const Point3& p, double tol) {
  const double det = dot(axes[0], cross(axes[1], axes[2]));
  const double scale = std::max(1.0, p.norm());
  const double l0 = dot(p, cross(axes[1], axes[2])) / det;
  const double l1 = dot(axes[0], cross(p, axes[2])) / det;
  const double l2 = dot(axes[0], cross(axes[1], p)) / det;
  return l0 >= -tol * scale && l1 >= -tol * scale && l2 >= -tol * scale;
}

}  // namespace

GeometricType classify(const IndexCluster& c, const Cluster& relaxed, const ClassifyOptions& opts) {
  const auto labels = relaxed.labels();
  if (labels.size() != c.size()) throw Error(Errc::argument, "relaxed cluster size does not match");
  for (auto l : labels) {
    if (!c.contains(l)) throw Error(Errc::argument, fmt::format("relaxed label {} is not a member", l));
  }
  const Lattice& lat = c.lattice();

  for (auto i : c.indices())
    if (lat[i].sublattice == Sublattice::FC) return GeometricType::FC;

  const auto& v = icosahedron_vertices();
  for (const auto& [a, b, f] : icosahedron_faces()) {
    const std::array<Point3, 3> axes{v[a], v[b], v[f]};
    const bool all_inside = std::all_of(c.indices().begin(), c.indices().end(), [&](SiteIndex i) {
      return inside_face_cone(axes, lat[i].position, opts.cone_tolerance);
    });
    if (all_inside) return GeometricType::TO;
  }

  const Point3 com = center_of_mass(relaxed);
  const double radius = opts.com_radius_factor * lat.nn_distance();
  for (std::size_t k = 0; k < relaxed.size(); ++k) {
    if (distance(relaxed[k], com) > radius) continue;
    const auto key = cylindrical_key(lat[labels[k]].position);
    if (key.rho > 1e-9 && key.alpha <= opts.axis_tolerance) return GeometricType::ID;
  }
  return GeometricType::IC;
}

}  // namespace mif
