#include "mif/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "mif/error.hpp"

namespace mif {

const char* to_string(Sublattice s) { return s == Sublattice::IC ? "IC" : "FC"; }

Lattice::Lattice(std::vector<Site> sites, std::size_t shells, double step)
    : sites_(std::move(sites)), shells_(shells), step_(step) {
  if (sites_.empty()) throw Error(Errc::argument, "lattice must contain at least one site");
  if (!(step_ > 0.0)) throw Error(Errc::argument, "lattice step must be positive");
  if (sites_.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(Errc::argument, "lattice too large");
  }

  Point3 lo = sites_[0].position;
  Point3 hi = lo;
  for (const auto& s : sites_) {
    if (!s.position.finite()) throw Error(Errc::argument, "lattice site is not finite");
    lo = {std::min(lo.x, s.position.x), std::min(lo.y, s.position.y), std::min(lo.z, s.position.z)};
    hi = {std::max(hi.x, s.position.x), std::max(hi.y, s.position.y), std::max(hi.z, s.position.z)};
  }
  cell_ = default_cutoff();
  origin_ = lo;
  const double ext[3] = {hi.x - lo.x, hi.y - lo.y, hi.z - lo.z};
  for (int a = 0; a < 3; ++a) dims_[a] = static_cast<std::int64_t>(std::floor(ext[a] / cell_)) + 1;

  const auto ncells = static_cast<std::size_t>(dims_[0] * dims_[1] * dims_[2]);
  auto cell_of = [&](const Point3& p) {
    const auto cx = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.x - origin_.x) / cell_), 0, dims_[0] - 1);
    const auto cy = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.y - origin_.y) / cell_), 0, dims_[1] - 1);
    const auto cz = std::clamp<std::int64_t>(static_cast<std::int64_t>((p.z - origin_.z) / cell_), 0, dims_[2] - 1);
    return static_cast<std::size_t>((cx * dims_[1] + cy) * dims_[2] + cz);
  };
  cell_start_.assign(ncells + 1, 0);
  for (const auto& s : sites_) ++cell_start_[cell_of(s.position) + 1];
  for (std::size_t c = 0; c < ncells; ++c) cell_start_[c + 1] += cell_start_[c];
  cell_items_.resize(sites_.size());
  std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    cell_items_[fill[cell_of(sites_[i].position)]++] = static_cast<std::uint32_t>(i);
  }
}

template <class F>
void Lattice::for_each_near(const Point3& p, double radius, F&& f) const {
  const double lo[3] = {p.x - radius - origin_.x, p.y - radius - origin_.y, p.z - radius - origin_.z};
  const double hi[3] = {p.x + radius - origin_.x, p.y + radius - origin_.y, p.z + radius - origin_.z};
  std::int64_t c0[3];
  std::int64_t c1[3];
  for (int a = 0; a < 3; ++a) {
    c0[a] = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(lo[a] / cell_)));
    c1[a] = std::min<std::int64_t>(dims_[a] - 1, static_cast<std::int64_t>(std::floor(hi[a] / cell_)));
    if (c0[a] > c1[a]) return;
  }
  for (auto x = c0[0]; x <= c1[0]; ++x)
    for (auto y = c0[1]; y <= c1[1]; ++y)
      for (auto z = c0[2]; z <= c1[2]; ++z) {
        const auto c = static_cast<std::size_t>((x * dims_[1] + y) * dims_[2] + z);
        for (auto k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
          const auto j = cell_items_[k];
          if (distance(sites_[j].position, p) <= radius) f(static_cast<std::size_t>(j));
        }
      }
}

std::vector<std::size_t> Lattice::neighbors(std::size_t i, double cutoff) const {
  if (i >= sites_.size()) throw Error(Errc::argument, fmt::format("site index {} out of range", i));
  if (!(cutoff > 0.0)) throw Error(Errc::argument, "neighbor cutoff must be positive");
  std::vector<std::size_t> out;
  for_each_near(sites_[i].position, cutoff, [&](std::size_t j) {
    if (j != i) out.push_back(j);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> Lattice::locate(const Point3& p, double tol) const {
  if (!(tol > 0.0)) throw Error(Errc::argument, "locate tolerance must be positive");
  std::optional<std::size_t> hit;
  std::size_t count = 0;
  for_each_near(p, tol, [&](std::size_t j) {
    ++count;
    if (!hit || j < *hit) hit = j;
  });
  if (count > 1) {
    throw Error(Errc::ambiguous_match,
                fmt::format("{} sites lie within {} of ({}, {}, {})", count, tol, p.x, p.y, p.z));
  }
  return hit;
}

std::size_t if_site_count(std::size_t shells) {
  std::size_t n = 1;
  for (std::size_t k = 1; k <= shells; ++k) n += (10 * k * k + 2) + 10 * k * (k - 1);
  return n;
}

namespace {

struct ShellSites {
  std::vector<Point3> ic;
  std::vector<Point3> fc;
};

// Shell k of the Mackay construction on flat faces: the 12 vertices scaled to
// radius k*step, k-1 interior points per edge, interior face-grid points, and
// one FC site at the centroid of each downward sub-triangle of the face grid.
ShellSites make_shell(std::size_t k, double step) {
  ShellSites out;
  const auto& unit = icosahedron_vertices();
  std::array<Point3, 12> v{};
  const double radius = static_cast<double>(k) * step;
  for (std::size_t i = 0; i < 12; ++i) v[i] = unit[i] * radius;
  const double kd = static_cast<double>(k);

  out.ic.assign(v.begin(), v.end());
  for (const auto& [a, b] : icosahedron_edges()) {
    for (std::size_t t = 1; t < k; ++t) {
      const double w = static_cast<double>(t) / kd;
      out.ic.push_back(v[a] * (1.0 - w) + v[b] * w);
    }
  }
  for (const auto& [a, b, c] : icosahedron_faces()) {
    for (std::size_t i = 1; i < k; ++i)
      for (std::size_t j = 1; i + j < k; ++j) {
        const std::size_t l = k - i - j;
        out.ic.push_back((v[a] * static_cast<double>(i) + v[b] * static_cast<double>(j) +
                          v[c] * static_cast<double>(l)) /
                         kd);
      }
    if (k < 2) continue;
    for (std::size_t i = 0; i + 2 <= k; ++i)
      for (std::size_t j = 0; i + j + 2 <= k; ++j) {
        const std::size_t l = k - 2 - i - j;
        constexpr double third = 2.0 / 3.0;
        out.fc.push_back((v[a] * (static_cast<double>(i) + third) + v[b] * (static_cast<double>(j) + third) +
                          v[c] * (static_cast<double>(l) + third)) /
                         kd);
      }
  }
  return out;
}

void append_ordered(std::vector<Site>& sites, const std::vector<Point3>& pts, std::size_t shell,
                    Sublattice sub) {
  for (auto i : canonical_permutation(pts)) {
    sites.push_back({pts[i], shell, sub, sites.size()});
  }
}

std::vector<Site> if_sites(std::size_t shells) {
  if (shells < 1) throw Error(Errc::argument, "lattice needs at least one shell");
  std::vector<Site> sites;
  sites.reserve(if_site_count(shells));
  sites.push_back({{0.0, 0.0, 0.0}, 0, Sublattice::IC, 0});
  for (std::size_t k = 1; k <= shells; ++k) {
    const auto shell = make_shell(k, kShellStep);
    append_ordered(sites, shell.ic, k, Sublattice::IC);
    append_ordered(sites, shell.fc, k, Sublattice::FC);
  }
  return sites;
}

}  // namespace

Lattice gen_if(std::size_t shells) { return Lattice(if_sites(shells), shells); }

Lattice gen_ic(std::size_t shells) {
  auto sites = if_sites(shells);
  std::erase_if(sites, [](const Site& s) { return s.sublattice != Sublattice::IC; });
  return Lattice(std::move(sites), shells);
}

Lattice gen_fc(std::size_t shells) {
  auto sites = if_sites(shells);
  std::erase_if(sites, [](const Site& s) { return s.sublattice != Sublattice::FC; });
  if (sites.empty()) throw Error(Errc::argument, "an FC sublattice needs at least two shells");
  return Lattice(std::move(sites), shells);
}

std::size_t shells_enclosing(double radius, double step) {
  if (!(radius >= 0.0)) throw Error(Errc::argument, "radius must be nonnegative");
  const auto s = static_cast<std::size_t>(std::ceil(radius / step - 1e-6));
  return s + 1;
}

}  // namespace mif
