#pragma once

// Exhaustive-candidate reference for the greedy peeling moves. Shares only
// the lattice, the energy and the relaxer with the library: neighbourhoods
// come from an all-pairs distance scan and candidates are relaxed one by one.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "mif/lattice.hpp"
#include "mif/minimizer.hpp"

namespace mif::oracle {

struct Outcome {
  std::vector<SiteIndex> indices;  // ascending
  double energy = 0.0;
};

inline bool is_neighbor(const Lattice& lat, SiteIndex a, SiteIndex b) {
  return a != b && distance(lat[a].position, lat[b].position) <= lat.default_cutoff();
}

inline std::vector<SiteIndex> frontier(const Lattice& lat, const std::set<SiteIndex>& members) {
  std::vector<SiteIndex> out;
  for (SiteIndex j = 0; j < lat.size(); ++j) {
    if (members.count(j)) continue;
    for (auto i : members) {
      if (is_neighbor(lat, i, j)) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

inline std::vector<SiteIndex> removable(const Lattice& lat, const std::set<SiteIndex>& members) {
  std::vector<SiteIndex> out;
  for (auto i : members) {
    bool take = lat[i].shell == 0 || lat[i].shell == lat.shells();
    for (SiteIndex j = 0; j < lat.size() && !take; ++j) take = !members.count(j) && is_neighbor(lat, i, j);
    if (take) out.push_back(i);
  }
  return out;
}

// Members keep the coordinates given in `current`; new sites use the lattice.
inline double relaxed_energy(const PotentialModel& m, const Lattice& lat, const std::set<SiteIndex>& set,
                             const std::map<SiteIndex, Point3>& current) {
  std::vector<Point3> pts;
  for (auto i : set) {
    const auto it = current.find(i);
    pts.push_back(it == current.end() ? lat[i].position : it->second);
  }
  return relax(m, Cluster(std::move(pts))).energy;
}

inline std::map<SiteIndex, Point3> lattice_coordinates(const Lattice& lat, const std::set<SiteIndex>& set) {
  std::map<SiteIndex, Point3> out;
  for (auto i : set) out[i] = lat[i].position;
  return out;
}

// Strictly lower by more than `tie` replaces the incumbent; candidates are
// visited in tie-break order.
inline void consider(std::optional<Outcome>& best, const std::set<SiteIndex>& set, double e, double tie) {
  if (!best || e < best->energy - tie) best = Outcome{{set.begin(), set.end()}, e};
}

inline Outcome forward(const PotentialModel& m, const Lattice& lat, const std::set<SiteIndex>& c, double tie) {
  const auto coords = lattice_coordinates(lat, c);
  std::optional<Outcome> best;
  for (auto j : frontier(lat, c)) {
    auto s = c;
    s.insert(j);
    consider(best, s, relaxed_energy(m, lat, s, coords), tie);
  }
  return *best;
}

inline Outcome backward(const PotentialModel& m, const Lattice& lat, const std::set<SiteIndex>& c, double tie) {
  const auto coords = lattice_coordinates(lat, c);
  std::optional<Outcome> best;
  for (auto k : removable(lat, c)) {
    auto s = c;
    s.erase(k);
    consider(best, s, relaxed_energy(m, lat, s, coords), tie);
  }
  return *best;
}

inline Outcome itself(const PotentialModel& m, const Lattice& lat, const std::set<SiteIndex>& c, double tie) {
  const auto coords = lattice_coordinates(lat, c);
  const Outcome self{{c.begin(), c.end()}, relaxed_energy(m, lat, c, coords)};
  std::optional<Outcome> best;
  const auto add = frontier(lat, c);
  for (auto k : removable(lat, c)) {
    for (auto j : add) {
      auto s = c;
      s.erase(k);
      s.insert(j);
      consider(best, s, relaxed_energy(m, lat, s, coords), tie);
    }
  }
  if (best && best->energy < self.energy - tie) return *best;
  return self;
}

}  // namespace mif::oracle
