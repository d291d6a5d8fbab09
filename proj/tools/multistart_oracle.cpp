// Multi-start reference minima for small clusters: random connected starts
// grown from the centre of gen_if(2), each relaxed, lowest energy kept.
// Output lines: "<n> <E_min> <best start index>".

#include <CLI11.hpp>

#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "mif/lattice.hpp"
#include "mif/minimizer.hpp"

namespace {

std::vector<mif::Point3> random_start(std::mt19937& rng, const mif::Lattice& lat, std::size_t n) {
  const double cutoff = lat.default_cutoff();
  const double min_sep = 0.8 * lat.nn_distance();
  std::set<std::size_t> members{0};
  std::vector<mif::Point3> pts{lat[0].position};
  while (members.size() < n) {
    std::vector<std::size_t> frontier;
    for (std::size_t j = 0; j < lat.size(); ++j) {
      if (members.count(j)) continue;
      bool near = false;
      bool clash = false;
      for (auto i : members) {
        const double d = mif::distance(lat[i].position, lat[j].position);
        near = near || d <= cutoff;
        clash = clash || d < min_sep;
      }
      if (near && !clash) frontier.push_back(j);
    }
    if (frontier.empty()) return {};
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const auto j = frontier[pick(rng)];
    members.insert(j);
    pts.push_back(lat[j].position);
  }
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-start reference minima"};
  std::size_t n_min = 5, n_max = 20, starts = 200;
  unsigned seed = 20240611;
  app.add_option("--n-min", n_min)->capture_default_str();
  app.add_option("--n-max", n_max)->capture_default_str();
  app.add_option("--starts", starts)->capture_default_str();
  app.add_option("--seed", seed)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  const auto lat = mif::gen_if(2);
  const mif::PotentialModel lj;
  for (std::size_t n = n_min; n <= n_max; ++n) {
    std::mt19937 rng(seed + static_cast<unsigned>(n));
    double best = 0.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < starts; ++k) {
      auto pts = random_start(rng, lat, n);
      if (pts.empty()) continue;
      const auto r = mif::relax(lj, mif::Cluster(std::move(pts)));
      if (r.energy < best) {
        best = r.energy;
        best_k = k;
      }
    }
    std::printf("%zu %.10f %zu\n", n, best, best_k);
    std::fflush(stdout);
  }
  return 0;
}
