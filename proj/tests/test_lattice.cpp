#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "golden_c13.hpp"
#include "mif/error.hpp"
#include "mif/lattice.hpp"
#include "mif/potentials.hpp"

using namespace mif;

namespace {

// Per-shell counts from the Mackay construction: 10k^2+2 IC and 10k(k-1) FC.
std::size_t count_by_formula(std::size_t s) {
  std::size_t n = 1;
  for (std::size_t k = 1; k <= s; ++k) n += 10 * k * k + 2 + 10 * k * (k - 1);
  return n;
}

}  // namespace

TEST_CASE("IF site counts") {
  CHECK(gen_if(1).size() == 13);
  CHECK(gen_if(2).size() == 75);
  CHECK(gen_if(3).size() == 227);
  CHECK(gen_if(4).size() == 509);
  for (std::size_t s = 1; s <= 8; ++s) {
    CHECK(gen_if(s).size() == count_by_formula(s));
    CHECK(if_site_count(s) == count_by_formula(s));
  }
}

TEST_CASE("eleven shells give 9483 sites quickly") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lat = gen_if(11);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(lat.size() == 9483);
  CHECK(secs < 5.0);
}

TEST_CASE("sublattice subsets") {
  CHECK(gen_ic(1).size() == 13);
  CHECK(gen_ic(3).size() == 147);
  CHECK(gen_fc(2).size() == 20);
  CHECK(gen_ic(2).size() + gen_fc(2).size() == 75);
  CHECK_THROWS_AS(gen_fc(1), Error);
  CHECK_THROWS_AS(gen_if(0), Error);
  const auto full = gen_if(3);
  const auto fc = gen_fc(3);
  const auto ic = gen_ic(3);
  for (const auto& s : fc.sites()) {
    CHECK(full[s.index].sublattice == Sublattice::FC);
    CHECK(full[s.index].position == s.position);
  }
  for (const auto& s : ic.sites()) CHECK(full[s.index].position == s.position);
}

TEST_CASE("per-shell breakdown and tags") {
  const auto lat = gen_if(4);
  std::vector<std::size_t> ic(5), fc(5);
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const auto& s = lat[i];
    CHECK(s.index == i);
    (s.sublattice == Sublattice::IC ? ic : fc)[s.shell]++;
  }
  CHECK(ic[0] == 1);
  CHECK(fc[0] == 0);
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(ic[k] == 10 * k * k + 2);
    CHECK(fc[k] == 10 * k * (k - 1));
  }
}

TEST_CASE("sites lie between the face inradius and the vertex radius of their shell") {
  // The flat-face construction puts face centres at about 0.795 of the
  // vertex radius, so the lower bound is the icosahedron inradius ratio.
  const double inradius = 0.7946544722917661;
  const auto lat = gen_if(5);
  for (const auto& s : lat.sites()) {
    const double r = s.position.norm();
    const double k = static_cast<double>(s.shell);
    CHECK(r <= k * kShellStep + 1e-9);
    CHECK(r >= inradius * k * kShellStep - 1e-9);
  }
}

TEST_CASE("no near-duplicate sites") {
  const auto lat = gen_if(3);
  double dmin = 1e9;
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j = i + 1; j < lat.size(); ++j) dmin = std::min(dmin, distance(lat[i].position, lat[j].position));
  CHECK(dmin >= 0.5 * lat.nn_distance());
}

TEST_CASE("shell-1 IC sites reproduce the C13 points") {
  const auto lat = gen_if(3);
  std::vector<Point3> pts;
  for (const auto& p : testing::kC13) {
    const auto hit = lat.locate(p, 1e-6);
    REQUIRE(hit);
    CHECK(*hit < 13);
    pts.push_back(lat[*hit].position);
  }
  CHECK(std::abs(cluster_energy(PotentialModel{}, Cluster(pts)) - testing::kC13Energy) < 1e-5);
}

TEST_CASE("indexing is prefix stable across shell counts") {
  const auto big = gen_if(5);
  for (std::size_t s = 1; s < 5; ++s) {
    const auto small = gen_if(s);
    for (std::size_t i = 0; i < small.size(); ++i) {
      CHECK(small[i].position == big[i].position);
      CHECK(small[i].sublattice == big[i].sublattice);
    }
  }
}

TEST_CASE("neighbor queries") {
  const auto lat = gen_if(1);
  const double nn = lat.nn_distance();
  const auto center = lat.neighbors(0, 1.2 * nn);
  CHECK(center.size() == 12);
  for (std::size_t v = 1; v < 13; ++v) {
    const auto nb = lat.neighbors(v, 1.2 * nn);
    CHECK(nb.size() == 6);
    CHECK(nb.front() == 0);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
  }
  CHECK(lat.neighbors(3, 0.1 * nn).empty());
  CHECK_THROWS_AS(lat.neighbors(13, nn), Error);
  CHECK_THROWS_AS(lat.neighbors(0, 0.0), Error);
}

TEST_CASE("neighbor search agrees with brute force") {
  const auto lat = gen_if(4);
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, lat.size() - 1);
  for (int t = 0; t < 60; ++t) {
    const auto i = pick(rng);
    const double cutoff = 0.5 + 0.03 * t;
    std::vector<std::size_t> ref;
    for (std::size_t j = 0; j < lat.size(); ++j)
      if (j != i && distance(lat[i].position, lat[j].position) <= cutoff) ref.push_back(j);
    CHECK(lat.neighbors(i, cutoff) == ref);
  }
}

TEST_CASE("locate") {
  const auto lat = gen_if(2);
  for (std::size_t i = 0; i < lat.size(); ++i) CHECK(lat.locate(lat[i].position, 1e-6) == i);
  CHECK_FALSE(lat.locate(lat[5].position + Point3{2e-6, 0, 0}, 1e-6).has_value());
  CHECK_FALSE(lat.locate({50, 50, 50}, 1e-6).has_value());
  CHECK_THROWS_AS(lat.locate(lat[0].position, 0.0), Error);
  try {
    lat.locate({0, 0, 0}, 1.1 * lat.nn_distance());
    FAIL("expected an ambiguity");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ambiguous_match);
  }
}

TEST_CASE("shells enclosing a radius") {
  CHECK(shells_enclosing(0.0) == 1);
  CHECK(shells_enclosing(kShellStep) == 2);
  CHECK(shells_enclosing(kShellStep + 0.01) == 3);
  CHECK_THROWS_AS(shells_enclosing(-1.0), Error);
}
