#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "mif/catalog.hpp"
#include "mif/error.hpp"

using namespace mif;

namespace {

std::shared_ptr<const Lattice> if_lattice(std::size_t shells) {
  return std::make_shared<const Lattice>(gen_if(shells));
}

// Descending chain: random set of size top, then drop one random member per step.
std::vector<IndexCluster> random_chain(std::mt19937& rng, const std::shared_ptr<const Lattice>& lat,
                                       std::size_t top, std::size_t bottom) {
  std::vector<SiteIndex> all(lat->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<SiteIndex> cur(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(top));
  std::vector<IndexCluster> chain;
  chain.emplace_back(lat, cur);
  while (cur.size() > bottom) {
    std::uniform_int_distribution<std::size_t> pick(0, cur.size() - 1);
    cur.erase(cur.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
    // Occasionally swap in an unused site to exercise On lists.
    if (rng() % 3 == 0) {
      for (auto s : all) {
        if (std::find(cur.begin(), cur.end(), s) == cur.end()) {
          cur[0] = s;
          break;
        }
      }
    }
    chain.emplace_back(lat, cur);
  }
  return chain;
}

std::set<Point3, decltype([](const Point3& a, const Point3& b) {
  return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
})>
member_positions(const IndexCluster& c) {
  decltype(member_positions(c)) out;
  for (auto i : c.indices()) out.insert(c.lattice()[i].position);
  return out;
}

Catalog small_catalog() {
  const auto lat = if_lattice(1);
  std::vector<IndexCluster> chain{IndexCluster(lat, {0, 1, 2, 3}), IndexCluster(lat, {0, 1, 2}),
                                  IndexCluster(lat, {0, 1})};
  return build_catalog(chain);
}

}  // namespace

TEST_CASE("build then reconstruct recovers every cluster") {
  std::mt19937 rng(61);
  const auto lat = if_lattice(2);
  for (int t = 0; t < 30; ++t) {
    const auto chain = random_chain(rng, lat, 20, 2);
    const auto cat = build_catalog(chain);
    CHECK(cat.n_max() == 20);
    CHECK(cat.n_min() == 2);
    for (const auto& c : chain) {
      const auto r = reconstruct(cat, c.size());
      CHECK(member_positions(r) == member_positions(c));
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
      CHECK(*cat.entry(chain[k].size()).adj_count == adj(chain[k - 1], chain[k]));
    }
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937 rng(62);
  const auto lat = if_lattice(2);
  for (int t = 0; t < 10; ++t) {
    const auto cat = build_catalog(random_chain(rng, lat, 12, 3));
    const auto text = serialize_catalog(cat);
    const auto back = parse_catalog(text);
    CHECK(back == cat);
    CHECK(serialize_catalog(back) == text);
  }
}

TEST_CASE("annotated catalog round trip and lookup") {
  const auto cat = annotate(small_catalog(), PotentialModel{});
  const auto back = parse_catalog(serialize_catalog(cat));
  CHECK(back == cat);
  const auto e2 = cat.entry(2);
  REQUIRE(e2.e_min);
  CHECK(*e2.e_min == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(*cat.entry(4).e_min == doctest::Approx(-6.0).epsilon(1e-9));
  for (std::size_t n = cat.n_min(); n <= cat.n_max(); ++n) {
    const auto r = lookup_and_relax(back, PotentialModel{}, n);
    CHECK(r.matches_expected);
    CHECK(r.relaxed.energy <= r.e_init + 1e-12);
    CHECK(r.type == GeometricType::TO);
  }
}

TEST_CASE("lookup flags a wrong expectation without failing") {
  auto text = serialize_catalog(annotate(small_catalog(), PotentialModel{}));
  const auto pos = text.find("n=2 ");
  const auto e = text.find("e_min=", pos);
  const auto end = text.find(' ', e);
  text.replace(e, end - e, "e_min=-2.5");
  const auto cat = parse_catalog(text);
  CHECK_FALSE(lookup_and_relax(cat, PotentialModel{}, 2).matches_expected);
  CHECK(lookup_and_relax(cat, PotentialModel{}, 3).matches_expected);
}

TEST_CASE("missing entries are integrity errors") {
  const auto cat = small_catalog();
  try {
    reconstruct(cat, 7);
    FAIL("expected an integrity error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::catalog_integrity);
  }
  CHECK_THROWS_AS(cat.entry(1), Error);
}

TEST_CASE("parser rejects malformed catalogs") {
  const auto good = serialize_catalog(small_catalog());
  CHECK_NOTHROW(parse_catalog(good));
  auto expect = [&](std::string text, Errc code) {
    try {
      parse_catalog(text);
      FAIL("expected failure for:\n" << text);
    } catch (const Error& e) {
      CHECK(e.code() == code);
    }
  };
  auto replaced = [&](const std::string& from, const std::string& to) {
    auto s = good;
    const auto p = s.find(from);
    REQUIRE(p != std::string::npos);
    s.replace(p, from.size(), to);
    return s;
  };
  expect(replaced("MIFCAT 1", "MIFCAT 2"), Errc::syntax);
  expect(replaced("type=", "kind="), Errc::syntax);
  expect(replaced("adj=", "x=1 adj="), Errc::syntax);
  expect(replaced("n=3 ", "n=3 n=3 "), Errc::syntax);
  expect(replaced("e_init=- ", ""), Errc::syntax);
  expect(replaced("0 0 0 0", "1 0 0 0"), Errc::syntax);
  expect(replaced("type=-", "type=4"), Errc::syntax);
  expect(replaced("sites 4", "sites x"), Errc::syntax);
  expect(replaced("on=0,1,2,3", "on=0,1,2"), Errc::catalog_integrity);
  expect(replaced("n=2 on=- off=2", "n=2 on=- off=9"), Errc::catalog_integrity);
  expect(replaced("n=2 on=- off=2", "n=2 on=- off=3"), Errc::catalog_integrity);
  expect(replaced("n=3 on=- off=3 type=- e_init=- e_min=- adj=1", "n=3 on=- off=3 type=- e_init=- e_min=- adj=2"),
         Errc::catalog_integrity);
  expect(good.substr(0, good.find("n=4")), Errc::catalog_integrity);
  expect(replaced("n=4", "n=5"), Errc::catalog_integrity);
}

TEST_CASE("catalog files") {
  const auto dir = std::filesystem::temp_directory_path() / "mif_catalog_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "small.mifcat";
  const auto cat = small_catalog();
  write_catalog(path, cat);
  CHECK(read_catalog(path) == cat);
  try {
    read_catalog(dir / "missing.mifcat");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::io);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("rotations map lattice clusters onto the lattice") {
  const auto lat = if_lattice(2);
  std::mt19937 rng(63);
  const auto chain = random_chain(rng, lat, 15, 15);
  for (const auto& r : icosahedral_rotations()) {
    const auto moved = rotate_sites(chain[0], r);
    CHECK(moved.size() == 15);
  }
  CHECK_THROWS_AS(rotate_sites(chain[0], Rotation::about_axis({0, 1, 0}, 0.1)), Error);
}

TEST_CASE("alignment is never worse than the identity") {
  std::mt19937 rng(64);
  const auto lat = if_lattice(2);
  const auto& g = icosahedral_rotations();
  for (int t = 0; t < 20; ++t) {
    const auto chain = random_chain(rng, lat, 10, 9);
    const auto a = align_min_adj(chain[0], chain[1], g);
    CHECK(a.adj <= adj(chain[0], chain[1]));
    CHECK(a.adj == adj(chain[0], rotate_sites(chain[1], g[a.rotation_index])));
  }
}

TEST_CASE("aligned chains preserve sizes and shapes") {
  std::mt19937 rng(65);
  const auto lat = if_lattice(2);
  const auto chain = random_chain(rng, lat, 12, 6);
  const auto aligned = align_chain(chain, icosahedral_rotations());
  REQUIRE(aligned.size() == chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    CHECK(aligned[k].size() == chain[k].size());
    CHECK(cluster_energy(PotentialModel{}, aligned[k].positions()) ==
          doctest::Approx(cluster_energy(PotentialModel{}, chain[k].positions())).epsilon(1e-10));
  }
  const auto cat = build_catalog(aligned);
  for (const auto& c : aligned) CHECK(member_positions(reconstruct(cat, c.size())) == member_positions(c));
}

TEST_CASE("relocate between lattices") {
  const auto small = if_lattice(1);
  const auto big = if_lattice(3);
  const IndexCluster c(small, {0, 3, 7});
  const auto moved = relocate(c, big);
  CHECK(member_positions(moved) == member_positions(c));
  CHECK_THROWS_AS(relocate(IndexCluster(big, {100}), small), Error);
}

TEST_CASE("catalog site tags are recovered from positions") {
  const auto lat = if_lattice(2);
  std::vector<SiteIndex> idx{0, 1, 2, 20, 60, 70};
  std::vector<IndexCluster> chain{IndexCluster(lat, idx)};
  const auto built = build_catalog(chain);
  const auto parsed = parse_catalog(serialize_catalog(built));
  for (std::size_t i = 0; i < parsed.site_table().size(); ++i) {
    CHECK((*parsed.lattice())[i].sublattice == (*built.lattice())[i].sublattice);
    CHECK((*parsed.lattice())[i].shell == (*built.lattice())[i].shell);
  }
}

TEST_CASE("refinement keeps sizes and never raises a lookup energy") {
  std::mt19937 rng(66);
  const auto lat = if_lattice(2);
  const PotentialModel lj;
  const auto chain = random_chain(rng, lat, 9, 5);
  const auto refined = refine_chain(lj, chain);
  REQUIRE(refined.size() == chain.size());
  for (std::size_t k = 0; k < chain.size(); ++k) {
    CHECK(refined[k].size() == chain[k].size());
    CHECK(relax(lj, refined[k].positions()).energy <= relax(lj, chain[k].positions()).energy + 1e-12);
  }
  CHECK_THROWS_AS(refine_chain(lj, {chain[0], chain[2]}), Error);
}

TEST_CASE("peel chain spans the requested sizes") {
  const auto lat = if_lattice(2);
  std::vector<SiteIndex> core(13);
  for (std::size_t i = 0; i < core.size(); ++i) core[i] = i;
  const auto chain = peel_chain(PotentialModel{}, IndexCluster(lat, core), 11, 15);
  REQUIRE(chain.size() == 5);
  for (std::size_t k = 0; k < chain.size(); ++k) CHECK(chain[k].size() == 15 - k);
  CHECK(chain[2] == IndexCluster(lat, core));
}
