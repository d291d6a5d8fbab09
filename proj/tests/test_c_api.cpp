#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "golden_c13.hpp"
#include "mif/mif.h"

namespace {

struct Free {
  void operator()(mif_cluster* c) const { mif_cluster_free(c); }
  void operator()(mif_lattice* l) const { mif_lattice_free(l); }
  void operator()(mif_index_cluster* c) const { mif_index_cluster_free(c); }
  void operator()(mif_catalog* c) const { mif_catalog_free(c); }
};
template <class T>
using Handle = std::unique_ptr<T, Free>;

Handle<mif_cluster> c13() {
  std::vector<double> xyz;
  for (const auto& p : mif::testing::kC13) {
    xyz.insert(xyz.end(), {p.x, p.y, p.z});
  }
  mif_cluster* c = nullptr;
  REQUIRE(mif_cluster_create(xyz.data(), 13, nullptr, &c) == MIF_OK);
  return Handle<mif_cluster>(c);
}

Handle<mif_lattice> lattice(mif_lattice_kind kind, size_t shells) {
  mif_lattice* l = nullptr;
  REQUIRE(mif_lattice_generate(kind, shells, &l) == MIF_OK);
  return Handle<mif_lattice>(l);
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("c api: status names and version") {
  CHECK(std::string(mif_status_name(MIF_OK)) == "ok");
  CHECK(std::string(mif_status_name(MIF_E_INTEGRITY)) == "catalog_integrity");
  CHECK(std::string(mif_version()) == "1.0.0");
}

TEST_CASE("c api: pair energy defaults") {
  mif_potential lj;
  mif_potential_init(&lj, MIF_POTENTIAL_LJ);
  double e = 0, d1 = 1, d2 = 0;
  REQUIRE(mif_pair_energy(&lj, std::pow(2.0, 1.0 / 6.0), &e, &d1, &d2) == MIF_OK);
  CHECK(e == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(d1) < 1e-10);
  CHECK(d2 > 0.0);
  CHECK(mif_pair_energy(&lj, 0.0, &e, nullptr, nullptr) == MIF_E_DOMAIN);
  CHECK(std::string(mif_last_error()).size() > 0);

  mif_potential k;
  mif_potential_init(&k, MIF_POTENTIAL_KIHARA);
  k.gamma = 0.5;
  CHECK(mif_pair_energy(&k, 2.0, &e, nullptr, nullptr) == MIF_OK);
  CHECK(mif_pair_energy(&k, 0.5 * k.gamma, &e, nullptr, nullptr) == MIF_E_DOMAIN);
}

TEST_CASE("c api: C13 energy, gradient and relaxation") {
  auto c = c13();
  CHECK(mif_cluster_size(c.get()) == 13);
  double e = 0;
  REQUIRE(mif_energy(nullptr, c.get(), &e) == MIF_OK);
  CHECK(e == doctest::Approx(mif::testing::kC13Energy).epsilon(1e-7));

  std::vector<double> g(39);
  double eg = 0;
  REQUIRE(mif_gradient(nullptr, c.get(), g.data(), &eg) == MIF_OK);
  CHECK(eg == doctest::Approx(e));
  double sx = 0;
  for (size_t i = 0; i < 13; ++i) sx += g[3 * i];
  CHECK(std::abs(sx) < 1e-10);

  double ce = 0;
  size_t classes = 0;
  REQUIRE(mif_classed_energy(nullptr, c.get(), 1e-6, &ce, &classes) == MIF_OK);
  CHECK(classes == 4);
  CHECK(std::abs(ce - e) < 1e-9);

  mif_relax_options o;
  mif_relax_options_init(&o);
  size_t traced = 0;
  o.trace = [](void* user, size_t, double, double, double) { ++*static_cast<size_t*>(user); };
  o.trace_user = &traced;
  mif_cluster* out = nullptr;
  mif_relax_summary s{};
  REQUIRE(mif_relax(nullptr, c.get(), &o, &out, &s) == MIF_OK);
  Handle<mif_cluster> relaxed(out);
  CHECK(s.converged == 1);
  CHECK(s.energy == doctest::Approx(mif::testing::kC13Energy).epsilon(1e-7));
  CHECK(traced >= 1);

  int stationary = 0;
  REQUIRE(mif_is_stationary(nullptr, relaxed.get(), 1e-3, &stationary) == MIF_OK);
  CHECK(stationary == 1);
}

TEST_CASE("c api: null and invalid arguments") {
  double e = 0;
  CHECK(mif_energy(nullptr, nullptr, &e) == MIF_E_ARGUMENT);
  mif_cluster* c = nullptr;
  const double one[3] = {0, 0, 0};
  mif_cluster* single = nullptr;
  REQUIRE(mif_cluster_create(one, 1, nullptr, &single) == MIF_OK);
  Handle<mif_cluster> h(single);
  CHECK(mif_relax(nullptr, single, nullptr, &c, nullptr) == MIF_E_ARGUMENT);
  const double same[6] = {0, 0, 0, 0, 0, 0};
  CHECK(mif_cluster_create(same, 2, nullptr, &c) == MIF_E_ARGUMENT);
  mif_lattice* l = nullptr;
  CHECK(mif_lattice_generate(MIF_LATTICE_FC, 1, &l) == MIF_E_ARGUMENT);
  CHECK(l == nullptr);
}

TEST_CASE("c api: xyz round trip") {
  auto c = c13();
  const auto path = temp_path("mif_c_api_c13.xyz");
  REQUIRE(mif_xyz_write(path.c_str(), c.get(), "c13", nullptr) == MIF_OK);
  mif_cluster* back = nullptr;
  REQUIRE(mif_xyz_read(path.c_str(), &back) == MIF_OK);
  Handle<mif_cluster> h(back);
  std::vector<double> a(39), b(39);
  mif_cluster_coordinates(c.get(), a.data());
  mif_cluster_coordinates(back, b.data());
  for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-11);
  std::filesystem::remove(path);
  CHECK(mif_xyz_read("/nonexistent/x.xyz", &back) == MIF_E_IO);
}

TEST_CASE("c api: lattice queries") {
  auto l = lattice(MIF_LATTICE_IF, 2);
  CHECK(mif_lattice_size(l.get()) == 75);
  CHECK(mif_lattice_shells(l.get()) == 2);
  CHECK(mif_lattice_nn_distance(l.get()) == doctest::Approx(1.08183839));
  CHECK(mif_lattice_size(lattice(MIF_LATTICE_IC, 3).get()) == 147);

  mif_site s{};
  REQUIRE(mif_lattice_site(l.get(), 0, &s) == MIF_OK);
  CHECK(s.shell == 0);
  CHECK(mif_lattice_site(l.get(), 75, &s) == MIF_E_ARGUMENT);

  size_t count = 0;
  REQUIRE(mif_lattice_neighbors(l.get(), 0, 0.0, nullptr, 0, &count) == MIF_OK);
  CHECK(count == 12);
  std::vector<size_t> nb(count);
  REQUIRE(mif_lattice_neighbors(l.get(), 0, 0.0, nb.data(), nb.size(), &count) == MIF_OK);
  for (auto j : nb) CHECK(j != 0);

  size_t idx = 99;
  int found = 0;
  REQUIRE(mif_lattice_site(l.get(), 17, &s) == MIF_OK);
  REQUIRE(mif_lattice_locate(l.get(), s.position, 1e-6, &idx, &found) == MIF_OK);
  CHECK(found == 1);
  CHECK(idx == 17);
  const double far[3] = {10, 10, 10};
  REQUIRE(mif_lattice_locate(l.get(), far, 1e-6, &idx, &found) == MIF_OK);
  CHECK(found == 0);

  CHECK(mif_shells_enclosing(0.5) >= 1);
}

TEST_CASE("c api: index clusters, set operations and peeling") {
  auto l = lattice(MIF_LATTICE_IF, 2);
  auto c = c13();
  mif_index_cluster* ic = nullptr;
  REQUIRE(mif_index_cluster_locate(l.get(), c.get(), 1e-6, &ic) == MIF_OK);
  Handle<mif_index_cluster> seed(ic);
  CHECK(mif_index_cluster_size(ic) == 13);

  mif_geometric_type t{};
  REQUIRE(mif_classify(ic, nullptr, &t) == MIF_OK);
  CHECK(t == MIF_TYPE_IC);
  CHECK(std::string(mif_geometric_type_name(t)) == "IC");

  size_t kc = 0, kif = 0;
  REQUIRE(mif_k_c(ic, nullptr, 0, &kc) == MIF_OK);
  REQUIRE(mif_k_if(ic, nullptr, 0, &kif) == MIF_OK);
  CHECK(kc == 13);
  CHECK(kif > 0);

  mif_index_cluster* grown = nullptr;
  mif_peel_summary ps{};
  REQUIRE(mif_peel(nullptr, ic, nullptr, MIF_PEEL_FORWARD, nullptr, &grown, nullptr, &ps) == MIF_OK);
  Handle<mif_index_cluster> g(grown);
  CHECK(mif_index_cluster_size(grown) == 14);
  CHECK(ps.relaxed.energy < mif::testing::kC13Energy);
  size_t on = 0, off = 0, adj = 0;
  REQUIRE(mif_adj(ic, grown, &on, &off, &adj) == MIF_OK);
  CHECK(on + off == adj);
  CHECK(adj == 1);

  mif_index_cluster* same = nullptr;
  REQUIRE(mif_peel(nullptr, ic, nullptr, MIF_PEEL_ITSELF, nullptr, &same, nullptr, nullptr) == MIF_OK);
  Handle<mif_index_cluster> sm(same);
  REQUIRE(mif_adj(ic, same, nullptr, nullptr, &adj) == MIF_OK);
  CHECK(adj == 0);

  const double off_lattice[3] = {0.3, 0.3, 0.3};
  mif_cluster* stray = nullptr;
  REQUIRE(mif_cluster_create(off_lattice, 1, nullptr, &stray) == MIF_OK);
  Handle<mif_cluster> st(stray);
  mif_index_cluster* bad = nullptr;
  CHECK(mif_index_cluster_locate(l.get(), stray, 1e-6, &bad) == MIF_E_ARGUMENT);
  CHECK(std::string(mif_last_error()).find("point 1") != std::string::npos);
}

TEST_CASE("c api: catalog build, round trip and lookup") {
  auto l = lattice(MIF_LATTICE_IF, 2);
  auto c = c13();
  mif_index_cluster* ic = nullptr;
  REQUIRE(mif_index_cluster_locate(l.get(), c.get(), 1e-6, &ic) == MIF_OK);
  Handle<mif_index_cluster> seed(ic);

  mif_catalog* cat = nullptr;
  REQUIRE(mif_catalog_build(nullptr, ic, 10, 15, nullptr, &cat) == MIF_OK);
  Handle<mif_catalog> h(cat);
  CHECK(mif_catalog_n_min(cat) == 10);
  CHECK(mif_catalog_n_max(cat) == 15);
  CHECK(mif_catalog_site_count(cat) >= 15);

  mif_catalog_entry e{};
  REQUIRE(mif_catalog_entry_get(cat, 13, &e) == MIF_OK);
  CHECK(e.n == 13);
  CHECK(e.has_e_min == 1);
  CHECK(e.e_min == doctest::Approx(mif::testing::kC13Energy).epsilon(1e-7));

  const auto path = temp_path("mif_c_api.mifcat");
  REQUIRE(mif_catalog_write(cat, path.c_str()) == MIF_OK);
  mif_catalog* back = nullptr;
  REQUIRE(mif_catalog_read(path.c_str(), &back) == MIF_OK);
  Handle<mif_catalog> hb(back);
  std::filesystem::remove(path);

  for (size_t n = 10; n <= 15; ++n) {
    mif_index_cluster* a = nullptr;
    mif_index_cluster* b = nullptr;
    REQUIRE(mif_catalog_reconstruct(cat, n, &a) == MIF_OK);
    REQUIRE(mif_catalog_reconstruct(back, n, &b) == MIF_OK);
    Handle<mif_index_cluster> ha(a), hb2(b);
    std::vector<size_t> ia(n), ib(n);
    mif_index_cluster_indices(a, ia.data());
    mif_index_cluster_indices(b, ib.data());
    CHECK(ia == ib);

    mif_lookup_summary s{};
    REQUIRE(mif_catalog_lookup(back, nullptr, n, nullptr, nullptr, nullptr, &s) == MIF_OK);
    CHECK(s.matches_expected == 1);
  }

  mif_lookup_summary s{};
  CHECK(mif_catalog_lookup(cat, nullptr, 30, nullptr, nullptr, nullptr, &s) == MIF_E_INTEGRITY);
  mif_catalog* missing = nullptr;
  CHECK(mif_catalog_read("/nonexistent/c.mifcat", &missing) == MIF_E_IO);
}
