#include "mif/mif.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include <fmt/format.h>

#include "mif/catalog.hpp"
#include "mif/error.hpp"
#include "mif/xyz.hpp"

struct mif_cluster {
  mif::Cluster value;
};

struct mif_lattice {
  std::shared_ptr<const mif::Lattice> value;
};

struct mif_index_cluster {
  mif::IndexCluster value;
};

struct mif_catalog {
  mif::Catalog value;
};

namespace {

thread_local std::string g_last_error;

mif_status to_status(mif::Errc code) {
  using mif::Errc;
  switch (code) {
    case Errc::argument: return MIF_E_ARGUMENT;
    case Errc::domain: return MIF_E_DOMAIN;
    case Errc::degenerate_direction: return MIF_E_DEGENERATE;
    case Errc::numeric_breakdown: return MIF_E_NUMERIC;
    case Errc::ambiguous_match: return MIF_E_AMBIGUOUS;
    case Errc::symmetry_violation: return MIF_E_SYMMETRY;
    case Errc::frontier_exhausted: return MIF_E_FRONTIER;
    case Errc::catalog_integrity: return MIF_E_INTEGRITY;
    case Errc::syntax: return MIF_E_SYNTAX;
    case Errc::io: return MIF_E_IO;
  }
  return MIF_E_INTERNAL;
}

mif_status fail(mif_status s, std::string what) {
  g_last_error = std::move(what);
  return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
mif_status guarded(F&& f) noexcept {
  try {
    f();
    return MIF_OK;
  } catch (const mif::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MIF_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MIF_E_INTERNAL, e.what());
  } catch (...) {
    return fail(MIF_E_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw mif::Error(mif::Errc::argument, what);
}

mif::PotentialModel model_of(const mif_potential* p) {
  if (!p) return {};
  switch (p->kind) {
    case MIF_POTENTIAL_LJ: return mif::PotentialModel(mif::LennardJones{p->epsilon0, p->sigma});
    case MIF_POTENTIAL_MORSE: return mif::PotentialModel(mif::Morse{p->alpha});
    case MIF_POTENTIAL_BUCKINGHAM: return mif::PotentialModel(mif::Buckingham{p->alpha, p->beta, p->gamma});
    case MIF_POTENTIAL_KIHARA: return mif::PotentialModel(mif::Kihara{p->epsilon0, p->sigma, p->gamma});
  }
  throw mif::Error(mif::Errc::argument, fmt::format("unknown potential kind {}", static_cast<int>(p->kind)));
}

mif::RelaxOptions options_of(const mif_relax_options* o) {
  mif::RelaxOptions r;
  if (!o) return r;
  r.grad_tol = o->grad_tol;
  r.max_iters = o->max_iters;
  r.restart_period = o->restart_period;
  r.line_search_c1 = o->line_search_c1;
  r.line_search_c2 = o->line_search_c2;
  return r;
}

mif::IterationTrace trace_of(const mif_relax_options* o) {
  if (!o || !o->trace) return {};
  return [fn = o->trace, user = o->trace_user](const mif::IterationRecord& r) {
    fn(user, r.iteration, r.energy, r.grad_norm, r.step_length);
  };
}

void fill(mif_relax_summary* s, const mif::RelaxResult& r) {
  if (!s) return;
  s->energy = r.energy;
  s->grad_norm = r.grad_norm;
  s->iterations = r.iterations;
  s->converged = r.converged ? 1 : 0;
}

template <class T>
T* make(T value) {
  return new T(std::move(value));
}

mif_geometric_type to_c(mif::GeometricType t) { return static_cast<mif_geometric_type>(static_cast<int>(t)); }

void copy_indices(const std::vector<std::size_t>& v, size_t* out, size_t cap, size_t* count) {
  require(count != nullptr, "count must not be NULL");
  require(cap == 0 || out != nullptr, "output buffer is NULL");
  *count = v.size();
  for (std::size_t i = 0; i < v.size() && i < cap; ++i) out[i] = v[i];
}

}  // namespace

extern "C" {

const char* mif_last_error(void) { return g_last_error.c_str(); }

const char* mif_status_name(mif_status status) {
  switch (status) {
    case MIF_OK: return "ok";
    case MIF_E_ARGUMENT: return "argument";
    case MIF_E_DOMAIN: return "domain";
    case MIF_E_DEGENERATE: return "degenerate_direction";
    case MIF_E_NUMERIC: return "numeric_breakdown";
    case MIF_E_AMBIGUOUS: return "ambiguous_match";
    case MIF_E_SYMMETRY: return "symmetry_violation";
    case MIF_E_FRONTIER: return "frontier_exhausted";
    case MIF_E_INTEGRITY: return "catalog_integrity";
    case MIF_E_SYNTAX: return "syntax";
    case MIF_E_IO: return "io";
    case MIF_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* mif_version(void) { return "1.0.0"; }

void mif_potential_init(mif_potential* p, mif_potential_kind kind) {
  if (!p) return;
  *p = mif_potential{};
  p->kind = kind;
  p->epsilon0 = 1.0;
  p->sigma = 1.0;
  switch (kind) {
    case MIF_POTENTIAL_MORSE: p->alpha = mif::Morse{}.alpha; break;
    case MIF_POTENTIAL_BUCKINGHAM: {
      const mif::Buckingham b;
      p->alpha = b.alpha;
      p->beta = b.beta;
      p->gamma = b.gamma;
      break;
    }
    case MIF_POTENTIAL_KIHARA: p->gamma = mif::Kihara{}.gamma; break;
    default: break;
  }
}

mif_status mif_pair_energy(const mif_potential* p, double r, double* e, double* d1, double* d2) {
  return guarded([&] {
    const auto m = model_of(p);
    if (e) *e = mif::pair_energy(m, r);
    if (d1) *d1 = mif::pair_energy_d1(m, r);
    if (d2) *d2 = mif::pair_energy_d2(m, r);
  });
}

mif_status mif_cluster_create(const double* xyz, size_t n, const size_t* labels, mif_cluster** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    require(xyz != nullptr || n == 0, "coordinates are NULL");
    std::optional<std::vector<mif::SiteIndex>> l;
    if (labels) l.emplace(labels, labels + n);
    *out = make(mif_cluster{mif::Cluster::from_coordinates({xyz, 3 * n}, std::move(l))});
  });
}

void mif_cluster_free(mif_cluster* c) { delete c; }

size_t mif_cluster_size(const mif_cluster* c) { return c ? c->value.size() : 0; }

mif_status mif_cluster_coordinates(const mif_cluster* c, double* xyz) {
  return guarded([&] {
    require(c && xyz, "NULL argument");
    const auto v = c->value.coordinates();
    std::memcpy(xyz, v.data(), v.size() * sizeof(double));
  });
}

int mif_cluster_has_labels(const mif_cluster* c) { return c && c->value.has_labels() ? 1 : 0; }

mif_status mif_cluster_labels(const mif_cluster* c, size_t* labels) {
  return guarded([&] {
    require(c && labels, "NULL argument");
    const auto l = c->value.labels();
    std::copy(l.begin(), l.end(), labels);
  });
}

mif_status mif_energy(const mif_potential* p, const mif_cluster* c, double* energy) {
  return guarded([&] {
    require(c && energy, "NULL argument");
    *energy = mif::cluster_energy(model_of(p), c->value);
  });
}

mif_status mif_gradient(const mif_potential* p, const mif_cluster* c, double* grad, double* energy) {
  return guarded([&] {
    require(c && grad, "NULL argument");
    const auto x = c->value.coordinates();
    const double e = mif::energy_and_gradient(model_of(p), x, {grad, x.size()});
    if (energy) *energy = e;
  });
}

mif_status mif_normalized_gradient(const mif_potential* p, const mif_cluster* c, double* grad) {
  return guarded([&] {
    require(c && grad, "NULL argument");
    const auto g = mif::normalized_gradient(model_of(p), c->value);
    std::copy(g.begin(), g.end(), grad);
  });
}

mif_status mif_classed_energy(const mif_potential* p, const mif_cluster* c, double tol, double* energy,
                              size_t* class_count) {
  return guarded([&] {
    require(c && energy, "NULL argument");
    const auto classes = mif::distance_classes(c->value, tol);
    *energy = mif::classed_energy(model_of(p), classes);
    if (class_count) *class_count = classes.size();
  });
}

void mif_relax_options_init(mif_relax_options* o) {
  if (!o) return;
  const mif::RelaxOptions d;
  *o = mif_relax_options{};
  o->grad_tol = d.grad_tol;
  o->max_iters = d.max_iters;
  o->restart_period = d.restart_period;
  o->line_search_c1 = d.line_search_c1;
  o->line_search_c2 = d.line_search_c2;
}

mif_status mif_relax(const mif_potential* p, const mif_cluster* c, const mif_relax_options* opts,
                     mif_cluster** out, mif_relax_summary* summary) {
  return guarded([&] {
    require(c && out, "NULL argument");
    auto r = mif::relax(model_of(p), c->value, options_of(opts), trace_of(opts));
    fill(summary, r);
    *out = make(mif_cluster{std::move(r.cluster)});
  });
}

mif_status mif_is_stationary(const mif_potential* p, const mif_cluster* c, double delta0, int* result) {
  return guarded([&] {
    require(c && result, "NULL argument");
    *result = mif::is_stationary(model_of(p), c->value, delta0) ? 1 : 0;
  });
}

mif_status mif_xyz_read(const char* path, mif_cluster** out) {
  return guarded([&] {
    require(path && out, "NULL argument");
    auto frame = mif::read_xyz(path);
    *out = make(mif_cluster{mif::Cluster(std::move(frame.points))});
  });
}

mif_status mif_xyz_write(const char* path, const mif_cluster* c, const char* comment, const double* vectors) {
  return guarded([&] {
    require(path && c, "NULL argument");
    std::vector<mif::Point3> vec;
    if (vectors) {
      for (std::size_t i = 0; i < c->value.size(); ++i) vec.push_back({vectors[3 * i], vectors[3 * i + 1], vectors[3 * i + 2]});
    }
    mif::write_xyz(path, c->value.points(), comment ? comment : "", vectors ? &vec : nullptr);
  });
}

mif_status mif_lattice_generate(mif_lattice_kind kind, size_t shells, mif_lattice** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    switch (kind) {
      case MIF_LATTICE_IF: *out = make(mif_lattice{std::make_shared<const mif::Lattice>(mif::gen_if(shells))}); return;
      case MIF_LATTICE_IC: *out = make(mif_lattice{std::make_shared<const mif::Lattice>(mif::gen_ic(shells))}); return;
      case MIF_LATTICE_FC: *out = make(mif_lattice{std::make_shared<const mif::Lattice>(mif::gen_fc(shells))}); return;
    }
    throw mif::Error(mif::Errc::argument, "unknown lattice kind");
  });
}

void mif_lattice_free(mif_lattice* l) { delete l; }
size_t mif_lattice_size(const mif_lattice* l) { return l ? l->value->size() : 0; }
size_t mif_lattice_shells(const mif_lattice* l) { return l ? l->value->shells() : 0; }
double mif_lattice_nn_distance(const mif_lattice* l) { return l ? l->value->nn_distance() : 0.0; }

mif_status mif_lattice_site(const mif_lattice* l, size_t i, mif_site* site) {
  return guarded([&] {
    require(l && site, "NULL argument");
    if (i >= l->value->size()) throw mif::Error(mif::Errc::argument, fmt::format("site index {} out of range", i));
    const auto& s = (*l->value)[i];
    site->position[0] = s.position.x;
    site->position[1] = s.position.y;
    site->position[2] = s.position.z;
    site->shell = s.shell;
    site->sublattice = s.sublattice == mif::Sublattice::IC ? MIF_SUB_IC : MIF_SUB_FC;
    site->index = s.index;
  });
}

mif_status mif_lattice_neighbors(const mif_lattice* l, size_t i, double cutoff, size_t* out, size_t cap,
                                 size_t* count) {
  return guarded([&] {
    require(l != nullptr, "NULL lattice");
    copy_indices(cutoff > 0.0 ? l->value->neighbors(i, cutoff) : l->value->neighbors(i), out, cap, count);
  });
}

mif_status mif_lattice_locate(const mif_lattice* l, const double p[3], double tol, size_t* index, int* found) {
  return guarded([&] {
    require(l && p && index && found, "NULL argument");
    const auto hit = l->value->locate({p[0], p[1], p[2]}, tol);
    *found = hit ? 1 : 0;
    if (hit) *index = *hit;
  });
}

mif_status mif_lattice_write_xyz(const mif_lattice* l, const char* path) {
  return guarded([&] {
    require(l && path, "NULL argument");
    const auto& lat = *l->value;
    std::vector<mif::Point3> pts;
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      pts.push_back(lat[i].position);
      tags.push_back(fmt::format("shell={} sub={} idx={}", lat[i].shell, mif::to_string(lat[i].sublattice), i));
    }
    mif::write_xyz(path, pts, fmt::format("source=lattice shells={} sites={}", lat.shells(), lat.size()), nullptr,
                   &tags);
  });
}

size_t mif_shells_enclosing(double radius) {
  try {
    return mif::shells_enclosing(radius);
  } catch (const mif::Error& e) {
    g_last_error = e.what();
    return 0;
  }
}

mif_status mif_index_cluster_create(const mif_lattice* l, const size_t* indices, size_t n, mif_index_cluster** out) {
  return guarded([&] {
    require(l && out, "NULL argument");
    require(indices != nullptr || n == 0, "indices are NULL");
    *out = make(mif_index_cluster{mif::IndexCluster(l->value, {indices, indices + n})});
  });
}

mif_status mif_index_cluster_locate(const mif_lattice* l, const mif_cluster* c, double tol, mif_index_cluster** out) {
  return guarded([&] {
    require(l && c && out, "NULL argument");
    std::vector<mif::SiteIndex> idx;
    for (std::size_t k = 0; k < c->value.size(); ++k) {
      const auto& p = c->value[k];
      const auto hit = l->value->locate(p, tol);
      if (!hit) {
        throw mif::Error(mif::Errc::argument,
                         fmt::format("point {} ({:.12f}, {:.12f}, {:.12f}) is not within {} of a lattice site", k + 1,
                                     p.x, p.y, p.z, tol));
      }
      idx.push_back(*hit);
    }
    *out = make(mif_index_cluster{mif::IndexCluster(l->value, std::move(idx))});
  });
}

void mif_index_cluster_free(mif_index_cluster* c) { delete c; }
size_t mif_index_cluster_size(const mif_index_cluster* c) { return c ? c->value.size() : 0; }

mif_status mif_index_cluster_indices(const mif_index_cluster* c, size_t* out) {
  return guarded([&] {
    require(c && out, "NULL argument");
    std::copy(c->value.indices().begin(), c->value.indices().end(), out);
  });
}

mif_status mif_index_cluster_positions(const mif_index_cluster* c, mif_cluster** out) {
  return guarded([&] {
    require(c && out, "NULL argument");
    *out = make(mif_cluster{c->value.positions()});
  });
}

mif_status mif_adj(const mif_index_cluster* a, const mif_index_cluster* b, size_t* on, size_t* off, size_t* adj) {
  return guarded([&] {
    require(a && b, "NULL argument");
    if (on) *on = mif::on_count(a->value, b->value);
    if (off) *off = mif::off_count(a->value, b->value);
    if (adj) *adj = mif::adj(a->value, b->value);
  });
}

mif_status mif_k_c(const mif_index_cluster* c, size_t* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(c != nullptr, "NULL cluster");
    copy_indices(mif::k_c(c->value), out, cap, count);
  });
}

mif_status mif_k_if(const mif_index_cluster* c, size_t* out, size_t cap, size_t* count) {
  return guarded([&] {
    require(c != nullptr, "NULL cluster");
    copy_indices(mif::k_if(c->value), out, cap, count);
  });
}

mif_status mif_peel(const mif_potential* p, const mif_index_cluster* c, const mif_cluster* geometry, mif_peel_op op,
                    const mif_relax_options* opts, mif_index_cluster** out, mif_cluster** relaxed,
                    mif_peel_summary* summary) {
  return guarded([&] {
    require(c && out, "NULL argument");
    const auto m = model_of(p);
    const auto o = options_of(opts);
    const mif::Cluster g = geometry ? geometry->value : c->value.positions();
    auto r = [&] {
      switch (op) {
        case MIF_PEEL_FORWARD: return mif::peel_forward(m, c->value, g, o);
        case MIF_PEEL_BACKWARD: return mif::peel_backward(m, c->value, g, o);
        case MIF_PEEL_ITSELF: return mif::peel_itself(m, c->value, g, o);
      }
      throw mif::Error(mif::Errc::argument, "unknown peel operation");
    }();
    if (summary) {
      summary->e_init = r.e_init;
      fill(&summary->relaxed, r.relaxed);
    }
    auto idx = std::make_unique<mif_index_cluster>(mif_index_cluster{std::move(r.cluster)});
    if (relaxed) *relaxed = make(mif_cluster{std::move(r.relaxed.cluster)});
    *out = idx.release();
  });
}

mif_status mif_classify(const mif_index_cluster* c, const mif_cluster* relaxed, mif_geometric_type* type) {
  return guarded([&] {
    require(c && type, "NULL argument");
    *type = to_c(mif::classify(c->value, relaxed ? relaxed->value : c->value.positions()));
  });
}

const char* mif_geometric_type_name(mif_geometric_type type) {
  switch (type) {
    case MIF_TYPE_IC: return "IC";
    case MIF_TYPE_ID: return "ID";
    case MIF_TYPE_TO: return "TO";
    case MIF_TYPE_FC: return "FC";
  }
  return "?";
}

mif_status mif_catalog_read(const char* path, mif_catalog** out) {
  return guarded([&] {
    require(path && out, "NULL argument");
    *out = make(mif_catalog{mif::read_catalog(path)});
  });
}

mif_status mif_catalog_write(const mif_catalog* cat, const char* path) {
  return guarded([&] {
    require(cat && path, "NULL argument");
    mif::write_catalog(path, cat->value);
  });
}

void mif_catalog_free(mif_catalog* cat) { delete cat; }
size_t mif_catalog_n_min(const mif_catalog* cat) { return cat ? cat->value.n_min() : 0; }
size_t mif_catalog_n_max(const mif_catalog* cat) { return cat ? cat->value.n_max() : 0; }
size_t mif_catalog_site_count(const mif_catalog* cat) { return cat ? cat->value.site_table().size() : 0; }

mif_status mif_catalog_entry_get(const mif_catalog* cat, size_t n, mif_catalog_entry* entry) {
  return guarded([&] {
    require(cat && entry, "NULL argument");
    const auto& e = cat->value.entry(n);
    *entry = mif_catalog_entry{};
    entry->n = e.n;
    entry->on_count = e.on_indices.size();
    entry->off_count = e.off_indices.size();
    entry->has_type = e.type.has_value();
    if (e.type) entry->type = to_c(*e.type);
    entry->has_e_init = e.e_init.has_value();
    entry->e_init = e.e_init.value_or(0.0);
    entry->has_e_min = e.e_min.has_value();
    entry->e_min = e.e_min.value_or(0.0);
    entry->has_adj = e.adj_count.has_value();
    entry->adj = e.adj_count.value_or(0);
  });
}

mif_status mif_catalog_build(const mif_potential* p, const mif_index_cluster* seed, size_t n_min, size_t n_max,
                             const mif_relax_options* opts, mif_catalog** out) {
  return guarded([&] {
    require(seed && out, "NULL argument");
    const auto m = model_of(p);
    const auto o = options_of(opts);
    const auto chain = mif::refine_chain(m, mif::peel_chain(m, seed->value, n_min, n_max, o), o);
    const auto aligned = mif::align_chain(chain, mif::icosahedral_rotations());
    *out = make(mif_catalog{mif::annotate(mif::build_catalog(aligned), m, o)});
  });
}

mif_status mif_catalog_from_chain(const mif_index_cluster* const* chain, size_t count, mif_catalog** out) {
  return guarded([&] {
    require(chain && out, "NULL argument");
    std::vector<mif::IndexCluster> v;
    v.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      require(chain[k] != nullptr, "NULL chain element");
      v.push_back(chain[k]->value);
    }
    *out = make(mif_catalog{mif::build_catalog(v)});
  });
}

mif_status mif_catalog_annotate(const mif_catalog* cat, const mif_potential* p, const mif_relax_options* opts,
                                mif_catalog** out) {
  return guarded([&] {
    require(cat && out, "NULL argument");
    *out = make(mif_catalog{mif::annotate(cat->value, model_of(p), options_of(opts))});
  });
}

mif_status mif_catalog_reconstruct(const mif_catalog* cat, size_t n, mif_index_cluster** out) {
  return guarded([&] {
    require(cat && out, "NULL argument");
    *out = make(mif_index_cluster{mif::reconstruct(cat->value, n)});
  });
}

mif_status mif_catalog_lookup(const mif_catalog* cat, const mif_potential* p, size_t n, const mif_relax_options* opts,
                              mif_index_cluster** out, mif_cluster** relaxed, mif_lookup_summary* summary) {
  return guarded([&] {
    require(cat != nullptr, "NULL catalog");
    auto r = mif::lookup_and_relax(cat->value, model_of(p), n, options_of(opts));
    if (summary) {
      summary->e_init = r.e_init;
      fill(&summary->relaxed, r.relaxed);
      summary->type = to_c(r.type);
      summary->matches_expected = r.matches_expected ? 1 : 0;
    }
    std::unique_ptr<mif_index_cluster> idx;
    if (out) idx = std::make_unique<mif_index_cluster>(mif_index_cluster{std::move(r.cluster)});
    if (relaxed) *relaxed = make(mif_cluster{std::move(r.relaxed.cluster)});
    if (out) *out = idx.release();
  });
}

}  // extern "C"
