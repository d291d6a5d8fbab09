#ifndef MIF_MIF_H
#define MIF_MIF_H

/* C interface to the cluster library. All objects are opaque handles owned
 * by the caller and released with the matching *_free function. Functions
 * return a mif_status; on failure mif_last_error() describes the problem
 * (thread-local, valid until the next failing call on the same thread). */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(MIF_BUILDING_LIBRARY)
#    define MIF_API __declspec(dllexport)
#  else
#    define MIF_API __declspec(dllimport)
#  endif
#else
#  define MIF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mif_status {
  MIF_OK = 0,
  MIF_E_ARGUMENT = 1,
  MIF_E_DOMAIN = 2,
  MIF_E_DEGENERATE = 3,
  MIF_E_NUMERIC = 4,
  MIF_E_AMBIGUOUS = 5,
  MIF_E_SYMMETRY = 6,
  MIF_E_FRONTIER = 7,
  MIF_E_INTEGRITY = 8,
  MIF_E_SYNTAX = 9,
  MIF_E_IO = 10,
  MIF_E_INTERNAL = 99
} mif_status;

MIF_API const char* mif_last_error(void);
MIF_API const char* mif_status_name(mif_status status);
MIF_API const char* mif_version(void);

typedef struct mif_cluster mif_cluster;             /* coordinates, optional site labels */
typedef struct mif_lattice mif_lattice;             /* immutable site set */
typedef struct mif_index_cluster mif_index_cluster; /* site-index set on a lattice */
typedef struct mif_catalog mif_catalog;

/* ---- potentials ---------------------------------------------------------- */

typedef enum mif_potential_kind {
  MIF_POTENTIAL_LJ = 0,
  MIF_POTENTIAL_MORSE = 1,
  MIF_POTENTIAL_BUCKINGHAM = 2,
  MIF_POTENTIAL_KIHARA = 3
} mif_potential_kind;

/* LJ uses epsilon0/sigma; Morse uses alpha; Buckingham alpha*exp(beta r) +
 * gamma/r^6; Kihara epsilon0/sigma/gamma. Unused fields are ignored. */
typedef struct mif_potential {
  mif_potential_kind kind;
  double epsilon0;
  double sigma;
  double alpha;
  double beta;
  double gamma;
} mif_potential;

/* Fills the library defaults for `kind`. */
MIF_API void mif_potential_init(mif_potential* p, mif_potential_kind kind);

/* Any of e, d1, d2 may be NULL. */
MIF_API mif_status mif_pair_energy(const mif_potential* p, double r, double* e, double* d1, double* d2);

/* ---- clusters ------------------------------------------------------------ */

/* xyz holds 3n doubles; labels may be NULL. */
MIF_API mif_status mif_cluster_create(const double* xyz, size_t n, const size_t* labels, mif_cluster** out);
MIF_API void mif_cluster_free(mif_cluster* c);
MIF_API size_t mif_cluster_size(const mif_cluster* c);
/* Copies 3n coordinates. */
MIF_API mif_status mif_cluster_coordinates(const mif_cluster* c, double* xyz);
MIF_API int mif_cluster_has_labels(const mif_cluster* c);
MIF_API mif_status mif_cluster_labels(const mif_cluster* c, size_t* labels);

MIF_API mif_status mif_energy(const mif_potential* p, const mif_cluster* c, double* energy);
/* grad receives 3n doubles; energy may be NULL. */
MIF_API mif_status mif_gradient(const mif_potential* p, const mif_cluster* c, double* grad, double* energy);
/* Unit-norm gradient; MIF_E_DEGENERATE when the raw norm is <= 1e-14. */
MIF_API mif_status mif_normalized_gradient(const mif_potential* p, const mif_cluster* c, double* grad);
/* Energy from pair-distance classes; class_count may be NULL. */
MIF_API mif_status mif_classed_energy(const mif_potential* p, const mif_cluster* c, double tol, double* energy,
                                      size_t* class_count);

/* ---- relaxation ---------------------------------------------------------- */

typedef void (*mif_trace_fn)(void* user, size_t iteration, double energy, double grad_norm, double step_length);

typedef struct mif_relax_options {
  double grad_tol;
  size_t max_iters;      /* 0: 200 n */
  size_t restart_period; /* 0: 3 n */
  double line_search_c1;
  double line_search_c2;
  mif_trace_fn trace; /* may be NULL */
  void* trace_user;
} mif_relax_options;

MIF_API void mif_relax_options_init(mif_relax_options* o);

typedef struct mif_relax_summary {
  double energy;
  double grad_norm;
  size_t iterations;
  int converged;
} mif_relax_summary;

/* opts may be NULL for defaults; summary may be NULL. */
MIF_API mif_status mif_relax(const mif_potential* p, const mif_cluster* c, const mif_relax_options* opts,
                             mif_cluster** out, mif_relax_summary* summary);
MIF_API mif_status mif_is_stationary(const mif_potential* p, const mif_cluster* c, double delta0, int* result);

/* ---- XYZ files ----------------------------------------------------------- */

/* Reads the coordinate columns; extra columns and tags are ignored. */
MIF_API mif_status mif_xyz_read(const char* path, mif_cluster** out);
/* vectors (3n doubles) may be NULL for plain XYZ. */
MIF_API mif_status mif_xyz_write(const char* path, const mif_cluster* c, const char* comment, const double* vectors);

/* ---- lattices ------------------------------------------------------------ */

typedef enum mif_lattice_kind { MIF_LATTICE_IF = 0, MIF_LATTICE_IC = 1, MIF_LATTICE_FC = 2 } mif_lattice_kind;
typedef enum mif_sublattice { MIF_SUB_IC = 0, MIF_SUB_FC = 1 } mif_sublattice;

typedef struct mif_site {
  double position[3];
  size_t shell;
  mif_sublattice sublattice;
  size_t index; /* index in the IF lattice with the same shell count */
} mif_site;

MIF_API mif_status mif_lattice_generate(mif_lattice_kind kind, size_t shells, mif_lattice** out);
MIF_API void mif_lattice_free(mif_lattice* l);
MIF_API size_t mif_lattice_size(const mif_lattice* l);
MIF_API size_t mif_lattice_shells(const mif_lattice* l);
MIF_API double mif_lattice_nn_distance(const mif_lattice* l);
MIF_API mif_status mif_lattice_site(const mif_lattice* l, size_t i, mif_site* site);
/* Two-call pattern: *count always receives the neighbour count; up to `cap`
 * indices are written to `out` (may be NULL when cap is 0). cutoff <= 0
 * selects the default cutoff. */
MIF_API mif_status mif_lattice_neighbors(const mif_lattice* l, size_t i, double cutoff, size_t* out, size_t cap,
                                         size_t* count);
/* *found is 0 when no site lies within tol. */
MIF_API mif_status mif_lattice_locate(const mif_lattice* l, const double p[3], double tol, size_t* index,
                                      int* found);
/* Lattice export with "shell=<k> sub=<IC|FC> idx=<i>" per atom line. */
MIF_API mif_status mif_lattice_write_xyz(const mif_lattice* l, const char* path);
/* Shell count whose outer shell encloses `radius`, plus one. */
MIF_API size_t mif_shells_enclosing(double radius);

/* ---- index clusters and peeling ------------------------------------------ */

MIF_API mif_status mif_index_cluster_create(const mif_lattice* l, const size_t* indices, size_t n,
                                            mif_index_cluster** out);
/* Locates every point of c on l (tolerance tol); the error names the first
 * point that is off the lattice. */
MIF_API mif_status mif_index_cluster_locate(const mif_lattice* l, const mif_cluster* c, double tol,
                                            mif_index_cluster** out);
MIF_API void mif_index_cluster_free(mif_index_cluster* c);
MIF_API size_t mif_index_cluster_size(const mif_index_cluster* c);
/* Writes size() ascending indices. */
MIF_API mif_status mif_index_cluster_indices(const mif_index_cluster* c, size_t* out);
/* Lattice positions labelled with the site indices. */
MIF_API mif_status mif_index_cluster_positions(const mif_index_cluster* c, mif_cluster** out);

/* Any of on, off, adj may be NULL. */
MIF_API mif_status mif_adj(const mif_index_cluster* a, const mif_index_cluster* b, size_t* on, size_t* off,
                           size_t* adj);
/* Two-call pattern as in mif_lattice_neighbors. */
MIF_API mif_status mif_k_c(const mif_index_cluster* c, size_t* out, size_t cap, size_t* count);
MIF_API mif_status mif_k_if(const mif_index_cluster* c, size_t* out, size_t cap, size_t* count);

typedef enum mif_peel_op { MIF_PEEL_FORWARD = 0, MIF_PEEL_BACKWARD = 1, MIF_PEEL_ITSELF = 2 } mif_peel_op;

typedef struct mif_peel_summary {
  double e_init;
  mif_relax_summary relaxed;
} mif_peel_summary;

/* geometry (labelled with the member indices) may be NULL to start from the
 * lattice positions. relaxed and summary may be NULL. */
MIF_API mif_status mif_peel(const mif_potential* p, const mif_index_cluster* c, const mif_cluster* geometry,
                            mif_peel_op op, const mif_relax_options* opts, mif_index_cluster** out,
                            mif_cluster** relaxed, mif_peel_summary* summary);

typedef enum mif_geometric_type {
  MIF_TYPE_IC = 1,
  MIF_TYPE_ID = 2,
  MIF_TYPE_TO = 3,
  MIF_TYPE_FC = 5
} mif_geometric_type;

MIF_API mif_status mif_classify(const mif_index_cluster* c, const mif_cluster* relaxed, mif_geometric_type* type);
MIF_API const char* mif_geometric_type_name(mif_geometric_type type);

/* ---- catalogs ------------------------------------------------------------ */

MIF_API mif_status mif_catalog_read(const char* path, mif_catalog** out);
MIF_API mif_status mif_catalog_write(const mif_catalog* cat, const char* path);
MIF_API void mif_catalog_free(mif_catalog* cat);
MIF_API size_t mif_catalog_n_min(const mif_catalog* cat);
MIF_API size_t mif_catalog_n_max(const mif_catalog* cat);
MIF_API size_t mif_catalog_site_count(const mif_catalog* cat);

typedef struct mif_catalog_entry {
  size_t n;
  size_t on_count;
  size_t off_count;
  int has_type;
  mif_geometric_type type;
  int has_e_init;
  double e_init;
  int has_e_min;
  double e_min;
  int has_adj;
  size_t adj;
} mif_catalog_entry;

MIF_API mif_status mif_catalog_entry_get(const mif_catalog* cat, size_t n, mif_catalog_entry* entry);

/* Builds a catalog from a seed: forward peeling up to n_max, backward down to
 * n_min, per-size refinement by repeated forward/backward moves along the
 * chain, icosahedral alignment, then annotation with relaxed energies and
 * types under p. */
MIF_API mif_status mif_catalog_build(const mif_potential* p, const mif_index_cluster* seed, size_t n_min,
                                     size_t n_max, const mif_relax_options* opts, mif_catalog** out);
/* Catalog of an explicit descending chain (sizes n, n-1, ...) on one lattice. */
MIF_API mif_status mif_catalog_from_chain(const mif_index_cluster* const* chain, size_t count, mif_catalog** out);
MIF_API mif_status mif_catalog_annotate(const mif_catalog* cat, const mif_potential* p,
                                        const mif_relax_options* opts, mif_catalog** out);
MIF_API mif_status mif_catalog_reconstruct(const mif_catalog* cat, size_t n, mif_index_cluster** out);

typedef struct mif_lookup_summary {
  double e_init;
  mif_relax_summary relaxed;
  mif_geometric_type type;
  int matches_expected;
} mif_lookup_summary;

/* out and relaxed may be NULL. */
MIF_API mif_status mif_catalog_lookup(const mif_catalog* cat, const mif_potential* p, size_t n,
                                      const mif_relax_options* opts, mif_index_cluster** out,
                                      mif_cluster** relaxed, mif_lookup_summary* summary);

#ifdef __cplusplus
}
#endif

#endif
