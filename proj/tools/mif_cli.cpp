// Command-line front end. Talks to the library only through mif.h.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mif/mif.h"

namespace {

enum Exit : int { kOk = 0, kMismatch = 1, kUsage = 2, kInput = 3, kNumeric = 4 };

struct Failure {
  mif_status status;
  std::string message;
};

int exit_code(mif_status s) {
  switch (s) {
    case MIF_OK: return kOk;
    case MIF_E_NUMERIC:
    case MIF_E_DOMAIN:
    case MIF_E_DEGENERATE: return kNumeric;
    default: return kInput;
  }
}

void check(mif_status s, const std::string& context = {}) {
  if (s == MIF_OK) return;
  std::string msg = mif_last_error();
  if (!context.empty()) msg = context + ": " + msg;
  throw Failure{s, msg};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ClusterPtr = std::unique_ptr<mif_cluster, Deleter<mif_cluster, mif_cluster_free>>;
using LatticePtr = std::unique_ptr<mif_lattice, Deleter<mif_lattice, mif_lattice_free>>;
using IndexPtr = std::unique_ptr<mif_index_cluster, Deleter<mif_index_cluster, mif_index_cluster_free>>;
using CatalogPtr = std::unique_ptr<mif_catalog, Deleter<mif_catalog, mif_catalog_free>>;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Config {
  std::string potential = "lj";
  std::optional<double> eps, sigma, alpha, beta, gamma;
  double grad_tol = 1e-8;
  std::size_t max_iters = 0;
  std::size_t shells = 0;  // 0: auto-size from the input
  double locate_tol = 1e-6;
  bool verbose = false;

  mif_potential model() const {
    mif_potential p;
    if (potential == "lj") mif_potential_init(&p, MIF_POTENTIAL_LJ);
    else if (potential == "morse") mif_potential_init(&p, MIF_POTENTIAL_MORSE);
    else if (potential == "bu") mif_potential_init(&p, MIF_POTENTIAL_BUCKINGHAM);
    else mif_potential_init(&p, MIF_POTENTIAL_KIHARA);
    if (eps) p.epsilon0 = *eps;
    if (sigma) p.sigma = *sigma;
    if (alpha) p.alpha = *alpha;
    if (beta) p.beta = *beta;
    if (gamma) p.gamma = *gamma;
    return p;
  }

  mif_relax_options options() const {
    mif_relax_options o;
    mif_relax_options_init(&o);
    o.grad_tol = grad_tol;
    o.max_iters = max_iters;
    if (verbose) {
      o.trace = [](void*, std::size_t it, double e, double g, double step) {
        std::fprintf(stderr, "%zu %.12f %.6e %.6e\n", it, e, g, step);
      };
    }
    return o;
  }
};

ClusterPtr read_cluster(const std::string& path) {
  mif_cluster* c = nullptr;
  check(mif_xyz_read(path.c_str(), &c));
  return ClusterPtr(c);
}

std::vector<double> coordinates(const mif_cluster* c) {
  std::vector<double> x(3 * mif_cluster_size(c));
  check(mif_cluster_coordinates(c, x.data()));
  return x;
}

void write_cluster(const std::string& path, const mif_cluster* c, const std::string& comment,
                   const double* vectors = nullptr) {
  check(mif_xyz_write(path.c_str(), c, comment.c_str(), vectors));
}

double energy_of(const mif_potential& p, const mif_cluster* c) {
  double e = 0.0;
  check(mif_energy(&p, c, &e));
  return e;
}

LatticePtr lattice_for(const Config& cfg, const mif_cluster* c) {
  std::size_t shells = cfg.shells;
  if (shells == 0) {
    const auto x = coordinates(c);
    double rmax = 0.0;
    for (std::size_t i = 0; i < x.size(); i += 3) rmax = std::max(rmax, std::hypot(x[i], x[i + 1], x[i + 2]));
    shells = mif_shells_enclosing(rmax);
  }
  mif_lattice* l = nullptr;
  check(mif_lattice_generate(MIF_LATTICE_IF, shells, &l));
  return LatticePtr(l);
}

IndexPtr locate_all(const Config& cfg, const mif_lattice* l, const mif_cluster* c) {
  mif_index_cluster* ic = nullptr;
  check(mif_index_cluster_locate(l, c, cfg.locate_tol, &ic), "locate");
  return IndexPtr(ic);
}

int cmd_lattice(std::size_t shells, const std::string& kind, const std::string& out) {
  const mif_lattice_kind k = kind == "ic" ? MIF_LATTICE_IC : kind == "fc" ? MIF_LATTICE_FC : MIF_LATTICE_IF;
  mif_lattice* raw = nullptr;
  check(mif_lattice_generate(k, shells, &raw));
  LatticePtr l(raw);
  check(mif_lattice_write_xyz(l.get(), out.c_str()));
  const std::size_t n = mif_lattice_size(l.get());
  std::vector<std::size_t> ic(shells + 1), fc(shells + 1);
  for (std::size_t i = 0; i < n; ++i) {
    mif_site s;
    check(mif_lattice_site(l.get(), i, &s));
    (s.sublattice == MIF_SUB_IC ? ic : fc)[s.shell]++;
  }
  std::printf("sites=%zu shells=%zu\n", n, shells);
  for (std::size_t k2 = 0; k2 <= shells; ++k2) std::printf("shell %zu: IC=%zu FC=%zu\n", k2, ic[k2], fc[k2]);
  return kOk;
}

int cmd_relax(const Config& cfg, const std::string& in, const std::string& out, double perturb, unsigned seed) {
  auto c = read_cluster(in);
  if (perturb > 0.0) {
    auto x = coordinates(c.get());
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-perturb, perturb);
    for (auto& v : x) v += u(rng);
    mif_cluster* p = nullptr;
    check(mif_cluster_create(x.data(), x.size() / 3, nullptr, &p));
    c.reset(p);
  }
  const auto pot = cfg.model();
  const auto opts = cfg.options();
  const double e0 = energy_of(pot, c.get());
  mif_cluster* r = nullptr;
  mif_relax_summary s{};
  const auto st = mif_relax(&pot, c.get(), &opts, &r, &s);
  if (st != MIF_OK) {
    const std::string msg = mif_last_error();
    if (!out.empty()) write_cluster(out, c.get(), "E=" + num(e0) + " source=relax-last-good");
    throw Failure{st, msg};
  }
  ClusterPtr relaxed(r);
  if (!out.empty()) write_cluster(out, relaxed.get(), "E=" + num(s.energy) + " source=relax");
  std::printf("n=%zu E_init=%s E_min=%s |g|=%s iters=%zu converged=%s\n", mif_cluster_size(c.get()),
              num(e0).c_str(), num(s.energy).c_str(), sci(s.grad_norm).c_str(), s.iterations,
              s.converged ? "true" : "false");
  return kOk;
}

int cmd_gradient(const Config& cfg, const std::string& in, const std::string& out) {
  auto c = read_cluster(in);
  const auto pot = cfg.model();
  std::vector<double> g(3 * mif_cluster_size(c.get()));
  double e = 0.0;
  check(mif_gradient(&pot, c.get(), g.data(), &e));
  double raw = 0.0;
  for (double v : g) raw += v * v;
  raw = std::sqrt(raw);
  // Below the relaxation tolerance the direction is numerical noise.
  const auto st = raw <= cfg.grad_tol ? MIF_E_DEGENERATE : mif_normalized_gradient(&pot, c.get(), g.data());
  if (st == MIF_E_DEGENERATE) {
    std::fprintf(stderr, "warning: gradient vanishes (|g|=%s); writing zero vectors\n", sci(raw).c_str());
    std::fill(g.begin(), g.end(), 0.0);
  } else {
    check(st);
  }
  if (!out.empty()) write_cluster(out, c.get(), "E=" + num(e) + " source=gradient", g.data());
  std::printf("n=%zu E=%s |g|=%s\n", mif_cluster_size(c.get()), num(e).c_str(), sci(raw).c_str());
  return kOk;
}

const char* type_name(mif_geometric_type t) { return mif_geometric_type_name(t); }

int cmd_peel(const Config& cfg, const std::string& in, const std::string& op, std::size_t steps,
             const std::string& prefix) {
  auto c = read_cluster(in);
  auto lat = lattice_for(cfg, c.get());
  auto cur = locate_all(cfg, lat.get(), c.get());
  // Member coordinates from the input file, labelled with their sites.
  std::vector<std::size_t> labels;
  {
    const auto x = coordinates(c.get());
    for (std::size_t i = 0; i < x.size(); i += 3) {
      std::size_t idx = 0;
      int found = 0;
      check(mif_lattice_locate(lat.get(), &x[i], cfg.locate_tol, &idx, &found));
      labels.push_back(idx);
    }
    mif_cluster* g = nullptr;
    check(mif_cluster_create(x.data(), labels.size(), labels.data(), &g));
    c.reset(g);
  }
  const mif_peel_op pop = op == "forward" ? MIF_PEEL_FORWARD : op == "backward" ? MIF_PEEL_BACKWARD : MIF_PEEL_ITSELF;
  const auto pot = cfg.model();
  const auto opts = cfg.options();

  std::printf("n E_init E_min adj type\n");
  for (std::size_t step = 1; step <= steps; ++step) {
    mif_index_cluster* next = nullptr;
    mif_cluster* relaxed = nullptr;
    mif_peel_summary s{};
    const auto st = mif_peel(&pot, cur.get(), c.get(), pop, &opts, &next, &relaxed, &s);
    if (st == MIF_E_FRONTIER || (st == MIF_E_ARGUMENT && pop == MIF_PEEL_BACKWARD &&
                                 mif_index_cluster_size(cur.get()) < 3)) {
      std::fprintf(stderr, "notice: stopping after %zu step(s): %s\n", step - 1, mif_last_error());
      break;
    }
    check(st, "peel");
    IndexPtr next_ptr(next);
    ClusterPtr relaxed_ptr(relaxed);
    std::size_t a = 0;
    check(mif_adj(cur.get(), next_ptr.get(), nullptr, nullptr, &a));
    mif_geometric_type t{};
    check(mif_classify(next_ptr.get(), relaxed_ptr.get(), &t));
    const std::size_t n = mif_index_cluster_size(next_ptr.get());
    std::printf("%zu %s %s %zu %d\n", n, num(s.e_init).c_str(), num(s.relaxed.energy).c_str(), a,
                static_cast<int>(t));
    const std::string path = prefix + "_" + std::to_string(step) + ".xyz";
    write_cluster(path, relaxed_ptr.get(),
                  "E=" + num(s.relaxed.energy) + " source=peel-" + op + " type=" + type_name(t));
    cur = std::move(next_ptr);
    c = std::move(relaxed_ptr);
  }
  return kOk;
}

int cmd_classify(const Config& cfg, const std::string& in) {
  auto c = read_cluster(in);
  auto lat = lattice_for(cfg, c.get());
  auto idx = locate_all(cfg, lat.get(), c.get());
  const auto pot = cfg.model();
  const auto opts = cfg.options();
  mif_cluster* start = nullptr;
  check(mif_index_cluster_positions(idx.get(), &start));
  ClusterPtr start_ptr(start);
  mif_cluster* r = nullptr;
  check(mif_relax(&pot, start_ptr.get(), &opts, &r, nullptr));
  ClusterPtr relaxed(r);
  mif_geometric_type t{};
  check(mif_classify(idx.get(), relaxed.get(), &t));
  std::printf("%d %s\n", static_cast<int>(t), type_name(t));
  return kOk;
}

int cmd_catalog_build(const Config& cfg, const std::string& seed_path, std::size_t n_min, std::size_t n_max,
                      const std::string& out) {
  auto c = read_cluster(seed_path);
  auto lat = lattice_for(cfg, c.get());
  auto seed = locate_all(cfg, lat.get(), c.get());
  const auto pot = cfg.model();
  const auto opts = cfg.options();
  mif_catalog* cat = nullptr;
  check(mif_catalog_build(&pot, seed.get(), n_min, n_max, &opts, &cat));
  CatalogPtr owned(cat);
  check(mif_catalog_write(owned.get(), out.c_str()));
  std::printf("n E_init E_min adj type\n");
  for (std::size_t n = mif_catalog_n_max(cat); n + 1 > mif_catalog_n_min(cat); --n) {
    mif_catalog_entry e;
    check(mif_catalog_entry_get(cat, n, &e));
    std::printf("%zu %s %s %zu %d\n", n, num(e.e_init).c_str(), num(e.e_min).c_str(), e.adj,
                static_cast<int>(e.type));
    if (n == 0) break;
  }
  std::printf("sites=%zu entries=%zu..%zu written to %s\n", mif_catalog_site_count(cat), mif_catalog_n_min(cat),
              mif_catalog_n_max(cat), out.c_str());
  return kOk;
}

CatalogPtr open_catalog(const std::string& path) {
  mif_catalog* cat = nullptr;
  check(mif_catalog_read(path.c_str(), &cat));
  return CatalogPtr(cat);
}

std::string expected(int has, double v) { return has ? num(v) : std::string("-"); }

// Prints one comparison line; returns whether it matches the entry.
bool report_lookup(const Config& cfg, const mif_catalog* cat, std::size_t n, const std::string& out) {
  const auto pot = cfg.model();
  const auto opts = cfg.options();
  mif_catalog_entry e;
  check(mif_catalog_entry_get(cat, n, &e));
  mif_cluster* relaxed = nullptr;
  mif_lookup_summary s{};
  check(mif_catalog_lookup(cat, &pot, n, &opts, nullptr, &relaxed, &s));
  ClusterPtr r(relaxed);
  if (!out.empty()) write_cluster(out, r.get(), "E=" + num(s.relaxed.energy) + " source=catalog-lookup");
  std::printf("n=%zu type=%d %s E_init=%s E_min=%s | expected type=%s E_init=%s E_min=%s adj=%s | %s\n", n,
              static_cast<int>(s.type), type_name(s.type), num(s.e_init).c_str(), num(s.relaxed.energy).c_str(),
              e.has_type ? std::to_string(static_cast<int>(e.type)).c_str() : "-",
              expected(e.has_e_init, e.e_init).c_str(), expected(e.has_e_min, e.e_min).c_str(),
              e.has_adj ? std::to_string(e.adj).c_str() : "-", s.matches_expected ? "match" : "MISMATCH");
  return s.matches_expected != 0;
}

int cmd_catalog_lookup(const Config& cfg, const std::string& path, std::size_t n, const std::string& out) {
  auto cat = open_catalog(path);
  report_lookup(cfg, cat.get(), n, out);
  return kOk;
}

int cmd_catalog_verify(const Config& cfg, const std::string& path) {
  auto cat = open_catalog(path);
  std::size_t bad = 0;
  for (std::size_t n = mif_catalog_n_min(cat.get()); n <= mif_catalog_n_max(cat.get()); ++n) {
    if (!report_lookup(cfg, cat.get(), n, {})) ++bad;
  }
  std::printf("verified %zu entries, %zu mismatch(es)\n",
              mif_catalog_n_max(cat.get()) - mif_catalog_n_min(cat.get()) + 1, bad);
  return bad ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atomic cluster search on icosahedral lattices"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--potential", cfg.potential, "Pair potential")
        ->check(CLI::IsMember({"lj", "morse", "bu", "ki"}))
        ->capture_default_str();
    sub->add_option("--eps", cfg.eps, "Well depth (LJ, Kihara)");
    sub->add_option("--sigma", cfg.sigma, "Length scale (LJ, Kihara)");
    sub->add_option("--alpha", cfg.alpha, "Morse range or Buckingham prefactor");
    sub->add_option("--beta", cfg.beta, "Buckingham exponent");
    sub->add_option("--gamma", cfg.gamma, "Buckingham dispersion or Kihara core");
    sub->add_option("--grad-tol", cfg.grad_tol, "Gradient-norm stopping tolerance")->capture_default_str();
    sub->add_option("--max-iters", cfg.max_iters, "Iteration cap (0: 200 n)")->capture_default_str();
    sub->add_option("--shells", cfg.shells, "Lattice shells (0: enclose the input plus one shell)")
        ->capture_default_str();
    sub->add_option("--locate-tol", cfg.locate_tol, "Distance tolerance for matching points to sites")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_flag("--verbose,-v", cfg.verbose, "Print the per-iteration trace to stderr");
  };

  std::string out;
  std::string in;

  auto* lattice = app.add_subcommand("lattice", "Write the IF lattice as tagged XYZ");
  std::size_t lattice_shells = 1;
  std::string lattice_kind = "if";
  lattice->add_option("--shells", lattice_shells, "Number of shells")->check(CLI::PositiveNumber)->required();
  lattice->add_option("--kind", lattice_kind, "Sublattice selection")
      ->check(CLI::IsMember({"if", "ic", "fc"}))
      ->capture_default_str();
  lattice->add_option("--out", out, "Output XYZ path")->required();

  auto* relax = app.add_subcommand("relax", "Relax a cluster and print a summary line");
  double perturb = 0.0;
  unsigned seed = 0;
  relax->add_option("input", in, "Input XYZ")->required();
  relax->add_option("--out", out, "Relaxed XYZ path");
  relax->add_option("--perturb", perturb, "Uniform noise amplitude added to each coordinate")
      ->check(CLI::NonNegativeNumber);
  relax->add_option("--seed", seed, "Seed for --perturb")->capture_default_str();
  add_common(relax);

  auto* gradient = app.add_subcommand("gradient", "Write the normalized gradient as extended XYZ");
  gradient->add_option("input", in, "Input XYZ")->required();
  gradient->add_option("--out", out, "Extended XYZ path");
  add_common(gradient);

  auto* peel = app.add_subcommand("peel", "Run greedy peeling moves");
  std::string op = "forward";
  std::size_t steps = 1;
  peel->add_option("input", in, "Input XYZ on lattice sites")->required();
  peel->add_option("--op", op, "Move type")
      ->check(CLI::IsMember({"forward", "backward", "itself"}))
      ->capture_default_str();
  peel->add_option("--steps", steps, "Number of moves")->check(CLI::PositiveNumber)->capture_default_str();
  peel->add_option("--out", out, "Output prefix; step k writes <prefix>_<k>.xyz")->default_val("peel");
  add_common(peel);

  auto* classify = app.add_subcommand("classify", "Print the geometric type code and name");
  classify->add_option("input", in, "Input XYZ on lattice sites")->required();
  add_common(classify);

  auto* catalog = app.add_subcommand("catalog", "Build, query or verify a catalog");
  catalog->require_subcommand(1);
  auto* build = catalog->add_subcommand("build", "Peel around a seed and write a catalog");
  std::size_t n_min = 2;
  std::size_t n_max = 0;
  build->add_option("seed", in, "Seed cluster XYZ on lattice sites")->required();
  build->add_option("--n-min", n_min, "Smallest cluster size")->capture_default_str();
  build->add_option("--n-max", n_max, "Largest cluster size")->required();
  build->add_option("--out", out, "Catalog path")->required();
  add_common(build);
  auto* lookup = catalog->add_subcommand("lookup", "Reconstruct, relax and compare one entry");
  std::size_t lookup_n = 0;
  lookup->add_option("catalog", in, "Catalog path")->required();
  lookup->add_option("n", lookup_n, "Cluster size")->required();
  lookup->add_option("--out", out, "Relaxed XYZ path");
  add_common(lookup);
  auto* verify = catalog->add_subcommand("verify", "Look up every entry; exit 1 on any mismatch");
  verify->add_option("catalog", in, "Catalog path")->required();
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*lattice) return cmd_lattice(lattice_shells, lattice_kind, out);
    if (*relax) return cmd_relax(cfg, in, out, perturb, seed);
    if (*gradient) return cmd_gradient(cfg, in, out);
    if (*peel) return cmd_peel(cfg, in, op, steps, out);
    if (*classify) return cmd_classify(cfg, in);
    if (*build) return cmd_catalog_build(cfg, in, n_min, n_max, out);
    if (*lookup) return cmd_catalog_lookup(cfg, in, lookup_n, out);
    if (*verify) return cmd_catalog_verify(cfg, in);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error (%s): %s\n", mif_status_name(f.status), f.message.c_str());
    return exit_code(f.status);
  }
  return kUsage;
}
