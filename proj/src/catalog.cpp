#include "mif/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "mif/error.hpp"
#include "parallel.hpp"

namespace mif {

namespace {

[[noreturn]] void integrity(const std::string& what) { throw Error(Errc::catalog_integrity, what); }

// Shell/sublattice of each table site, read off a generated IF lattice when
// the site is one of its sites; otherwise the shell is estimated from the
// radius and the site is tagged IC.
std::vector<std::pair<std::size_t, Sublattice>> recover_tags(std::span<const Point3> table) {
  double rmax = 0.0;
  for (const auto& p : table) rmax = std::max(rmax, p.norm());
  const Lattice reference = gen_if(shells_enclosing(rmax));
  std::vector<std::pair<std::size_t, Sublattice>> tags;
  tags.reserve(table.size());
  for (const auto& p : table) {
    std::optional<std::size_t> hit;
    try {
      hit = reference.locate(p, 1e-6);
    } catch (const Error&) {
    }
    if (hit) {
      tags.emplace_back(reference[*hit].shell, reference[*hit].sublattice);
    } else {
      tags.emplace_back(static_cast<std::size_t>(std::llround(p.norm() / kShellStep)), Sublattice::IC);
    }
  }
  return tags;
}

std::shared_ptr<const Lattice> table_lattice(std::span<const Point3> table,
                                             const std::vector<std::pair<std::size_t, Sublattice>>& tags) {
  std::vector<Site> sites;
  sites.reserve(table.size());
  std::size_t shells = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    sites.push_back({table[i], tags[i].first, tags[i].second, i});
    shells = std::max(shells, tags[i].first);
  }
  return std::make_shared<const Lattice>(std::move(sites), shells);
}

std::vector<SiteIndex> sorted_unique(std::vector<SiteIndex> v, const char* what, std::size_t n) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) {
    integrity(fmt::format("entry n={}: repeated index in {}", n, what));
  }
  return v;
}

}  // namespace

Catalog::Catalog(std::vector<Point3> site_table, std::vector<CatalogEntry> entries)
    : site_table_(std::move(site_table)), entries_(std::move(entries)) {
  validate();
  lattice_ = table_lattice(site_table_, recover_tags(site_table_));
}

Catalog::Catalog(std::vector<Point3> site_table, std::vector<CatalogEntry> entries,
                 std::vector<std::pair<std::size_t, Sublattice>> tags)
    : site_table_(std::move(site_table)), entries_(std::move(entries)) {
  validate();
  if (tags.size() != site_table_.size()) integrity("site tag count differs from site count");
  lattice_ = table_lattice(site_table_, tags);
}

void Catalog::validate() const {
  if (entries_.empty()) integrity("catalog has no entries (missing seed)");
  if (site_table_.empty()) integrity("catalog has an empty site table");
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (k > 0 && e.n + 1 != entries_[k - 1].n) {
      integrity(fmt::format("entries are not contiguous and descending at n={}", e.n));
    }
    if (e.n < 2) integrity(fmt::format("entry n={} is below the minimum cluster size 2", e.n));
    if (e.adj_count && *e.adj_count != e.on_indices.size() + e.off_indices.size()) {
      integrity(fmt::format("entry n={}: adj={} but |on|+|off|={}", e.n, *e.adj_count,
                            e.on_indices.size() + e.off_indices.size()));
    }
    for (const auto* list : {&e.on_indices, &e.off_indices})
      for (auto i : *list)
        if (i >= site_table_.size()) integrity(fmt::format("entry n={}: site index {} out of range", e.n, i));
  }

  const auto& seed = entries_.front();
  if (!seed.off_indices.empty()) integrity(fmt::format("seed entry n={} must not remove sites", seed.n));
  auto current = sorted_unique(seed.on_indices, "on", seed.n);
  if (current.size() != seed.n) {
    integrity(fmt::format("seed entry n={} lists {} sites", seed.n, current.size()));
  }
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    const auto off = sorted_unique(e.off_indices, "off", e.n);
    const auto on = sorted_unique(e.on_indices, "on", e.n);
    if (!std::includes(current.begin(), current.end(), off.begin(), off.end())) {
      integrity(fmt::format("entry n={}: off removes a site that is not present", e.n));
    }
    std::vector<SiteIndex> next;
    std::set_difference(current.begin(), current.end(), off.begin(), off.end(), std::back_inserter(next));
    std::vector<SiteIndex> clash;
    std::set_intersection(next.begin(), next.end(), on.begin(), on.end(), std::back_inserter(clash));
    if (!clash.empty()) integrity(fmt::format("entry n={}: on adds site {} which is already present", e.n, clash[0]));
    std::vector<SiteIndex> merged;
    std::merge(next.begin(), next.end(), on.begin(), on.end(), std::back_inserter(merged));
    if (merged.size() != e.n) {
      integrity(fmt::format("entry n={}: reconstruction has {} sites", e.n, merged.size()));
    }
    current = std::move(merged);
  }
}

const CatalogEntry& Catalog::entry(std::size_t n) const {
  if (n < n_min() || n > n_max()) {
    integrity(fmt::format("no catalog entry for n={} (catalog covers {}..{})", n, n_min(), n_max()));
  }
  return entries_[n_max() - n];
}

IndexCluster reconstruct(const Catalog& cat, std::size_t n) {
  cat.entry(n);
  std::set<SiteIndex> current(cat.entries().front().on_indices.begin(), cat.entries().front().on_indices.end());
  for (std::size_t j = cat.n_max() - 1; j >= n && j >= cat.n_min(); --j) {
    const auto& e = cat.entry(j);
    for (auto i : e.off_indices) current.erase(i);
    current.insert(e.on_indices.begin(), e.on_indices.end());
    if (j == 0) break;
  }
  if (current.size() != n) integrity(fmt::format("reconstruction of n={} has {} sites", n, current.size()));
  return IndexCluster(cat.lattice(), {current.begin(), current.end()});
}

LookupResult lookup_and_relax(const Catalog& cat, const PotentialModel& m, std::size_t n,
                              const RelaxOptions& opts) {
  auto cluster = reconstruct(cat, n);
  const Cluster start = cluster.positions();
  const double e_init = cluster_energy(m, start);
  auto relaxed = relax(m, start, opts);
  const auto type = classify(cluster, relaxed.cluster);

  const auto& e = cat.entry(n);
  bool ok = true;
  if (e.e_min && !(std::abs(*e.e_min - relaxed.energy) <= kCatalogEnergyTolerance)) ok = false;
  if (e.e_init && !(std::abs(*e.e_init - e_init) <= kCatalogEnergyTolerance)) ok = false;
  if (e.type && *e.type != type) ok = false;
  return {std::move(cluster), std::move(relaxed), e_init, type, ok};
}

Catalog build_catalog(std::span<const IndexCluster> chain) {
  if (chain.empty()) throw Error(Errc::argument, "cannot build a catalog from an empty chain");
  for (std::size_t k = 1; k < chain.size(); ++k) {
    if (chain[k].lattice_ptr() != chain[0].lattice_ptr()) {
      throw Error(Errc::argument, "chain clusters must share one lattice");
    }
    if (chain[k].size() + 1 != chain[k - 1].size()) {
      throw Error(Errc::argument, fmt::format("chain sizes {} -> {} are not consecutive",
                                              chain[k - 1].size(), chain[k].size()));
    }
  }
  const Lattice& lat = chain[0].lattice();

  std::set<SiteIndex> used;
  for (const auto& c : chain) used.insert(c.indices().begin(), c.indices().end());
  std::map<SiteIndex, SiteIndex> dense;
  std::vector<Point3> table;
  std::vector<std::pair<std::size_t, Sublattice>> tags;
  for (auto i : used) {
    dense.emplace(i, table.size());
    table.push_back(lat[i].position);
    tags.emplace_back(lat[i].shell, lat[i].sublattice);
  }
  auto remap = [&](std::span<const SiteIndex> src) {
    std::vector<SiteIndex> out;
    out.reserve(src.size());
    for (auto i : src) out.push_back(dense.at(i));
    return out;
  };

  std::vector<CatalogEntry> entries;
  entries.reserve(chain.size());
  CatalogEntry seed;
  seed.n = chain[0].size();
  seed.on_indices = remap(chain[0].indices());
  seed.adj_count = seed.on_indices.size();
  entries.push_back(std::move(seed));
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto prev = chain[k - 1].indices();
    const auto cur = chain[k].indices();
    std::vector<SiteIndex> on;
    std::vector<SiteIndex> off;
    std::set_difference(cur.begin(), cur.end(), prev.begin(), prev.end(), std::back_inserter(on));
    std::set_difference(prev.begin(), prev.end(), cur.begin(), cur.end(), std::back_inserter(off));
    CatalogEntry e;
    e.n = chain[k].size();
    e.on_indices = remap(on);
    e.off_indices = remap(off);
    e.adj_count = on.size() + off.size();
    entries.push_back(std::move(e));
  }
  return Catalog(std::move(table), std::move(entries), std::move(tags));
}

Catalog annotate(const Catalog& cat, const PotentialModel& m, const RelaxOptions& opts) {
  std::vector<CatalogEntry> entries(cat.entries().begin(), cat.entries().end());
  detail::parallel_for(entries.size(), [&](std::size_t k) {
    const auto res = lookup_and_relax(cat, m, entries[k].n, opts);
    entries[k].type = res.type;
    entries[k].e_init = res.e_init;
    entries[k].e_min = res.relaxed.energy;
  });
  std::vector<std::pair<std::size_t, Sublattice>> tags;
  for (const auto& s : cat.lattice()->sites()) tags.emplace_back(s.shell, s.sublattice);
  return Catalog({cat.site_table().begin(), cat.site_table().end()}, std::move(entries), std::move(tags));
}

IndexCluster rotate_sites(const IndexCluster& c, const Rotation& r, double tol) {
  const Lattice& lat = c.lattice();
  std::vector<SiteIndex> out;
  out.reserve(c.size());
  for (auto i : c.indices()) {
    const Point3 q = r.apply(lat[i].position);
    const auto hit = lat.locate(q, tol);
    if (!hit) {
      throw Error(Errc::symmetry_violation,
                  fmt::format("rotation carries site {} to ({}, {}, {}), which is not a lattice site", i, q.x, q.y, q.z));
    }
    out.push_back(*hit);
  }
  return IndexCluster(c.lattice_ptr(), std::move(out));
}

IndexCluster relocate(const IndexCluster& c, std::shared_ptr<const Lattice> target, double tol) {
  std::vector<SiteIndex> out;
  out.reserve(c.size());
  for (auto i : c.indices()) {
    const auto& p = c.lattice()[i].position;
    const auto hit = target->locate(p, tol);
    if (!hit) throw Error(Errc::argument, fmt::format("site ({}, {}, {}) is not on the target lattice", p.x, p.y, p.z));
    out.push_back(*hit);
  }
  return IndexCluster(std::move(target), std::move(out));
}

Alignment align_min_adj(const IndexCluster& fixed, const IndexCluster& movable,
                        std::span<const Rotation> rotations) {
  if (fixed.lattice_ptr() != movable.lattice_ptr()) {
    throw Error(Errc::argument, "alignment needs clusters on one lattice");
  }
  if (rotations.empty()) throw Error(Errc::argument, "no rotations to align with");
  std::optional<Alignment> best;
  for (std::size_t k = 0; k < rotations.size(); ++k) {
    const auto a = adj(fixed, rotate_sites(movable, rotations[k]));
    if (!best || a < best->adj) best = Alignment{rotations[k], a, k};
  }
  return *best;
}

std::vector<IndexCluster> align_chain(std::span<const IndexCluster> chain, std::span<const Rotation> rotations) {
  if (chain.empty()) return {};
  if (rotations.empty()) throw Error(Errc::argument, "no rotations to align with");
  const Lattice& lat = chain[0].lattice();

  std::size_t last_shell = 0;
  for (auto i : chain[0].indices()) last_shell = std::max(last_shell, lat[i].shell);
  std::optional<IndexCluster> top;
  std::size_t top_count = 0;
  for (const auto& r : rotations) {
    auto rotated = rotate_sites(chain[0], r);
    std::size_t count = 0;
    for (auto i : rotated.indices()) {
      if (lat[i].shell != last_shell) continue;
      const auto key = cylindrical_key(lat[i].position);
      if (key.rho > 0.0 && key.alpha <= 1e-3) ++count;
    }
    if (!top || count > top_count) {
      top = std::move(rotated);
      top_count = count;
    }
  }

  std::vector<IndexCluster> out;
  out.reserve(chain.size());
  out.push_back(std::move(*top));
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto a = align_min_adj(out.back(), chain[k], rotations);
    out.push_back(rotate_sites(chain[k], a.rotation));
  }
  return out;
}

std::vector<IndexCluster> peel_chain(const PotentialModel& m, const IndexCluster& seed, std::size_t n_min,
                                     std::size_t n_max, const RelaxOptions& opts) {
  if (n_min < 2 || n_min > seed.size() || n_max < seed.size()) {
    throw Error(Errc::argument, fmt::format("chain bounds {}..{} must satisfy 2 <= n_min <= {} <= n_max", n_min,
                                            n_max, seed.size()));
  }
  const auto start = relax(m, seed.positions(), opts);

  std::vector<IndexCluster> up;
  IndexCluster cur = seed;
  Cluster geometry = start.cluster;
  while (cur.size() < n_max) {
    auto r = peel_forward(m, cur, geometry, opts);
    geometry = std::move(r.relaxed.cluster);
    cur = std::move(r.cluster);
    up.push_back(cur);
  }

  std::vector<IndexCluster> chain(up.rbegin(), up.rend());
  chain.push_back(seed);
  cur = seed;
  geometry = start.cluster;
  while (cur.size() > n_min) {
    if (cur.size() < 3) break;
    auto r = peel_backward(m, cur, geometry, opts);
    geometry = std::move(r.relaxed.cluster);
    cur = std::move(r.cluster);
    chain.push_back(cur);
  }
  return chain;
}

std::vector<IndexCluster> refine_chain(const PotentialModel& m, std::vector<IndexCluster> chain,
                                       const RelaxOptions& opts, const RefineOptions& refine) {
  for (std::size_t k = 1; k < chain.size(); ++k) {
    if (chain[k].size() + 1 != chain[k - 1].size() || chain[k].lattice_ptr() != chain[0].lattice_ptr()) {
      throw Error(Errc::argument, "refinement needs a descending chain on one lattice");
    }
  }
  auto lookup_energy = [&](const IndexCluster& c) { return relax(m, c.positions(), opts).energy; };
  std::vector<double> energy(chain.size());
  detail::parallel_for(chain.size(), [&](std::size_t k) { energy[k] = lookup_energy(chain[k]); });

  bool changed = false;
  auto offer = [&](std::size_t k, IndexCluster cand) {
    if (cand == chain[k]) return;
    const double e = lookup_energy(cand);
    if (e < energy[k] - kEnergyTieTolerance) {
      chain[k] = std::move(cand);
      energy[k] = e;
      changed = true;
    }
  };

  for (std::size_t sweep = 0; sweep < refine.max_sweeps; ++sweep) {
    changed = false;
    // Growing sizes: entry k comes from entry k + 1 by one forward move.
    for (std::size_t k = chain.size() - 1; k-- > 0;) {
      try {
        offer(k, peel_forward(m, chain[k + 1], opts).cluster);
      } catch (const Error& e) {
        if (e.code() != Errc::frontier_exhausted) throw;
      }
    }
    for (std::size_t k = 1; k < chain.size(); ++k) {
      if (chain[k - 1].size() >= 3) offer(k, peel_backward(m, chain[k - 1], opts).cluster);
    }
    if (refine.swaps) {
      for (std::size_t k = 0; k < chain.size(); ++k) offer(k, peel_itself(m, chain[k], opts).cluster);
    }
    if (!changed) break;
  }
  return chain;
}

namespace {

constexpr std::string_view kMagic = "MIFCAT 1";

std::string join_indices(std::span<const SiteIndex> v) {
  if (v.empty()) return "-";
  std::vector<SiteIndex> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return fmt::format("{}", fmt::join(s, ","));
}

std::string real_or_dash(const std::optional<double>& v) { return v ? fmt::format("{:.17g}", *v) : "-"; }

class LineParser {
 public:
  explicit LineParser(std::string_view text) : text_(text) {}

  // Next line without its terminator; false at end of input.
  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    line = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++lineno_;
    return true;
  }
  std::size_t lineno() const { return lineno_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::syntax, fmt::format("line {}: {}", lineno_, what));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t lineno_ = 0;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::size_t need_size(const LineParser& lp, std::string_view s, const char* what) {
  std::size_t v = 0;
  if (!parse_number(s, v)) lp.fail(fmt::format("expected a nonnegative integer for {}, got '{}'", what, s));
  return v;
}

double need_real(const LineParser& lp, std::string_view s, const char* what) {
  double v = 0;
  if (!parse_number(s, v) || !std::isfinite(v)) lp.fail(fmt::format("expected a finite number for {}, got '{}'", what, s));
  return v;
}

std::vector<SiteIndex> parse_list(const LineParser& lp, std::string_view s, const char* what) {
  std::vector<SiteIndex> out;
  if (s == "-") return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(need_size(lp, s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start), what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

CatalogEntry parse_entry(const LineParser& lp, std::string_view line) {
  static constexpr std::array<std::string_view, 7> keys{"n", "on", "off", "type", "e_init", "e_min", "adj"};
  std::array<std::optional<std::string_view>, 7> values;
  for (auto tok : split_ws(line)) {
    const auto eq = tok.find('=');
    if (eq == std::string_view::npos) lp.fail(fmt::format("expected key=value, got '{}'", tok));
    const auto key = tok.substr(0, eq);
    const auto it = std::find(keys.begin(), keys.end(), key);
    if (it == keys.end()) lp.fail(fmt::format("unknown key '{}'", key));
    auto& slot = values[static_cast<std::size_t>(it - keys.begin())];
    if (slot) lp.fail(fmt::format("duplicate key '{}'", key));
    slot = tok.substr(eq + 1);
  }
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (!values[k]) lp.fail(fmt::format("missing key '{}'", keys[k]));

  CatalogEntry e;
  e.n = need_size(lp, *values[0], "n");
  e.on_indices = parse_list(lp, *values[1], "on");
  e.off_indices = parse_list(lp, *values[2], "off");
  if (*values[3] != "-") {
    int code = 0;
    if (!parse_number(*values[3], code) || (code != 1 && code != 2 && code != 3 && code != 5)) {
      lp.fail(fmt::format("type must be 1, 2, 3, 5 or -, got '{}'", *values[3]));
    }
    e.type = geometric_type_from_code(code);
  }
  if (*values[4] != "-") e.e_init = need_real(lp, *values[4], "e_init");
  if (*values[5] != "-") e.e_min = need_real(lp, *values[5], "e_min");
  if (*values[6] != "-") e.adj_count = need_size(lp, *values[6], "adj");
  return e;
}

}  // namespace

std::string serialize_catalog(const Catalog& cat) {
  std::string out;
  out += kMagic;
  out += '\n';
  out += fmt::format("sites {}\n", cat.site_table().size());
  for (std::size_t i = 0; i < cat.site_table().size(); ++i) {
    const auto& p = cat.site_table()[i];
    out += fmt::format("{} {:.17g} {:.17g} {:.17g}\n", i, p.x, p.y, p.z);
  }
  out += fmt::format("entries {} {}\n", cat.n_min(), cat.n_max());
  for (const auto& e : cat.entries()) {
    out += fmt::format("n={} on={} off={} type={} e_init={} e_min={} adj={}\n", e.n, join_indices(e.on_indices),
                       join_indices(e.off_indices), e.type ? std::to_string(static_cast<int>(*e.type)) : "-",
                       real_or_dash(e.e_init), real_or_dash(e.e_min),
                       e.adj_count ? std::to_string(*e.adj_count) : "-");
  }
  return out;
}

Catalog parse_catalog(std::string_view text) {
  LineParser lp(text);
  std::string_view line;
  if (!lp.next(line) || split_ws(line) != std::vector<std::string_view>{"MIFCAT", "1"}) {
    lp.fail("expected header 'MIFCAT 1'");
  }
  if (!lp.next(line)) lp.fail("expected 'sites <count>'");
  auto tok = split_ws(line);
  if (tok.size() != 2 || tok[0] != "sites") lp.fail("expected 'sites <count>'");
  const auto count = need_size(lp, tok[1], "site count");

  std::vector<Point3> table;
  table.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!lp.next(line)) lp.fail(fmt::format("expected site line {} of {}", i, count));
    tok = split_ws(line);
    if (tok.size() != 4) lp.fail("expected '<index> <x> <y> <z>'");
    if (need_size(lp, tok[0], "site index") != i) lp.fail(fmt::format("site lines must be numbered in order; expected {}", i));
    table.push_back({need_real(lp, tok[1], "x"), need_real(lp, tok[2], "y"), need_real(lp, tok[3], "z")});
  }

  if (!lp.next(line)) lp.fail("expected 'entries <n_min> <n_max>'");
  tok = split_ws(line);
  if (tok.size() != 3 || tok[0] != "entries") lp.fail("expected 'entries <n_min> <n_max>'");
  const auto n_min = need_size(lp, tok[1], "n_min");
  const auto n_max = need_size(lp, tok[2], "n_max");

  std::vector<CatalogEntry> entries;
  while (lp.next(line)) {
    if (split_ws(line).empty()) {
      // Only trailing blank lines are allowed.
      while (lp.next(line))
        if (!split_ws(line).empty()) lp.fail("unexpected content after a blank line");
      break;
    }
    entries.push_back(parse_entry(lp, line));
  }
  if (entries.empty()) integrity("catalog has no entries (missing seed)");
  if (entries.front().n != n_max || entries.back().n != n_min) {
    integrity(fmt::format("entries cover {}..{} but the header declares {}..{}", entries.back().n,
                          entries.front().n, n_min, n_max));
  }
  return Catalog(std::move(table), std::move(entries));
}

Catalog read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, fmt::format("cannot open catalog '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_catalog(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_catalog(const std::filesystem::path& path, const Catalog& cat) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, fmt::format("cannot write catalog '{}'", path.string()));
  out << serialize_catalog(cat);
  if (!out) throw Error(Errc::io, fmt::format("failed writing catalog '{}'", path.string()));
}

}  // namespace mif
