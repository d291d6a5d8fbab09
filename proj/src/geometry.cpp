#include "mif/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "mif/error.hpp"

namespace mif {

double distance(const Point3& p, const Point3& q) { return (p - q).norm(); }

CylindricalKey cylindrical_key(const Point3& p) {
  const double rho = p.norm();
  if (rho == 0.0) return {};
  const double alpha = std::acos(std::clamp(p.y / rho, -1.0, 1.0));
  double beta = 0.0;
  if (p.x != 0.0 || p.z != 0.0) {
    beta = std::atan2(p.z, p.x);
    if (beta < 0.0) beta += 2.0 * std::numbers::pi;
    if (beta >= 2.0 * std::numbers::pi) beta = 0.0;
  }
  return {rho, alpha, beta};
}

Point3 from_cylindrical_key(const CylindricalKey& k) {
  const double s = std::sin(k.alpha);
  return {k.rho * s * std::cos(k.beta), k.rho * std::cos(k.alpha), k.rho * s * std::sin(k.beta)};
}

Cluster::Cluster(std::vector<Point3> points, std::optional<std::vector<SiteIndex>> labels)
    : points_(std::move(points)), labels_(std::move(labels)) {
  if (points_.empty()) throw Error(Errc::argument, "cluster must contain at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!points_[i].finite()) throw Error(Errc::argument, fmt::format("point {} is not finite", i));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    for (std::size_t j = i + 1; j < points_.size(); ++j) {
      if (distance(points_[i], points_[j]) < kMinSeparation) {
        throw Error(Errc::argument, fmt::format("points {} and {} coincide", i, j));
      }
    }
  }
  if (labels_) {
    if (labels_->size() != points_.size()) {
      throw Error(Errc::argument, fmt::format("label count {} differs from point count {}",
                                              labels_->size(), points_.size()));
    }
    std::vector<SiteIndex> sorted = *labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(Errc::argument, "cluster labels must be pairwise distinct");
    }
  }
}

Cluster Cluster::from_coordinates(std::span<const double> xyz,
                                  std::optional<std::vector<SiteIndex>> labels) {
  if (xyz.size() % 3 != 0) throw Error(Errc::argument, "coordinate count is not a multiple of 3");
  std::vector<Point3> pts(xyz.size() / 3);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {xyz[3 * i], xyz[3 * i + 1], xyz[3 * i + 2]};
  return Cluster(std::move(pts), std::move(labels));
}

std::span<const SiteIndex> Cluster::labels() const {
  if (!labels_) throw Error(Errc::argument, "cluster carries no lattice labels");
  return *labels_;
}

std::vector<double> Cluster::coordinates() const {
  std::vector<double> out;
  out.reserve(3 * points_.size());
  for (const auto& p : points_) {
    out.push_back(p.x);
    out.push_back(p.y);
    out.push_back(p.z);
  }
  return out;
}

namespace {

// Keys are quantized so that symmetry-equivalent points whose rho/alpha differ
// only by rounding compare equal on those components.
constexpr double kKeyQuantum = 1e-9;

struct SortKey {
  long long rho;
  long long alpha;
  double beta;
  auto operator<=>(const SortKey&) const = default;
};

SortKey sort_key(const Point3& p) {
  const auto k = cylindrical_key(p);
  return {std::llround(k.rho / kKeyQuantum), std::llround(k.alpha / kKeyQuantum), k.beta};
}

}  // namespace

std::vector<std::size_t> canonical_permutation(std::span<const Point3> points) {
  std::vector<SortKey> keys(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) keys[i] = sort_key(points[i]);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  return order;
}

Cluster canonical_order(const Cluster& c) {
  const auto order = canonical_permutation(c.points());

  std::vector<Point3> pts;
  pts.reserve(c.size());
  for (auto i : order) pts.push_back(c[i]);
  if (!c.has_labels()) return Cluster(std::move(pts));
  std::vector<SiteIndex> labels;
  labels.reserve(c.size());
  for (auto i : order) labels.push_back(c.labels()[i]);
  return Cluster(std::move(pts), std::move(labels));
}

Point3 center_of_mass(const Cluster& c) {
  Point3 sum;
  for (const auto& p : c.points()) sum += p;
  return sum / static_cast<double>(c.size());
}

Rotation::Rotation() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

Rotation::Rotation(const std::array<double, 9>& m) : m_(m) {
  constexpr double tol = 1e-12;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(k, i) * (*this)(k, j);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > tol) {
        throw Error(Errc::argument, "rotation matrix is not orthogonal");
      }
    }
  }
  const double det = m_[0] * (m_[4] * m_[8] - m_[5] * m_[7]) -
                     m_[1] * (m_[3] * m_[8] - m_[5] * m_[6]) +
                     m_[2] * (m_[3] * m_[7] - m_[4] * m_[6]);
  if (std::abs(det - 1.0) > tol) throw Error(Errc::argument, "rotation matrix has determinant != +1");
}

Rotation Rotation::about_axis(const Point3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw Error(Errc::argument, "rotation axis must be nonzero");
  const Point3 u = axis / n;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  return Rotation({t * u.x * u.x + c, t * u.x * u.y - s * u.z, t * u.x * u.z + s * u.y,
                   t * u.x * u.y + s * u.z, t * u.y * u.y + c, t * u.y * u.z - s * u.x,
                   t * u.x * u.z - s * u.y, t * u.y * u.z + s * u.x, t * u.z * u.z + c});
}

Point3 Rotation::apply(const Point3& p) const {
  return {m_[0] * p.x + m_[1] * p.y + m_[2] * p.z, m_[3] * p.x + m_[4] * p.y + m_[5] * p.z,
          m_[6] * p.x + m_[7] * p.y + m_[8] * p.z};
}

Rotation Rotation::operator*(const Rotation& o) const {
  std::array<double, 9> r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
      r[static_cast<std::size_t>(3 * i + j)] = s;
    }
  return Rotation(r);
}

Rotation Rotation::inverse() const {
  return Rotation({m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2], m_[5], m_[8]});
}

double Rotation::max_abs_diff(const Rotation& o) const {
  double d = 0.0;
  for (std::size_t i = 0; i < 9; ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
  return d;
}

Cluster rotate(const Cluster& c, const Rotation& r) {
  std::vector<Point3> pts;
  pts.reserve(c.size());
  for (const auto& p : c.points()) pts.push_back(r.apply(p));
  if (!c.has_labels()) return Cluster(std::move(pts));
  return Cluster(std::move(pts), std::vector<SiteIndex>(c.labels().begin(), c.labels().end()));
}

const std::array<Point3, 12>& icosahedron_vertices() {
  static const std::array<Point3, 12> verts = [] {
    std::array<Point3, 12> v{};
    const double y = 1.0 / std::sqrt(5.0);
    const double r = 2.0 / std::sqrt(5.0);
    const double step = 2.0 * std::numbers::pi / 5.0;
    v[0] = {0.0, 1.0, 0.0};
    for (int k = 0; k < 5; ++k) {
      const double up = step * k;
      const double down = step * k + step / 2.0;
      v[static_cast<std::size_t>(1 + k)] = {r * std::cos(up), y, r * std::sin(up)};
      v[static_cast<std::size_t>(6 + k)] = {r * std::cos(down), -y, r * std::sin(down)};
    }
    v[11] = {0.0, -1.0, 0.0};
    return v;
  }();
  return verts;
}

namespace {

struct Topology {
  std::array<std::array<std::size_t, 5>, 12> adjacent{};
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<std::array<std::size_t, 3>> faces;
};

const Topology& topology() {
  static const Topology topo = [] {
    Topology t;
    const auto& v = icosahedron_vertices();
    // Unit-circumradius icosahedron edge length.
    const double edge = 1.0 / std::sin(2.0 * std::numbers::pi / 5.0);
    auto adjacent = [&](std::size_t a, std::size_t b) {
      return a != b && std::abs(distance(v[a], v[b]) - edge) < 1e-9;
    };
    for (std::size_t i = 0; i < 12; ++i) {
      std::size_t n = 0;
      for (std::size_t j = 0; j < 12; ++j) {
        if (!adjacent(i, j)) continue;
        if (n == 5) throw Error(Errc::numeric_breakdown, "icosahedron adjacency is inconsistent");
        t.adjacent[i][n++] = j;
      }
      if (n != 5) throw Error(Errc::numeric_breakdown, "icosahedron adjacency is inconsistent");
    }
    for (std::size_t a = 0; a < 12; ++a)
      for (std::size_t b = a + 1; b < 12; ++b) {
        if (!adjacent(a, b)) continue;
        t.edges.push_back({a, b});
        for (std::size_t c = b + 1; c < 12; ++c)
          if (adjacent(a, c) && adjacent(b, c)) t.faces.push_back({a, b, c});
      }
    return t;
  }();
  return topo;
}

Point3 normalized(const Point3& p) { return p / p.norm(); }

// Orthonormal frame (columns) built from a vertex and one adjacent vertex.
std::array<Point3, 3> frame(const Point3& a, const Point3& b) {
  const Point3 e1 = normalized(a);
  const Point3 e2 = normalized(b - e1 * dot(b, e1));
  return {e1, e2, cross(e1, e2)};
}

}  // namespace

const std::array<std::size_t, 5>& icosahedron_adjacent(std::size_t i) {
  if (i >= 12) throw Error(Errc::argument, "icosahedron vertex index out of range");
  return topology().adjacent[i];
}

const std::vector<std::array<std::size_t, 3>>& icosahedron_faces() { return topology().faces; }
const std::vector<std::array<std::size_t, 2>>& icosahedron_edges() { return topology().edges; }

const std::vector<Rotation>& icosahedral_rotations() {
  // Each proper symmetry is fixed by where it sends the ordered adjacent pair
  // (vertex 0, its first neighbour): 12 targets x 5 neighbours = 60 elements.
  static const std::vector<Rotation> group = [] {
    const auto& v = icosahedron_vertices();
    const auto src = frame(v[0], v[icosahedron_adjacent(0)[0]]);
    std::vector<Rotation> out;
    out.reserve(60);
    for (std::size_t a = 0; a < 12; ++a) {
      for (std::size_t b : icosahedron_adjacent(a)) {
        const auto dst = frame(v[a], v[b]);
        // R = dst * src^T
        std::array<double, 9> m{};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            auto comp = [](const Point3& p, int k) { return k == 0 ? p.x : (k == 1 ? p.y : p.z); };
            double s = 0.0;
            for (int k = 0; k < 3; ++k) {
              s += comp(dst[static_cast<std::size_t>(k)], i) * comp(src[static_cast<std::size_t>(k)], j);
            }
            m[static_cast<std::size_t>(3 * i + j)] = s;
          }
        Rotation r(m);
        for (const auto& p : v) {
          const Point3 q = r.apply(p);
          const bool hit = std::any_of(v.begin(), v.end(),
                                       [&](const Point3& w) { return distance(q, w) < 1e-9; });
          if (!hit) throw Error(Errc::numeric_breakdown, "generated rotation does not permute vertices");
        }
        out.push_back(r);
      }
    }
    return out;
  }();
  return group;
}

const std::vector<Rotation>& y_axis_rotations() {
  static const std::vector<Rotation> sub = [] {
    std::vector<Rotation> out{Rotation()};
    for (int k = 1; k < 5; ++k) {
      out.push_back(Rotation::about_axis({0.0, 1.0, 0.0}, 2.0 * std::numbers::pi * k / 5.0));
    }
    return out;
  }();
  return sub;
}

}  // namespace mif
