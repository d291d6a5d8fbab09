#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mif {

using SiteIndex = std::size_t;

// Position in reduced (dimensionless) length units.
struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Point3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Point3& operator+=(const Point3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Point3&) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr double dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Point3 cross(const Point3& a, const Point3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double distance(const Point3& p, const Point3& q);

// (rho, alpha, beta): alpha is the polar angle from +Y, beta the azimuth about Y
// measured from +X towards +Z.
struct CylindricalKey {
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

CylindricalKey cylindrical_key(const Point3& p);
Point3 from_cylindrical_key(const CylindricalKey& k);

// Minimum separation enforced between any two points of a Cluster.
inline constexpr double kMinSeparation = 1e-9;

// Ordered point sequence; `labels` are lattice site indices when the cluster
// was drawn from a lattice.
class Cluster {
 public:
  explicit Cluster(std::vector<Point3> points,
                   std::optional<std::vector<SiteIndex>> labels = std::nullopt);

  // Builds from a flat x0 y0 z0 x1 ... buffer.
  static Cluster from_coordinates(std::span<const double> xyz,
                                  std::optional<std::vector<SiteIndex>> labels = std::nullopt);

  std::size_t size() const { return points_.size(); }
  const Point3& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point3> points() const { return points_; }

  bool has_labels() const { return labels_.has_value(); }
  std::span<const SiteIndex> labels() const;

  std::vector<double> coordinates() const;

 private:
  std::vector<Point3> points_;
  std::optional<std::vector<SiteIndex>> labels_;
};

// Permutation that sorts points by (rho, alpha, beta); rho and alpha are
// compared after rounding to 1e-9. Stable for ties.
std::vector<std::size_t> canonical_permutation(std::span<const Point3> points);

Cluster canonical_order(const Cluster& c);
Point3 center_of_mass(const Cluster& c);

class Rotation {
 public:
  Rotation();  // identity
  // Row-major entries; throws if not a proper rotation within 1e-12.
  explicit Rotation(const std::array<double, 9>& m);

  static Rotation about_axis(const Point3& axis, double angle);

  Point3 apply(const Point3& p) const;
  Rotation operator*(const Rotation& o) const;
  Rotation inverse() const;
  double operator()(int r, int c) const { return m_[static_cast<std::size_t>(3 * r + c)]; }
  const std::array<double, 9>& entries() const { return m_; }

  // Largest absolute entry difference.
  double max_abs_diff(const Rotation& o) const;

 private:
  std::array<double, 9> m_;
};

Cluster rotate(const Cluster& c, const Rotation& r);

// The 12 unit vertex directions of the reference icosahedron: one vertex on +Y,
// an upper ring at azimuths 0, 72, ..., 288 degrees, a lower ring offset by 36
// degrees, and one vertex on -Y.
const std::array<Point3, 12>& icosahedron_vertices();

// Indices of the 5 vertices adjacent to vertex i.
const std::array<std::size_t, 5>& icosahedron_adjacent(std::size_t i);

// The 20 faces as ascending vertex-index triples.
const std::vector<std::array<std::size_t, 3>>& icosahedron_faces();

// The 30 edges as ascending vertex-index pairs.
const std::vector<std::array<std::size_t, 2>>& icosahedron_edges();

// The 60 proper rotations of the icosahedral group in the reference
// orientation; element 0 is the identity.
const std::vector<Rotation>& icosahedral_rotations();

// Rotations by 2*pi*k/5 about +Y, k = 0..4.
const std::vector<Rotation>& y_axis_rotations();

}  // namespace mif
