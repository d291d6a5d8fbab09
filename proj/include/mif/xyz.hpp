#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mif/geometry.hpp"

namespace mif {

// Contents of an XYZ file: line 1 atom count, line 2 comment, then
// "<symbol> x y z [gx gy gz] [tags...]". Tokens past the ones used are ignored.
struct XyzFrame {
  std::string comment;
  std::vector<Point3> points;
  // Present when every atom line carries three more numeric columns.
  std::optional<std::vector<Point3>> vectors;
};

XyzFrame parse_xyz(std::string_view text);
XyzFrame read_xyz(const std::filesystem::path& path);

// Atom lines are "X x y z" with 12 decimals; `vectors` adds gx gy gz and
// `tags` (one per atom) is appended verbatim.
std::string format_xyz(std::span<const Point3> points, std::string_view comment,
                       const std::vector<Point3>* vectors = nullptr,
                       const std::vector<std::string>* tags = nullptr);
void write_xyz(const std::filesystem::path& path, std::span<const Point3> points, std::string_view comment,
               const std::vector<Point3>* vectors = nullptr, const std::vector<std::string>* tags = nullptr);

}  // namespace mif
