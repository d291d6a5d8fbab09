#include "mif/xyz.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mif/error.hpp"

namespace mif {

namespace {

std::vector<std::string_view> tokens(std::string_view s) {
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

std::optional<double> to_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
  throw Error(Errc::syntax, fmt::format("line {}: {}", line, what));
}

}  // namespace

XyzFrame parse_xyz(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  if (lines.empty()) bad(1, "empty input; expected an atom count");
  const auto head = tokens(lines[0]);
  std::size_t count = 0;
  if (head.size() != 1) bad(1, "expected a single atom count");
  {
    const auto* end = head[0].data() + head[0].size();
    auto [ptr, ec] = std::from_chars(head[0].data(), end, count);
    if (ec != std::errc() || ptr != end) bad(1, fmt::format("invalid atom count '{}'", head[0]));
  }
  if (count == 0) bad(1, "atom count must be positive");
  if (lines.size() < 2) bad(2, "missing comment line");

  XyzFrame frame;
  frame.comment = std::string(lines[1]);
  frame.points.reserve(count);
  std::vector<Point3> vec;
  bool all_vectors = true;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t lineno = k + 3;
    if (k + 2 >= lines.size()) bad(lineno, fmt::format("expected {} atom lines, found {}", count, k));
    const auto tok = tokens(lines[k + 2]);
    if (tok.size() < 4) bad(lineno, "expected '<symbol> <x> <y> <z>'");
    double v[6] = {};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto r = to_real(tok[c + 1]);
      if (!r) bad(lineno, fmt::format("invalid coordinate '{}'", tok[c + 1]));
      v[c] = *r;
    }
    frame.points.push_back({v[0], v[1], v[2]});
    if (all_vectors && tok.size() >= 7) {
      for (std::size_t c = 3; c < 6 && all_vectors; ++c) {
        const auto r = to_real(tok[c + 1]);
        if (r) v[c] = *r;
        else all_vectors = false;
      }
      vec.push_back({v[3], v[4], v[5]});
    } else {
      all_vectors = false;
    }
  }
  for (std::size_t k = count + 2; k < lines.size(); ++k) {
    if (!tokens(lines[k]).empty()) bad(k + 1, fmt::format("more atom lines than the declared count {}", count));
  }
  if (all_vectors) frame.vectors = std::move(vec);
  return frame;
}

XyzFrame read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_xyz(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_xyz(std::span<const Point3> points, std::string_view comment,
                       const std::vector<Point3>* vectors, const std::vector<std::string>* tags) {
  if (vectors && vectors->size() != points.size()) throw Error(Errc::argument, "vector column count mismatch");
  if (tags && tags->size() != points.size()) throw Error(Errc::argument, "tag count mismatch");
  if (comment.find('\n') != std::string_view::npos) throw Error(Errc::argument, "comment must be one line");
  std::string out = fmt::format("{}\n{}\n", points.size(), comment);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out += fmt::format("X {:.12f} {:.12f} {:.12f}", p.x, p.y, p.z);
    if (vectors) {
      const auto& g = (*vectors)[i];
      out += fmt::format(" {:.12f} {:.12f} {:.12f}", g.x, g.y, g.z);
    }
    if (tags) {
      out += ' ';
      out += (*tags)[i];
    }
    out += '\n';
  }
  return out;
}

void write_xyz(const std::filesystem::path& path, std::span<const Point3> points, std::string_view comment,
               const std::vector<Point3>* vectors, const std::vector<std::string>* tags) {
  const auto text = format_xyz(points, comment, vectors, tags);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(Errc::io, fmt::format("failed writing '{}'", path.string()));
}

}  // namespace mif
