#include <doctest.h>

#include <cmath>
#include <random>

#include "mif/error.hpp"
#include "mif/xyz.hpp"

using namespace mif;

TEST_CASE("xyz round trip to 12 decimals") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(-5, 5);
  std::vector<Point3> pts;
  for (int i = 0; i < 30; ++i) pts.push_back({u(rng), u(rng), u(rng)});
  const auto frame = parse_xyz(format_xyz(pts, "E=-1 source=test"));
  CHECK(frame.comment == "E=-1 source=test");
  REQUIRE(frame.points.size() == pts.size());
  CHECK_FALSE(frame.vectors.has_value());
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(distance(frame.points[i], pts[i]) < 1e-12);
}

TEST_CASE("extended xyz carries vectors and tags are ignored") {
  const std::vector<Point3> pts{{0, 0, 0}, {1, 2, 3}};
  const std::vector<Point3> g{{0.5, 0, 0}, {0, -0.5, 0}};
  const auto ext = parse_xyz(format_xyz(pts, "c", &g));
  REQUIRE(ext.vectors);
  CHECK((*ext.vectors)[1].y == -0.5);
  const std::vector<std::string> tags{"shell=0 sub=IC idx=0", "shell=1 sub=FC idx=1"};
  const auto tagged = parse_xyz(format_xyz(pts, "c", nullptr, &tags));
  CHECK_FALSE(tagged.vectors);
  CHECK(tagged.points[1] == Point3{1, 2, 3});
}

TEST_CASE("xyz parse errors carry line numbers") {
  auto fails_at = [](const std::string& text, const std::string& where) {
    try {
      parse_xyz(text);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::syntax);
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  };
  fails_at("", "line 1");
  fails_at("two\nc\n", "line 1");
  fails_at("2\nc\nX 0 0 0\n", "line 4");
  fails_at("1\nc\nX 0 a 0\n", "line 3");
  fails_at("1\nc\nX 0 0\n", "line 3");
  fails_at("1\nc\nX 0 0 0\nX 1 1 1\n", "line 4");
  fails_at("1\nc\nX 0 nan 0\n", "line 3");
  CHECK_NOTHROW(parse_xyz("1\r\ncomment\r\nAr 0 0 0\r\n\r\n"));
}
