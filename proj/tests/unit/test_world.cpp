#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "nhplan/world.hpp"

using namespace nhplan;

namespace {

PgmErrorKind pgm_error_kind(std::string_view bytes) {
  try {
    parse_pgm(bytes);
  } catch (const PgmError& e) {
    return e.kind();
  }
  FAIL("parse_pgm accepted malformed input");
  return PgmErrorKind::UnsupportedMagic;
}

bool column_free(const OccupancyGrid& g, int x, int y0, int y1) {
  for (int y = y0; y <= y1; ++y) {
    if (g.occupied(x, y)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("builder: empty and fully blocked grids") {
  const auto empty = GridBuilder(10, 7).build();
  CHECK(empty.occupied_count() == 0);
  const auto full = GridBuilder(10, 7).rect(0, 0, 10, 7).build();
  CHECK(full.occupied_count() == 70);
  CHECK(GridBuilder(10, 7).rect(-5, -5, 50, 50).build() == full);
}

TEST_CASE("builder: disjoint rectangles add up") {
  const auto g = GridBuilder(20, 20).rect(1, 1, 4, 3).rect(10, 10, 15, 12).build();
  CHECK(g.occupied_count() == 3 * 2 + 5 * 2);
  CHECK(g.occupied(1, 1));
  CHECK(g.occupied(3, 2));
  CHECK_FALSE(g.occupied(4, 2));
  CHECK_FALSE(g.occupied(3, 3));
}

TEST_CASE("builder: order of shapes does not matter") {
  GridBuilder a(15, 15), b(15, 15);
  a.rect(2, 2, 8, 8).circle(7.0, 7.0, 3.0).border(1);
  b.border(1).circle(7.0, 7.0, 3.0).rect(2, 2, 8, 8);
  CHECK(a.build() == b.build());
}

TEST_CASE("builder: circle covers cells whose centers lie inside") {
  const double cx = 6.3, cy = 4.8, r = 2.2;
  const auto g = GridBuilder(12, 10).circle(cx, cy, r).build();
  std::size_t expected = 0;
  for (int y = 0; y < 10; ++y) {
    for (int x = 0; x < 12; ++x) {
      const bool inside = std::hypot(x + 0.5 - cx, y + 0.5 - cy) <= r;
      CHECK(g.occupied(x, y) == inside);
      expected += inside;
    }
  }
  CHECK(g.occupied_count() == expected);
  CHECK(GridBuilder(10, 10).circle(5.0, 5.0, 1.0).build().occupied_count() == 4);
}

TEST_CASE("builder: border") {
  CHECK(GridBuilder(10, 8).border(1).build().occupied_count() == 80 - 8 * 6);
  CHECK(GridBuilder(10, 8).border(2).build().occupied_count() == 80 - 6 * 4);
  CHECK_THROWS_AS(GridBuilder(10, 8).border(0).build(), ConfigError);
}

TEST_CASE("builder: shapes outside the grid are rejected") {
  CHECK_THROWS_AS(GridBuilder(10, 10).rect(10, 0, 12, 3).build(), ConfigError);
  CHECK_THROWS_AS(GridBuilder(10, 10).rect(-4, -4, 0, 0).build(), ConfigError);
  CHECK_THROWS_AS(GridBuilder(10, 10).circle(30.0, 30.0, 2.0).build(), ConfigError);
  CHECK_NOTHROW(GridBuilder(10, 10).rect(9, 9, 12, 12).build());
  CHECK_THROWS_AS(GridBuilder(0, 10), ConfigError);
}

TEST_CASE("builder keeps cell size") {
  const auto g = GridBuilder(4, 4, 0.25).rect(0, 0, 1, 1).build();
  CHECK(g.cell_size() == 0.25);
  CHECK(g.occupied_at({0.2, 0.2}));
  CHECK_FALSE(g.occupied_at({0.3, 0.2}));
}

TEST_CASE("pgm: 4x4 checkerboard is flipped into grid rows") {
  const std::string pgm =
      "P2\n4 4\n255\n"
      "0 255 0 255\n"
      "255 0 255 0\n"
      "0 255 0 255\n"
      "255 0 255 0\n";
  const auto g = load_raster(pgm, {});
  CHECK(g.width() == 4);
  CHECK(g.height() == 4);
  CHECK(g.occupied_count() == 8);
  for (int row = 0; row < 4; ++row) {
    for (int x = 0; x < 4; ++x) CHECK(g.occupied(x, 3 - row) == ((row + x) % 2 == 0));
  }
}

TEST_CASE("pgm: a single dark pixel in the top-left lands in the top grid row") {
  const auto g = load_raster(std::string_view("P2 3 2 9\n0 9 9\n9 9 9\n"), {});
  CHECK(g.occupied(0, 1));
  CHECK(g.occupied_count() == 1);
}

TEST_CASE("pgm: binary and plain encodings agree") {
  std::string p5 = "P5\n# comment\n3 2\n255\n";
  for (unsigned char v : {0, 255, 10, 200, 255, 0}) p5.push_back(static_cast<char>(v));
  const std::string p2 = "P2\n3 2\n255\n0 255 10\n200 255 0\n";
  CHECK(load_raster(p5, {}) == load_raster(p2, {}));
  CHECK(load_raster(p5, {}).occupied_count() == 3);
}

TEST_CASE("pgm: 16-bit rasters are big-endian") {
  std::string p5 = "P5 2 1 1000\n";
  for (unsigned char v : {0x03, 0xE8, 0x00, 0x01}) p5.push_back(static_cast<char>(v));
  const auto img = parse_pgm(p5);
  CHECK(img.maxval == 1000);
  CHECK(img.pixels == std::vector<std::uint16_t>{1000, 1});
  const auto g = load_raster(p5, {});
  CHECK_FALSE(g.occupied(0, 0));
  CHECK(g.occupied(1, 0));
}

TEST_CASE("pgm: threshold and inversion") {
  const std::string p2 = "P2 3 1 255\n100 128 200\n";
  CHECK(load_raster(p2, {0.5, false, 1.0}).occupied_count() == 1);
  CHECK(load_raster(p2, {0.6, false, 1.0}).occupied_count() == 2);
  CHECK(load_raster(p2, {0.0, false, 1.0}).occupied_count() == 0);
  CHECK(load_raster(p2, {0.5, true, 1.0}).occupied_count() == 2);
  CHECK(load_raster(p2, {0.5, false, 0.05}).cell_size() == 0.05);
  CHECK_THROWS_AS(load_raster(p2, {1.5, false, 1.0}), ConfigError);
  CHECK_THROWS_AS(load_raster(p2, {0.5, false, 0.0}), ConfigError);
}

TEST_CASE("pgm: all-white and all-black") {
  CHECK(load_raster(std::string_view("P2 3 3 255\n255 255 255 255 255 255 255 255 255\n"), {})
            .occupied_count() == 0);
  CHECK(load_raster(std::string_view("P2 3 3 255\n0 0 0 0 0 0 0 0 0\n"), {}).occupied_count() ==
        9);
}

TEST_CASE("pgm: error kinds") {
  CHECK(pgm_error_kind("P3\n1 1\n255\n0 0 0\n") == PgmErrorKind::UnsupportedMagic);
  CHECK(pgm_error_kind("") == PgmErrorKind::UnsupportedMagic);
  CHECK(pgm_error_kind("GIF89a") == PgmErrorKind::UnsupportedMagic);
  CHECK(pgm_error_kind("P5\n4\n") == PgmErrorKind::MalformedHeader);
  CHECK(pgm_error_kind("P2 x 2 255\n") == PgmErrorKind::MalformedHeader);
  CHECK(pgm_error_kind("P2 2 2 0\n0 0 0 0\n") == PgmErrorKind::MalformedHeader);
  CHECK(pgm_error_kind("P2 0 2 255\n") == PgmErrorKind::MalformedHeader);
  CHECK(pgm_error_kind(std::string_view("P5 2 2 255\n\x01", 12)) ==
        PgmErrorKind::TruncatedPayload);
  CHECK(pgm_error_kind("P2 2 2 255\n0 0 0\n") == PgmErrorKind::TruncatedPayload);
  CHECK(pgm_error_kind("P2 2 1 10\n5 11\n") == PgmErrorKind::BadPixel);
  CHECK(pgm_error_kind("P2 2 1 10\n5 x\n") == PgmErrorKind::BadPixel);
}

TEST_CASE("pgm: write and reload") {
  const auto g = GridBuilder(9, 5, 0.5).border(1).rect(3, 2, 5, 3).build();
  for (bool plain : {false, true}) {
    const auto back = load_raster(write_pgm(g, plain), {0.5, false, 0.5});
    CHECK(back == g);
  }
}

TEST_CASE("pgm data: checkerboard file") {
  const auto g = load_raster_file(NHPLAN_TEST_DATA_DIR "/checkerboard.pgm", {});
  CHECK(g.width() == 8);
  CHECK(g.height() == 6);
  CHECK(g.occupied_count() == 24);
  CHECK(g.occupied(0, 5));  // dark top-left pixel
  CHECK_FALSE(g.occupied(0, 4));
}

TEST_CASE("pgm data: bottleneck map export matches the fixture") {
  const auto g = load_raster_file(NHPLAN_TEST_DATA_DIR "/bottleneck_map.pgm", {});
  CHECK(g.occupied_count() == 274);
  CHECK(g == fixture_by_name("bottleneck").grid());
  CHECK_THROWS_AS(load_raster_file(NHPLAN_TEST_DATA_DIR "/missing.pgm", {}), ConfigError);
}

TEST_CASE("fixtures: names and lookup") {
  const auto all = scenario_fixtures();
  CHECK(all.size() == 12);
  std::set<std::string> names;
  for (const auto& f : all) names.insert(f.name);
  CHECK(names.size() == all.size());
  CHECK(fixture_by_name("uturn_small").name == "uturn_small");
  CHECK_THROWS_AS(fixture_by_name("nope"), ConfigError);
}

TEST_CASE("fixtures: deterministic construction") {
  const auto a = scenario_fixtures();
  const auto b = scenario_fixtures();
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].map == b[i].map);
    CHECK(a[i].grid() == b[i].grid());
    CHECK(a[i].start == b[i].start);
  }
}

TEST_CASE("fixtures: endpoints are valid") {
  for (const auto& f : scenario_fixtures()) {
    INFO(f.name);
    const auto g = f.grid();
    CHECK_NOTHROW(f.vehicle.validate());
    CHECK_NOTHROW(f.config.controls.validate(f.vehicle, f.config.model));
    CHECK_FALSE(pose_in_collision(f.start, f.vehicle.footprint, g, CollisionMode::Footprint));
    if (f.name != "enclosed_goal") {
      CHECK_FALSE(pose_in_collision(f.goal, f.vehicle.footprint, g, CollisionMode::Footprint));
    }
    CHECK(f.goal.x() < g.world_width());
    CHECK(f.goal.y() < g.world_height());
  }
}

TEST_CASE("fixtures: enclosed goal is sealed") {
  const auto g = fixture_by_name("enclosed_goal").grid();
  for (int x = 11; x < 18; ++x) {
    CHECK(g.occupied(x, 11));
    CHECK(g.occupied(x, 16));
  }
  for (int y = 11; y < 17; ++y) {
    CHECK(g.occupied(11, y));
    CHECK(g.occupied(17, y));
  }
  CHECK_FALSE(g.occupied(14, 14));
}

TEST_CASE("fixtures: dual-lane widths") {
  const auto f = fixture_by_name("dual_lane_len2");
  const auto g = f.grid();
  int narrow = 0, wide = 0;
  for (int x = 1; x < g.width() - 1; ++x) {
    if (!column_free(g, x, 7, 20)) continue;
    (x < 20 ? narrow : wide) += 1;
  }
  CHECK(narrow == 3);
  CHECK(wide == 15);
  CHECK(f.vehicle.footprint.length == 2.0);
  CHECK(fixture_by_name("dual_lane_len6").vehicle.footprint.length == 6.0);
}

TEST_CASE("fixtures: bottleneck gap is one cell wide and narrower than the vehicle") {
  const auto f = fixture_by_name("bottleneck");
  const auto g = f.grid();
  CHECK(column_free(g, 14, 12, 16));
  CHECK_FALSE(column_free(g, 13, 12, 16));
  CHECK_FALSE(column_free(g, 15, 12, 16));
  CHECK(f.vehicle.footprint.width > g.cell_size());
}
