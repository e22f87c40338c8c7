#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "flatres/flat_resolution.hpp"
#include "flatres/flow_directions.hpp"
#include "flatres/synthetic.hpp"
#include "golden_example.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace flatres;

namespace {

struct ExampleFixture {
  Grid<double> dem = worked_example_dem();
  Grid<Direction> dirs = d8_flow_directions(dem, EdgePolicy::EdgesDrainOutward);
};

Grid<std::int32_t> example_labels() {
  ExampleFixture fx;
  Grid<std::int32_t> labels(7, 7, 0, -1);
  label_flats(fx.dem, labels, {5, 1}, 1);
  return labels;
}

}  // namespace

TEST_CASE("flat_edges finds the worked example's 13 high and 3 low edges in scan order") {
  ExampleFixture fx;
  const auto edges = flat_edges(fx.dem, fx.dirs);
  CHECK(edges.high_edges == golden::kHighEdges);
  CHECK(edges.low_edges == golden::kLowEdges);
}

TEST_CASE("under the plain edge policy the outlet itself becomes a high edge") {
  const auto dem = worked_example_dem();
  const auto dirs = d8_flow_directions(dem, EdgePolicy::AsPseudocode);
  const auto edges = flat_edges(dem, dirs);
  auto expected_high = golden::kHighEdges;
  expected_high.push_back({6, 2});  // raster order: row 6 comes last
  CHECK(edges.high_edges == expected_high);
  CHECK(edges.low_edges == golden::kLowEdges);
}

TEST_CASE("flat_edges on a ramp is empty") {
  const auto dem = oracle::ramp_dem(8, 8);
  const auto edges = flat_edges(dem, d8_flow_directions(dem));
  CHECK(edges.high_edges.empty());
  CHECK(edges.low_edges.empty());
}

TEST_CASE("flat_edges rejects mismatched shapes") {
  const auto dem = oracle::ramp_dem(4, 4);
  Grid<Direction> dirs(4, 5, Direction::NoFlow, Direction::NoData);
  CHECK_THROWS_AS(flat_edges(dem, dirs), ContractViolation);
}

TEST_CASE("label_flats floods exactly the equal-elevation component") {
  ExampleFixture fx;
  Grid<std::int32_t> labels(7, 7, 0, -1);
  label_flats(fx.dem, labels, {5, 1}, 1);
  const auto comps = oracle::equal_elevation_components(fx.dem);
  const std::int32_t home = comps(5, 1);
  std::int64_t labeled = 0;
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c) {
      CHECK((labels(r, c) == 1) == (comps(r, c) == home));
      labeled += labels(r, c) == 1;
    }
  CHECK(labeled == 25);  // includes the three already-draining cells

  // Seeding inside already-labeled ground is a no-op.
  label_flats(fx.dem, labels, {3, 3}, 2);
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c) CHECK(labels(r, c) != 2);
}

TEST_CASE("label_flats does not leak into the other flat of a composite") {
  const auto dem = oracle::composite_dem();
  Grid<std::int32_t> labels(dem.rows(), dem.cols(), 0, -1);
  label_flats(dem, labels, {5, 1}, 1);
  CHECK(labels(3, 3) == 1);
  CHECK(labels(3, 9) == 0);  // bowl floor untouched
}

TEST_CASE("away_from_higher reproduces the hand-traced gradient") {
  ExampleFixture fx;
  const auto labels = example_labels();
  Grid<std::int32_t> mask(7, 7, 0, -1);
  FlatHeightTable height;
  std::uint64_t visits = 0;
  away_from_higher(labels, mask, fx.dirs, golden::kHighEdges, height, &visits);
  CHECK(mask == golden::table_to_grid(golden::kAway));
  REQUIRE(height.size() == 2);
  CHECK(height[1] == golden::kFlatHeight);
  CHECK(visits == 22);  // every flat cell except the three drains
}

TEST_CASE("away_from_higher with no high edges does nothing") {
  ExampleFixture fx;
  const auto labels = example_labels();
  Grid<std::int32_t> mask(7, 7, 0, -1);
  FlatHeightTable height;
  away_from_higher(labels, mask, fx.dirs, {}, height, nullptr);
  CHECK(mask == Grid<std::int32_t>(7, 7, 0, -1));
}

TEST_CASE("towards_lower superimposes the double-weight gradient") {
  ExampleFixture fx;
  const auto labels = example_labels();
  auto mask = golden::table_to_grid(golden::kAway);
  const FlatHeightTable height = {0, golden::kFlatHeight};
  std::uint64_t visits = 0;
  towards_lower(labels, mask, fx.dirs, golden::kLowEdges, height, &visits);
  CHECK(mask == golden::table_to_grid(golden::kMask));
  CHECK(visits == 25);
}

TEST_CASE("resolve_flats on the worked example: golden mask, single label, clean report") {
  ExampleFixture fx;
  const auto res = resolve_flats(fx.dem, fx.dirs);
  CHECK(res.flatmask == golden::table_to_grid(golden::kMask));
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c) {
      const bool in_flat = r >= 1 && r <= 5 && c >= 1 && c <= 5;
      CHECK(res.labels(r, c) == (in_flat ? 1 : 0));
    }
  CHECK(res.report.outcome == ResolveOutcome::AllDrainable);
  CHECK(res.report.flat_count == 1);
  CHECK(res.report.drainable_flat_count == 1);
  CHECK(res.report.high_edge_cells == 13);
  CHECK(res.report.low_edge_cells == 3);
  CHECK(res.report.pruned_high_edges == 0);
  CHECK(res.visits == 25 + 22 + 25);  // labeling + away + towards
}

TEST_CASE("resolve_flats reports NoFlats on a ramp") {
  const auto dem = oracle::ramp_dem(8, 8);
  const auto res = resolve_flats(dem, d8_flow_directions(dem));
  CHECK(res.report.outcome == ResolveOutcome::NoFlats);
  CHECK(res.report.flat_count == 0);
  CHECK(res.flatmask == Grid<std::int32_t>(8, 8, 0, -1));
  CHECK(res.visits == 0);
}

TEST_CASE("resolve_flats refuses a closed bowl: NoneDrainable, mask untouched") {
  const auto dem = oracle::bowl_dem();
  const auto res = resolve_flats(dem, d8_flow_directions(dem));
  CHECK(res.report.outcome == ResolveOutcome::NoneDrainable);
  CHECK(res.report.flat_count == 1);
  CHECK(res.report.drainable_flat_count == 0);
  CHECK(res.report.high_edge_cells == 8);  // the floor ring; its center borders nothing higher
  CHECK(res.report.low_edge_cells == 0);
  CHECK(res.report.pruned_high_edges == 0);
  CHECK(res.flatmask == Grid<std::int32_t>(7, 7, 0, -1));
  CHECK(res.labels == Grid<std::int32_t>(7, 7, 0, -1));
}

TEST_CASE("resolve_flats on a composite resolves the drainable flat, skips the bowl") {
  const auto dem = oracle::composite_dem();
  const auto res = resolve_flats(dem, d8_flow_directions(dem));
  CHECK(res.report.outcome == ResolveOutcome::SomeUndrainable);
  CHECK(res.report.flat_count == 2);
  CHECK(res.report.drainable_flat_count == 1);
  CHECK(res.report.high_edge_cells == 13 + 8);
  CHECK(res.report.low_edge_cells == 3);
  CHECK(res.report.pruned_high_edges == 8);
  // The worked-example flat gets exactly its standalone mask values.
  const auto expected = golden::table_to_grid(golden::kMask);
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c) CHECK(res.flatmask(r, c) == expected(r, c));
  // Bowl floor cells stay unlabeled with zero mask.
  for (std::int32_t r = 2; r <= 4; ++r)
    for (std::int32_t c = 8; c <= 10; ++c) {
      CHECK(res.labels(r, c) == 0);
      CHECK(res.flatmask(r, c) == 0);
    }
}

TEST_CASE("resolve_flats report line is parseable key=value text") {
  ExampleFixture fx;
  const auto res = resolve_flats(fx.dem, fx.dirs);
  const auto line = format_report_line(res.report);
  CHECK(line ==
        "outcome=AllDrainable flat_count=1 drainable_flat_count=1 high_edge_cells=13 "
        "low_edge_cells=3 pruned_high_edges=0");
}

TEST_CASE("gradient passes match an independent BFS on random terrain") {
  for (const std::uint64_t seed : {11u, 222u, 3333u}) {
    const auto dem = random_terrain_dem(32, 32, seed, 0.3);
    const auto dirs = d8_flow_directions(dem);
    const auto edges = flat_edges(dem, dirs);
    if (edges.low_edges.empty()) continue;

    Grid<std::int32_t> labels(32, 32, 0, -1);
    std::int32_t next = 1;
    for (const CellIndex c : edges.low_edges)
      if (labels.at(c) == 0) label_flats(dem, labels, c, next++);
    std::vector<CellIndex> high;
    for (const CellIndex c : edges.high_edges)
      if (labels.at(c) != 0) high.push_back(c);

    Grid<std::int32_t> away(32, 32, 0, -1);
    FlatHeightTable height;
    away_from_higher(labels, away, dirs, high, height, nullptr);
    const auto away_dist = oracle::bfs_distance(labels, dirs, high);
    for (std::int32_t r = 0; r < 32; ++r)
      for (std::int32_t c = 0; c < 32; ++c)
        CHECK(away(r, c) == (away_dist(r, c) < 0 ? 0 : away_dist(r, c) + 1));

    auto mask = away;
    towards_lower(labels, mask, dirs, edges.low_edges, height, nullptr);
    const auto lower_dist = oracle::bfs_distance(labels, dirs, edges.low_edges);
    for (std::int32_t r = 0; r < 32; ++r)
      for (std::int32_t c = 0; c < 32; ++c) {
        if (labels(r, c) == 0) {
          CHECK(mask(r, c) == 0);
          continue;
        }
        if (lower_dist(r, c) < 0) continue;  // defined-direction cell inside the label
        const std::int32_t lower = lower_dist(r, c) + 1;
        const std::int32_t expected =
            away(r, c) > 0 ? (height[labels(r, c)] - away(r, c)) + 2 * lower : 2 * lower;
        CHECK(mask(r, c) == expected);
      }

    // Route equivalence: the orchestrated call computes the same mask.
    CHECK(resolve_flats(dem, dirs).flatmask == mask);
  }
}

TEST_CASE("masked direction pass drains the worked example in one application") {
  ExampleFixture fx;
  const auto res = resolve_flats(fx.dem, fx.dirs);
  const auto out = d8_masked_flow_directions(res.flatmask, res.labels, fx.dirs);
  for (std::int32_t r = 1; r <= 5; ++r)
    for (std::int32_t c = 1; c <= 5; ++c)
      CHECK(out(r, c) == golden::kMaskedDirs[r - 1][c - 1]);
  // Everything outside the flat is untouched.
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c)
      if (res.labels(r, c) == 0) CHECK(out(r, c) == fx.dirs(r, c));
  // Each step inside the flat lands on a strictly smaller mask value.
  for (std::int32_t r = 1; r <= 5; ++r)
    for (std::int32_t c = 1; c <= 5; ++c) {
      if (fx.dirs(r, c) != Direction::NoFlow) continue;
      const CellIndex n = step({r, c}, out(r, c));
      CHECK(res.flatmask.at(n) < res.flatmask(r, c));
    }
  // And every flat cell escapes the flat.
  for (std::int32_t r = 1; r <= 5; ++r)
    for (std::int32_t c = 1; c <= 5; ++c)
      CHECK(oracle::escapes_flat(res.labels, out, {r, c}, 49));
}

TEST_CASE("resolve_flats never writes outside labeled ground") {
  for (const std::uint64_t seed : {5u, 50u, 500u}) {
    const auto dem = random_terrain_dem(24, 24, seed, 0.4);
    const auto dirs = d8_flow_directions(dem);
    const auto res = resolve_flats(dem, dirs);
    for (std::int32_t r = 0; r < 24; ++r)
      for (std::int32_t c = 0; c < 24; ++c) {
        if (res.flatmask(r, c) != 0) CHECK(res.labels(r, c) != 0);
        // Every undrained cell of a drainable flat receives a positive mask.
        if (res.labels(r, c) != 0 && dirs(r, c) == Direction::NoFlow)
          CHECK(res.flatmask(r, c) > 0);
      }
    CHECK(res.visits <= 3 * static_cast<std::uint64_t>(dem.size()));
  }
}

TEST_CASE("resolve_flats rejects mismatched shapes") {
  const auto dem = oracle::ramp_dem(4, 4);
  Grid<Direction> dirs(5, 4, Direction::NoFlow, Direction::NoData);
  CHECK_THROWS_AS(resolve_flats(dem, dirs), ContractViolation);
}

TEST_CASE("alter_dem orders a two-cell flat by mask and flags nothing") {
  Grid<double> dem(1, 4, 1.0, -9999.0);
  dem(0, 0) = 0.0;
  dem(0, 3) = 2.0;
  Grid<std::int32_t> labels(1, 4, 0, -1);
  labels(0, 1) = labels(0, 2) = 1;
  Grid<std::int32_t> mask(1, 4, 0, -1);
  mask(0, 1) = 2;
  mask(0, 2) = 4;
  const auto res = alter_dem(dem, mask, labels);
  CHECK(res.violations.empty());
  CHECK(res.dem(0, 0) == 0.0);
  CHECK(res.dem(0, 1) > 1.0);
  CHECK(res.dem(0, 2) > res.dem(0, 1));
  CHECK(res.dem(0, 2) < 1.0 + 1e-9);
  CHECK(res.dem(0, 3) == 2.0);
  CHECK(dem(0, 1) == 1.0);  // input untouched
}

TEST_CASE("alter_dem with an all-zero mask returns the DEM bit-identically") {
  const auto dem = worked_example_dem();
  const Grid<std::int32_t> zeros(7, 7, 0, -1);
  const auto res = alter_dem(dem, zeros, zeros);
  CHECK(res.dem == dem);
  CHECK(res.violations.empty());
}

TEST_CASE("alter_dem reports a cell that climbs past a higher neighbor") {
  Grid<double> dem(1, 2, 1.0, -9999.0);
  dem(0, 1) = std::nextafter(1.0, 2.0);  // one ulp above; outside the flat
  Grid<std::int32_t> labels(1, 2, 0, -1);
  labels(0, 0) = 1;
  Grid<std::int32_t> mask(1, 2, 0, -1);
  mask(0, 0) = 4;  // four ulps: overtakes the neighbor
  const auto res = alter_dem(dem, mask, labels);
  REQUIRE(res.violations.size() == 1);
  CHECK(res.violations[0] == CellIndex{0, 0});
}

TEST_CASE("altered worked example drains without any mask") {
  ExampleFixture fx;
  const auto res = resolve_flats(fx.dem, fx.dirs);
  const auto altered = alter_dem(fx.dem, res.flatmask, res.labels);
  CHECK(altered.violations.empty());
  const auto dirs2 = d8_flow_directions(altered.dem, EdgePolicy::EdgesDrainOutward);
  for (std::int32_t r = 0; r < 7; ++r)
    for (std::int32_t c = 0; c < 7; ++c)
      if (res.labels(r, c) != 0) CHECK(dirs2(r, c) != Direction::NoFlow);
}

TEST_CASE("outcome names render as expected") {
  CHECK(to_string(ResolveOutcome::NoFlats) == "NoFlats");
  CHECK(to_string(ResolveOutcome::AllDrainable) == "AllDrainable");
  CHECK(to_string(ResolveOutcome::SomeUndrainable) == "SomeUndrainable");
  CHECK(to_string(ResolveOutcome::NoneDrainable) == "NoneDrainable");
}
