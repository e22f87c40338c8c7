#include "flatres/flat_resolution.hpp"

#include <cmath>
#include <limits>
#include <queue>

#include "flatres/flow_directions.hpp"

namespace flatres {

namespace {

///Queue sentinel separating BFS rounds; never a valid cell.
constexpr CellIndex kRoundMarker{-1, -1};

std::size_t flat_index(const GridShape& shape, CellIndex c) {
  return static_cast<std::size_t>(c.row) * shape.cols + c.col;
}

}  // namespace

EdgeQueues flat_edges(const Grid<double>& dem, const Grid<Direction>& flowdirs) {
  if (dem.shape() != flowdirs.shape())
    throw ContractViolation("flat_edges: dem and flowdirs shapes differ");
  EdgeQueues edges;
  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) {
      if (dem.is_nodata(r, c)) continue;
      const double elev = dem(r, c);
      if (flowdirs(r, c) == Direction::NoFlow) {
        for (const Neighbor n : neighbors(dem.shape(), {r, c})) {
          if (dem.is_nodata(n.cell)) continue;
          if (dem.at(n.cell) > elev) {
            edges.high_edges.push_back({r, c});
            break;
          }
        }
      } else if (flowdirs(r, c) != Direction::NoData) {
        for (const Neighbor n : neighbors(dem.shape(), {r, c})) {
          if (dem.is_nodata(n.cell)) continue;
          if (flowdirs.at(n.cell) == Direction::NoFlow && dem.at(n.cell) == elev) {
            edges.low_edges.push_back({r, c});
            break;
          }
        }
      }
    }
  return edges;
}

void label_flats(const Grid<double>& dem, Grid<std::int32_t>& labels, CellIndex seed,
                 std::int32_t label) {
  if (dem.shape() != labels.shape())
    throw ContractViolation("label_flats: dem and labels shapes differ");
  if (label <= 0) throw ContractViolation("label_flats: label must be positive");
  if (!dem.in_bounds(seed)) throw ContractViolation("label_flats: seed outside the grid");
  if (labels.at(seed) != 0 || dem.is_nodata(seed)) return;

  const double elev = dem.at(seed);
  std::queue<CellIndex> queue;
  labels.at(seed) = label;
  queue.push(seed);
  while (!queue.empty()) {
    const CellIndex cell = queue.front();
    queue.pop();
    for (const Neighbor n : neighbors(dem.shape(), cell)) {
      if (labels.at(n.cell) != 0 || dem.is_nodata(n.cell)) continue;
      if (dem.at(n.cell) != elev) continue;
      labels.at(n.cell) = label;
      queue.push(n.cell);
    }
  }
}

void away_from_higher(const Grid<std::int32_t>& labels, Grid<std::int32_t>& flatmask,
                      const Grid<Direction>& flowdirs,
                      const std::vector<CellIndex>& high_edges, FlatHeightTable& flat_height,
                      std::uint64_t* visit_count) {
  if (labels.shape() != flatmask.shape() || labels.shape() != flowdirs.shape())
    throw ContractViolation("away_from_higher: grid shapes differ");

  std::int32_t max_label = static_cast<std::int32_t>(flat_height.size()) - 1;
  for (const CellIndex c : high_edges) max_label = std::max(max_label, labels.at(c));
  if (static_cast<std::int32_t>(flat_height.size()) <= max_label)
    flat_height.resize(static_cast<std::size_t>(max_label) + 1, 0);

  std::vector<std::uint8_t> queued(static_cast<std::size_t>(labels.size()), 0);
  std::queue<CellIndex> queue;
  for (const CellIndex c : high_edges) {
    if (queued[flat_index(labels.shape(), c)]) continue;
    queued[flat_index(labels.shape(), c)] = 1;
    queue.push(c);
  }
  queue.push(kRoundMarker);

  std::int32_t round = 1;
  while (queue.size() > 1) {
    const CellIndex cell = queue.front();
    queue.pop();
    if (cell == kRoundMarker) {
      ++round;
      queue.push(kRoundMarker);
      continue;
    }
    const std::int32_t label = labels.at(cell);
    flatmask.at(cell) = round;
    flat_height[static_cast<std::size_t>(label)] = round;
    if (visit_count) ++*visit_count;
    for (const Neighbor n : neighbors(labels.shape(), cell)) {
      if (queued[flat_index(labels.shape(), n.cell)]) continue;
      if (labels.at(n.cell) != label) continue;
      if (flowdirs.at(n.cell) != Direction::NoFlow) continue;
      queued[flat_index(labels.shape(), n.cell)] = 1;
      queue.push(n.cell);
    }
  }
}

void towards_lower(const Grid<std::int32_t>& labels, Grid<std::int32_t>& flatmask,
                   const Grid<Direction>& flowdirs, const std::vector<CellIndex>& low_edges,
                   const FlatHeightTable& flat_height, std::uint64_t* visit_count) {
  if (labels.shape() != flatmask.shape() || labels.shape() != flowdirs.shape())
    throw ContractViolation("towards_lower: grid shapes differ");

  for (std::int32_t r = 0; r < flatmask.rows(); ++r)
    for (std::int32_t c = 0; c < flatmask.cols(); ++c) flatmask(r, c) = -flatmask(r, c);

  std::vector<std::uint8_t> queued(static_cast<std::size_t>(labels.size()), 0);
  std::queue<CellIndex> queue;
  for (const CellIndex c : low_edges) {
    if (queued[flat_index(labels.shape(), c)]) continue;
    queued[flat_index(labels.shape(), c)] = 1;
    queue.push(c);
  }
  queue.push(kRoundMarker);

  std::int32_t round = 1;
  while (queue.size() > 1) {
    const CellIndex cell = queue.front();
    queue.pop();
    if (cell == kRoundMarker) {
      ++round;
      queue.push(kRoundMarker);
      continue;
    }
    const std::int32_t label = labels.at(cell);
    if (flatmask.at(cell) < 0)
      flatmask.at(cell) =
          flat_height[static_cast<std::size_t>(label)] + flatmask.at(cell) + 2 * round;
    else
      flatmask.at(cell) = 2 * round;
    if (visit_count) ++*visit_count;
    for (const Neighbor n : neighbors(labels.shape(), cell)) {
      if (queued[flat_index(labels.shape(), n.cell)]) continue;
      if (labels.at(n.cell) != label) continue;
      if (flowdirs.at(n.cell) != Direction::NoFlow) continue;
      queued[flat_index(labels.shape(), n.cell)] = 1;
      queue.push(n.cell);
    }
  }
}

std::string_view to_string(ResolveOutcome outcome) {
  switch (outcome) {
    case ResolveOutcome::NoFlats: return "NoFlats";
    case ResolveOutcome::AllDrainable: return "AllDrainable";
    case ResolveOutcome::SomeUndrainable: return "SomeUndrainable";
    case ResolveOutcome::NoneDrainable: return "NoneDrainable";
  }
  throw ContractViolation("to_string: invalid ResolveOutcome");
}

std::string format_report_line(const ResolveReport& report) {
  std::string line = "outcome=";
  line += to_string(report.outcome);
  line += " flat_count=" + std::to_string(report.flat_count);
  line += " drainable_flat_count=" + std::to_string(report.drainable_flat_count);
  line += " high_edge_cells=" + std::to_string(report.high_edge_cells);
  line += " low_edge_cells=" + std::to_string(report.low_edge_cells);
  line += " pruned_high_edges=" + std::to_string(report.pruned_high_edges);
  return line;
}

namespace {

///Number of distinct equal-elevation components flooded from the given seeds.
///Scratch-only: used to report how many flats exist when none (or not all)
///could be resolved.
std::int64_t count_components(const Grid<double>& dem, const std::vector<CellIndex>& seeds) {
  Grid<std::int32_t> scratch(dem.rows(), dem.cols(), 0, -1);
  std::int32_t next = 1;
  for (const CellIndex c : seeds)
    if (scratch.at(c) == 0) label_flats(dem, scratch, c, next++);
  return next - 1;
}

}  // namespace

ResolveResult resolve_flats(const Grid<double>& dem, const Grid<Direction>& flowdirs) {
  if (dem.shape() != flowdirs.shape())
    throw ContractViolation("resolve_flats: dem and flowdirs shapes differ");

  ResolveResult res{Grid<std::int32_t>(dem.rows(), dem.cols(), 0, -1),
                    Grid<std::int32_t>(dem.rows(), dem.cols(), 0, -1), ResolveReport{}, 0};
  res.flatmask.set_georef(dem.georef());
  res.labels.set_georef(dem.georef());

  const EdgeQueues edges = flat_edges(dem, flowdirs);
  res.report.high_edge_cells = static_cast<std::int64_t>(edges.high_edges.size());
  res.report.low_edge_cells = static_cast<std::int64_t>(edges.low_edges.size());

  if (edges.high_edges.empty() && edges.low_edges.empty()) {
    res.report.outcome = ResolveOutcome::NoFlats;
    return res;
  }
  if (edges.low_edges.empty()) {
    res.report.outcome = ResolveOutcome::NoneDrainable;
    res.report.flat_count = count_components(dem, edges.high_edges);
    return res;
  }

  std::int32_t next_label = 1;
  for (const CellIndex c : edges.low_edges)
    if (res.labels.at(c) == 0) label_flats(dem, res.labels, c, next_label++);
  res.report.drainable_flat_count = next_label - 1;
  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) res.visits += res.labels(r, c) != 0;

  std::vector<CellIndex> kept_high;
  std::vector<CellIndex> dropped_high;
  kept_high.reserve(edges.high_edges.size());
  for (const CellIndex c : edges.high_edges)
    (res.labels.at(c) != 0 ? kept_high : dropped_high).push_back(c);
  res.report.pruned_high_edges = static_cast<std::int64_t>(dropped_high.size());
  res.report.flat_count =
      res.report.drainable_flat_count +
      (dropped_high.empty() ? 0 : count_components(dem, dropped_high));
  res.report.outcome = dropped_high.empty() ? ResolveOutcome::AllDrainable
                                            : ResolveOutcome::SomeUndrainable;

  FlatHeightTable flat_height(static_cast<std::size_t>(next_label), 0);
  away_from_higher(res.labels, res.flatmask, flowdirs, kept_high, flat_height, &res.visits);
  towards_lower(res.labels, res.flatmask, flowdirs, edges.low_edges, flat_height, &res.visits);
  return res;
}

AlterResult alter_dem(const Grid<double>& dem, const Grid<std::int32_t>& flatmask,
                      const Grid<std::int32_t>& labels) {
  if (dem.shape() != flatmask.shape() || dem.shape() != labels.shape())
    throw ContractViolation("alter_dem: grid shapes differ");

  AlterResult res{dem, {}};
  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) {
      if (labels(r, c) == 0 || flatmask(r, c) <= 0) continue;
      if (res.dem.is_nodata(r, c)) continue;

      const double before = res.dem(r, c);
      double after = before;
      for (std::int32_t i = 0; i < flatmask(r, c); ++i)
        after = std::nextafter(after, std::numeric_limits<double>::infinity());
      res.dem(r, c) = after;

      for (const Neighbor n : neighbors(dem.shape(), {r, c})) {
        if (labels.at(n.cell) == labels(r, c)) continue;
        if (res.dem.is_nodata(n.cell)) continue;
        const double other = res.dem.at(n.cell);
        if (other > before && !(other > after)) {
          res.violations.push_back({r, c});
          break;
        }
      }
    }
  return res;
}

}  // namespace flatres
