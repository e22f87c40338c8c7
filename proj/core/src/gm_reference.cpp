#include "flatres/gm_reference.hpp"

#include <queue>
#include <vector>

#include "flatres/flat_resolution.hpp"
#include "flatres/flow_directions.hpp"

namespace flatres {

namespace {

constexpr CellIndex kRoundMarker{-1, -1};

std::size_t flat_index(const GridShape& shape, CellIndex c) {
  return static_cast<std::size_t>(c.row) * shape.cols + c.col;
}

///Drainable flats of the current surface: labels flooded from the low edges,
///plus the high edges that landed inside a labeled flat.
struct FlatContext {
  Grid<std::int32_t> labels;
  std::vector<CellIndex> kept_high;
  std::vector<CellIndex> low_edges;
  std::int32_t label_count = 0;
};

FlatContext find_drainable_flats(const Grid<double>& dem, const Grid<Direction>& flowdirs) {
  EdgeQueues edges = flat_edges(dem, flowdirs);
  FlatContext ctx{Grid<std::int32_t>(dem.rows(), dem.cols(), 0, -1), {},
                  std::move(edges.low_edges), 0};
  std::int32_t next_label = 1;
  for (const CellIndex c : ctx.low_edges)
    if (ctx.labels.at(c) == 0) label_flats(dem, ctx.labels, c, next_label++);
  ctx.label_count = next_label - 1;
  for (const CellIndex c : edges.high_edges)
    if (ctx.labels.at(c) != 0) ctx.kept_high.push_back(c);
  return ctx;
}

///Towards-lower gradient with weight 1 instead of 2, superimposed in place on
///the away gradient exactly like towards_lower otherwise.
void towards_lower_equal_weight(const Grid<std::int32_t>& labels, Grid<std::int32_t>& flatmask,
                                const Grid<Direction>& flowdirs,
                                const std::vector<CellIndex>& low_edges,
                                const FlatHeightTable& flat_height) {
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
      flatmask.at(cell) = flat_height[static_cast<std::size_t>(label)] + flatmask.at(cell) + round;
    else
      flatmask.at(cell) = round;
    for (const Neighbor n : neighbors(labels.shape(), cell)) {
      if (queued[flat_index(labels.shape(), n.cell)]) continue;
      if (labels.at(n.cell) != label) continue;
      if (flowdirs.at(n.cell) != Direction::NoFlow) continue;
      queued[flat_index(labels.shape(), n.cell)] = 1;
      queue.push(n.cell);
    }
  }
}

///One full-raster sweep assigning `level` where an unassigned flat cell has a
///same-label neighbor already at level - 1. Returns whether anything changed.
///No chaining can happen within a sweep, so levels equal BFS rounds exactly.
bool gradient_sweep(const Grid<std::int32_t>& labels, const Grid<Direction>& flowdirs,
                    Grid<std::int32_t>& field, FlatHeightTable* flat_height,
                    std::int32_t level, std::uint64_t* sweep_visits) {
  bool changed = false;
  for (std::int32_t r = 0; r < labels.rows(); ++r)
    for (std::int32_t c = 0; c < labels.cols(); ++c) {
      if (sweep_visits) ++*sweep_visits;
      const std::int32_t label = labels(r, c);
      if (label == 0 || field(r, c) != 0) continue;
      if (flowdirs(r, c) != Direction::NoFlow) continue;
      for (const Neighbor n : neighbors(labels.shape(), {r, c})) {
        if (labels.at(n.cell) != label || field.at(n.cell) != level - 1) continue;
        field(r, c) = level;
        if (flat_height) (*flat_height)[static_cast<std::size_t>(label)] = level;
        changed = true;
        break;
      }
    }
  return changed;
}

///Seed sweep: one full-raster scan assigning level 1 to the listed cells.
void seed_sweep(const Grid<std::int32_t>& labels, const std::vector<CellIndex>& seeds,
                Grid<std::int32_t>& field, FlatHeightTable* flat_height,
                std::uint64_t* sweep_visits) {
  std::vector<std::uint8_t> is_seed(static_cast<std::size_t>(labels.size()), 0);
  for (const CellIndex c : seeds) is_seed[flat_index(labels.shape(), c)] = 1;
  for (std::int32_t r = 0; r < labels.rows(); ++r)
    for (std::int32_t c = 0; c < labels.cols(); ++c) {
      if (sweep_visits) ++*sweep_visits;
      if (!is_seed[flat_index(labels.shape(), {r, c})]) continue;
      field(r, c) = 1;
      if (flat_height) (*flat_height)[static_cast<std::size_t>(labels(r, c))] = 1;
    }
}

///Equal-weight mask from a precomputed flat context, built with full-raster
///sweeps (one per gradient increment).
Grid<std::int32_t> sweep_mask_impl(const Grid<double>& dem, const Grid<Direction>& flowdirs,
                                   const FlatContext& ctx, std::uint64_t* sweep_visits) {
  Grid<std::int32_t> mask(dem.rows(), dem.cols(), 0, -1);
  mask.set_georef(dem.georef());
  if (ctx.low_edges.empty()) return mask;

  FlatHeightTable flat_height(static_cast<std::size_t>(ctx.label_count) + 1, 0);
  Grid<std::int32_t> away(dem.rows(), dem.cols(), 0, -1);
  if (!ctx.kept_high.empty()) {
    seed_sweep(ctx.labels, ctx.kept_high, away, &flat_height, sweep_visits);
    for (std::int32_t level = 2;
         gradient_sweep(ctx.labels, flowdirs, away, &flat_height, level, sweep_visits); ++level) {
    }
  }

  Grid<std::int32_t> lower(dem.rows(), dem.cols(), 0, -1);
  seed_sweep(ctx.labels, ctx.low_edges, lower, nullptr, sweep_visits);
  for (std::int32_t level = 2;
       gradient_sweep(ctx.labels, flowdirs, lower, nullptr, level, sweep_visits); ++level) {
  }

  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) {
      if (lower(r, c) <= 0) continue;
      const std::int32_t label = ctx.labels(r, c);
      mask(r, c) = away(r, c) > 0
                       ? (flat_height[static_cast<std::size_t>(label)] - away(r, c)) + lower(r, c)
                       : lower(r, c);
    }
  return mask;
}

}  // namespace

Grid<std::int32_t> gm_combined_mask(const Grid<double>& dem, const Grid<Direction>& flowdirs) {
  const FlatContext ctx = find_drainable_flats(dem, flowdirs);
  Grid<std::int32_t> mask(dem.rows(), dem.cols(), 0, -1);
  mask.set_georef(dem.georef());
  if (ctx.low_edges.empty()) return mask;

  FlatHeightTable flat_height(static_cast<std::size_t>(ctx.label_count) + 1, 0);
  away_from_higher(ctx.labels, mask, flowdirs, ctx.kept_high, flat_height, nullptr);
  towards_lower_equal_weight(ctx.labels, mask, flowdirs, ctx.low_edges, flat_height);
  return mask;
}

namespace detail {

Grid<std::int32_t> gm_sweep_mask(const Grid<double>& dem, const Grid<Direction>& flowdirs,
                                 std::uint64_t* sweep_visits) {
  return sweep_mask_impl(dem, flowdirs, find_drainable_flats(dem, flowdirs), sweep_visits);
}

}  // namespace detail

GmResolveResult gm_resolve_flats(const Grid<double>& dem, const Grid<Direction>& flowdirs,
                                 const GmConfig& config) {
  if (!(config.increment > 0))
    throw ContractViolation("gm_resolve_flats: increment must be positive");
  if (config.max_iterations < 1)
    throw ContractViolation("gm_resolve_flats: max_iterations must be >= 1");
  if (dem.shape() != flowdirs.shape())
    throw ContractViolation("gm_resolve_flats: dem and flowdirs shapes differ");

  GmResolveResult res{flowdirs, 0, 0};
  Grid<double> current = dem;
  while (true) {
    const FlatContext ctx = find_drainable_flats(current, res.flowdirs);
    if (ctx.low_edges.empty()) break;
    if (res.iterations >= config.max_iterations) {
      std::int64_t remaining = 0;
      for (std::int32_t r = 0; r < current.rows(); ++r)
        for (std::int32_t c = 0; c < current.cols(); ++c)
          remaining += ctx.labels(r, c) != 0 && res.flowdirs(r, c) == Direction::NoFlow;
      throw NonconvergenceError(remaining, res.iterations);
    }
    const Grid<std::int32_t> mask =
        sweep_mask_impl(current, res.flowdirs, ctx, &res.sweep_cell_visits);
    res.flowdirs = d8_masked_flow_directions(mask, ctx.labels, res.flowdirs);
    current = gm_apply_increments(current, mask, config.increment);
    ++res.iterations;
  }
  return res;
}

}  // namespace flatres
