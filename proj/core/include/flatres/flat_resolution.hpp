#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "flatres/direction.hpp"
#include "flatres/grid.hpp"

namespace flatres {

///Boundary cells of flats, in raster-scan push order (the order is part of
///the contract: the gradient passes seed their queues from it verbatim).
///
///A low edge is a cell that already drains (defined direction) and borders a
///same-elevation NoFlow cell: the spill points of a flat. A high edge is a
///NoFlow cell bordering strictly higher ground.
struct EdgeQueues {
  std::vector<CellIndex> high_edges;
  std::vector<CellIndex> low_edges;
};

///@brief Locate the high and low edges of every flat in one raster scan.
///@pre dem and flowdirs share one shape.
///@post Each cell appears at most once per queue; NoData cells never appear.
EdgeQueues flat_edges(const Grid<double>& dem, const Grid<Direction>& flowdirs);

///@brief Flood-fill one flat: give every equal-elevation cell D8-connected to
///       seed the given label.
///
///Labels only cells currently 0 in labels, so repeated calls with different
///seeds partition the flats. Iterative FIFO flood; never recurses.
///
///@pre dem and labels share one shape; label > 0.
void label_flats(const Grid<double>& dem, Grid<std::int32_t>& labels, CellIndex seed,
                 std::int32_t label);

///Per-label number of increments applied by the away-from-higher pass,
///indexed by label (entry 0 unused). The towards-lower pass needs it to turn
///the away gradient upside down.
using FlatHeightTable = std::vector<std::int32_t>;

///@brief Gradient away from higher terrain (BFS pass 1 of 2).
///
///Multi-source BFS from the high edges across same-label NoFlow cells. Cells
///reached in the i-th BFS round get increment i in flatmask, and
///flat_height[label] ends at the number of rounds that touched that flat.
///Iteration boundaries are tracked with a marker entry in the queue. Each
///cell is enqueued at most once, so the pass visits each flat cell at most
///once.
///
///@pre flatmask is all zero; every high edge carries a nonzero label.
///@post flatmask holds the away increments (0 where the BFS never reached,
///      including everything outside flats).
void away_from_higher(const Grid<std::int32_t>& labels, Grid<std::int32_t>& flatmask,
                      const Grid<Direction>& flowdirs,
                      const std::vector<CellIndex>& high_edges,
                      FlatHeightTable& flat_height,
                      std::uint64_t* visit_count = nullptr);

///@brief Gradient towards lower terrain, superimposed on the away gradient
///       (BFS pass 2 of 2).
///
///First negates every mask value so pass-1 increments are recognizable, then
///runs a multi-source BFS from the low edges. A cell reached in round i gets
///
///    flat_height[label] + negated_away + 2*i   if pass 1 touched it,
///    2*i                                       otherwise,
///
///i.e. the towards-lower gradient counts double. That weighting makes the
///combined mask strictly decreasing along some neighbor chain from every
///flat cell to a low edge, so one masked direction pass drains everything.
///
///@pre flatmask holds the pass-1 increments for these labels; low edges all
///     carry nonzero labels.
///@post All mask values are nonnegative again; every labeled cell is positive.
void towards_lower(const Grid<std::int32_t>& labels, Grid<std::int32_t>& flatmask,
                   const Grid<Direction>& flowdirs,
                   const std::vector<CellIndex>& low_edges,
                   const FlatHeightTable& flat_height,
                   std::uint64_t* visit_count = nullptr);

enum class ResolveOutcome {
  NoFlats,          ///< Nothing to do: no flat cells at all.
  AllDrainable,     ///< Every flat has a spill point and got a full mask.
  SomeUndrainable,  ///< Mixed: undrainable flats were left untouched.
  NoneDrainable,    ///< Only closed depressions; the DEM needs pit filling first.
};

std::string_view to_string(ResolveOutcome outcome);

///What resolve_flats did, cheap to log and assert on.
struct ResolveReport {
  std::int64_t flat_count = 0;            ///< Flats found, drainable or not.
  std::int64_t drainable_flat_count = 0;  ///< Flats that received a mask.
  std::int64_t high_edge_cells = 0;
  std::int64_t low_edge_cells = 0;
  std::int64_t pruned_high_edges = 0;  ///< High edges in undrainable flats.
  ResolveOutcome outcome = ResolveOutcome::NoFlats;
};

///Single-line key=value rendering of a report, e.g.
///`outcome=AllDrainable flat_count=1 drainable_flat_count=1 ...`.
std::string format_report_line(const ResolveReport& report);

struct ResolveResult {
  Grid<std::int32_t> flatmask;
  Grid<std::int32_t> labels;
  ResolveReport report;
  ///Cells touched by labeling plus the two gradient passes; bounded by
  ///3 * grid size because each pass finalizes a cell at most once.
  std::uint64_t visits = 0;
};

///@brief Resolve every drainable flat in one labeling pass plus two BFS
///       passes (linear in grid size).
///
///Finds the flat edges, labels each drainable flat from its low edges,
///discards high edges belonging to flats with no spill point (those flats
///keep mask 0 and label 0), then superimposes the two gradients. Neither dem
///nor flowdirs is modified; drainage inside flats is expressed by the mask,
///to be materialized with d8_masked_flow_directions.
///
///@pre dem and flowdirs share one shape.
ResolveResult resolve_flats(const Grid<double>& dem, const Grid<Direction>& flowdirs);

struct AlterResult {
  Grid<double> dem;
  ///Cells whose mask-driven epsilon raise changed their order against a
  ///neighboring cell outside their own flat.
  std::vector<CellIndex> violations;
};

///@brief Materialize a flat mask as elevations: raise every masked cell by
///       mask-many units in the last place.
///
///Each labeled, masked cell is bumped with nextafter towards +infinity,
///mask(c) times, in raster-scan order. For every bumped cell the function
///records whether some differently-labeled neighbor that used to be strictly
///higher is no longer strictly higher afterwards; such cells are reported as
///violations (none occur unless the DEM's relief is already at the epsilon
///scale, since the raise stays within a few ulps). The input DEM is not
///modified.
///
///@pre dem, flatmask and labels share one shape (mask and labels as produced
///     by resolve_flats).
AlterResult alter_dem(const Grid<double>& dem, const Grid<std::int32_t>& flatmask,
                      const Grid<std::int32_t>& labels);

}  // namespace flatres
