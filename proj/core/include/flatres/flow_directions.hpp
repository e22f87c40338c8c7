#pragma once

#include <cstdint>

#include "flatres/direction.hpp"
#include "flatres/grid.hpp"

namespace flatres {

///What to do with grid-boundary cells that end up with no downhill neighbor.
enum class EdgePolicy {
  ///Leave them NoFlow; boundary flats then behave like interior flats.
  AsPseudocode,
  ///Assign the outward normal (corners get the outward diagonal), modelling
  ///the assumption that terrain beyond the raster continues downhill. This is
  ///the command-line default.
  EdgesDrainOutward,
};

///@brief Assign D8 flow directions from elevations alone.
///
///Each non-NoData cell receives the direction of its strictly lowest
///in-bounds, non-NoData neighbor; neighbors are scanned in the fixed order
///E, NE, N, NW, W, SW, S, SE and the first strict minimum wins ties. Cells
///with no strictly lower neighbor stay NoFlow (subject to the edge policy);
///NoData cells map to NoData.
///
///@return A direction grid of the same shape, with NoData exactly where the
///        DEM is NoData.
Grid<Direction> d8_flow_directions(const Grid<double>& dem,
                                   EdgePolicy policy = EdgePolicy::EdgesDrainOutward);

///@brief Assign directions inside flats by descending the flat mask.
///
///Every NoFlow cell receives the direction of its strictly lowest same-label
///neighbor in the mask (same scan order and tie-break as d8_flow_directions);
///cells whose mask neighborhood offers no strictly lower value stay NoFlow.
///Previously defined directions are never altered, so the pass is idempotent.
///
///@pre flatmask, labels and flowdirs share one shape.
///@return A copy of flowdirs with flat interiors resolved.
Grid<Direction> d8_masked_flow_directions(const Grid<std::int32_t>& flatmask,
                                          const Grid<std::int32_t>& labels,
                                          const Grid<Direction>& flowdirs);

}  // namespace flatres
