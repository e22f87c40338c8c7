#include "flatres/flow_directions.hpp"

namespace flatres {

namespace {

///Outward direction for a border cell: the outward normal, or the outward
///diagonal in a corner. Vertical membership decides N/S, horizontal W/E;
///both together pick the diagonal between them (a 1x1 grid is top+left -> NW).
Direction outward_direction(GridShape shape, CellIndex c) {
  const bool top = c.row == 0;
  const bool bottom = c.row == shape.rows - 1;
  const bool left = c.col == 0;
  const bool right = c.col == shape.cols - 1;
  const Direction vertical = top ? Direction::North : bottom ? Direction::South : Direction::NoFlow;
  const Direction horizontal = left ? Direction::West : right ? Direction::East : Direction::NoFlow;
  if (vertical == Direction::NoFlow) return horizontal;
  if (horizontal == Direction::NoFlow) return vertical;
  if (vertical == Direction::North)
    return horizontal == Direction::West ? Direction::NorthWest : Direction::NorthEast;
  return horizontal == Direction::West ? Direction::SouthWest : Direction::SouthEast;
}

}  // namespace

Grid<Direction> d8_flow_directions(const Grid<double>& dem, EdgePolicy policy) {
  Grid<Direction> dirs(dem.rows(), dem.cols(), Direction::NoFlow, Direction::NoData);
  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) {
      if (dem.is_nodata(r, c)) {
        dirs(r, c) = Direction::NoData;
        continue;
      }
      double lowest = dem(r, c);
      Direction best = Direction::NoFlow;
      for (const Neighbor n : neighbors(dem.shape(), {r, c})) {
        if (dem.is_nodata(n.cell)) continue;
        if (dem.at(n.cell) < lowest) {
          lowest = dem.at(n.cell);
          best = n.dir;
        }
      }
      dirs(r, c) = best;
    }

  if (policy == EdgePolicy::EdgesDrainOutward) {
    for (std::int32_t r = 0; r < dem.rows(); ++r)
      for (std::int32_t c = 0; c < dem.cols(); ++c) {
        if (r != 0 && r != dem.rows() - 1 && c != 0 && c != dem.cols() - 1) continue;
        if (dirs(r, c) == Direction::NoFlow)
          dirs(r, c) = outward_direction(dem.shape(), {r, c});
      }
  }
  return dirs;
}

Grid<Direction> d8_masked_flow_directions(const Grid<std::int32_t>& flatmask,
                                          const Grid<std::int32_t>& labels,
                                          const Grid<Direction>& flowdirs) {
  if (flatmask.shape() != labels.shape() || flatmask.shape() != flowdirs.shape())
    throw ContractViolation("d8_masked_flow_directions: grid shapes differ");
  Grid<Direction> out = flowdirs;
  for (std::int32_t r = 0; r < out.rows(); ++r)
    for (std::int32_t c = 0; c < out.cols(); ++c) {
      if (out(r, c) != Direction::NoFlow) continue;
      const std::int32_t label = labels(r, c);
      std::int32_t lowest = flatmask(r, c);
      Direction best = Direction::NoFlow;
      for (const Neighbor n : neighbors(out.shape(), {r, c})) {
        if (labels.at(n.cell) != label) continue;
        if (flatmask.at(n.cell) < lowest) {
          lowest = flatmask.at(n.cell);
          best = n.dir;
        }
      }
      out(r, c) = best;
    }
  return out;
}

}  // namespace flatres
