#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "flatres/errors.hpp"
#include "flatres/grid.hpp"

namespace flatres {

///D8 flow direction of a cell. The integer encoding is part of the raster
///interchange format and must not change:
///
///  -1 NoData   0 NoFlow   1 E   2 NE   3 N   4 NW   5 W   6 SW   7 S   8 SE
///
///Compass values walk counterclockwise from east. All neighbor scans in the
///library iterate in exactly this order so that ties resolve identically
///everywhere (first strict minimum wins).
enum class Direction : std::int8_t {
  NoData = -1,
  NoFlow = 0,
  East = 1,
  NorthEast = 2,
  North = 3,
  NorthWest = 4,
  West = 5,
  SouthWest = 6,
  South = 7,
  SouthEast = 8,
};

///Compass directions in encoding (= scan) order.
inline constexpr std::array<Direction, 8> kCompass = {
    Direction::East,  Direction::NorthEast, Direction::North, Direction::NorthWest,
    Direction::West,  Direction::SouthWest, Direction::South, Direction::SouthEast,
};

///(row, col) offsets of the 8 neighbors, indexed by encode(dir) - 1. Row 0 is
///the top raster row, so North is row - 1.
inline constexpr std::array<std::int8_t, 8> kRowOffset = {0, -1, -1, -1, 0, 1, 1, 1};
inline constexpr std::array<std::int8_t, 8> kColOffset = {1, 1, 0, -1, -1, -1, 0, 1};

constexpr int encode(Direction d) { return static_cast<int>(d); }

///@brief Recover a Direction from its integer encoding.
///@throws ContractViolation if v is outside [-1, 8].
constexpr Direction decode_direction(int v) {
  if (v < -1 || v > 8)
    throw ContractViolation("invalid direction encoding " + std::to_string(v));
  return static_cast<Direction>(v);
}

///True for the eight compass values; false for NoFlow and NoData.
constexpr bool is_compass(Direction d) { return encode(d) >= 1; }

///Cell one step along d. Only valid for compass directions.
constexpr CellIndex step(CellIndex c, Direction d) {
  const int i = encode(d) - 1;
  return {c.row + kRowOffset[i], c.col + kColOffset[i]};
}

///A neighbor together with the direction that reaches it.
struct Neighbor {
  Direction dir = Direction::NoFlow;
  CellIndex cell;
};

///Fixed-capacity neighbor collection; avoids heap traffic in per-cell loops.
class NeighborList {
 public:
  void push_back(Neighbor n) { items_[count_++] = n; }
  const Neighbor* begin() const { return items_.data(); }
  const Neighbor* end() const { return items_.data() + count_; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const Neighbor& operator[](std::size_t i) const { return items_[i]; }

 private:
  std::array<Neighbor, 8> items_{};
  std::uint8_t count_ = 0;
};

///@brief In-bounds D8 neighbors of c, in the fixed scan order (E, NE, N, NW,
///       W, SW, S, SE).
///@pre c lies inside shape.
///@return 3 neighbors at a corner, 5 on a non-corner border cell, 8 inside.
inline NeighborList neighbors(GridShape shape, CellIndex c) {
  if (!shape.contains(c))
    throw ContractViolation("neighbors: cell (" + std::to_string(c.row) + "," +
                            std::to_string(c.col) + ") outside " +
                            std::to_string(shape.rows) + "x" + std::to_string(shape.cols) +
                            " grid");
  NeighborList out;
  for (int i = 0; i < 8; ++i) {
    const CellIndex n{c.row + kRowOffset[i], c.col + kColOffset[i]};
    if (shape.contains(n)) out.push_back({kCompass[i], n});
  }
  return out;
}

}  // namespace flatres
