#pragma once

#include <cstdint>

#include "flatres/grid.hpp"

namespace flatres {

///@brief The 7x7 worked example used throughout the tests: a 5x5 flat at
///       elevation 1.0 ringed by 2.0, with a single 0.0 outlet on the bottom
///       border at (row 6, col 2), diagonally under the flat's lower-left
///       corner.
///
///Its flat has 13 high-edge cells (top row, both side columns, and the two
///bottom cells away from the outlet) and 3 low-edge cells (the bottom-left
///three flat cells, which drain into the outlet).
Grid<double> worked_example_dem();

///@brief Square benchmark terrain: a side x side flat at 1.0 inside a 2.0
///       ring, one 0.0 outlet on the bottom ring row at column 3.
///
///The resulting grid is (side+2) x (side+2). Flat cells dominate the raster,
///which is the worst case that separates the linear pipeline from the
///iterative reference.
///
///@pre side >= 5.
Grid<double> square_flat_dem(std::int32_t side);

///@brief Deterministic pseudo-random terrain with a controllable share of
///       flat cells. Same arguments, same grid, on every platform.
///
///Construction: a diagonal ramp (16384 per row+col step) plus smooth value
///noise, bilinearly interpolated from a byte lattice drawn from a 64-bit
///linear congruential generator (Knuth's MMIX constants). The ramp dominates
///the noise slope, so the unquantized surface has no interior cell without a
///strictly lower neighbor. flat_fraction > 0 then quantizes elevations into
///plateau bands sized so roughly that share of cells loses its local
///gradient; flat_fraction == 0 skips quantization entirely. All elevations
///are integer-valued doubles.
///
///@pre rows >= 8, cols >= 8, 0 <= flat_fraction <= 1.
Grid<double> random_terrain_dem(std::int32_t rows, std::int32_t cols,
                                std::uint64_t seed, double flat_fraction);

}  // namespace flatres
