#include "flatres/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "flatres/errors.hpp"

namespace flatres {

Grid<double> worked_example_dem() {
  Grid<double> dem(7, 7, 2.0, -9999.0);
  for (std::int32_t r = 1; r <= 5; ++r)
    for (std::int32_t c = 1; c <= 5; ++c) dem(r, c) = 1.0;
  dem(6, 2) = 0.0;
  return dem;
}

Grid<double> square_flat_dem(std::int32_t side) {
  if (side < 5)
    throw ContractViolation("square_flat_dem: side must be >= 5, got " + std::to_string(side));
  const std::int32_t n = side + 2;
  Grid<double> dem(n, n, 2.0, -9999.0);
  for (std::int32_t r = 1; r <= side; ++r)
    for (std::int32_t c = 1; c <= side; ++c) dem(r, c) = 1.0;
  dem(n - 1, 3) = 0.0;
  return dem;
}

namespace {

///Tile width of the value-noise lattice, in cells.
constexpr std::int64_t kTile = 8;
///Elevation gain per unit of row + col; chosen so the diagonal ramp always
///outruns the noise (whose cell-to-cell step is at most 8160 < 16384).
constexpr std::int64_t kRampStep = 16384;
///Noise amplitude multiplier.
constexpr std::int64_t kAmplitude = 4;

///Knuth's MMIX linear congruential step.
std::uint64_t lcg_next(std::uint64_t state) {
  return state * 6364136223846793005ULL + 1442695040888963407ULL;
}

}  // namespace

Grid<double> random_terrain_dem(std::int32_t rows, std::int32_t cols, std::uint64_t seed,
                                double flat_fraction) {
  if (rows < 8 || cols < 8)
    throw ContractViolation("random_terrain_dem: rows and cols must be >= 8, got " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  if (!(flat_fraction >= 0.0 && flat_fraction <= 1.0))
    throw ContractViolation("random_terrain_dem: flat_fraction must lie in [0, 1]");

  // Byte lattice for bilinear value noise, one sample per 8x8 tile corner.
  const std::int64_t lattice_rows = rows / kTile + 2;
  const std::int64_t lattice_cols = cols / kTile + 2;
  std::vector<std::int64_t> lattice(static_cast<std::size_t>(lattice_rows * lattice_cols));
  std::uint64_t state = seed;
  for (auto& value : lattice) {
    state = lcg_next(state);
    value = static_cast<std::int64_t>(state >> 56);  // top byte
  }
  const auto lat = [&](std::int64_t lr, std::int64_t lc) {
    return lattice[static_cast<std::size_t>(lr * lattice_cols + lc)];
  };

  // Plateau quantum: larger flat_fraction widens the bands. Below 2 the
  // quantization is a no-op, above 64 the whole terrain collapses to steps.
  std::int64_t quantum = 0;
  if (flat_fraction > 0.0) {
    std::int64_t bands;
    if (flat_fraction >= 1.0 - 2.0 / 64.0)
      bands = 64;
    else
      bands = std::clamp<std::int64_t>(std::lround(2.0 / (1.0 - flat_fraction)), 2, 64);
    quantum = kRampStep * bands;
  }

  Grid<double> dem(rows, cols, 0.0, -9999.0);
  for (std::int32_t r = 0; r < rows; ++r)
    for (std::int32_t c = 0; c < cols; ++c) {
      const std::int64_t tr = r / kTile, fr = r % kTile;
      const std::int64_t tc = c / kTile, fc = c % kTile;
      const std::int64_t noise =
          kAmplitude * (lat(tr, tc) * (kTile - fr) * (kTile - fc) +
                        lat(tr + 1, tc) * fr * (kTile - fc) +
                        lat(tr, tc + 1) * (kTile - fr) * fc + lat(tr + 1, tc + 1) * fr * fc);
      std::int64_t elev = kRampStep * (r + c) + noise;
      if (quantum > 0) elev = elev / quantum * quantum;
      dem(r, c) = static_cast<double>(elev);  // integer-exact well below 2^53
    }
  return dem;
}

}  // namespace flatres
