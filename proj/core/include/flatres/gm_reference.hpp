#pragma once

#include <cstdint>

#include "flatres/direction.hpp"
#include "flatres/errors.hpp"
#include "flatres/grid.hpp"

namespace flatres {

///Tuning knobs of the iterative reference resolver.
struct GmConfig {
  ///Elevation increment used by gm_apply_increments when masks are
  ///materialized as real elevation changes (the classic scheme's fixed step).
  double increment = 1e-5;
  ///Hard cap on mask-and-assign passes before giving up.
  std::int32_t max_iterations = 1000;
};

///@brief Equal-weight superposition of the two flat gradients (the classic
///       Garbrecht & Martz combination).
///
///Computes, for every drainable flat, away-from-higher plus towards-lower
///with both gradients weighted 1x:
///
///    mask(c) = (flat_height - away(c)) + lower(c),   low edges: lower(c) only.
///
///With equal weights the combined surface can contain plateaus of its own
///(cells with no strictly lower same-flat neighbor), which is why the classic
///scheme must iterate. Cells of undrainable flats and everything outside
///flats stay 0.
///
///@pre dem and flowdirs share one shape.
Grid<std::int32_t> gm_combined_mask(const Grid<double>& dem,
                                    const Grid<Direction>& flowdirs);

struct GmResolveResult {
  Grid<Direction> flowdirs;
  std::int32_t iterations = 0;
  ///Cells scanned across all gradient sweeps; grows like flat diameter times
  ///grid size, which is what makes the reference quadratic-ish on big flats.
  std::uint64_t sweep_cell_visits = 0;
};

namespace detail {

///@brief Equal-weight mask via full-raster sweeps, one scan per gradient
///       increment (the cost model of the classic scheme).
///
///Produces exactly the same mask as gm_combined_mask; only the visit count
///differs. Exposed for cross-checking the two routes against each other.
///If sweep_visits is non-null it accumulates every cell scanned.
Grid<std::int32_t> gm_sweep_mask(const Grid<double>& dem, const Grid<Direction>& flowdirs,
                                 std::uint64_t* sweep_visits = nullptr);

}  // namespace detail

///@brief Iterative reference resolver: equal-weight mask, assign directions,
///       repeat on whatever is still flat.
///
///Faithful to the classic scheme's structure: each pass recomputes the flat
///edges on the current directions, rebuilds the equal-weight mask with
///full-raster sweeps (one scan per gradient increment, so a flat of diameter
///d costs d raster scans), assigns directions down that mask, and repeats
///until no drainable flat cell remains. Undrainable flats are left NoFlow,
///exactly as resolve_flats leaves them.
///
///@pre dem and flowdirs share one shape; config.max_iterations >= 1.
///@throws NonconvergenceError if the iteration cap is hit first (the error
///        names the number of still-unresolved cells).
GmResolveResult gm_resolve_flats(const Grid<double>& dem,
                                 const Grid<Direction>& flowdirs,
                                 const GmConfig& config = {});

///@brief The classic scheme's elevation mutation: dem + mask * increment.
///
///Provided to demonstrate why mask-as-elevation is fragile: on float rasters
///whose magnitudes dwarf the increment, the additions round away entirely and
///the "resolved" DEM comes back unchanged. The mask-based pipeline never
///touches elevations and has no such failure mode.
///
///@pre dem and flatmask share one shape; increment > 0. NoData cells are
///     passed through untouched.
template <class T>
Grid<T> gm_apply_increments(const Grid<T>& dem, const Grid<std::int32_t>& flatmask,
                            double increment) {
  if (dem.shape() != flatmask.shape())
    throw ContractViolation("gm_apply_increments: dem and flatmask shapes differ");
  if (!(increment > 0))
    throw ContractViolation("gm_apply_increments: increment must be positive");
  Grid<T> out = dem;
  for (std::int32_t r = 0; r < dem.rows(); ++r)
    for (std::int32_t c = 0; c < dem.cols(); ++c) {
      if (dem.is_nodata(r, c) || flatmask(r, c) <= 0) continue;
      out(r, c) = static_cast<T>(out(r, c) + static_cast<T>(flatmask(r, c) * increment));
    }
  return out;
}

}  // namespace flatres
