#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

#include "flatres/errors.hpp"

namespace flatres {

///0-based raster coordinates. Row 0 is the top (northernmost) raster row and
///column 0 the leftmost, matching the storage order of ESRI ASCII grids.
struct CellIndex {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend constexpr bool operator==(const CellIndex&, const CellIndex&) = default;
};

///Grid dimensions, separated from cell type so geometry helpers (neighbor
///enumeration, bounds tests) need not be templates.
struct GridShape {
  std::int32_t rows = 0;
  std::int32_t cols = 0;

  constexpr bool contains(CellIndex c) const {
    return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
  }
  constexpr std::int64_t size() const {
    return static_cast<std::int64_t>(rows) * cols;
  }

  friend constexpr bool operator==(const GridShape&, const GridShape&) = default;
};

///Optional world placement carried through raster I/O unchanged. The library
///itself never interprets these values.
struct GeoReference {
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;

  friend constexpr bool operator==(const GeoReference&, const GeoReference&) = default;
};

///@brief Dense row-major raster with an explicit NoData sentinel.
///
///Cells are addressed as (row, col). NoData is matched by exact comparison;
///the library never does tolerance comparisons against the sentinel.
template <class T>
class Grid {
 public:
  Grid(std::int32_t rows, std::int32_t cols, T fill, T nodata)
      : shape_{rows, cols}, nodata_(nodata), cells_(checked_size(rows, cols), fill) {}

  T& operator()(std::int32_t row, std::int32_t col) {
    assert(shape_.contains({row, col}));
    return cells_[static_cast<std::size_t>(row) * shape_.cols + col];
  }
  const T& operator()(std::int32_t row, std::int32_t col) const {
    assert(shape_.contains({row, col}));
    return cells_[static_cast<std::size_t>(row) * shape_.cols + col];
  }
  T& at(CellIndex c) { return (*this)(c.row, c.col); }
  const T& at(CellIndex c) const { return (*this)(c.row, c.col); }

  std::int32_t rows() const { return shape_.rows; }
  std::int32_t cols() const { return shape_.cols; }
  std::int64_t size() const { return shape_.size(); }
  const GridShape& shape() const { return shape_; }

  bool in_bounds(CellIndex c) const { return shape_.contains(c); }
  bool in_bounds(std::int32_t row, std::int32_t col) const {
    return shape_.contains({row, col});
  }

  T nodata() const { return nodata_; }
  void set_nodata(T value) { nodata_ = value; }
  bool is_nodata(CellIndex c) const { return at(c) == nodata_; }
  bool is_nodata(std::int32_t row, std::int32_t col) const {
    return (*this)(row, col) == nodata_;
  }

  void fill(T value) { cells_.assign(cells_.size(), value); }

  const std::optional<GeoReference>& georef() const { return georef_; }
  void set_georef(std::optional<GeoReference> g) { georef_ = g; }

  const std::vector<T>& data() const { return cells_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.shape_ == b.shape_ && a.nodata_ == b.nodata_ && a.georef_ == b.georef_ &&
           a.cells_ == b.cells_;
  }

 private:
  static std::size_t checked_size(std::int32_t rows, std::int32_t cols) {
    if (rows < 1 || cols < 1)
      throw ContractViolation("Grid dimensions must be positive, got " +
                              std::to_string(rows) + "x" + std::to_string(cols));
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  GridShape shape_;
  T nodata_;
  std::vector<T> cells_;
  std::optional<GeoReference> georef_;
};

}  // namespace flatres
