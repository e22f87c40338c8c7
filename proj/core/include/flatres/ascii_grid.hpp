#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "flatres/direction.hpp"
#include "flatres/errors.hpp"
#include "flatres/grid.hpp"

///ESRI ASCII grid I/O. Header keys (case-insensitive): ncols and nrows are
///required; xllcorner, yllcorner, cellsize (all three or none) and
///NODATA_value are optional. NODATA_value defaults to -9999. Values are
///written with shortest-round-trip formatting, so write followed by read
///reproduces every cell bit-exactly.

namespace flatres {
namespace detail {

template <class T>
struct AsciiCellCodec;

template <class F>
struct AsciiFloatCodec {
  static constexpr const char* kTypeName = "number";
  static F default_nodata() { return F(-9999); }
  static bool parse(std::string_view tok, F& out) {
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
  }
  static void write(std::ostream& os, F v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    os.write(buf, p - buf);
  }
};

template <>
struct AsciiCellCodec<double> : AsciiFloatCodec<double> {};
template <>
struct AsciiCellCodec<float> : AsciiFloatCodec<float> {};

template <>
struct AsciiCellCodec<std::int32_t> {
  static constexpr const char* kTypeName = "integer";
  static std::int32_t default_nodata() { return -9999; }
  static bool parse(std::string_view tok, std::int32_t& out) {
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc{} && p == tok.data() + tok.size();
  }
  static void write(std::ostream& os, std::int32_t v) { os << v; }
};

template <>
struct AsciiCellCodec<Direction> {
  static constexpr const char* kTypeName = "direction code";
  static Direction default_nodata() { return Direction::NoData; }
  static bool parse(std::string_view tok, Direction& out) {
    int v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size() || v < -1 || v > 8) return false;
    out = static_cast<Direction>(v);
    return true;
  }
  static void write(std::ostream& os, Direction v) { os << encode(v); }
};

inline std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool looks_like_header_key(std::string_view tok) {
  return !tok.empty() &&
         (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_');
}

}  // namespace detail

///@brief Parse an ESRI ASCII grid from a stream.
///@throws ParseError on malformed input; every message names the line.
template <class T>
Grid<T> read_ascii_grid(std::istream& in) {
  using Codec = detail::AsciiCellCodec<T>;

  std::string line;
  int line_no = 0;
  std::int64_t ncols = -1;
  std::int64_t nrows = -1;
  bool have_xll = false, have_yll = false, have_cellsize = false;
  GeoReference geo;
  T nodata = Codec::default_nodata();
  bool header_done = false;
  std::int64_t expected = 0;
  std::vector<T> cells;

  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = detail::split_whitespace(line);
    if (toks.empty()) continue;

    if (!header_done && detail::looks_like_header_key(toks[0])) {
      if (toks.size() != 2)
        throw ParseError("header line must be 'key value', got " +
                             std::to_string(toks.size()) + " tokens",
                         line_no);
      const std::string key = detail::to_lower(toks[0]);
      const std::string_view val = toks[1];
      const auto parse_dim = [&](std::string_view name) {
        std::int64_t v = 0;
        const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || p != val.data() + val.size() || v < 1 ||
            v > std::numeric_limits<std::int32_t>::max())
          throw ParseError(std::string(name) + " must be a positive integer, got '" +
                               std::string(val) + "'",
                           line_no);
        return v;
      };
      const auto parse_real = [&](std::string_view name) {
        double v = 0;
        const auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc{} || p != val.data() + val.size())
          throw ParseError(std::string(name) + " must be a number, got '" +
                               std::string(val) + "'",
                           line_no);
        return v;
      };
      if (key == "ncols") {
        ncols = parse_dim("ncols");
      } else if (key == "nrows") {
        nrows = parse_dim("nrows");
      } else if (key == "xllcorner") {
        geo.xllcorner = parse_real("xllcorner");
        have_xll = true;
      } else if (key == "yllcorner") {
        geo.yllcorner = parse_real("yllcorner");
        have_yll = true;
      } else if (key == "cellsize") {
        geo.cellsize = parse_real("cellsize");
        have_cellsize = true;
      } else if (key == "nodata_value") {
        if (!Codec::parse(val, nodata))
          throw ParseError("NODATA_value must be a " + std::string(Codec::kTypeName) +
                               ", got '" + std::string(val) + "'",
                           line_no);
      } else {
        throw ParseError("unknown header key '" + std::string(toks[0]) + "'", line_no);
      }
      continue;
    }

    if (!header_done) {
      if (ncols < 0) throw ParseError("missing required header 'ncols'", line_no);
      if (nrows < 0) throw ParseError("missing required header 'nrows'", line_no);
      if ((have_xll || have_yll || have_cellsize) &&
          !(have_xll && have_yll && have_cellsize))
        throw ParseError(
            "incomplete georeference: xllcorner, yllcorner and cellsize must appear "
            "together",
            line_no);
      header_done = true;
      expected = nrows * ncols;
      cells.reserve(static_cast<std::size_t>(expected));
    }

    for (const std::string_view tok : toks) {
      if (static_cast<std::int64_t>(cells.size()) == expected)
        throw ParseError("unexpected extra value '" + std::string(tok) + "' after " +
                             std::to_string(expected) + " cells",
                         line_no);
      T v;
      if (!Codec::parse(tok, v))
        throw ParseError("cannot parse '" + std::string(tok) + "' as " +
                             Codec::kTypeName + " (cell " +
                             std::to_string(cells.size()) + ")",
                         line_no);
      cells.push_back(v);
    }
  }

  if (!header_done) {
    if (ncols < 0) throw ParseError("missing required header 'ncols'", line_no + 1);
    if (nrows < 0) throw ParseError("missing required header 'nrows'", line_no + 1);
    throw ParseError("grid contains no cell values", line_no + 1);
  }
  if (static_cast<std::int64_t>(cells.size()) < expected)
    throw ParseError("expected " + std::to_string(expected) + " values, found " +
                         std::to_string(cells.size()),
                     line_no);

  Grid<T> g(static_cast<std::int32_t>(nrows), static_cast<std::int32_t>(ncols), T{},
            nodata);
  std::size_t i = 0;
  for (std::int32_t r = 0; r < g.rows(); ++r)
    for (std::int32_t c = 0; c < g.cols(); ++c) g(r, c) = cells[i++];
  if (have_xll) g.set_georef(geo);
  return g;
}

///@brief Write a grid as an ESRI ASCII raster (one line per raster row).
template <class T>
void write_ascii_grid(const Grid<T>& g, std::ostream& out) {
  using Codec = detail::AsciiCellCodec<T>;
  out << "ncols " << g.cols() << "\n";
  out << "nrows " << g.rows() << "\n";
  if (g.georef()) {
    out << "xllcorner ";
    detail::AsciiCellCodec<double>::write(out, g.georef()->xllcorner);
    out << "\nyllcorner ";
    detail::AsciiCellCodec<double>::write(out, g.georef()->yllcorner);
    out << "\ncellsize ";
    detail::AsciiCellCodec<double>::write(out, g.georef()->cellsize);
    out << "\n";
  }
  out << "NODATA_value ";
  Codec::write(out, g.nodata());
  out << "\n";
  for (std::int32_t r = 0; r < g.rows(); ++r) {
    for (std::int32_t c = 0; c < g.cols(); ++c) {
      if (c) out << ' ';
      Codec::write(out, g(r, c));
    }
    out << "\n";
  }
}

///@brief Read a grid from a file. @throws IoError if the file cannot be opened.
template <class T>
Grid<T> read_ascii_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_ascii_grid<T>(in);
}

///@brief Write a grid to a file. @throws IoError if the file cannot be written.
template <class T>
void write_ascii_grid(const Grid<T>& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_ascii_grid(g, out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace flatres
