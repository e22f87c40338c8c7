///Command-line front end: D8 flow directions, linear-time flat resolution,
///synthetic terrain generation, and the scaling benchmark.
///
///Exit codes: 0 success, 2 usage/contract/parse errors, 3 I/O errors,
///4 some flats were undrainable (outputs still written), 5 no flat was
///drainable.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "flatres/ascii_grid.hpp"
#include "flatres/benchmark.hpp"
#include "flatres/flat_resolution.hpp"
#include "flatres/flow_directions.hpp"
#include "flatres/synthetic.hpp"

namespace fs = std::filesystem;
using namespace flatres;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitSomeUndrainable = 4;
constexpr int kExitNoneDrainable = 5;

EdgePolicy parse_policy(const std::string& name) {
  return name == "pseudocode" ? EdgePolicy::AsPseudocode : EdgePolicy::EdgesDrainOutward;
}

void ensure_distinct(const std::string& input, const std::string& output) {
  if (output.empty()) return;
  if (fs::absolute(input).lexically_normal() == fs::absolute(output).lexically_normal())
    throw ContractViolation("output path '" + output + "' must differ from the input path");
}

///Raster rendition of an integer field: NoData cells of the source DEM become
///-1 so they stay distinguishable from the 0 of plain non-flat ground.
Grid<std::int32_t> with_nodata_holes(const Grid<std::int32_t>& field, const Grid<double>& dem) {
  Grid<std::int32_t> out = field;
  for (std::int32_t r = 0; r < out.rows(); ++r)
    for (std::int32_t c = 0; c < out.cols(); ++c)
      if (dem.is_nodata(r, c)) out(r, c) = -1;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D8 flow directions with linear-time flat resolution"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- flowdirs ---------------------------------------------------------
  auto* flowdirs_cmd = app.add_subcommand("flowdirs", "Assign D8 flow directions to a DEM");
  std::string fd_input, fd_output, fd_policy = "outward";
  flowdirs_cmd->add_option("input", fd_input, "Input DEM (.asc)")->required();
  flowdirs_cmd->add_option("output", fd_output, "Output direction raster (.asc)")->required();
  flowdirs_cmd->add_option("--edge-policy", fd_policy, "Boundary handling (default: outward)")
      ->check(CLI::IsMember({"outward", "pseudocode"}));
  flowdirs_cmd->callback([&] {
    ensure_distinct(fd_input, fd_output);
    const auto dem = read_ascii_grid<double>(fs::path(fd_input));
    write_ascii_grid(d8_flow_directions(dem, parse_policy(fd_policy)), fs::path(fd_output));
  });

  // --- resolve ----------------------------------------------------------
  auto* resolve_cmd =
      app.add_subcommand("resolve", "Resolve drainable flats and report what was found");
  std::string rs_input, rs_flatmask, rs_labels, rs_flowdirs, rs_alter, rs_policy = "outward";
  resolve_cmd->add_option("input", rs_input, "Input DEM (.asc)")->required();
  resolve_cmd->add_option("--flatmask", rs_flatmask, "Write the flat mask raster here");
  resolve_cmd->add_option("--labels", rs_labels, "Write the flat label raster here");
  resolve_cmd->add_option("--flowdirs", rs_flowdirs, "Write the final direction raster here");
  resolve_cmd->add_option("--alter", rs_alter,
                          "Write a DEM with the mask materialized as epsilon raises");
  resolve_cmd->add_option("--edge-policy", rs_policy, "Boundary handling (default: outward)")
      ->check(CLI::IsMember({"outward", "pseudocode"}));
  resolve_cmd->callback([&] {
    for (const std::string& out : {rs_flatmask, rs_labels, rs_flowdirs, rs_alter})
      ensure_distinct(rs_input, out);
    const auto dem = read_ascii_grid<double>(fs::path(rs_input));
    const auto dirs = d8_flow_directions(dem, parse_policy(rs_policy));
    const ResolveResult res = resolve_flats(dem, dirs);
    std::cout << format_report_line(res.report) << "\n";
    if (!rs_flatmask.empty())
      write_ascii_grid(with_nodata_holes(res.flatmask, dem), fs::path(rs_flatmask));
    if (!rs_labels.empty())
      write_ascii_grid(with_nodata_holes(res.labels, dem), fs::path(rs_labels));
    if (!rs_flowdirs.empty())
      write_ascii_grid(d8_masked_flow_directions(res.flatmask, res.labels, dirs),
                       fs::path(rs_flowdirs));
    if (!rs_alter.empty()) {
      const AlterResult altered = alter_dem(dem, res.flatmask, res.labels);
      std::cout << "significance_violations=" << altered.violations.size() << "\n";
      for (const CellIndex v : altered.violations)
        std::cout << "violation=" << v.row << "," << v.col << "\n";
      write_ascii_grid(altered.dem, fs::path(rs_alter));
    }
    if (res.report.outcome == ResolveOutcome::SomeUndrainable) exit_code = kExitSomeUndrainable;
    if (res.report.outcome == ResolveOutcome::NoneDrainable) exit_code = kExitNoneDrainable;
  });

  // --- gen ---------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic test terrain");
  gen_cmd->require_subcommand(1);

  auto* gen_square = gen_cmd->add_subcommand("square-flat", "Walled square flat with one outlet");
  std::int32_t gs_side = 0;
  std::string gs_output;
  gen_square->add_option("--side", gs_side, "Flat side length (>= 5)")->required();
  gen_square->add_option("output", gs_output, "Output DEM (.asc)")->required();
  gen_square->callback([&] { write_ascii_grid(square_flat_dem(gs_side), fs::path(gs_output)); });

  auto* gen_worked =
      gen_cmd->add_subcommand("worked-example", "The 7x7 walled flat used across the test suite");
  std::string gw_output;
  gen_worked->add_option("output", gw_output, "Output DEM (.asc)")->required();
  gen_worked->callback([&] { write_ascii_grid(worked_example_dem(), fs::path(gw_output)); });

  auto* gen_random = gen_cmd->add_subcommand("random", "Deterministic ramp-plus-noise terrain");
  std::int32_t gr_rows = 0, gr_cols = 0;
  std::uint64_t gr_seed = 1;
  double gr_flat_fraction = 0.25;
  std::string gr_output;
  gen_random->add_option("--rows", gr_rows, "Grid rows (>= 8)")->required();
  gen_random->add_option("--cols", gr_cols, "Grid columns (>= 8)")->required();
  gen_random->add_option("--seed", gr_seed, "Random seed (default: 1)");
  gen_random->add_option("--flat-fraction", gr_flat_fraction,
                         "Approximate share of flat cells in [0, 1] (default: 0.25)");
  gen_random->add_option("output", gr_output, "Output DEM (.asc)")->required();
  gen_random->callback([&] {
    write_ascii_grid(random_terrain_dem(gr_rows, gr_cols, gr_seed, gr_flat_fraction),
                     fs::path(gr_output));
  });

  // --- bench --------------------------------------------------------------
  auto* bench_cmd =
      app.add_subcommand("bench", "Time the pipelines on square flats of growing size");
  std::vector<std::int32_t> bn_sides;
  std::vector<std::string> bn_algorithms = {"improved", "gm"};
  int bn_reps = 5;
  std::string bn_csv;
  bench_cmd->add_option("--sides", bn_sides, "Flat side lengths, comma separated")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--algorithms", bn_algorithms, "improved,gm (default: both)")
      ->delimiter(',')
      ->check(CLI::IsMember({"improved", "gm"}));
  bench_cmd->add_option("--reps", bn_reps, "Timed repetitions per point (default: 5, min 3)");
  bench_cmd->add_option("--csv", bn_csv, "Write measurements to this CSV file instead of stdout");
  bench_cmd->callback([&] {
    std::vector<BenchAlgorithm> algorithms;
    for (const std::string& name : bn_algorithms)
      algorithms.push_back(*parse_bench_algorithm(name));
    const BenchSummary summary = run_benchmark(bn_sides, algorithms, bn_reps);
    if (bn_csv.empty()) {
      write_bench_csv(summary.records, std::cout);
    } else {
      std::ofstream out(bn_csv);
      if (!out) throw IoError("cannot open '" + bn_csv + "' for writing");
      write_bench_csv(summary.records, out);
      out.flush();
      if (!out) throw IoError("failed writing '" + bn_csv + "'");
    }
    write_exponent_lines(summary.exponents, std::cout);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
