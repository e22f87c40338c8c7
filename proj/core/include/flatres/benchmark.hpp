#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace flatres {

///Which pipeline a benchmark run exercises.
enum class BenchAlgorithm {
  Improved,     ///< d8_flow_directions + resolve_flats + d8_masked_flow_directions.
  GmReference,  ///< d8_flow_directions + gm_resolve_flats.
};

std::string_view to_string(BenchAlgorithm algorithm);
std::optional<BenchAlgorithm> parse_bench_algorithm(std::string_view name);

///One (algorithm, flat side) measurement.
struct BenchRecord {
  BenchAlgorithm algorithm = BenchAlgorithm::Improved;
  std::int32_t side = 0;     ///< Flat side length (grid is side+2 squared).
  std::int64_t cells = 0;    ///< Total grid cells.
  double seconds = 0.0;      ///< Mean wall time across repetitions.
  std::uint64_t visits = 0;  ///< Pipeline visit counter (see module docs).
  bool failed = false;       ///< Reference resolver failed to converge.
};

///Least-squares slope of log(seconds) against log(cells) for one algorithm.
struct ExponentFit {
  BenchAlgorithm algorithm = BenchAlgorithm::Improved;
  double exponent = 0.0;
};

struct BenchSummary {
  std::vector<BenchRecord> records;
  std::vector<ExponentFit> exponents;
};

///@brief Time both pipelines on square flats of the given sides.
///
///For each algorithm and side, builds square_flat_dem(side), performs one
///untimed warmup, then runs flow directions + flat resolution `repetitions`
///times and records the mean wall time. Nonconvergence of the reference
///resolver marks the record failed instead of aborting the sweep. Scaling
///exponents are fitted per algorithm over its successful records.
///
///@pre repetitions >= 3; every side >= 5.
BenchSummary run_benchmark(const std::vector<std::int32_t>& sides,
                           const std::vector<BenchAlgorithm>& algorithms,
                           int repetitions);

///@brief Render records as CSV with header `algorithm,side,cells,seconds,visits`.
///
///Failed records carry `nan` in the seconds column.
void write_bench_csv(const std::vector<BenchRecord>& records, std::ostream& out);

///@brief Render exponent fits, one `algorithm,exponent` line each.
void write_exponent_lines(const std::vector<ExponentFit>& fits, std::ostream& out);

}  // namespace flatres
