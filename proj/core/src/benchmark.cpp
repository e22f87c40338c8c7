#include "flatres/benchmark.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>

#include "flatres/errors.hpp"
#include "flatres/flat_resolution.hpp"
#include "flatres/flow_directions.hpp"
#include "flatres/gm_reference.hpp"
#include "flatres/synthetic.hpp"

namespace flatres {

std::string_view to_string(BenchAlgorithm algorithm) {
  switch (algorithm) {
    case BenchAlgorithm::Improved: return "improved";
    case BenchAlgorithm::GmReference: return "gm";
  }
  throw ContractViolation("to_string: invalid BenchAlgorithm");
}

std::optional<BenchAlgorithm> parse_bench_algorithm(std::string_view name) {
  if (name == "improved") return BenchAlgorithm::Improved;
  if (name == "gm") return BenchAlgorithm::GmReference;
  return std::nullopt;
}

namespace {

///One full pipeline run; returns the visit metric of the resolution stage.
///Throws NonconvergenceError through for the reference pipeline.
std::uint64_t run_pipeline(BenchAlgorithm algorithm, const Grid<double>& dem) {
  const Grid<Direction> dirs = d8_flow_directions(dem, EdgePolicy::EdgesDrainOutward);
  if (algorithm == BenchAlgorithm::Improved) {
    const ResolveResult res = resolve_flats(dem, dirs);
    const Grid<Direction> out = d8_masked_flow_directions(res.flatmask, res.labels, dirs);
    (void)out;
    return res.visits;
  }
  return gm_resolve_flats(dem, dirs).sweep_cell_visits;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

}  // namespace

BenchSummary run_benchmark(const std::vector<std::int32_t>& sides,
                           const std::vector<BenchAlgorithm>& algorithms, int repetitions) {
  if (repetitions < 3)
    throw ContractViolation("run_benchmark: repetitions must be >= 3, got " +
                            std::to_string(repetitions));
  if (sides.empty()) throw ContractViolation("run_benchmark: no sides given");
  if (algorithms.empty()) throw ContractViolation("run_benchmark: no algorithms given");
  for (const std::int32_t side : sides)
    if (side < 5)
      throw ContractViolation("run_benchmark: sides must be >= 5, got " + std::to_string(side));

  using Clock = std::chrono::steady_clock;
  BenchSummary summary;
  for (const BenchAlgorithm algorithm : algorithms) {
    for (const std::int32_t side : sides) {
      const Grid<double> dem = square_flat_dem(side);
      BenchRecord rec;
      rec.algorithm = algorithm;
      rec.side = side;
      rec.cells = dem.size();
      try {
        rec.visits = run_pipeline(algorithm, dem);  // untimed warmup
        double total = 0.0;
        for (int i = 0; i < repetitions; ++i) {
          const auto start = Clock::now();
          run_pipeline(algorithm, dem);
          total += std::chrono::duration<double>(Clock::now() - start).count();
        }
        rec.seconds = total / repetitions;
      } catch (const NonconvergenceError&) {
        rec.failed = true;
        rec.seconds = std::numeric_limits<double>::quiet_NaN();
      }
      summary.records.push_back(rec);
    }
  }

  for (const BenchAlgorithm algorithm : algorithms) {
    // Least-squares slope of ln(seconds) on ln(cells) over successful records.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const BenchRecord& rec : summary.records) {
      if (rec.algorithm != algorithm || rec.failed || !(rec.seconds > 0)) continue;
      const double x = std::log(static_cast<double>(rec.cells));
      const double y = std::log(rec.seconds);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    ExponentFit fit;
    fit.algorithm = algorithm;
    const double denom = n * sxx - sx * sx;
    fit.exponent = (n >= 2 && denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
    summary.exponents.push_back(fit);
  }
  return summary;
}

void write_bench_csv(const std::vector<BenchRecord>& records, std::ostream& out) {
  out << "algorithm,side,cells,seconds,visits\n";
  for (const BenchRecord& rec : records)
    out << to_string(rec.algorithm) << ',' << rec.side << ',' << rec.cells << ','
        << format_double(rec.seconds) << ',' << rec.visits << '\n';
}

void write_exponent_lines(const std::vector<ExponentFit>& fits, std::ostream& out) {
  for (const ExponentFit& fit : fits)
    out << to_string(fit.algorithm) << ',' << format_double(fit.exponent) << '\n';
}

}  // namespace flatres
