#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fastpinv/algorithm.hpp"
#include "fastpinv/verify.hpp"

namespace fastpinv {

struct BenchSpec {
  std::vector<std::size_t> sizes = {32, 64, 128, 256};
  std::vector<PinvAlgorithm> algorithms = {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<std::uint64_t> seeds = {20060524};
  std::size_t repetitions = 5;
  double bound = kDefaultPenroseBound;
  AlgorithmOptions options;

  // Throws SpecError on empty sizes/algorithms/seeds, repetitions == 0,
  // bound <= 0, or a size too small for the standard family.
  void validate() const;
};

// Extra information recorded for geninv cells.
struct GeninvDiagnostics {
  std::size_t detected_rank = 0;
  double gram_condition = 0.0;
};

struct BenchRow {
  PinvAlgorithm algorithm = PinvAlgorithm::geninv;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t rank = 0;
  std::uint64_t seed = 0;
  double median_seconds = 0.0;
  std::optional<PenroseReport> residuals;  // empty when the algorithm failed
  bool pass = false;
  std::optional<double> oracle_diff;  // max |X - X_svd| when svd is selected
  std::optional<std::string> error;   // convergence failure message
  std::optional<GeninvDiagnostics> diagnostics;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  bool all_pass() const;
  bool any_convergence_failure() const;
};

// Median of the samples; with three or more, the first is dropped as a
// warm-up. Throws SpecError on an empty input.
double median_seconds(std::vector<double> samples);

using BenchProgress = std::function<void(const BenchRow&)>;

// Runs every (n, seed, algorithm) cell on the calling thread. Only the
// pseudoinverse call is timed. Convergence failures become failed rows.
BenchReport run_bench(const BenchSpec& spec, const BenchProgress& progress = {});

enum class ReportFormat { csv, markdown };

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,m,rank,seed,median_seconds,r1,r2,r3,r4,pass,oracle_diff";

std::string emit_report(const BenchReport& report, ReportFormat format);
std::string emit_csv(const BenchReport& report);
std::string emit_markdown(const BenchReport& report, double bound = kDefaultPenroseBound);

// Inverse of emit_csv; throws ParseError on malformed input.
BenchReport parse_csv(std::string_view text);

}  // namespace fastpinv
