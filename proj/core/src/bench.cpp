#include "fastpinv/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <map>
#include <sstream>
#include <string>

#include "fastpinv/benchgen.hpp"
#include "fastpinv/geninv.hpp"
#include "fastpinv/matrix_io.hpp"

namespace fastpinv {
namespace {

using Clock = std::chrono::steady_clock;

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
T parse_field(std::string_view field, std::string_view name, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError("report csv, line " + std::to_string(line_no) + ": bad " +
                     std::string(name) + " '" + std::string(field) + "'");
  }
  return value;
}

std::optional<double> parse_optional(std::string_view field, std::string_view name,
                                     std::size_t line_no) {
  if (field.empty()) return std::nullopt;
  return parse_field<double>(field, name, line_no);
}

}  // namespace

void BenchSpec::validate() const {
  if (sizes.empty()) throw SpecError("BenchSpec: no sizes");
  if (algorithms.empty()) throw SpecError("BenchSpec: no algorithms");
  if (seeds.empty()) throw SpecError("BenchSpec: no seeds");
  if (repetitions < 1) throw SpecError("BenchSpec: repetitions must be >= 1");
  if (!(bound > 0.0)) throw SpecError("BenchSpec: bound must be positive");
  for (std::size_t n : sizes) MatrixFamilySpec::standard(n, 0).validate();
  options.tolerance.validate();
  options.greville.validate();
  options.iterative.validate();
  options.svd.validate();
}

bool BenchReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.pass; });
}

bool BenchReport::any_convergence_failure() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const BenchRow& r) { return r.error.has_value(); });
}

double median_seconds(std::vector<double> samples) {
  if (samples.empty()) throw SpecError("median_seconds: no samples");
  if (samples.size() >= 3) samples.erase(samples.begin());
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return 0.5 * (samples[mid - 1] + samples[mid]);
}

BenchReport run_bench(const BenchSpec& spec, const BenchProgress& progress) {
  spec.validate();
  const bool with_oracle =
      std::find(spec.algorithms.begin(), spec.algorithms.end(), PinvAlgorithm::svd) !=
      spec.algorithms.end();

  BenchReport report;
  for (std::size_t n : spec.sizes) {
    for (std::uint64_t seed : spec.seeds) {
      const MatrixFamilySpec family = MatrixFamilySpec::standard(n, seed);
      const Matrix g = random_rank_deficient(family).g;
      std::optional<Matrix> oracle;
      if (with_oracle) oracle = pinv_svd_reference(g, spec.options.svd);

      for (PinvAlgorithm algorithm : spec.algorithms) {
        BenchRow row;
        row.algorithm = algorithm;
        row.n = family.n;
        row.m = family.m;
        row.rank = family.rank;
        row.seed = seed;

        std::vector<double> times;
        std::optional<Matrix> x;
        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
          const auto start = Clock::now();
          try {
            if (algorithm == PinvAlgorithm::geninv) {
              GeninvResult r = geninv(g, spec.options.tolerance);
              times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
              row.diagnostics = GeninvDiagnostics{r.rank, r.gram_condition};
              x = std::move(r.pinv);
            } else {
              Matrix r = compute_pinv(algorithm, g, spec.options);
              times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
              x = std::move(r);
            }
          } catch (const ConvergenceError& e) {
            times.push_back(std::chrono::duration<double>(Clock::now() - start).count());
            row.error = e.what();
            x.reset();
            break;
          }
        }
        // Clock resolution can yield a zero sample on tiny inputs.
        row.median_seconds = std::max(median_seconds(times), 1e-9);

        if (x) {
          row.residuals = penrose_residuals(g, *x);
          row.pass = is_valid_pinv(*row.residuals, spec.bound);
          if (oracle) row.oracle_diff = max_abs(subtract(*x, *oracle));
        }
        if (progress) progress(row);
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

std::string emit_csv(const BenchReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const BenchRow& r : report.rows) {
    out += to_string(r.algorithm);
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.m);
    out += ',' + std::to_string(r.rank);
    out += ',' + std::to_string(r.seed);
    out += ',' + format_double(r.median_seconds, 6);
    if (r.residuals) {
      for (double v : {r.residuals->r1, r.residuals->r2, r.residuals->r3, r.residuals->r4}) {
        out += ',' + format_double(v);
      }
    } else {
      out += ",,,,";
    }
    out += r.pass ? ",true" : ",false";
    out += ',' + format_optional(r.oracle_diff);
    out += '\n';
  }
  return out;
}

BenchReport parse_csv(std::string_view text) {
  BenchReport report;
  std::size_t line_no = 0;
  bool seen_header = false;
  for (std::string_view rest = text; !rest.empty();) {
    const std::size_t eol = rest.find('\n');
    std::string_view line = rest.substr(0, eol);
    rest = eol == std::string_view::npos ? std::string_view() : rest.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!seen_header) {
      if (line != kCsvHeader) throw ParseError("report csv: unexpected header");
      seen_header = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 12) {
      throw ParseError("report csv, line " + std::to_string(line_no) + ": expected 12 fields");
    }
    BenchRow row;
    const auto algorithm = parse_algorithm(f[0]);
    if (!algorithm) {
      throw ParseError("report csv, line " + std::to_string(line_no) + ": unknown algorithm");
    }
    row.algorithm = *algorithm;
    row.n = parse_field<std::size_t>(f[1], "n", line_no);
    row.m = parse_field<std::size_t>(f[2], "m", line_no);
    row.rank = parse_field<std::size_t>(f[3], "rank", line_no);
    row.seed = parse_field<std::uint64_t>(f[4], "seed", line_no);
    row.median_seconds = parse_field<double>(f[5], "median_seconds", line_no);
    const auto r1 = parse_optional(f[6], "r1", line_no);
    const auto r2 = parse_optional(f[7], "r2", line_no);
    const auto r3 = parse_optional(f[8], "r3", line_no);
    const auto r4 = parse_optional(f[9], "r4", line_no);
    if (r1 && r2 && r3 && r4) {
      row.residuals = PenroseReport{*r1, *r2, *r3, *r4};
    } else if (r1 || r2 || r3 || r4) {
      throw ParseError("report csv, line " + std::to_string(line_no) + ": partial residuals");
    }
    if (f[10] == "true") {
      row.pass = true;
    } else if (f[10] != "false") {
      throw ParseError("report csv, line " + std::to_string(line_no) + ": bad pass flag");
    }
    row.oracle_diff = parse_optional(f[11], "oracle_diff", line_no);
    report.rows.push_back(std::move(row));
  }
  if (!seen_header) throw ParseError("report csv: missing header");
  return report;
}

std::string emit_markdown(const BenchReport& report, double bound) {
  std::vector<PinvAlgorithm> algorithms;
  std::vector<std::size_t> sizes;
  for (const BenchRow& r : report.rows) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
  }

  // (n, algorithm) -> per-seed medians; failed cells are tracked separately.
  std::map<std::pair<std::size_t, PinvAlgorithm>, std::vector<double>> times;
  std::map<std::pair<std::size_t, PinvAlgorithm>, bool> failed;
  double worst = 0.0;
  std::size_t failures = 0;
  for (const BenchRow& r : report.rows) {
    const auto key = std::make_pair(r.n, r.algorithm);
    if (r.error) {
      failed[key] = true;
    } else {
      times[key].push_back(r.median_seconds);
    }
    if (r.residuals) worst = std::max(worst, r.residuals->worst());
    if (!r.pass) ++failures;
  }

  std::ostringstream out;
  out << "| n |";
  for (PinvAlgorithm a : algorithms) out << ' ' << to_string(a) << " |";
  out << "\n|---:|";
  for (std::size_t i = 0; i < algorithms.size(); ++i) out << "---:|";
  out << '\n';
  for (std::size_t n : sizes) {
    out << "| " << n << " |";
    for (PinvAlgorithm a : algorithms) {
      const auto key = std::make_pair(n, a);
      auto it = times.find(key);
      if (failed.count(key) != 0) {
        out << " failed |";
      } else if (it == times.end()) {
        out << " - |";
      } else {
        std::vector<double> t = it->second;
        std::sort(t.begin(), t.end());
        const double med = t.size() % 2 == 1 ? t[t.size() / 2]
                                             : 0.5 * (t[t.size() / 2 - 1] + t[t.size() / 2]);
        out << ' ' << format_double(med, 4) << " |";
      }
    }
    out << '\n';
  }
  out << "\nMedian wall time in seconds. Largest Penrose residual over all cells: "
      << format_double(worst, 3) << " (bound " << format_double(bound, 3) << "); ";
  if (failures == 0) {
    out << "all cells pass.\n";
  } else {
    out << failures << " cell(s) fail.\n";
  }
  return out.str();
}

std::string emit_report(const BenchReport& report, ReportFormat format) {
  return format == ReportFormat::csv ? emit_csv(report) : emit_markdown(report);
}

}  // namespace fastpinv
