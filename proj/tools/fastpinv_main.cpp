// fastpinv: pseudoinverse computation, verification and benchmarking.
//
// Exit status: 0 success / all pass, 1 verification failure, 2 usage or I/O
// error, 3 convergence failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fastpinv/algorithm.hpp"
#include "fastpinv/bench.hpp"
#include "fastpinv/benchgen.hpp"
#include "fastpinv/geninv.hpp"
#include "fastpinv/matrix_io.hpp"
#include "fastpinv/verify.hpp"

namespace {

using namespace fastpinv;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << text;
}

struct PinvArgs {
  std::string input;
  std::string algorithm = "geninv";
  std::string out;
  bool verbose = false;
};

int run_pinv(const PinvArgs& args) {
  const auto algorithm = parse_algorithm(args.algorithm);
  if (!algorithm) {
    std::cerr << "unknown algorithm '" << args.algorithm << "'\n";
    return kExitUsage;
  }
  const Matrix g = load_matrix(args.input);
  Matrix x;
  if (*algorithm == PinvAlgorithm::geninv) {
    GeninvResult r = geninv(g);
    if (args.verbose) {
      std::cerr << "detected rank: " << r.rank << "\n"
                << "pivot tolerance: " << format_double(r.tolerance, 6) << "\n"
                << "cond_1(L'L): " << format_double(r.gram_condition, 6) << "\n"
                << "factored: " << (r.transposed ? "GG'" : "G'G") << "\n";
    }
    x = std::move(r.pinv);
  } else {
    x = compute_pinv(*algorithm, g);
  }
  if (args.verbose) {
    const PenroseReport rep = penrose_residuals(g, x);
    std::cerr << "max|G|: " << format_double(max_abs(g), 6) << "\n"
              << "penrose residuals: " << format_double(rep.r1, 3) << ' '
              << format_double(rep.r2, 3) << ' ' << format_double(rep.r3, 3) << ' '
              << format_double(rep.r4, 3) << "\n";
  }
  write_output(args.out, format_matrix(x));
  return kExitOk;
}

struct GenArgs {
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::optional<std::size_t> rank;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& args) {
  MatrixFamilySpec spec = MatrixFamilySpec::standard(args.n, args.seed);
  if (args.m) spec.m = *args.m;
  if (args.rank) spec.rank = *args.rank;
  write_output(args.out, format_matrix(random_rank_deficient(spec).g));
  return kExitOk;
}

struct BenchArgs {
  std::vector<std::size_t> sizes = {32, 64, 128, 256};
  std::vector<std::string> algorithms = {"geninv", "greville", "gso-qr", "hyperpower", "svd"};
  std::vector<std::uint64_t> seeds = {20060524};
  std::size_t reps = 5;
  std::string format = "csv";
  double bound = kDefaultPenroseBound;
  bool verbose = false;
  std::string out;
};

int run_bench_command(const BenchArgs& args) {
  BenchSpec spec;
  spec.sizes = args.sizes;
  spec.seeds = args.seeds;
  spec.repetitions = args.reps;
  spec.bound = args.bound;
  spec.algorithms.clear();
  for (const std::string& name : args.algorithms) {
    const auto a = parse_algorithm(name);
    if (!a) {
      std::cerr << "unknown algorithm '" << name << "'\n";
      return kExitUsage;
    }
    spec.algorithms.push_back(*a);
  }
  ReportFormat format;
  if (args.format == "csv") {
    format = ReportFormat::csv;
  } else if (args.format == "markdown") {
    format = ReportFormat::markdown;
  } else {
    std::cerr << "unknown format '" << args.format << "'\n";
    return kExitUsage;
  }

  BenchProgress progress;
  if (args.verbose) {
    progress = [](const BenchRow& row) {
      std::cerr << to_string(row.algorithm) << " n=" << row.n << " seed=" << row.seed
                << " median=" << format_double(row.median_seconds, 4) << "s";
      if (row.residuals) std::cerr << " worst=" << format_double(row.residuals->worst(), 3);
      if (row.diagnostics) {
        std::cerr << " rank=" << row.diagnostics->detected_rank
                  << " cond(L'L)=" << format_double(row.diagnostics->gram_condition, 4);
      }
      if (row.error) std::cerr << " error: " << *row.error;
      std::cerr << '\n';
    };
  }

  const BenchReport report = run_bench(spec, progress);
  if (format == ReportFormat::markdown) {
    write_output(args.out, emit_markdown(report, spec.bound));
  } else {
    write_output(args.out, emit_csv(report));
  }
  if (report.any_convergence_failure()) return kExitConvergence;
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

struct VerifyArgs {
  std::string g_path;
  std::string x_path;
  double bound = kDefaultPenroseBound;
};

int run_verify(const VerifyArgs& args) {
  const Matrix g = load_matrix(args.g_path);
  const Matrix x = load_matrix(args.x_path);
  const PenroseReport rep = penrose_residuals(g, x);
  const bool ok = is_valid_pinv(rep, args.bound);
  std::cout << "r1 " << format_double(rep.r1, 6) << "\n"
            << "r2 " << format_double(rep.r2, 6) << "\n"
            << "r3 " << format_double(rep.r3, 6) << "\n"
            << "r4 " << format_double(rep.r4, 6) << "\n"
            << "max_abs_g " << format_double(max_abs(g), 6) << "\n"
            << (ok ? "PASS" : "FAIL") << " (bound " << format_double(args.bound, 3) << ")\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moore-Penrose pseudoinverse via full-rank Cholesky, with baselines and benchmark"};
  app.require_subcommand(1);

  PinvArgs pinv_args;
  auto* pinv = app.add_subcommand("pinv", "Compute the pseudoinverse of a matrix file");
  pinv->add_option("infile", pinv_args.input, "Matrix text file")->required();
  pinv->add_option("--algorithm", pinv_args.algorithm,
                   "geninv | greville | gso-qr | hyperpower | svd");
  pinv->add_option("--out", pinv_args.out, "Output file (default stdout)");
  pinv->add_flag("--verbose", pinv_args.verbose, "Print rank and L'L condition to stderr");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a random rank-deficient test matrix");
  gen->add_option("--n", gen_args.n, "Column count")->required();
  gen->add_option("--m", gen_args.m, "Row count (default 2n)");
  gen->add_option("--rank", gen_args.rank, "Rank (default floor(7n/8))");
  gen->add_option("--seed", gen_args.seed, "Generator seed")->required();
  gen->add_option("--out", gen_args.out, "Output file (default stdout)");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time and verify algorithms on the test family");
  bench->add_option("--sizes", bench_args.sizes, "Comma-separated n values")->delimiter(',');
  bench->add_option("--algorithms", bench_args.algorithms, "Comma-separated algorithm names")
      ->delimiter(',');
  bench->add_option("--seeds", bench_args.seeds, "Comma-separated seeds")->delimiter(',');
  bench->add_option("--reps", bench_args.reps, "Repetitions per cell (median reported)");
  bench->add_option("--format", bench_args.format, "csv | markdown");
  bench->add_option("--bound", bench_args.bound, "Penrose residual bound");
  bench->add_option("--out", bench_args.out, "Output file (default stdout)");
  bench->add_flag("--verbose", bench_args.verbose, "Per-cell progress and diagnostics on stderr");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Check the four Penrose conditions");
  verify->add_option("g-file", verify_args.g_path, "Matrix G")->required();
  verify->add_option("x-file", verify_args.x_path, "Candidate pseudoinverse")->required();
  verify->add_option("--bound", verify_args.bound, "Per-coefficient residual bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pinv) return run_pinv(pinv_args);
    if (*gen) return run_gen(gen_args);
    if (*bench) return run_bench_command(bench_args);
    if (*verify) return run_verify(verify_args);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const fastpinv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
