// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fastpinv/algorithm.hpp"
#include "fastpinv/baselines.hpp"
#include "fastpinv/bench.hpp"
#include "fastpinv/benchgen.hpp"
#include "fastpinv/fullrank_cholesky.hpp"
#include "fastpinv/geninv.hpp"
#include "fastpinv/matrix_io.hpp"
#include "fastpinv/verify.hpp"
#include "support/oracles.hpp"

#ifndef FASTPINV_CLI_PATH
#error "FASTPINV_CLI_PATH must name the fastpinv executable"
#endif

namespace {

using fastpinv::BenchReport;
using fastpinv::BenchRow;
using fastpinv::Matrix;
using fastpinv::PinvAlgorithm;

namespace fs = std::filesystem;

const std::vector<std::size_t> kSizes = {32, 64, 128, 256};
const std::vector<std::uint64_t> kSeeds = {20060524, 20060525, 20060526, 20060527, 20060528};

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  if (!o.pass) ++failures;
  std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title;
  if (!o.detail.empty()) std::cout << "  [" << o.detail << "]";
  std::cout << std::endl;
}

std::string sci(double v) { return fastpinv::format_double(v, 3); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 == 1 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

// Median over seeds of the per-seed median time.
double cell_time(const BenchReport& r, PinvAlgorithm a, std::size_t n) {
  std::vector<double> t;
  for (const BenchRow& row : r.rows) {
    if (row.algorithm == a && row.n == n && !row.error) t.push_back(row.median_seconds);
  }
  return t.empty() ? 0.0 : median(t);
}

Outcome penrose_accuracy(const BenchReport& r) {
  Outcome o;
  double worst = 0.0;
  std::size_t failed = 0;
  for (const BenchRow& row : r.rows) {
    if (row.residuals) worst = std::max(worst, row.residuals->worst());
    if (!row.pass) {
      ++failed;
      o.pass = false;
      std::cout << "  fail: " << fastpinv::to_string(row.algorithm) << " n=" << row.n
                << " seed=" << row.seed
                << (row.residuals ? " worst=" + sci(row.residuals->worst()) : " " + *row.error)
                << '\n';
    }
  }
  o.detail = std::to_string(r.rows.size()) + " cells, " + std::to_string(failed) +
             " failing, largest residual " + sci(worst) + " vs 2e-10";
  return o;
}

Outcome oracle_equivalence(const BenchReport& r) {
  // oracle_diff is measured against the untimed SVD oracle for the same matrix.
  Outcome o;
  double worst_ratio = 0.0;
  std::map<std::pair<std::size_t, std::uint64_t>, double> oracle_scale;
  for (std::size_t n : kSizes) {
    for (std::uint64_t seed : kSeeds) {
      const Matrix g = fastpinv::random_rank_deficient(fastpinv::MatrixFamilySpec::standard(n, seed)).g;
      oracle_scale[{n, seed}] = std::max(1.0, fastpinv::max_abs(fastpinv::pinv_svd_reference(g)));
    }
  }
  for (const BenchRow& row : r.rows) {
    if (!row.oracle_diff) {
      o.pass = false;
      continue;
    }
    const double limit = 1e-8 * oracle_scale.at({row.n, row.seed});
    worst_ratio = std::max(worst_ratio, *row.oracle_diff / limit);
    if (*row.oracle_diff > limit) {
      o.pass = false;
      std::cout << "  fail: " << fastpinv::to_string(row.algorithm) << " n=" << row.n
                << " seed=" << row.seed << " diff=" << sci(*row.oracle_diff) << '\n';
    }
  }
  o.detail = "largest diff / bound = " + sci(worst_ratio);
  return o;
}

Outcome speed_ordering(const BenchReport& r) {
  Outcome o;
  const double t = cell_time(r, PinvAlgorithm::geninv, 256);
  std::ostringstream d;
  d << "n=256 geninv " << sci(t) << "s";
  for (PinvAlgorithm a : fastpinv::kAllAlgorithms) {
    if (a == PinvAlgorithm::geninv) continue;
    const double other = cell_time(r, a, 256);
    d << ", " << fastpinv::to_string(a) << ' ' << sci(other) << "s";
    if (!(t > 0.0 && t < other)) o.pass = false;
  }
  o.detail = d.str();
  return o;
}

Outcome cubic_scaling(const BenchReport& r) {
  const double t128 = cell_time(r, PinvAlgorithm::geninv, 128);
  const double t256 = cell_time(r, PinvAlgorithm::geninv, 256);
  const double ratio = t256 / t128;
  return {ratio >= 3.0 && ratio <= 20.0, "t(256)/t(128) = " + sci(ratio) + ", band [3, 20]"};
}

Outcome factorization_suite() {
  Outcome o;
  double worst_rel = 0.0;
  std::size_t rank_misses = 0;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Matrix g =
          fastpinv::random_rank_deficient(fastpinv::MatrixFamilySpec::standard(n, seed)).g;
      const Matrix a = fastpinv::gram(g, fastpinv::GramSide::left);
      const auto f = fastpinv::full_rank_cholesky(a);
      if (f.rank != 7 * n / 8) ++rank_misses;
      const Matrix llt = oracle::naive_matmul(f.factor, oracle::naive_transpose(f.factor));
      const double rel = oracle::max_diff(llt, a) / std::max(1.0, oracle::max_entry(a));
      worst_rel = std::max(worst_rel, rel);
    }
  }
  if (rank_misses != 0 || worst_rel > 1e-10) o.pass = false;

  const auto f1 = fastpinv::full_rank_cholesky(Matrix::from_rows({{1, 1}, {1, 1}}));
  const auto f2 = fastpinv::full_rank_cholesky(Matrix::from_rows({{4, 2}, {2, 2}}));
  const auto f3 = fastpinv::full_rank_cholesky(Matrix(3, 3));
  const bool examples = f1.rank == 1 &&
                        oracle::max_diff(f1.factor, Matrix::from_rows({{1}, {1}})) <= 1e-15 &&
                        f2.rank == 2 &&
                        oracle::max_diff(f2.factor, Matrix::from_rows({{2, 0}, {1, 1}})) <= 1e-15 &&
                        f3.rank == 0 && f3.factor.rows() == 3 && f3.factor.cols() == 0;
  if (!examples) o.pass = false;
  o.detail = "80 instances, rank misses " + std::to_string(rank_misses) +
             ", worst relative reconstruction " + sci(worst_rel) + ", hand examples " +
             (examples ? "exact" : "MISMATCH");
  return o;
}

Outcome minimum_norm() {
  Outcome o;
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = fastpinv::random_rank_deficient(fastpinv::MatrixFamilySpec::standard(32, seed));
    const Matrix f = oracle::random_matrix(s.g.rows(), 1, 1000 + seed);
    const Matrix w = fastpinv::solve_min_norm(s.g, f);
    const auto zs = oracle::null_vectors(s.c, 5);
    if (zs.size() != 5) o.pass = false;
    for (const Matrix& z : zs) {
      worst = std::max(worst, fastpinv::nullspace_orthogonality(s.g, w, z));
      ++checked;
    }
  }
  if (worst > 1e-8) o.pass = false;
  o.detail = std::to_string(checked) + " null vectors, largest |w'z|/(|w||z|) " + sci(worst);
  return o;
}

Outcome hand_fixtures() {
  struct Fixture {
    const char* name;
    Matrix g;
    Matrix expected;
  };
  const std::vector<Fixture> fixtures = {
      {"identity", fastpinv::identity(3), fastpinv::identity(3)},
      {"zero", Matrix(3, 2), Matrix(2, 3)},
      {"rank-one", Matrix::from_rows({{1, 2}, {2, 4}}), oracle::rank_one_pinv({1, 2}, {1, 2})},
      {"full-column-rank", Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}),
       oracle::normal_equations_pinv(Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}))},
      {"orthonormal-rows", Matrix::from_rows({{1, 0, 0}, {0, 1, 0}}),
       Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}})},
  };
  Outcome o;
  double worst = 0.0;
  for (const Fixture& f : fixtures) {
    for (PinvAlgorithm a : fastpinv::kAllAlgorithms) {
      const double d = oracle::max_diff(fastpinv::compute_pinv(a, f.g), f.expected);
      worst = std::max(worst, d);
      if (!(d <= 1e-12)) {
        o.pass = false;
        std::cout << "  fail: " << f.name << " with " << fastpinv::to_string(a) << " diff "
                  << sci(d) << '\n';
      }
    }
  }
  o.detail = "5 fixtures x 5 algorithms, largest diff " + sci(worst);
  return o;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + FASTPINV_CLI_PATH + "\" " + args;
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// r1..r4 columns of a bench CSV.
std::string residual_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() < 10) return "";
    out += f[0] + ',' + f[1] + ',' + f[4] + ',' + f[6] + ',' + f[7] + ',' + f[8] + ',' + f[9] + '\n';
  }
  return out;
}

Outcome determinism(const fs::path& dir) {
  Outcome o;
  const fs::path g1 = dir / "gen1.txt";
  const fs::path g2 = dir / "gen2.txt";
  const std::string gen = "gen --n 48 --m 96 --rank 42 --seed 7 --out ";
  const bool gen_ok = run(gen + g1.string()) == 0 && run(gen + g2.string()) == 0;
  const std::string a = slurp(g1);
  const bool gen_same = gen_ok && !a.empty() && a == slurp(g2);

  const fs::path b1 = dir / "bench1.csv";
  const fs::path b2 = dir / "bench2.csv";
  const std::string bench = "bench --sizes 32,64 --seeds 1,2 --reps 1 --out ";
  const bool bench_ok = run(bench + b1.string()) == 0 && run(bench + b2.string()) == 0;
  const std::string r1 = residual_columns(slurp(b1));
  const bool bench_same = bench_ok && !r1.empty() && r1 == residual_columns(slurp(b2));

  o.pass = gen_same && bench_same;
  o.detail = std::string("gen output ") + (gen_same ? "bit-identical" : "DIFFERS") +
             ", bench residual columns " + (bench_same ? "identical" : "DIFFER");
  return o;
}

Outcome cli_contract(const fs::path& dir) {
  Outcome o;
  int good = 0;
  int caught = 0;
  const int cases = 3;
  for (int s = 1; s <= cases; ++s) {
    const fs::path g = dir / ("g" + std::to_string(s) + ".txt");
    const fs::path x = dir / ("x" + std::to_string(s) + ".txt");
    const fs::path bad = dir / ("x" + std::to_string(s) + "_bad.txt");
    if (run("gen --n 32 --seed " + std::to_string(s) + " --out " + g.string()) != 0 ||
        run("pinv " + g.string() + " --out " + x.string()) != 0) {
      o.pass = false;
      continue;
    }
    if (run("verify " + g.string() + " " + x.string() + " > /dev/null") == 0) ++good;
    Matrix xm = fastpinv::load_matrix(x.string());
    xm(3, 5) += 1e-6;
    fastpinv::save_matrix(bad.string(), xm);
    if (run("verify " + g.string() + " " + bad.string() + " > /dev/null") == 1) ++caught;
  }
  if (good != cases || caught != cases) o.pass = false;
  o.detail = "exit 0 on " + std::to_string(good) + "/" + std::to_string(cases) +
             " exact pairs, exit 1 on " + std::to_string(caught) + "/" + std::to_string(cases) +
             " perturbed";
  return o;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("fastpinv_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  fastpinv::BenchSpec spec;
  spec.sizes = kSizes;
  spec.seeds = kSeeds;
  spec.repetitions = 5;
  std::cout << "running benchmark sweep: n = 32..256, 5 seeds, 5 algorithms, 5 repetitions"
            << std::endl;
  const BenchReport sweep = fastpinv::run_bench(spec);

  report(1, "Penrose residuals <= 2e-10 for every algorithm on the test family",
         penrose_accuracy(sweep));
  report(2, "every algorithm within 1e-8 * max(1, |X_svd|) of the SVD oracle",
         oracle_equivalence(sweep));
  report(3, "geninv fastest at n = 256", speed_ordering(sweep));
  report(4, "geninv scaling t(256)/t(128) in [3, 20]", cubic_scaling(sweep));
  report(5, "full-rank Cholesky reconstruction, rank recovery and hand examples",
         factorization_suite());
  report(6, "minimum-norm solutions orthogonal to the null space", minimum_norm());
  report(7, "hand-derived pseudoinverse fixtures for all algorithms", hand_fixtures());
  report(8, "gen and bench are deterministic", determinism(dir));
  report(9, "verify exit status on exact and perturbed n = 32 pairs", cli_contract(dir));

  std::error_code ec;
  fs::remove_all(dir, ec);
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
