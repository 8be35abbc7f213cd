#include <string>

#include <gtest/gtest.h>

#include "fastpinv/bench.hpp"
#include "fastpinv/errors.hpp"
#include "support/oracles.hpp"

namespace {

using fastpinv::BenchReport;
using fastpinv::BenchRow;
using fastpinv::BenchSpec;
using fastpinv::PinvAlgorithm;

BenchSpec small_spec() {
  BenchSpec spec;
  spec.sizes = {32};
  spec.algorithms = {PinvAlgorithm::geninv};
  spec.seeds = {1};
  spec.repetitions = 1;
  return spec;
}

BenchRow sample_row() {
  BenchRow r;
  r.algorithm = PinvAlgorithm::gso_qr;
  r.n = 32;
  r.m = 64;
  r.rank = 28;
  r.seed = 5;
  r.median_seconds = 0.000123456;
  r.residuals = fastpinv::PenroseReport{1.25e-13, 3e-14, 0.0, 7e-15};
  r.pass = true;
  r.oracle_diff = 4.5e-12;
  return r;
}

TEST(MedianSeconds, DropsWarmupFromThreeSamples) {
  EXPECT_EQ(fastpinv::median_seconds({5.0}), 5.0);
  EXPECT_EQ(fastpinv::median_seconds({5.0, 1.0}), 3.0);
  EXPECT_EQ(fastpinv::median_seconds({100.0, 2.0, 4.0}), 3.0);
  EXPECT_EQ(fastpinv::median_seconds({100.0, 3.0, 1.0, 2.0}), 2.0);
  EXPECT_THROW(fastpinv::median_seconds({}), fastpinv::SpecError);
}

TEST(RunBench, SingleCell) {
  const BenchReport r = fastpinv::run_bench(small_spec());
  ASSERT_EQ(r.rows.size(), 1u);
  const BenchRow& row = r.rows[0];
  EXPECT_EQ(row.algorithm, PinvAlgorithm::geninv);
  EXPECT_EQ(row.n, 32u);
  EXPECT_EQ(row.m, 64u);
  EXPECT_EQ(row.rank, 28u);
  EXPECT_TRUE(row.pass);
  EXPECT_GT(row.median_seconds, 0.0);
  ASSERT_TRUE(row.diagnostics.has_value());
  EXPECT_EQ(row.diagnostics->detected_rank, 28u);
  EXPECT_FALSE(row.oracle_diff.has_value());
}

TEST(RunBench, AllAlgorithmsAgree) {
  BenchSpec spec = small_spec();
  spec.algorithms = {fastpinv::kAllAlgorithms.begin(), fastpinv::kAllAlgorithms.end()};
  int calls = 0;
  const BenchReport r = fastpinv::run_bench(spec, [&calls](const BenchRow&) { ++calls; });
  EXPECT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(calls, 5);
  EXPECT_TRUE(r.all_pass());
  EXPECT_FALSE(r.any_convergence_failure());
  for (const BenchRow& row : r.rows) {
    ASSERT_TRUE(row.oracle_diff.has_value());
    EXPECT_LE(*row.oracle_diff, 1e-8);
  }
}

TEST(RunBench, ConvergenceFailureBecomesFailedRow) {
  BenchSpec spec = small_spec();
  spec.algorithms = {PinvAlgorithm::hyperpower};
  spec.options.iterative.max_sweeps = 1;
  const BenchReport r = fastpinv::run_bench(spec);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_TRUE(r.rows[0].error.has_value());
  EXPECT_FALSE(r.rows[0].pass);
  EXPECT_FALSE(r.rows[0].residuals.has_value());
  EXPECT_TRUE(r.any_convergence_failure());
}

TEST(RunBench, ResidualsAreDeterministic) {
  BenchSpec spec = small_spec();
  spec.algorithms = {PinvAlgorithm::geninv, PinvAlgorithm::greville};
  const BenchReport a = fastpinv::run_bench(spec);
  const BenchReport b = fastpinv::run_bench(spec);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].residuals, b.rows[i].residuals);
}

TEST(BenchSpec, Validation) {
  BenchSpec spec = small_spec();
  spec.algorithms.clear();
  EXPECT_THROW(fastpinv::run_bench(spec), fastpinv::SpecError);
  spec = small_spec();
  spec.sizes.clear();
  EXPECT_THROW(spec.validate(), fastpinv::SpecError);
  spec = small_spec();
  spec.seeds.clear();
  EXPECT_THROW(spec.validate(), fastpinv::SpecError);
  spec = small_spec();
  spec.repetitions = 0;
  EXPECT_THROW(spec.validate(), fastpinv::SpecError);
  spec = small_spec();
  spec.bound = 0.0;
  EXPECT_THROW(spec.validate(), fastpinv::SpecError);
}

TEST(EmitCsv, EmptyReportIsHeaderOnly) {
  EXPECT_EQ(fastpinv::emit_csv({}), std::string(fastpinv::kCsvHeader) + "\n");
}

TEST(EmitCsv, OneRowInDeclaredOrder) {
  BenchReport r;
  r.rows.push_back(sample_row());
  EXPECT_EQ(fastpinv::emit_csv(r),
            std::string(fastpinv::kCsvHeader) +
                "\ngso-qr,32,64,28,5,0.000123456,1.25e-13,2.9999999999999998e-14,0,"
                "7.0000000000000001e-15,true,4.4999999999999998e-12\n");
}

TEST(EmitCsv, FailedRowLeavesOptionalFieldsEmpty) {
  BenchReport r;
  BenchRow row = sample_row();
  row.residuals.reset();
  row.oracle_diff.reset();
  row.pass = false;
  row.error = "no convergence";
  r.rows.push_back(row);
  EXPECT_EQ(fastpinv::emit_csv(r),
            std::string(fastpinv::kCsvHeader) + "\ngso-qr,32,64,28,5,0.000123456,,,,,false,\n");
}

TEST(ParseCsv, RoundTrip) {
  BenchReport r;
  r.rows.push_back(sample_row());
  BenchRow second = sample_row();
  second.algorithm = PinvAlgorithm::hyperpower;
  second.residuals.reset();
  second.oracle_diff.reset();
  second.pass = false;
  r.rows.push_back(second);
  const BenchReport back = fastpinv::parse_csv(fastpinv::emit_csv(r));
  ASSERT_EQ(back.rows.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(back.rows[i].algorithm, r.rows[i].algorithm);
    EXPECT_EQ(back.rows[i].n, r.rows[i].n);
    EXPECT_EQ(back.rows[i].m, r.rows[i].m);
    EXPECT_EQ(back.rows[i].rank, r.rows[i].rank);
    EXPECT_EQ(back.rows[i].seed, r.rows[i].seed);
    EXPECT_EQ(back.rows[i].median_seconds, r.rows[i].median_seconds);
    EXPECT_EQ(back.rows[i].residuals, r.rows[i].residuals);
    EXPECT_EQ(back.rows[i].pass, r.rows[i].pass);
    EXPECT_EQ(back.rows[i].oracle_diff, r.rows[i].oracle_diff);
  }
  EXPECT_EQ(fastpinv::emit_csv(back), fastpinv::emit_csv(r));
}

TEST(ParseCsv, RejectsMalformed) {
  const std::string header(fastpinv::kCsvHeader);
  EXPECT_THROW(fastpinv::parse_csv(""), fastpinv::ParseError);
  EXPECT_THROW(fastpinv::parse_csv("algo,n\n"), fastpinv::ParseError);
  EXPECT_THROW(fastpinv::parse_csv(header + "\ngeninv,32\n"), fastpinv::ParseError);
  EXPECT_THROW(fastpinv::parse_csv(header + "\nlu,32,64,28,1,0.1,,,,,false,\n"),
               fastpinv::ParseError);
  EXPECT_THROW(fastpinv::parse_csv(header + "\ngeninv,32,64,28,1,0.1,1,,,,false,\n"),
               fastpinv::ParseError);
  EXPECT_THROW(fastpinv::parse_csv(header + "\ngeninv,32,64,28,1,0.1,,,,,maybe,\n"),
               fastpinv::ParseError);
}

TEST(EmitMarkdown, AlgorithmsAsColumnsSizesAsRows) {
  BenchReport r;
  for (std::size_t n : {32u, 64u}) {
    for (PinvAlgorithm a : {PinvAlgorithm::geninv, PinvAlgorithm::svd}) {
      BenchRow row = sample_row();
      row.algorithm = a;
      row.n = n;
      row.median_seconds = n == 32 ? 0.5 : 0.25;
      r.rows.push_back(row);
    }
  }
  const std::string md = fastpinv::emit_markdown(r);
  EXPECT_NE(md.find("| n | geninv | svd |"), std::string::npos);
  EXPECT_NE(md.find("| 32 | 0.5 | 0.5 |"), std::string::npos);
  EXPECT_NE(md.find("| 64 | 0.25 | 0.25 |"), std::string::npos);
  EXPECT_NE(md.find("all cells pass"), std::string::npos);
  EXPECT_EQ(md, fastpinv::emit_report(r, fastpinv::ReportFormat::markdown));
}

TEST(EmitMarkdown, MarksFailedCells) {
  BenchReport r;
  BenchRow row = sample_row();
  row.error = "no convergence";
  row.residuals.reset();
  row.pass = false;
  r.rows.push_back(row);
  const std::string md = fastpinv::emit_markdown(r);
  EXPECT_NE(md.find("| 32 | failed |"), std::string::npos);
  EXPECT_NE(md.find("1 cell(s) fail"), std::string::npos);
}

}  // namespace
