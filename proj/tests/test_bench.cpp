#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ckr/bench.hpp"

using namespace ckr;

namespace {

BenchRecord record(std::int64_t n, std::int64_t m, std::uint64_t relax) {
  BenchRecord r;
  r.family = "synthetic";
  r.n = n;
  r.m = m;
  r.relaxations = relax;
  r.queue_inserts = relax / 2;
  return r;
}

}  // namespace

TEST_CASE("fit is clear when counts follow m log2 n") {
  BenchReport report;
  for (std::int64_t n : {1000, 10000, 100000}) {
    const std::int64_t m = 2 * n;
    const auto relax = static_cast<std::uint64_t>(3.0 * m * std::log2(double(n)));
    report.runs.push_back(record(n, m, relax));
    report.runs.push_back(record(n, m, relax + 5));
  }
  const ScalingFit fit = bench_scaling(report);
  CHECK_FALSE(fit.flagged);
  CHECK(fit.coefficient == Catch::Approx(3.0).epsilon(0.01));
}

TEST_CASE("fit flags quadratic growth") {
  BenchReport report;
  for (std::int64_t n : {1000, 10000, 100000}) {
    const std::int64_t m = 2 * n;
    report.runs.push_back(record(n, m, static_cast<std::uint64_t>(double(m) * m / 1e6)));
  }
  CHECK(bench_scaling(report).flagged);
}

TEST_CASE("fewer than three sizes is an error") {
  BenchReport report;
  report.runs.push_back(record(1000, 2000, 50000));
  report.runs.push_back(record(2000, 4000, 110000));
  CHECK_THROWS_AS(bench_scaling(report), input_error);
}

TEST_CASE("per-record normalized counters") {
  const BenchRecord r = record(100, 400, 800);
  CHECK(r.relax_per_edge() == 2.0);
  CHECK(r.inserts_per_vertex() == 4.0);
}
