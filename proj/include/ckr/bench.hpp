#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ckr/error.hpp"

namespace ckr {

// One sampler run. Counters come straight from SamplerTrace; nothing here is
// estimated.
struct BenchRecord {
  std::string family;
  std::int64_t n = 0;
  std::int64_t m = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::uint64_t relaxations = 0;
  std::uint64_t queue_inserts = 0;

  double relax_per_edge() const { return m ? static_cast<double>(relaxations) / m : 0.0; }
  double inserts_per_vertex() const {
    return n ? static_cast<double>(queue_inserts) / n : 0.0;
  }
};

struct BenchReport {
  std::vector<BenchRecord> runs;
};

struct ScalingFit {
  double coefficient = 0.0;    // least-squares slope of relaxations vs m*log2 n
  double ratio_smallest = 0.0; // mean relaxations / (m log2 n) at the smallest size
  double ratio_largest = 0.0;  // same at the largest size
  bool flagged = false;        // largest ratio exceeds twice the smallest
};

// Audits near-linear work growth: fits mean relaxations per size against
// m*log2(n) and flags superlinear drift.
inline ScalingFit bench_scaling(const BenchReport& report) {
  std::map<std::int64_t, std::pair<double, double>> by_size;  // n -> (sum relax, count); m recorded separately
  std::map<std::int64_t, double> m_of;
  for (const BenchRecord& r : report.runs) {
    auto& acc = by_size[r.n];
    acc.first += static_cast<double>(r.relaxations);
    acc.second += 1.0;
    m_of[r.n] = static_cast<double>(r.m);
  }
  if (by_size.size() < 3) throw input_error("bench_scaling: need at least 3 sizes");

  ScalingFit fit;
  double sxy = 0.0, sxx = 0.0;
  std::vector<std::pair<std::int64_t, double>> ratios;
  for (const auto& [n, acc] : by_size) {
    const double mean_relax = acc.first / acc.second;
    const double x = m_of[n] * std::log2(static_cast<double>(n));
    sxy += x * mean_relax;
    sxx += x * x;
    ratios.push_back({n, mean_relax / x});
  }
  fit.coefficient = sxy / sxx;
  fit.ratio_smallest = ratios.front().second;
  fit.ratio_largest = ratios.back().second;
  fit.flagged = fit.ratio_largest > 2.0 * fit.ratio_smallest;
  return fit;
}

}  // namespace ckr
