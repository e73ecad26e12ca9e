#pragma once

#include <cstdint>
#include <vector>

#include "ckr/graph.hpp"
#include "ckr/hierarchy.hpp"
#include "ckr/rng.hpp"
#include "ckr/ultrametric.hpp"

namespace ckr {

// One draw from the probabilistic embedding into ultrametrics: a hierarchical
// partition of the whole vertex set, read off as a labeled tree. Samples never
// contract: nu(x,y) >= rho(x,y) holds exactly, by construction, and a
// violation is treated as a bug rather than clamped away.
inline UltrametricTree sample_frt(const WeightedGraph& g, const RandomSource& rng) {
  if (!is_connected(g)) throw input_error("frt: graph must be connected");
  HierarchySampler sampler(g);
  return hierarchy_to_ultrametric(sampler.sample_all(rng).tree);
}

inline UltrametricTree sample_frt(const HierarchySampler& sampler, const RandomSource& rng) {
  return hierarchy_to_ultrametric(sampler.sample_all(rng).tree);
}

struct PairStretch {
  VertexId x = 0, y = 0;
  double rho = 0.0;
  double mean_nu = 0.0;

  double mean_stretch() const { return mean_nu / rho; }
};

struct DistortionReport {
  VertexId n = 0;
  int samples = 0;
  std::vector<PairStretch> pairs;
  double empirical_d = 0.0;  // max over pairs of the mean stretch
};

// Mean per-pair stretch over repeated samples, against the exact metric.
inline DistortionReport empirical_distortion(const WeightedGraph& g, int samples,
                                             const RandomSource& rng) {
  if (samples <= 0) throw input_error("distortion: sample count must be positive");
  const VertexId n = g.vertex_count();
  const DistanceMatrix metric = exact_metric(g);
  HierarchySampler sampler(g);
  if (!is_connected(g)) throw input_error("frt: graph must be connected");

  DistortionReport report;
  report.n = n;
  report.samples = samples;
  std::vector<double> sum(static_cast<std::size_t>(n) * n, 0.0);
  for (int s = 0; s < samples; ++s) {
    const UltrametricTree t = sample_frt(sampler, rng.substream("frt-sample", s));
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = x + 1; y < n; ++y)
        sum[static_cast<std::size_t>(x) * n + y] += t.distance(x, y);
  }
  for (VertexId x = 0; x < n; ++x) {
    for (VertexId y = x + 1; y < n; ++y) {
      PairStretch p;
      p.x = x;
      p.y = y;
      p.rho = metric.at(x, y);
      p.mean_nu = sum[static_cast<std::size_t>(x) * n + y] / samples;
      report.pairs.push_back(p);
      report.empirical_d = std::max(report.empirical_d, p.mean_stretch());
    }
  }
  return report;
}

}  // namespace ckr
