#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ckr/graph.hpp"
#include "ckr/rng.hpp"

namespace ckr {

// A Delta-bounded partition sampled by the random-permutation / random-radius
// scheme: each vertex joins the first center (in permutation order) within
// distance R. Block ids are 1-based center ranks, not compacted. Rank 0 means
// "not captured", which can only happen when centers are a strict subset of
// the vertices.
struct Partition {
  std::vector<std::int32_t> block;
  std::vector<VertexId> centers;
  double radius = 0.0;
  double scale = 0.0;

  std::int32_t rank_of(VertexId v) const { return block[v]; }
};

// Work counters and the residual distance array of the graph sampler.
// relaxations counts every edge update attempt delta(v) <- min(delta(v),
// delta(u)+w); queue_inserts counts first insertions only, stale heap entries
// count as neither insert nor extraction. final_delta(v) is the distance to
// the closest center when that distance is at most R and unreached otherwise;
// tentative estimates that leaked past the radius carry no meaning and are
// reported as unreached.
struct SamplerTrace {
  std::uint64_t relaxations = 0;
  std::uint64_t queue_inserts = 0;
  std::vector<double> final_delta;
};

// Called after each center iteration with the residual delta array; used by
// tests to audit the per-iteration semantics.
using DeltaObserver = std::function<void(std::size_t iteration, std::span<const double> delta)>;

inline void validate_radius(double delta, double radius) {
  if (!(delta > 0)) throw input_error("scale must be positive");
  if (!(radius >= delta / 4.0 && radius <= delta / 2.0))
    throw input_error("radius must lie in [delta/4, delta/2]");
}

// Reference sampler on an explicit metric: block(v) = min{ i : dist(pi(i), v)
// <= R }. Quadratic; used as the test oracle for the graph sampler.
inline Partition ckr_partition_metric(const DistanceMatrix& dist, double delta,
                                      std::span<const VertexId> order, double radius) {
  validate_radius(delta, radius);
  const VertexId n = dist.n;
  Partition p;
  p.block.assign(n, 0);
  p.centers.assign(order.begin(), order.end());
  p.radius = radius;
  p.scale = delta;
  for (VertexId v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (dist.at(order[i], v) <= radius) {
        p.block[v] = static_cast<std::int32_t>(i) + 1;
        break;
      }
    }
    CKR_CHECK(order.size() < static_cast<std::size_t>(n) || p.block[v] != 0,
              "metric sampler: vertex not captured by any center");
  }
  return p;
}

namespace detail {

// One pass of the truncated multi-source Dijkstra. The residual array delta
// is shared across center iterations and never reinitialized, so an edge is
// relaxed in iteration i only while the i-th center is the closest one seen
// so far. That keeps the total work near-linear regardless of how many
// centers there are.
inline std::pair<Partition, SamplerTrace> ckr_run(const WeightedGraph& g, double delta,
                                                  std::span<const VertexId> centers,
                                                  double radius,
                                                  const DeltaObserver& observer = {}) {
  validate_radius(delta, radius);
  const VertexId n = g.vertex_count();
  Partition part;
  part.block.assign(n, 0);
  part.centers.assign(centers.begin(), centers.end());
  part.radius = radius;
  part.scale = delta;
  SamplerTrace trace;

  std::vector<double> residual(n, kUnreached);
  std::vector<std::uint32_t> inqueue(n, 0);  // epoch stamp: i+1 while queued in iteration i
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;

  for (std::size_t i = 0; i < centers.size(); ++i) {
    const VertexId center = centers[i];
    if (center < 0 || center >= n) throw input_error("center out of range");
    const std::uint32_t epoch = static_cast<std::uint32_t>(i) + 1;
    const std::int32_t rank = static_cast<std::int32_t>(i) + 1;
    residual[center] = 0.0;
    while (!queue.empty()) queue.pop();

    VertexId w = center;
    double dw = 0.0;
    for (;;) {
      if (part.block[w] == 0) part.block[w] = rank;
      for (const auto& arc : g.arcs(w)) {
        ++trace.relaxations;
        const double nd = dw + arc.w;
        if (nd < residual[arc.to]) {
          residual[arc.to] = nd;
          if (inqueue[arc.to] != epoch) {
            inqueue[arc.to] = epoch;
            ++trace.queue_inserts;
          }
          queue.push({nd, arc.to});
        }
      }
      bool have = false;
      while (!queue.empty()) {
        const auto [d, v] = queue.top();
        queue.pop();
        if (inqueue[v] != epoch) continue;   // extracted earlier in this iteration
        if (d != residual[v]) continue;      // superseded by a decrease
        inqueue[v] = 0;
        w = v;
        dw = d;
        have = true;
        break;
      }
      if (!have || dw > radius) break;
    }
    if (observer) {
      std::vector<double> view(residual);
      for (double& d : view)
        if (d > radius) d = kUnreached;
      observer(i, view);
    }
  }

  for (double& d : residual)
    if (d > radius) d = kUnreached;
  trace.final_delta = std::move(residual);
  return {std::move(part), std::move(trace)};
}

}  // namespace detail

// Graph sampler with supplied permutation and radius; deterministic entry
// point for testing. The permutation must cover all vertices.
inline std::pair<Partition, SamplerTrace> ckr_partition_graph_with(
    const WeightedGraph& g, double delta, std::span<const VertexId> order, double radius,
    const DeltaObserver& observer = {}) {
  const VertexId n = g.vertex_count();
  if (order.size() != static_cast<std::size_t>(n))
    throw input_error("permutation size mismatch");
  std::vector<char> seen(n, 0);
  for (VertexId v : order) {
    if (v < 0 || v >= n || seen[v]) throw input_error("order is not a permutation");
    seen[v] = 1;
  }
  auto result = detail::ckr_run(g, delta, order, radius, observer);
  for (VertexId v = 0; v < n; ++v)
    CKR_CHECK(result.first.block[v] != 0, "graph sampler: vertex not captured");
  return result;
}

// Samples the permutation (Knuth shuffle) and R uniform in [delta/4, delta/2],
// then runs the graph sampler.
inline std::pair<Partition, SamplerTrace> ckr_partition_graph(const WeightedGraph& g,
                                                              double delta,
                                                              RandomSource& rng) {
  if (!(delta > 0)) throw input_error("scale must be positive");
  std::vector<VertexId> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  const double radius = rng.uniform(delta / 4.0, delta / 2.0);
  return ckr_partition_graph_with(g, delta, order, radius);
}

// Center-subset variant used by the hierarchical pipeline: only the listed
// vertices become centers, in the order given. Vertices farther than R from
// every center keep rank 0.
inline std::pair<Partition, SamplerTrace> ckr_partition_graph_centers(
    const WeightedGraph& g, double delta, std::span<const VertexId> centers, double radius,
    const DeltaObserver& observer = {}) {
  return detail::ckr_run(g, delta, centers, radius, observer);
}

// One line per vertex "v rank" after a labeled header line.
inline void write_partition(std::ostream& out, const Partition& p, std::uint64_t seed) {
  out << "delta ";
  write_double(out, p.scale);
  out << " R ";
  write_double(out, p.radius);
  out << " seed " << seed << "\n";
  for (std::size_t v = 0; v < p.block.size(); ++v)
    out << v << ' ' << p.block[v] << "\n";
}

}  // namespace ckr
