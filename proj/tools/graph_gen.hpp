#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ckr/error.hpp"
#include "ckr/graph.hpp"
#include "ckr/rng.hpp"

namespace ckr::gen {

inline WeightedGraph cycle(VertexId n, double w = 1.0) {
  if (n < 3) throw input_error("cycle: need at least 3 vertices");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (VertexId v = 0; v < n; ++v) edges.push_back({v, static_cast<VertexId>((v + 1) % n), w});
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph path(VertexId n, double w = 1.0) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, static_cast<VertexId>(v + 1), w});
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph grid(VertexId rows, VertexId cols, double w = 1.0) {
  const VertexId n = rows * cols;
  std::vector<Edge> edges;
  auto id = [cols](VertexId r, VertexId c) { return r * cols + c; };
  for (VertexId r = 0; r < rows; ++r)
    for (VertexId c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1), w});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c), w});
    }
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph complete(VertexId n, double w = 1.0) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, w});
  return WeightedGraph(n, std::move(edges));
}

// Configuration-model d-regular graph: pair stubs, retry until simple.
inline WeightedGraph random_regular(VertexId n, int d, RandomSource& rng, double w = 1.0) {
  if ((static_cast<std::int64_t>(n) * d) % 2 != 0)
    throw input_error("random_regular: n*d must be even");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<VertexId> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (VertexId v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::vector<Edge> edges;
    edges.reserve(stubs.size() / 2);
    std::vector<std::uint64_t> seen;
    seen.reserve(stubs.size() / 2);
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      VertexId a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      seen.push_back((static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b));
      edges.push_back({a, b, w});
    }
    if (!simple) continue;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) continue;
    return WeightedGraph(n, std::move(edges));
  }
  throw internal_error("random_regular: no simple pairing found");
}

// Points in the unit square joined within the given radius, weighted by
// Euclidean distance.
inline WeightedGraph random_geometric(VertexId n, double radius, RandomSource& rng) {
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {rng.next_double(), rng.next_double()};
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      const double dx = pts[u].first - pts[v].first;
      const double dy = pts[u].second - pts[v].second;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d <= radius && d > 0) edges.push_back({u, v, d});
    }
  return WeightedGraph(n, std::move(edges));
}

// Random spanning tree plus extra edges; weights drawn from a dyadic grid so
// path sums stay exact in floating point.
inline WeightedGraph random_connected(VertexId n, std::size_t extra_edges, RandomSource& rng,
                                      double weight_lo = 0.25, double weight_hi = 4.0) {
  std::vector<Edge> edges;
  auto weight = [&] {
    const int steps = static_cast<int>((weight_hi - weight_lo) / 0.25);
    return weight_lo + 0.25 * static_cast<double>(rng.next_below(steps + 1));
  };
  for (VertexId v = 1; v < n; ++v) {
    const VertexId u = static_cast<VertexId>(rng.next_below(v));
    edges.push_back({u, v, weight()});
  }
  for (std::size_t i = 0; i < extra_edges && n > 2; ++i) {
    const VertexId u = static_cast<VertexId>(rng.next_below(n));
    const VertexId v = static_cast<VertexId>(rng.next_below(n));
    if (u == v) continue;
    edges.push_back({u, v, weight()});
  }
  return WeightedGraph(n, std::move(edges));
}

inline WeightedGraph by_family(const std::string& family, VertexId n, RandomSource& rng) {
  if (family == "cycle") return cycle(n);
  if (family == "grid") {
    const VertexId side = static_cast<VertexId>(std::ceil(std::sqrt(static_cast<double>(n))));
    return grid(side, side);
  }
  if (family == "dreg") return random_regular(n, 4, rng);
  if (family == "geom") {
    const double r = 1.5 * std::sqrt(std::log2(static_cast<double>(std::max<VertexId>(n, 4))) /
                                     static_cast<double>(n));
    return random_geometric(n, r, rng);
  }
  throw input_error("unknown graph family: " + family);
}

}  // namespace ckr::gen
