#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "ckr/graph.hpp"
#include "ckr/rng.hpp"

namespace ckr {

// Subset of the input edges whose shortest-path metric stretches every input
// edge (hence every pair) by at most 2k-1.
struct Spanner {
  std::vector<std::size_t> kept;  // indices into the input edge list
  int k = 1;
};

// Randomized clustering spanner: k-1 rounds of cluster sampling at rate
// n^(-1/k) followed by a cluster-joining round. Ties among candidate edges
// break toward the smaller weight, then the smaller neighbor id, so runs are
// reproducible. k = 1 keeps the whole edge set.
inline Spanner baswana_sen(const WeightedGraph& g, int k, RandomSource& rng) {
  if (k < 1) throw input_error("spanner: k must be at least 1");
  const VertexId n = g.vertex_count();
  const auto edges = g.edges();
  Spanner result;
  result.k = k;
  if (k == 1) {
    result.kept.resize(edges.size());
    std::iota(result.kept.begin(), result.kept.end(), 0);
    return result;
  }

  // adjacency as edge indices, filtered lazily
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    incident[edges[i].u].push_back(i);
    incident[edges[i].v].push_back(i);
  }
  auto other = [&](std::size_t e, VertexId v) {
    return edges[e].u == v ? edges[e].v : edges[e].u;
  };

  constexpr std::int32_t kExited = -1;
  std::vector<std::int32_t> cluster(n);           // current cluster center
  std::iota(cluster.begin(), cluster.end(), 0);
  std::vector<std::uint8_t> dead(edges.size(), 0);  // removed from the working graph
  std::vector<std::uint8_t> keep(edges.size(), 0);
  const double p = std::pow(static_cast<double>(n), -1.0 / k);

  // lightest live edge from v into each neighboring cluster
  std::unordered_map<std::int32_t, std::size_t> best;
  auto better = [&](std::size_t a, std::size_t b) {
    if (edges[a].w != edges[b].w) return edges[a].w < edges[b].w;
    return a < b;
  };

  std::vector<std::int32_t> next_cluster(n);
  std::vector<std::uint8_t> sampled(n, 0);
  for (int round = 1; round < k; ++round) {
    // sample surviving clusters by center id, in id order
    std::fill(sampled.begin(), sampled.end(), 0);
    {
      std::vector<std::uint8_t> present(n, 0);
      for (VertexId v = 0; v < n; ++v)
        if (cluster[v] != kExited) present[cluster[v]] = 1;
      for (VertexId c = 0; c < n; ++c)
        if (present[c]) sampled[c] = rng.next_double() < p ? 1 : 0;
    }

    for (VertexId v = 0; v < n; ++v) {
      if (cluster[v] == kExited) {
        next_cluster[v] = kExited;
        continue;
      }
      if (sampled[cluster[v]]) {
        next_cluster[v] = cluster[v];
        continue;
      }
      best.clear();
      for (std::size_t e : incident[v]) {
        if (dead[e]) continue;
        const VertexId u = other(e, v);
        if (cluster[u] == kExited || cluster[u] == cluster[v]) continue;
        auto [it, fresh] = best.try_emplace(cluster[u], e);
        if (!fresh && better(e, it->second)) it->second = e;
      }
      // the lightest edge into a sampled cluster, if any
      bool have = false;
      std::size_t join_edge = 0;
      for (const auto& [c, e] : best) {
        if (!sampled[c]) continue;
        if (!have || better(e, join_edge)) {
          join_edge = e;
          have = true;
        }
      }
      if (!have) {
        // no sampled neighbor: keep one lightest edge per neighboring cluster
        // and leave the clustering
        for (const auto& [c, e] : best) keep[e] = 1;
        for (std::size_t e : incident[v]) dead[e] = 1;
        next_cluster[v] = kExited;
      } else {
        keep[join_edge] = 1;
        next_cluster[v] = cluster[other(join_edge, v)];
        // clusters that beat the joining edge contribute one edge each; their
        // remaining edges are discarded for later rounds
        for (const auto& [c, e] : best) {
          if (c == cluster[other(join_edge, v)]) {
            for (std::size_t dead_e : incident[v])
              if (!dead[dead_e] && cluster[other(dead_e, v)] == c) dead[dead_e] = 1;
          } else if (better(e, join_edge)) {
            keep[e] = 1;
            for (std::size_t dead_e : incident[v])
              if (!dead[dead_e] && cluster[other(dead_e, v)] == c) dead[dead_e] = 1;
          }
        }
      }
    }
    cluster = next_cluster;
    // intra-cluster edges play no further role
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (dead[e]) continue;
      const std::int32_t cu = cluster[edges[e].u], cv = cluster[edges[e].v];
      if (cu != kExited && cu == cv) dead[e] = 1;
    }
  }

  // joining round: every vertex keeps its lightest edge into each remaining
  // cluster
  for (VertexId v = 0; v < n; ++v) {
    best.clear();
    for (std::size_t e : incident[v]) {
      if (dead[e]) continue;
      const VertexId u = other(e, v);
      if (cluster[u] == kExited || cluster[u] == cluster[v]) continue;
      auto [it, fresh] = best.try_emplace(cluster[u], e);
      if (!fresh && better(e, it->second)) it->second = e;
    }
    for (const auto& [c, e] : best) keep[e] = 1;
  }

  for (std::size_t e = 0; e < edges.size(); ++e)
    if (keep[e]) result.kept.push_back(e);
  return result;
}

inline WeightedGraph spanner_graph(const WeightedGraph& g, const Spanner& s) {
  std::vector<Edge> kept;
  kept.reserve(s.kept.size());
  for (std::size_t i : s.kept) kept.push_back(g.edges()[i]);
  return WeightedGraph(g.vertex_count(), std::move(kept));
}

}  // namespace ckr
