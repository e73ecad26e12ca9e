#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ckr/bottleneck.hpp"
#include "ckr/graph.hpp"

namespace ckr {

// Quotient of the graph by the sigma projection at one scale: vertices are the
// distinct sigma images, edges are the crossing base edges min-collapsed.
// Every block has base diameter <= delta/2 and absorbs the delta/(2n)-ball
// around each of its points.
struct QuotientGraph {
  WeightedGraph qgraph;
  std::vector<std::int32_t> projection;  // base vertex -> quotient id
  std::vector<std::int32_t> rep_tnode;   // quotient id -> merge-tree node
  double delta = 0.0;
};

inline QuotientGraph quotient(const WeightedGraph& g, const BottleneckTree& t, double delta) {
  if (!(delta > 0)) throw input_error("quotient: scale must be positive");
  const VertexId n = g.vertex_count();
  QuotientGraph q;
  q.delta = delta;
  q.projection.assign(n, -1);
  std::unordered_map<std::int32_t, std::int32_t> qid_of;
  for (VertexId v = 0; v < n; ++v) {
    const std::int32_t tn = t.sigma(v, delta);
    auto [it, fresh] = qid_of.try_emplace(tn, static_cast<std::int32_t>(q.rep_tnode.size()));
    if (fresh) q.rep_tnode.push_back(tn);
    q.projection[v] = it->second;
  }
  std::vector<Edge> qedges;
  for (const Edge& e : g.edges()) {
    const std::int32_t a = q.projection[e.u], b = q.projection[e.v];
    if (a != b) qedges.push_back({a, b, e.w});
  }
  q.qgraph = WeightedGraph(static_cast<VertexId>(q.rep_tnode.size()), std::move(qedges));
  return q;
}

// Subgraph with edges of weight at most delta and no isolated vertices.
// `vertices[i]` is the original id of compact vertex i.
struct RestrictedGraph {
  WeightedGraph graph;
  std::vector<VertexId> vertices;
};

inline RestrictedGraph restrict_graph(const WeightedGraph& g, double delta) {
  if (!(delta > 0)) throw input_error("restrict: scale must be positive");
  std::vector<VertexId> remap(g.vertex_count(), -1);
  RestrictedGraph r;
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.w > delta) continue;
    for (VertexId v : {e.u, e.v}) {
      if (remap[v] == -1) {
        remap[v] = static_cast<VertexId>(r.vertices.size());
        r.vertices.push_back(v);
      }
    }
    kept.push_back({remap[e.u], remap[e.v], e.w});
  }
  r.graph = WeightedGraph(static_cast<VertexId>(r.vertices.size()), std::move(kept));
  return r;
}

// One processed scale: the quotient at 8^j restricted to edges of weight at
// most 8^j/2, with isolated quotient vertices dropped.
struct ScaleEntry {
  int j = 0;
  WeightedGraph graph;
  std::vector<std::int32_t> qid_tnode;   // quotient id -> merge-tree node
  std::vector<std::int32_t> project;     // base vertex -> quotient id, -1 if absent
  std::size_t window_lo = 0, window_hi = 0;  // inclusive range into the sorted edge list

  double scale() const { return pow8(j); }
  double bound() const { return pow8(j) / 2.0; }  // the partitions sampled here are bound()-bounded
};

// The processed scales in decreasing order, built with one sliding window over
// the edges sorted by non-increasing weight. Each base edge contributes to
// O(log n) scales, so the total size is O(m log n).
struct ScaleFamily {
  std::vector<ScaleEntry> scales;
  VertexId base_n = 0;

  std::size_t total_size() const {
    std::size_t s = 0;
    for (const ScaleEntry& e : scales)
      s += static_cast<std::size_t>(e.graph.vertex_count()) + e.graph.edge_count();
    return s;
  }
};

inline ScaleFamily build_scale_family(const WeightedGraph& g, const BottleneckTree& t) {
  if (g.edge_count() == 0) throw input_error("scale family: graph has no edges");
  const VertexId n = g.vertex_count();
  const auto edges = g.edges();

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (edges[a].w != edges[b].w) return edges[a].w > edges[b].w;
    return a < b;
  });
  auto weight_at = [&](std::size_t i) { return edges[order[i]].w; };

  double w_min = edges[0].w;
  for (const Edge& e : edges) w_min = std::min(w_min, e.w);
  const double spread_bound = t.mst_diameter();
  const int j_top = ceil_log8(std::max(spread_bound, w_min));
  const int j_bottom = ceil_log8(w_min);

  ScaleFamily family;
  family.base_n = n;
  std::unordered_map<std::int32_t, std::int32_t> qid_of;
  for (int j = j_top; j >= j_bottom; --j) {
    const double scale = pow8(j);
    const double sigma_threshold = scale / (2.0 * static_cast<double>(n));
    // window: all edges with weight in [8^j/2n, 8^j]; the top scale keeps its
    // left end at the heaviest edge
    std::size_t lo = 0;
    if (j != j_top) {
      std::size_t a = 0, b = order.size();
      while (a < b) {
        const std::size_t mid = (a + b) / 2;
        if (weight_at(mid) > scale) a = mid + 1; else b = mid;
      }
      lo = a;
    }
    std::size_t a = 0, b = order.size();
    const double floor_w = sigma_threshold;
    while (a < b) {
      const std::size_t mid = (a + b) / 2;
      if (weight_at(mid) >= floor_w) a = mid + 1; else b = mid;
    }
    if (a == 0 || lo >= a) continue;  // empty window
    const std::size_t hi = a - 1;

    // project window endpoints, collapse crossing edges, drop the heavy ones
    qid_of.clear();
    std::vector<std::int32_t> qid_tnode;
    std::vector<Edge> qedges;
    for (std::size_t i = lo; i <= hi; ++i) {
      const Edge& e = edges[order[i]];
      const std::int32_t ta = t.highest_within(e.u, sigma_threshold);
      const std::int32_t tb = t.highest_within(e.v, sigma_threshold);
      if (ta == tb) continue;
      auto qid = [&](std::int32_t tn) {
        auto [it, fresh] = qid_of.try_emplace(tn, static_cast<std::int32_t>(qid_tnode.size()));
        if (fresh) qid_tnode.push_back(tn);
        return it->second;
      };
      qedges.push_back({qid(ta), qid(tb), e.w});
    }
    WeightedGraph collapsed(static_cast<VertexId>(qid_tnode.size()), std::move(qedges));
    std::vector<Edge> light;
    for (const Edge& e : collapsed.edges())
      if (e.w <= scale / 2.0) light.push_back(e);
    if (light.empty()) continue;

    // compact to the non-isolated quotient vertices
    std::vector<std::int32_t> remap(collapsed.vertex_count(), -1);
    ScaleEntry entry;
    entry.j = j;
    entry.window_lo = lo;
    entry.window_hi = hi;
    for (Edge& e : light) {
      for (VertexId* side : {&e.u, &e.v}) {
        if (remap[*side] == -1) {
          remap[*side] = static_cast<std::int32_t>(entry.qid_tnode.size());
          entry.qid_tnode.push_back(qid_tnode[*side]);
        }
        *side = remap[*side];
      }
    }
    entry.graph = WeightedGraph(static_cast<VertexId>(entry.qid_tnode.size()), std::move(light));

    qid_of.clear();
    for (std::size_t q = 0; q < entry.qid_tnode.size(); ++q)
      qid_of.emplace(entry.qid_tnode[q], static_cast<std::int32_t>(q));
    entry.project.assign(n, -1);
    for (VertexId v = 0; v < n; ++v) {
      const auto it = qid_of.find(t.highest_within(v, sigma_threshold));
      if (it != qid_of.end()) entry.project[v] = it->second;
    }
    family.scales.push_back(std::move(entry));
  }
  return family;
}

// Debug dump, one line per scale: "j |V_j| |E_j| i_L i_R" with 0-based
// inclusive window indices into the weight-sorted edge list.
inline void write_scale_family(std::ostream& out, const ScaleFamily& family) {
  for (const ScaleEntry& e : family.scales)
    out << e.j << ' ' << e.graph.vertex_count() << ' ' << e.graph.edge_count() << ' '
        << e.window_lo << ' ' << e.window_hi << "\n";
}

}  // namespace ckr
