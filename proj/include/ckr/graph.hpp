#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ckr/error.hpp"

namespace ckr {

using VertexId = std::int32_t;

inline constexpr double kUnreached = std::numeric_limits<double>::infinity();

struct Edge {
  VertexId u;
  VertexId v;
  double w;
};

// Undirected graph with strictly positive weights. Self-loops are dropped and
// parallel edges collapsed to the minimum weight at construction; adjacency is
// stored symmetrically in CSR form. Immutable once built.
class WeightedGraph {
 public:
  struct Arc {
    VertexId to;
    double w;
  };

  WeightedGraph() = default;

  WeightedGraph(VertexId n, std::vector<Edge> raw) : n_(n) {
    for (const Edge& e : raw) {
      if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
        throw input_error("edge endpoint out of range");
      if (!(e.w > 0)) throw input_error("edge weight must be positive");
    }
    std::erase_if(raw, [](const Edge& e) { return e.u == e.v; });
    for (Edge& e : raw)
      if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(raw.begin(), raw.end(), [](const Edge& a, const Edge& b) {
      if (a.u != b.u) return a.u < b.u;
      if (a.v != b.v) return a.v < b.v;
      return a.w < b.w;
    });
    for (const Edge& e : raw) {
      if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v)
        continue;  // min-collapse: sorted so the lightest copy comes first
      edges_.push_back(e);
    }
    build_adjacency();
  }

  VertexId vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Arc> arcs(VertexId v) const {
    return {arcs_.data() + offset_[v], arcs_.data() + offset_[v + 1]};
  }

  std::size_t degree(VertexId v) const { return offset_[v + 1] - offset_[v]; }

 private:
  void build_adjacency() {
    offset_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) {
      ++offset_[e.u + 1];
      ++offset_[e.v + 1];
    }
    for (std::size_t i = 1; i < offset_.size(); ++i) offset_[i] += offset_[i - 1];
    arcs_.resize(edges_.size() * 2);
    std::vector<std::size_t> cursor(offset_.begin(), offset_.end() - 1);
    for (const Edge& e : edges_) {
      arcs_[cursor[e.u]++] = {e.v, e.w};
      arcs_[cursor[e.v]++] = {e.u, e.w};
    }
  }

  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offset_{0};
  std::vector<Arc> arcs_;
};

// Distances from one source; kUnreached marks vertices that were not settled
// (beyond the radius cutoff or in another component).
struct DistanceMap {
  std::vector<double> dist;

  bool reached(VertexId v) const { return dist[v] != kUnreached; }
  double operator[](VertexId v) const { return dist[v]; }
};

// Dijkstra from `source`. With a radius, every vertex at distance <= radius is
// settled exactly; vertices past the radius are reported unreached. Ties in
// the queue break toward the lower vertex id so runs are reproducible.
inline DistanceMap dijkstra(const WeightedGraph& g, VertexId source,
                            std::optional<double> radius = std::nullopt) {
  const VertexId n = g.vertex_count();
  if (source < 0 || source >= n) throw input_error("dijkstra: source out of range");
  if (radius && !(*radius >= 0)) throw input_error("dijkstra: negative radius");

  std::vector<double> dist(n, kUnreached);
  std::vector<char> settled(n, 0);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (settled[v] || d != dist[v]) continue;
    if (radius && d > *radius) break;
    settled[v] = 1;
    for (const auto& a : g.arcs(v)) {
      const double nd = d + a.w;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!settled[v]) dist[v] = kUnreached;
  return DistanceMap{std::move(dist)};
}

// Full shortest-path matrix, one Dijkstra per row. Intended for small
// instances and test oracles; disconnected pairs read kUnreached.
struct DistanceMatrix {
  VertexId n = 0;
  std::vector<double> cell;

  DistanceMatrix() = default;
  explicit DistanceMatrix(VertexId n_) : n(n_), cell(static_cast<std::size_t>(n_) * n_, 0) {}

  double& at(VertexId u, VertexId v) { return cell[static_cast<std::size_t>(u) * n + v]; }
  double at(VertexId u, VertexId v) const { return cell[static_cast<std::size_t>(u) * n + v]; }
};

inline DistanceMatrix exact_metric(const WeightedGraph& g) {
  const VertexId n = g.vertex_count();
  DistanceMatrix m(n);
  for (VertexId s = 0; s < n; ++s) {
    const DistanceMap row = dijkstra(g, s);
    for (VertexId v = 0; v < n; ++v) m.at(s, v) = row.dist[v];
  }
  return m;
}

// Edge-list text format: '#' comment lines, then a line holding the vertex
// count, then "u v w" lines with 0-based ids and positive decimal weights.
inline WeightedGraph load_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_n = false;
  VertexId n = 0;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& what) {
    throw input_error("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    if (!have_n) {
      long long count = -1;
      if (!(fields >> count) || count < 0) fail("expected vertex count");
      std::string rest;
      if (fields >> rest) fail("trailing tokens after vertex count");
      n = static_cast<VertexId>(count);
      have_n = true;
      continue;
    }
    long long u = 0, v = 0;
    double w = 0;
    if (!(fields >> u >> v >> w)) fail("expected 'u v w'");
    std::string rest;
    if (fields >> rest) fail("trailing tokens after edge");
    if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex id out of range");
    if (!(w > 0)) fail("non-positive weight");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  if (!have_n) throw input_error("missing vertex count line");
  return WeightedGraph(n, std::move(edges));
}

void write_double(std::ostream& out, double x);

inline void save_graph(std::ostream& out, const WeightedGraph& g) {
  out << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ';
    write_double(out, e.w);
    out << "\n";
  }
}

// Shortest round-trip-exact decimal form so that reading the file back
// reproduces the same bits.
inline void write_double(std::ostream& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  // trim to the shortest representation that still round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, x);
    if (std::strtod(probe, nullptr) == x) {
      out << probe;
      return;
    }
  }
  out << buf;
}

inline bool is_connected(const WeightedGraph& g) {
  if (g.vertex_count() <= 1) return true;
  const DistanceMap d = dijkstra(g, 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (!d.reached(v)) return false;
  return true;
}

}  // namespace ckr
