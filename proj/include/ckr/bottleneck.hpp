#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "ckr/graph.hpp"

namespace ckr {

// 8^j as an exact double (2^{3j}).
inline double pow8(int j) { return std::ldexp(1.0, 3 * j); }

// Smallest integer j with 8^j >= x (x > 0).
inline int ceil_log8(double x) {
  int j = static_cast<int>(std::ceil(std::log2(x) / 3.0));
  while (pow8(j) < x) ++j;
  while (j > INT32_MIN / 8 && pow8(j - 1) >= x) --j;
  return j;
}

// Largest integer j with 8^j <= x (x > 0).
inline int floor_log8(double x) {
  int j = static_cast<int>(std::floor(std::log2(x) / 3.0));
  while (pow8(j) > x) --j;
  while (pow8(j + 1) <= x) ++j;
  return j;
}

// Kruskal merge tree over the vertices: the internal node created when an MST
// edge joins two components is labeled with that edge's weight, so
// nu(u,v) = label(lca(u,v)) is the minimax bottleneck distance and
// nu <= rho <= n * nu within a component. Components of a disconnected graph
// hang under a virtual root labeled +infinity.
class BottleneckTree {
 public:
  static BottleneckTree build(const WeightedGraph& g) {
    BottleneckTree t;
    const VertexId n = g.vertex_count();
    t.leaf_count_ = n;
    t.gamma_.assign(n, 0.0);
    t.parent_.assign(n, -1);

    std::vector<std::size_t> order(g.edge_count());
    std::iota(order.begin(), order.end(), 0);
    const auto edges = g.edges();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (edges[a].w != edges[b].w) return edges[a].w < edges[b].w;
      return a < b;
    });

    std::vector<std::int32_t> dsu(n);
    std::iota(dsu.begin(), dsu.end(), 0);
    std::vector<std::int32_t> comp_node(n);
    std::iota(comp_node.begin(), comp_node.end(), 0);
    auto find = [&](std::int32_t x) {
      while (dsu[x] != x) {
        dsu[x] = dsu[dsu[x]];
        x = dsu[x];
      }
      return x;
    };

    t.mst_total_ = 0.0;
    std::vector<Edge> mst_edges;
    for (std::size_t idx : order) {
      const Edge& e = edges[idx];
      const std::int32_t a = find(e.u), b = find(e.v);
      if (a == b) continue;
      const std::int32_t node = static_cast<std::int32_t>(t.gamma_.size());
      t.gamma_.push_back(e.w);
      t.parent_.push_back(-1);
      t.parent_[comp_node[a]] = node;
      t.parent_[comp_node[b]] = node;
      dsu[a] = b;
      comp_node[b] = node;
      t.mst_total_ += e.w;
      mst_edges.push_back(e);
    }
    t.mst_diameter_ = forest_diameter(n, mst_edges);

    std::vector<std::int32_t> roots;
    std::vector<char> seen(t.gamma_.size(), 0);
    for (VertexId v = 0; v < n; ++v) {
      const std::int32_t r = comp_node[find(v)];
      if (!seen[r]) {
        seen[r] = 1;
        roots.push_back(r);
      }
    }
    if (roots.size() > 1) {
      const std::int32_t node = static_cast<std::int32_t>(t.gamma_.size());
      t.gamma_.push_back(kUnreached);
      t.parent_.push_back(-1);
      for (std::int32_t r : roots) t.parent_[r] = node;
      t.root_ = node;
      t.connected_ = false;
    } else {
      t.root_ = roots.empty() ? -1 : roots[0];
      t.connected_ = true;
    }
    t.finish();
    return t;
  }

  std::int32_t node_count() const { return static_cast<std::int32_t>(gamma_.size()); }
  VertexId leaf_count() const { return leaf_count_; }
  std::int32_t root() const { return root_; }
  double gamma(std::int32_t node) const { return gamma_[node]; }
  std::int32_t parent(std::int32_t node) const { return parent_[node]; }
  bool connected() const { return connected_; }
  double mst_total() const { return mst_total_; }

  // Weighted diameter of the spanning forest, an upper bound on every
  // finite shortest-path distance in the graph.
  double mst_diameter() const { return mst_diameter_; }

  std::span<const std::int32_t> children(std::int32_t node) const {
    return {kids_.data() + kid_off_[node], kids_.data() + kid_off_[node + 1]};
  }

  // Leaves (vertex ids) under a node, contiguous by construction.
  std::span<const VertexId> leaves_under(std::int32_t node) const {
    return {leaf_seq_.data() + leaf_lo_[node], leaf_seq_.data() + leaf_hi_[node]};
  }

  // Highest ancestor of `node` whose label is <= threshold; `node` itself if
  // none qualifies. Logarithmic via the jump table (labels are monotone along
  // root paths).
  std::int32_t highest_within(std::int32_t node, double threshold) const {
    if (gamma_[node] > threshold) return node;
    std::int32_t cur = node;
    for (int k = static_cast<int>(up_.size()) - 1; k >= 0; --k) {
      const std::int32_t cand = up_[k][cur];
      if (cand != -1 && gamma_[cand] <= threshold) cur = cand;
    }
    return cur;
  }

  // Quotient projection at scale delta: the highest ancestor of leaf v labeled
  // at most delta / (2n).
  std::int32_t sigma(VertexId v, double delta) const {
    return highest_within(v, delta / (2.0 * static_cast<double>(leaf_count_)));
  }

  // Maximal descendants of `node` with label <= threshold, in leaf order.
  void descend(std::int32_t node, double threshold, std::vector<std::int32_t>& out) const {
    if (gamma_[node] <= threshold) {
      out.push_back(node);
      return;
    }
    for (std::int32_t ch : children(node)) descend(ch, threshold, out);
  }

 private:
  // exact tree diameter per component by the double sweep
  static double forest_diameter(VertexId n, const std::vector<Edge>& tree_edges) {
    std::vector<std::vector<std::pair<VertexId, double>>> adj(n);
    for (const Edge& e : tree_edges) {
      adj[e.u].push_back({e.v, e.w});
      adj[e.v].push_back({e.u, e.w});
    }
    std::vector<double> dist(n);
    std::vector<char> seen(n, 0);
    auto sweep = [&](VertexId start) {
      std::vector<VertexId> stack{start};
      dist[start] = 0.0;
      seen[start] = 1;
      VertexId far = start;
      std::vector<VertexId> visited{start};
      while (!stack.empty()) {
        const VertexId v = stack.back();
        stack.pop_back();
        if (dist[v] > dist[far]) far = v;
        for (const auto& [to, w] : adj[v]) {
          if (seen[to]) continue;
          seen[to] = 1;
          dist[to] = dist[v] + w;
          visited.push_back(to);
          stack.push_back(to);
        }
      }
      return std::pair{far, visited};
    };
    double best = 0.0;
    std::vector<char> done(n, 0);
    for (VertexId v = 0; v < n; ++v) {
      if (done[v]) continue;
      auto [far, visited] = sweep(v);
      for (VertexId u : visited) {
        done[u] = 1;
        seen[u] = 0;
      }
      auto [end, visited2] = sweep(far);
      for (VertexId u : visited2) seen[u] = 0;
      best = std::max(best, dist[end]);
    }
    return best;
  }

  void finish() {
    const std::int32_t total = node_count();
    kid_off_.assign(total + 1, 0);
    for (std::int32_t v = 0; v < total; ++v)
      if (parent_[v] != -1) ++kid_off_[parent_[v] + 1];
    for (std::int32_t v = 0; v < total; ++v) kid_off_[v + 1] += kid_off_[v];
    kids_.resize(total == 0 ? 0 : static_cast<std::size_t>(kid_off_[total]));
    std::vector<std::int32_t> cursor(kid_off_.begin(), kid_off_.end() - 1);
    for (std::int32_t v = 0; v < total; ++v)
      if (parent_[v] != -1) kids_[cursor[parent_[v]]++] = v;

    leaf_lo_.assign(total, 0);
    leaf_hi_.assign(total, 0);
    leaf_seq_.clear();
    leaf_seq_.reserve(leaf_count_);
    if (root_ != -1) {
      std::vector<std::pair<std::int32_t, bool>> stack{{root_, false}};
      while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (done) {
          leaf_hi_[v] = static_cast<std::int32_t>(leaf_seq_.size());
          continue;
        }
        leaf_lo_[v] = static_cast<std::int32_t>(leaf_seq_.size());
        stack.push_back({v, true});
        if (v < leaf_count_) leaf_seq_.push_back(v);
        const auto ch = children(v);
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back({*it, false});
      }
    }

    const int levels = total > 1 ? std::bit_width(static_cast<std::uint32_t>(total)) : 1;
    up_.assign(levels, std::vector<std::int32_t>(total, -1));
    up_[0] = parent_;
    for (int k = 1; k < levels; ++k)
      for (std::int32_t v = 0; v < total; ++v)
        up_[k][v] = up_[k - 1][v] == -1 ? -1 : up_[k - 1][up_[k - 1][v]];
  }

  VertexId leaf_count_ = 0;
  std::int32_t root_ = -1;
  bool connected_ = true;
  double mst_total_ = 0.0;
  double mst_diameter_ = 0.0;
  std::vector<double> gamma_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> kid_off_, kids_;
  std::vector<std::int32_t> leaf_lo_, leaf_hi_;
  std::vector<VertexId> leaf_seq_;
  std::vector<std::vector<std::int32_t>> up_;
};

inline BottleneckTree build_bottleneck_tree(const WeightedGraph& g) {
  return BottleneckTree::build(g);
}

inline std::int32_t sigma(const BottleneckTree& t, VertexId v, double delta) {
  return t.sigma(v, delta);
}

}  // namespace ckr
