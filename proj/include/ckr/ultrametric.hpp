#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ckr/error.hpp"
#include "ckr/graph.hpp"

namespace ckr {

// Rooted labeled tree representing an ultrametric: leaves carry points, every
// internal node a label Gamma >= labels below it, and the distance between two
// points is Gamma(lca). Constant-time lca via Euler tour + sparse table.
class UltrametricTree {
 public:
  struct Node {
    std::int32_t parent = -1;
    double gamma = 0.0;
    VertexId point = -1;  // >= 0 for leaves
  };

  UltrametricTree() = default;

  UltrametricTree(std::vector<Node> nodes, std::int32_t root, VertexId point_count)
      : nodes_(std::move(nodes)), root_(root) {
    leaf_of_point_.assign(point_count, -1);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& nd = nodes_[i];
      if (nd.point >= 0) {
        CKR_CHECK(nd.point < point_count && leaf_of_point_[nd.point] == -1,
                  "ultrametric: bad leaf mapping");
        CKR_CHECK(nd.gamma == 0.0, "ultrametric: leaf label must be zero");
        leaf_of_point_[nd.point] = static_cast<std::int32_t>(i);
      } else {
        CKR_CHECK(nd.gamma > 0.0, "ultrametric: internal label must be positive");
      }
      if (nd.parent != -1)
        CKR_CHECK(nd.gamma <= nodes_[nd.parent].gamma, "ultrametric: labels must grow upward");
    }
    build_lca();
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::int32_t root() const { return root_; }
  const Node& node(std::int32_t id) const { return nodes_[id]; }
  VertexId point_count() const { return static_cast<VertexId>(leaf_of_point_.size()); }

  bool has_point(VertexId x) const {
    return x >= 0 && x < point_count() && leaf_of_point_[x] != -1;
  }

  std::int32_t leaf_of(VertexId x) const {
    if (!has_point(x)) throw input_error("ultrametric: unknown leaf id");
    return leaf_of_point_[x];
  }

  std::int32_t lca(std::int32_t a, std::int32_t b) const {
    std::int32_t i = first_[a], j = first_[b];
    if (i > j) std::swap(i, j);
    return euler_[range_min(i, j + 1)];
  }

  double distance(VertexId x, VertexId y) const {
    const std::int32_t a = leaf_of(x), b = leaf_of(y);
    if (a == b) return 0.0;
    return nodes_[lca(a, b)].gamma;
  }

  // Parent-array text form with round-trip-exact labels.
  void write_text(std::ostream& out) const {
    out << "ultrametric 1\n";
    out << "nodes " << nodes_.size() << " root " << root_ << " points "
        << leaf_of_point_.size() << "\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      out << i << ' ' << nodes_[i].parent << ' ';
      write_double(out, nodes_[i].gamma);
      out << "\n";
    }
    for (std::size_t p = 0; p < leaf_of_point_.size(); ++p)
      if (leaf_of_point_[p] != -1) out << "leaf " << p << ' ' << leaf_of_point_[p] << "\n";
  }

  static UltrametricTree read_text(std::istream& in) {
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != "ultrametric" || version != 1)
      throw input_error("ultrametric: bad header");
    std::string kw;
    std::size_t count = 0;
    std::int32_t root = -1;
    std::size_t points = 0;
    in >> kw >> count;
    in >> kw >> root;
    in >> kw >> points;
    if (!in) throw input_error("ultrametric: bad header fields");
    std::vector<Node> nodes(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t id;
      if (!(in >> id >> nodes[i].parent >> nodes[i].gamma) || id != i)
        throw input_error("ultrametric: bad node line");
    }
    while (in >> kw) {
      if (kw != "leaf") throw input_error("ultrametric: bad leaf line");
      VertexId p;
      std::int32_t node;
      if (!(in >> p >> node)) throw input_error("ultrametric: bad leaf line");
      nodes[node].point = p;
    }
    return UltrametricTree(std::move(nodes), root, static_cast<VertexId>(points));
  }

 private:
  void build_lca() {
    const std::size_t n = nodes_.size();
    std::vector<std::vector<std::int32_t>> kids(n);
    for (std::size_t i = 0; i < n; ++i)
      if (nodes_[i].parent != -1) kids[nodes_[i].parent].push_back(static_cast<std::int32_t>(i));
    euler_.clear();
    depth_.clear();
    first_.assign(n, -1);
    if (root_ == -1) return;
    struct Frame {
      std::int32_t node;
      std::int32_t depth;
      std::size_t next_kid;
    };
    std::vector<Frame> stack{{root_, 0, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next_kid == 0) {
        first_[f.node] = static_cast<std::int32_t>(euler_.size());
        euler_.push_back(f.node);
        depth_.push_back(f.depth);
      }
      if (f.next_kid < kids[f.node].size()) {
        const std::int32_t ch = kids[f.node][f.next_kid++];
        stack.push_back({ch, f.depth + 1, 0});
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          euler_.push_back(stack.back().node);
          depth_.push_back(stack.back().depth);
        }
      }
    }
    const std::size_t m = euler_.size();
    const int levels = m > 1 ? std::bit_width(m) : 1;
    table_.assign(levels, std::vector<std::int32_t>(m));
    for (std::size_t i = 0; i < m; ++i) table_[0][i] = static_cast<std::int32_t>(i);
    for (int k = 1; k < levels; ++k) {
      const std::size_t span = std::size_t{1} << k;
      for (std::size_t i = 0; i + span <= m; ++i) {
        const std::int32_t a = table_[k - 1][i];
        const std::int32_t b = table_[k - 1][i + span / 2];
        table_[k][i] = depth_[a] <= depth_[b] ? a : b;
      }
    }
  }

  // index of the minimum-depth entry in euler_[i, j)
  std::int32_t range_min(std::int32_t i, std::int32_t j) const {
    const int k = std::bit_width(static_cast<std::uint32_t>(j - i)) - 1;
    const std::int32_t a = table_[k][i];
    const std::int32_t b = table_[k][j - (1 << k)];
    return depth_[a] <= depth_[b] ? a : b;
  }

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::vector<std::int32_t> leaf_of_point_;
  std::vector<std::int32_t> euler_;
  std::vector<std::int32_t> depth_;
  std::vector<std::int32_t> first_;
  std::vector<std::vector<std::int32_t>> table_;
};

inline double ultra_distance(const UltrametricTree& t, VertexId x, VertexId y) {
  return t.distance(x, y);
}

}  // namespace ckr
