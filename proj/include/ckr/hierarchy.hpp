#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ckr/bottleneck.hpp"
#include "ckr/graph.hpp"
#include "ckr/partition.hpp"
#include "ckr/rng.hpp"
#include "ckr/scales.hpp"
#include "ckr/ultrametric.hpp"

namespace ckr {

// Compressed hierarchical partition: a rooted tree whose leaves are points and
// whose internal nodes carry strictly increasing scale exponents s(u). The
// block of x at scale j is the highest ancestor u of x with s(u) <= j; every
// such block has diameter at most 8^j. No internal node other than the root
// has fewer than two children.
struct HierarchyTree {
  struct Node {
    std::int32_t parent = -1;
    std::int32_t scale = 0;   // valid for internal nodes
    VertexId point = -1;      // >= 0 for leaves
  };

  std::vector<Node> nodes;
  std::int32_t root = -1;
  std::vector<std::int32_t> leaf_of_point;  // -1 for points outside the sample

  bool is_leaf(std::int32_t id) const { return nodes[id].point >= 0; }

  std::size_t leaf_count() const {
    std::size_t c = 0;
    for (const Node& nd : nodes) c += nd.point >= 0;
    return c;
  }

  // Highest ancestor of x labeled at most j; the leaf itself when even its
  // parent is labeled above j.
  std::int32_t block_at(VertexId x, int j) const {
    if (x < 0 || x >= static_cast<VertexId>(leaf_of_point.size()) || leaf_of_point[x] == -1)
      throw input_error("hierarchy: unknown point");
    std::int32_t cur = leaf_of_point[x];
    while (nodes[cur].parent != -1 && nodes[nodes[cur].parent].scale <= j)
      cur = nodes[cur].parent;
    return cur;
  }

  std::vector<VertexId> block_members(std::int32_t id) const {
    std::vector<std::vector<std::int32_t>> kids(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].parent != -1) kids[nodes[i].parent].push_back(static_cast<std::int32_t>(i));
    std::vector<VertexId> out;
    std::vector<std::int32_t> stack{id};
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      if (nodes[v].point >= 0) out.push_back(nodes[v].point);
      for (std::int32_t ch : kids[v]) stack.push_back(ch);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void write_text(std::ostream& out) const {
    out << "hierarchy 1\n";
    out << "nodes " << nodes.size() << " root " << root << " points "
        << leaf_of_point.size() << "\n";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out << i << ' ' << nodes[i].parent << ' ';
      if (nodes[i].point >= 0)
        out << "p " << nodes[i].point << "\n";
      else
        out << "s " << nodes[i].scale << "\n";
    }
  }

  static HierarchyTree read_text(std::istream& in) {
    std::string tag;
    int version = 0;
    if (!(in >> tag >> version) || tag != "hierarchy" || version != 1)
      throw input_error("hierarchy: bad header");
    std::string kw;
    std::size_t count = 0, points = 0;
    std::int32_t root = -1;
    in >> kw >> count >> kw >> root >> kw >> points;
    if (!in) throw input_error("hierarchy: bad header fields");
    HierarchyTree h;
    h.nodes.resize(count);
    h.root = root;
    h.leaf_of_point.assign(points, -1);
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t id;
      std::string kind;
      if (!(in >> id >> h.nodes[i].parent >> kind) || id != i)
        throw input_error("hierarchy: bad node line");
      if (kind == "p") {
        in >> h.nodes[i].point;
        h.leaf_of_point[h.nodes[i].point] = static_cast<std::int32_t>(i);
      } else if (kind == "s") {
        in >> h.nodes[i].scale;
      } else {
        throw input_error("hierarchy: bad node kind");
      }
    }
    return h;
  }
};

// Points whose beta * 8^j ball stays inside their block at every scale of the
// family.
struct PaddedSet {
  std::vector<VertexId> points;
  double beta = 0.0;
  std::vector<std::uint8_t> member;  // indexed by base vertex

  bool contains(VertexId v) const { return member[v] != 0; }
};

struct HierarchySample {
  HierarchyTree tree;
  std::vector<Partition> scale_partitions;  // aligned with the scale family
};

// Quotient vertices within `radius` of a block boundary, computed with a
// virtual source attached across every cut edge.
inline std::vector<std::uint8_t> unpadded_at_scale(const WeightedGraph& qgraph,
                                                   const Partition& part, double radius) {
  const VertexId n = qgraph.vertex_count();
  std::vector<double> dist(n, kUnreached);
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  for (const Edge& e : qgraph.edges()) {
    if (part.block[e.u] == part.block[e.v]) continue;
    for (VertexId side : {e.u, e.v}) {
      if (e.w < dist[side]) {
        dist[side] = e.w;
        queue.push({e.w, side});
      }
    }
  }
  std::vector<std::uint8_t> unpadded(n, 0);
  while (!queue.empty()) {
    const auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v] || unpadded[v]) continue;
    if (d > radius) break;
    unpadded[v] = 1;
    for (const auto& a : qgraph.arcs(v)) {
      const double nd = d + a.w;
      if (nd < dist[a.to]) {
        dist[a.to] = nd;
        queue.push({nd, a.to});
      }
    }
  }
  return unpadded;
}

// A base point survives iff at every scale its quotient image is either absent
// from that scale's graph (automatically padded) or farther than
// 2 * beta * bound from every cut edge of that scale's partition.
inline PaddedSet padded_points(const ScaleFamily& family,
                               std::span<const Partition> partitions, double beta) {
  if (!(beta > 0.0 && beta < 0.125))
    throw input_error("padded_points: beta must lie in (0, 1/8)");
  if (partitions.size() != family.scales.size())
    throw input_error("padded_points: one partition per scale required");
  PaddedSet out;
  out.beta = beta;
  out.member.assign(family.base_n, 1);
  for (std::size_t t = 0; t < family.scales.size(); ++t) {
    const ScaleEntry& entry = family.scales[t];
    const double radius = 2.0 * beta * entry.bound();
    const std::vector<std::uint8_t> unpadded =
        unpadded_at_scale(entry.graph, partitions[t], radius);
    for (VertexId v = 0; v < family.base_n; ++v) {
      const std::int32_t q = entry.project[v];
      if (q >= 0 && unpadded[q]) out.member[v] = 0;
    }
  }
  for (VertexId v = 0; v < family.base_n; ++v)
    if (out.member[v]) out.points.push_back(v);
  return out;
}

// Shared machinery for repeated hierarchical sampling on one graph: the merge
// tree and the scale family are built once, each sample draws fresh per-scale
// partitions and assembles their common refinement top-down.
class HierarchySampler {
 public:
  explicit HierarchySampler(const WeightedGraph& g) : graph_(g), tree_(BottleneckTree::build(g)) {
    if (g.vertex_count() > 1 && !tree_.connected())
      throw input_error("hierarchy: graph must be connected");
    if (g.edge_count() > 0) {
      family_ = build_scale_family(g, tree_);
    }
    family_.base_n = g.vertex_count();
    tnode_qid_.resize(family_.scales.size());
    for (std::size_t t = 0; t < family_.scales.size(); ++t) {
      auto& map = tnode_qid_[t];
      const auto& tn = family_.scales[t].qid_tnode;
      map.reserve(tn.size());
      for (std::size_t q = 0; q < tn.size(); ++q)
        map.emplace_back(tn[q], static_cast<std::int32_t>(q));
      std::sort(map.begin(), map.end());
    }
    root_scale_ = 0;
    if (tree_.mst_diameter() > 0.0) {
      root_scale_ = ceil_log8(tree_.mst_diameter());
      if (!family_.scales.empty())
        root_scale_ = std::max(root_scale_, family_.scales.front().j + 1);
    }
  }

  const WeightedGraph& graph() const { return graph_; }
  const BottleneckTree& bottleneck() const { return tree_; }
  const ScaleFamily& family() const { return family_; }
  int root_scale() const { return root_scale_; }

  HierarchySample sample(std::span<const VertexId> active_in, const RandomSource& rng) const {
    std::vector<VertexId> active(active_in.begin(), active_in.end());
    std::sort(active.begin(), active.end());
    active.erase(std::unique(active.begin(), active.end()), active.end());
    if (active.empty()) throw input_error("hierarchy: active set must be nonempty");
    for (VertexId v : active)
      if (v < 0 || v >= graph_.vertex_count())
        throw input_error("hierarchy: active vertex out of range");

    HierarchySample out;
    out.scale_partitions = sample_partitions(active, rng);
    out.tree = assemble(active, out.scale_partitions);
    return out;
  }

  HierarchySample sample_all(const RandomSource& rng) const {
    std::vector<VertexId> all(graph_.vertex_count());
    std::iota(all.begin(), all.end(), 0);
    return sample(all, rng);
  }

 private:
  std::int32_t qid_at(std::size_t t, std::int32_t tnode) const {
    const auto& map = tnode_qid_[t];
    auto it = std::lower_bound(map.begin(), map.end(),
                               std::pair<std::int32_t, std::int32_t>{tnode, INT32_MIN});
    if (it == map.end() || it->first != tnode) return -1;
    return it->second;
  }

  // Independent (pi, R) draws per scale from labeled substreams; centers are
  // the quotient images of active points.
  std::vector<Partition> sample_partitions(const std::vector<VertexId>& active,
                                           const RandomSource& rng) const {
    std::vector<Partition> parts(family_.scales.size());
    for (std::size_t t = 0; t < family_.scales.size(); ++t) {
      const ScaleEntry& entry = family_.scales[t];
      std::vector<VertexId> centers;
      {
        std::vector<std::uint8_t> seen(entry.graph.vertex_count(), 0);
        for (VertexId v : active) {
          const std::int32_t q = entry.project[v];
          if (q >= 0 && !seen[q]) {
            seen[q] = 1;
            centers.push_back(q);
          }
        }
        std::sort(centers.begin(), centers.end());
      }
      RandomSource sub = rng.substream("hierarchy-scale", static_cast<std::uint64_t>(t));
      sub.shuffle(centers);
      const double bound = entry.bound();
      const double radius = sub.uniform(bound / 4.0, bound / 2.0);
      parts[t] = ckr_partition_graph_centers(entry.graph, bound, centers, radius).first;
    }
    return parts;
  }

  struct FrontierItem {
    std::int32_t tnode;
    std::int32_t parent;  // provisional hierarchy node
    std::int32_t whole;   // finest processed scale at which this block was unsplit
  };

  HierarchyTree assemble(const std::vector<VertexId>& active,
                         std::span<const Partition> parts) const {
    const VertexId n = graph_.vertex_count();
    std::vector<std::uint8_t> is_active(n, 0);
    for (VertexId v : active) is_active[v] = 1;

    HierarchyTree result;
    result.leaf_of_point.assign(n, -1);

    if (active.size() == 1) {
      result.nodes.push_back({-1, 0, active[0]});
      result.root = 0;
      result.leaf_of_point[active[0]] = 0;
      return result;
    }

    // provisional nodes: 0 is the root star
    std::vector<std::int32_t> prov_parent{-1};
    std::vector<std::int32_t> prov_scale{root_scale_};
    std::vector<VertexId> prov_point{-1};
    auto new_node = [&](std::int32_t parent, std::int32_t scale, VertexId point) {
      prov_parent.push_back(parent);
      prov_scale.push_back(scale);
      prov_point.push_back(point);
      return static_cast<std::int32_t>(prov_parent.size() - 1);
    };
    // a block that stopped being whole materializes at the finest scale that
    // still covered it, unless its parent already carries that label
    auto attach_point = [&](const FrontierItem& f) {
      if (prov_scale[f.parent] == f.whole) return f.parent;
      return new_node(f.parent, f.whole, -1);
    };

    std::vector<FrontierItem> frontier;
    {
      std::vector<std::int32_t> buf;
      tree_.descend(tree_.root(),
                    pow8(root_scale_) / (2.0 * static_cast<double>(n)), buf);
      for (std::int32_t tn : buf) frontier.push_back({tn, 0, root_scale_});
    }

    std::unordered_map<std::uint64_t, std::int32_t> bucket;
    for (std::size_t t = 0; t < family_.scales.size(); ++t) {
      const ScaleEntry& entry = family_.scales[t];
      const double threshold = entry.scale() / (2.0 * static_cast<double>(n));
      std::vector<FrontierItem> next;
      next.reserve(frontier.size());
      std::vector<std::int32_t> buf;
      for (const FrontierItem& f : frontier) {
        buf.clear();
        tree_.descend(f.tnode, threshold, buf);
        if (buf.size() == 1) {
          next.push_back({f.tnode, f.parent, entry.j});
          continue;
        }
        const std::int32_t under = attach_point(f);
        for (std::int32_t tn : buf) next.push_back({tn, under, entry.j});
      }
      // group siblings that share a partition block; singleton groups add no node
      auto key_of = [&](const FrontierItem& item) -> std::uint64_t {
        const std::int32_t q = qid_at(t, item.tnode);
        const std::int32_t rank = q >= 0 ? parts[t].block[q] : 0;
        if (rank <= 0) return 0;
        return (static_cast<std::uint64_t>(item.parent) << 32) |
               static_cast<std::uint32_t>(rank);
      };
      bucket.clear();
      for (const FrontierItem& item : next) {
        const std::uint64_t key = key_of(item);
        if (key == 0) continue;
        ++bucket[key];
      }
      std::unordered_map<std::uint64_t, std::int32_t> group_node;
      for (FrontierItem& item : next) {
        const std::uint64_t key = key_of(item);
        if (key == 0 || bucket[key] < 2) continue;
        auto [it, fresh] = group_node.try_emplace(key, -1);
        if (fresh) it->second = new_node(item.parent, entry.j, -1);
        item.parent = it->second;
      }
      frontier = std::move(next);
    }

    // expand the remaining block leaves into point leaves; points are
    // singletons below the smallest processed scale
    for (const FrontierItem& f : frontier) {
      std::vector<VertexId> pts;
      for (VertexId v : tree_.leaves_under(f.tnode))
        if (is_active[v]) pts.push_back(v);
      if (pts.empty()) continue;
      const std::int32_t attach = pts.size() >= 2 ? attach_point(f) : f.parent;
      for (VertexId v : pts) new_node(attach, 0, v);
    }

    // drop childless internals and splice single-child chains
    const std::size_t total = prov_parent.size();
    std::vector<std::vector<std::int32_t>> kids(total);
    for (std::size_t i = 1; i < total; ++i) kids[prov_parent[i]].push_back(static_cast<std::int32_t>(i));
    std::vector<std::int32_t> rep(total, -1);
    {
      // post-order over the provisional tree
      std::vector<std::pair<std::int32_t, bool>> stack{{0, false}};
      while (!stack.empty()) {
        auto [v, done] = stack.back();
        stack.pop_back();
        if (!done) {
          stack.push_back({v, true});
          for (std::int32_t ch : kids[v]) stack.push_back({ch, false});
          continue;
        }
        if (prov_point[v] >= 0) {
          rep[v] = v;
          continue;
        }
        std::int32_t alive = -1;
        int count = 0;
        for (std::int32_t ch : kids[v]) {
          if (rep[ch] != -1) {
            alive = rep[ch];
            ++count;
          }
        }
        if (count == 0)
          rep[v] = -1;
        else if (count == 1)
          rep[v] = alive;
        else
          rep[v] = v;
      }
    }
    CKR_CHECK(rep[0] != -1, "hierarchy: empty tree after pruning");

    // emit the compacted tree breadth-first
    struct QItem {
      std::int32_t prov;
      std::int32_t parent_final;
    };
    std::vector<QItem> queue{{rep[0], -1}};
    result.root = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const QItem item = queue[head];
      const std::int32_t v = item.prov;
      const std::int32_t id = static_cast<std::int32_t>(result.nodes.size());
      HierarchyTree::Node node;
      node.parent = item.parent_final;
      node.scale = prov_scale[v];
      node.point = prov_point[v];
      result.nodes.push_back(node);
      if (prov_point[v] >= 0) {
        result.leaf_of_point[prov_point[v]] = id;
        continue;
      }
      for (std::int32_t ch : kids[v])
        if (rep[ch] != -1) queue.push_back({rep[ch], id});
    }
    return result;
  }

  const WeightedGraph& graph_;
  BottleneckTree tree_;
  ScaleFamily family_;
  std::vector<std::vector<std::pair<std::int32_t, std::int32_t>>> tnode_qid_;
  int root_scale_ = 0;
};

inline HierarchySample sample_hierarchy(const WeightedGraph& g,
                                        std::span<const VertexId> active,
                                        const RandomSource& rng) {
  return HierarchySampler(g).sample(active, rng);
}

// Relabel scale exponents as distances 8^s; leaves get 0.
inline UltrametricTree hierarchy_to_ultrametric(const HierarchyTree& h) {
  std::vector<UltrametricTree::Node> nodes(h.nodes.size());
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    nodes[i].parent = h.nodes[i].parent;
    nodes[i].point = h.nodes[i].point;
    nodes[i].gamma = h.nodes[i].point >= 0 ? 0.0 : pow8(h.nodes[i].scale);
  }
  return UltrametricTree(std::move(nodes), h.root,
                         static_cast<VertexId>(h.leaf_of_point.size()));
}

}  // namespace ckr
