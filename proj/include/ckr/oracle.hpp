#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "ckr/frt.hpp"
#include "ckr/graph.hpp"
#include "ckr/hierarchy.hpp"
#include "ckr/rng.hpp"
#include "ckr/spanner.hpp"
#include "ckr/ultrametric.hpp"

namespace ckr {

// Approximate distance oracle: a list of ultrametrics H_i over shrinking
// survivor sets X_i, where X_{i+1} drops the points padded at level i. A query
// reads one lca in the deepest level holding both endpoints, giving
// rho <= query <= (8/beta) rho with the default beta = 1/(32k), i.e. 256k.
struct DistanceOracle {
  std::vector<UltrametricTree> levels;
  std::vector<std::int32_t> home;  // level whose padded set removed the vertex
  double beta = 0.0;
  int k = 1;
  std::uint64_t seed = 0;

  VertexId vertex_count() const { return static_cast<VertexId>(home.size()); }

  double query(VertexId x, VertexId y) const {
    if (x < 0 || x >= vertex_count() || y < 0 || y >= vertex_count())
      throw input_error("oracle: unknown vertex");
    const std::int32_t level = std::min(home[x], home[y]);
    return levels[level].distance(x, y);
  }

  std::size_t stored_nodes() const {
    std::size_t total = 0;
    for (const UltrametricTree& t : levels) total += t.node_count();
    return total;
  }
};

inline constexpr int kOracleResampleCap = 32;

inline DistanceOracle build_oracle(const WeightedGraph& g, int k, const RandomSource& rng,
                                   double beta_override = 0.0) {
  if (k < 1) throw input_error("oracle: k must be at least 1");
  if (!is_connected(g)) throw input_error("oracle: graph must be connected");
  const double beta = beta_override > 0.0 ? beta_override : 1.0 / (32.0 * k);
  if (!(beta > 0.0 && beta < 0.125))
    throw input_error("oracle: beta must lie in (0, 1/8)");

  DistanceOracle oracle;
  oracle.beta = beta;
  oracle.k = k;
  oracle.seed = rng.key();
  oracle.home.assign(g.vertex_count(), -1);

  HierarchySampler sampler(g);
  std::vector<VertexId> survivors(g.vertex_count());
  std::iota(survivors.begin(), survivors.end(), 0);

  for (std::int32_t level = 0; !survivors.empty(); ++level) {
    std::vector<VertexId> padded_survivors;
    HierarchySample sample;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kOracleResampleCap)
        throw internal_error("oracle: no padded points after " +
                             std::to_string(kOracleResampleCap) + " draws at level " +
                             std::to_string(level) + " (seed " + std::to_string(rng.key()) +
                             ")");
      sample = sampler.sample(survivors,
                              rng.substream("oracle-level", level, attempt));
      const PaddedSet padded =
          padded_points(sampler.family(), sample.scale_partitions, beta);
      padded_survivors.clear();
      for (VertexId v : survivors)
        if (padded.contains(v)) padded_survivors.push_back(v);
      if (!padded_survivors.empty()) break;
    }
    oracle.levels.push_back(hierarchy_to_ultrametric(sample.tree));
    for (VertexId v : padded_survivors) oracle.home[v] = level;
    std::vector<VertexId> rest;
    std::set_difference(survivors.begin(), survivors.end(), padded_survivors.begin(),
                        padded_survivors.end(), std::back_inserter(rest));
    survivors = std::move(rest);
  }
  return oracle;
}

// Dense input path: validate the matrix as a metric, thin the implied complete
// graph with a 5-spanner, then build the oracle on the spanner. The spanner
// multiplies the approximation factor by 5.
inline DistanceOracle oracle_from_matrix(const DistanceMatrix& dist, int k,
                                         const RandomSource& rng) {
  const VertexId n = dist.n;
  for (VertexId i = 0; i < n; ++i)
    if (dist.at(i, i) != 0.0)
      throw input_error("matrix: nonzero diagonal at (" + std::to_string(i) + "," +
                        std::to_string(i) + ")");
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) {
      if (dist.at(i, j) != dist.at(j, i))
        throw input_error("matrix: asymmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      if (!(dist.at(i, j) > 0.0))
        throw input_error("matrix: non-positive off-diagonal at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
    }
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = 0; j < n; ++j)
      for (VertexId l = 0; l < n; ++l)
        if (dist.at(i, l) > dist.at(i, j) + dist.at(j, l))
          throw input_error("matrix: triangle inequality fails at (" + std::to_string(i) +
                            "," + std::to_string(j) + "," + std::to_string(l) + ")");

  std::vector<Edge> complete;
  complete.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) complete.push_back({i, j, dist.at(i, j)});
  const WeightedGraph full(n, std::move(complete));
  if (n <= 1) return build_oracle(full, k, rng);

  RandomSource spanner_rng = rng.substream("matrix-spanner");
  const Spanner sp = baswana_sen(full, 3, spanner_rng);  // stretch 5
  return build_oracle(spanner_graph(full, sp), k, rng);
}

namespace detail {

inline void put_u32(std::ostream& out, std::uint32_t x) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void put_u64(std::ostream& out, std::uint64_t x) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((x >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void put_f64(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }

inline std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw input_error("oracle snapshot: truncated");
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return x;
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw input_error("oracle snapshot: truncated");
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return x;
}

inline double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace detail

inline constexpr std::uint32_t kOracleMagic = 0x4f524b43u;  // "CKRO"
inline constexpr std::uint32_t kOracleVersion = 1;

// Versioned little-endian snapshot: header (n, k, beta, seed, level count),
// each level's tree, then the home table. A reloaded oracle answers
// bit-identical queries.
inline void write_oracle(std::ostream& out, const DistanceOracle& o) {
  using namespace detail;
  put_u32(out, kOracleMagic);
  put_u32(out, kOracleVersion);
  put_u64(out, static_cast<std::uint64_t>(o.home.size()));
  put_u32(out, static_cast<std::uint32_t>(o.k));
  put_f64(out, o.beta);
  put_u64(out, o.seed);
  put_u32(out, static_cast<std::uint32_t>(o.levels.size()));
  for (const UltrametricTree& t : o.levels) {
    put_u64(out, t.node_count());
    put_u32(out, static_cast<std::uint32_t>(t.root()));
    for (std::size_t i = 0; i < t.node_count(); ++i) {
      const auto& nd = t.node(static_cast<std::int32_t>(i));
      put_u32(out, static_cast<std::uint32_t>(nd.parent));
      put_u32(out, static_cast<std::uint32_t>(nd.point));
      put_f64(out, nd.gamma);
    }
  }
  for (std::int32_t h : o.home) put_u32(out, static_cast<std::uint32_t>(h));
}

inline DistanceOracle read_oracle(std::istream& in) {
  using namespace detail;
  if (get_u32(in) != kOracleMagic) throw input_error("oracle snapshot: bad magic");
  if (get_u32(in) != kOracleVersion) throw input_error("oracle snapshot: unsupported version");
  DistanceOracle o;
  const std::uint64_t n = get_u64(in);
  o.k = static_cast<int>(get_u32(in));
  o.beta = get_f64(in);
  o.seed = get_u64(in);
  const std::uint32_t level_count = get_u32(in);
  o.levels.reserve(level_count);
  for (std::uint32_t l = 0; l < level_count; ++l) {
    const std::uint64_t nodes = get_u64(in);
    const std::int32_t root = static_cast<std::int32_t>(get_u32(in));
    std::vector<UltrametricTree::Node> nd(nodes);
    for (std::uint64_t i = 0; i < nodes; ++i) {
      nd[i].parent = static_cast<std::int32_t>(get_u32(in));
      nd[i].point = static_cast<std::int32_t>(get_u32(in));
      nd[i].gamma = get_f64(in);
    }
    o.levels.emplace_back(std::move(nd), root, static_cast<VertexId>(n));
  }
  o.home.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) o.home[i] = static_cast<std::int32_t>(get_u32(in));
  return o;
}

}  // namespace ckr
