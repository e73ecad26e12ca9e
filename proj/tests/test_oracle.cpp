#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ckr/oracle.hpp"
#include "test_support.hpp"

using namespace ckr;

namespace {

DistanceMatrix euclidean_metric(VertexId n, std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<std::pair<double, double>> pts(n);
  for (auto& p : pts) p = {rng.next_double(), rng.next_double()};
  DistanceMatrix m(n);
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) {
      const double dx = pts[i].first - pts[j].first;
      const double dy = pts[i].second - pts[j].second;
      const double d = std::sqrt(dx * dx + dy * dy) + 1e-9;
      m.at(i, j) = m.at(j, i) = d;
    }
  return m;
}

}  // namespace

TEST_CASE("single-vertex oracle") {
  const WeightedGraph g(1, {});
  const DistanceOracle o = build_oracle(g, 1, RandomSource(1));
  REQUIRE(o.levels.size() == 1);
  CHECK(o.home[0] == 0);
  CHECK(o.query(0, 0) == 0.0);
}

TEST_CASE("a fully padded graph needs one iteration") {
  // on the unit cycle every point is padded at every scale
  const DistanceOracle o = build_oracle(gen::cycle(32), 2, RandomSource(5));
  CHECK(o.levels.size() == 1);
  for (std::int32_t h : o.home) CHECK(h == 0);
}

TEST_CASE("oracle rejects bad arguments") {
  CHECK_THROWS_AS(build_oracle(gen::cycle(8), 0, RandomSource(1)), input_error);
  const WeightedGraph split(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(build_oracle(split, 2, RandomSource(1)), input_error);
}

TEST_CASE("queries dominate the metric and respect the stretch bound") {
  RandomSource corpus_rng(31337);
  for (int trial = 0; trial < 6; ++trial) {
    RandomSource sub = corpus_rng.substream("graph", trial);
    const WeightedGraph g = gen::random_connected(64, 96, sub);
    const DistanceMatrix m = exact_metric(g);
    for (int k : {1, 2, 3}) {
      const DistanceOracle o = build_oracle(g, k, sub.substream("build", k));
      REQUIRE(o.vertex_count() == 64);
      for (VertexId x = 0; x < 64; ++x) {
        CHECK(o.query(x, x) == 0.0);
        for (VertexId y = x + 1; y < 64; ++y) {
          const double q = o.query(x, y);
          REQUIRE(q >= m.at(x, y));
          REQUIRE(q <= 256.0 * k * m.at(x, y));
        }
      }
    }
  }
}

TEST_CASE("single edge with k=1 answers within [1, 256]") {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DistanceOracle o = build_oracle(g, 1, RandomSource(seed));
    const double q = o.query(0, 1);
    REQUIRE(q >= 1.0);
    REQUIRE(q <= 256.0);
  }
}

TEST_CASE("every vertex is present in all levels up to its home") {
  RandomSource rng(7);
  const WeightedGraph g = gen::random_connected(80, 60, rng);
  const DistanceOracle o = build_oracle(g, 2, rng.substream("build"));
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    REQUIRE(o.home[v] >= 0);
    for (std::size_t level = 0; level < o.levels.size(); ++level) {
      const bool present = o.levels[level].has_point(v);
      CHECK(present == (static_cast<std::int32_t>(level) <= o.home[v]));
    }
  }
}

TEST_CASE("query equals a scan over shared levels at the min-home level") {
  RandomSource rng(11);
  const WeightedGraph g = gen::random_connected(48, 40, rng);
  const DistanceOracle o = build_oracle(g, 2, rng.substream("b"));
  for (VertexId x = 0; x < g.vertex_count(); ++x)
    for (VertexId y = x + 1; y < g.vertex_count(); ++y) {
      const std::int32_t shared = std::min(o.home[x], o.home[y]);
      double scan = kUnreached;
      for (std::int32_t level = 0; level <= shared; ++level) {
        const double d = o.levels[level].distance(x, y);
        if (level == shared) scan = d;
      }
      REQUIRE(o.query(x, y) == scan);
    }
}

TEST_CASE("removed points were padded in their level") {
  RandomSource rng(23);
  const WeightedGraph g = gen::random_connected(40, 30, rng);
  const DistanceMatrix m = exact_metric(g);
  HierarchySampler sampler(g);
  const DistanceOracle o = build_oracle(g, 2, rng.substream("bb"));
  // re-check the padding contract through the stored ultrametrics: any pair
  // within beta*8^j of a point x sits strictly below distance 8^j in x's
  // home level whenever both are present there
  for (VertexId x = 0; x < g.vertex_count(); ++x) {
    const auto& tree = o.levels[o.home[x]];
    for (VertexId y = 0; y < g.vertex_count(); ++y) {
      if (x == y || !tree.has_point(y)) continue;
      for (const ScaleEntry& e : sampler.family().scales) {
        if (m.at(x, y) <= o.beta * e.scale())
          REQUIRE(tree.distance(x, y) <= e.scale());
      }
    }
  }
}

TEST_CASE("expected iteration count stays near k * n^(1/k)") {
  const VertexId n = 256;
  const int k = 2;
  RandomSource rng(2718);
  const WeightedGraph g = gen::random_connected(n, 2 * n, rng);
  double total_levels = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    const DistanceOracle o = build_oracle(g, k, RandomSource(1000 + s));
    total_levels += static_cast<double>(o.levels.size());
  }
  const double mean_levels = total_levels / seeds;
  INFO("mean levels " << mean_levels);
  CHECK(mean_levels <= 4.0 * k * std::pow(static_cast<double>(n), 1.0 / k));
}

TEST_CASE("storage stays within C * k * n^(1+1/k)") {
  RandomSource rng(99);
  for (VertexId n : {64, 128}) {
    RandomSource grng = rng.substream("g", n);
    const WeightedGraph g = gen::random_connected(n, 2 * n, grng);
    for (int k : {1, 2, 3}) {
      const DistanceOracle o = build_oracle(g, k, rng.substream("b", n, k));
      const double budget =
          4.0 * k * std::pow(static_cast<double>(n), 1.0 + 1.0 / k);
      INFO("n=" << n << " k=" << k << " nodes=" << o.stored_nodes());
      CHECK(static_cast<double>(o.stored_nodes()) <= budget);
    }
  }
}

TEST_CASE("snapshot round-trips with bit-identical queries") {
  RandomSource rng(555);
  const WeightedGraph g = gen::random_connected(60, 45, rng);
  const DistanceOracle o = build_oracle(g, 3, rng.substream("x"));
  std::stringstream buf;
  write_oracle(buf, o);
  const DistanceOracle back = read_oracle(buf);
  CHECK(back.k == o.k);
  CHECK(back.beta == o.beta);
  CHECK(back.seed == o.seed);
  CHECK(back.home == o.home);
  for (VertexId x = 0; x < g.vertex_count(); ++x)
    for (VertexId y = 0; y < g.vertex_count(); ++y)
      REQUIRE(back.query(x, y) == o.query(x, y));
}

TEST_CASE("matrix oracle validates its input") {
  DistanceMatrix bad(2);
  bad.at(0, 1) = 1.0;
  bad.at(1, 0) = 2.0;
  try {
    oracle_from_matrix(bad, 1, RandomSource(1));
    FAIL("asymmetric matrix accepted");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("asymmetric") != std::string::npos);
  }

  DistanceMatrix far(3);
  far.at(0, 1) = far.at(1, 0) = 1.0;
  far.at(1, 2) = far.at(2, 1) = 1.0;
  far.at(0, 2) = far.at(2, 0) = 5.0;  // violates the triangle inequality
  CHECK_THROWS_AS(oracle_from_matrix(far, 1, RandomSource(1)), input_error);
}

TEST_CASE("two-point matrix answers within the composed bound") {
  DistanceMatrix m(2);
  m.at(0, 1) = m.at(1, 0) = 3.5;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DistanceOracle o = oracle_from_matrix(m, 1, RandomSource(seed));
    const double q = o.query(0, 1);
    REQUIRE(q >= 3.5);
    REQUIRE(q <= 5.0 * 256.0 * 3.5);
  }
}

TEST_CASE("path-graph matrix stays within the spanner-composed stretch") {
  const WeightedGraph path = gen::path(24);
  const DistanceMatrix m = exact_metric(path);
  const int k = 2;
  const DistanceOracle o = oracle_from_matrix(m, k, RandomSource(17));
  for (VertexId x = 0; x < 24; ++x)
    for (VertexId y = x + 1; y < 24; ++y) {
      const double q = o.query(x, y);
      REQUIRE(q >= m.at(x, y));
      REQUIRE(q <= 5.0 * 256.0 * k * m.at(x, y));
    }
}

TEST_CASE("random Euclidean metric through the dense path") {
  const DistanceMatrix m = euclidean_metric(48, 2024);
  const int k = 2;
  const DistanceOracle o = oracle_from_matrix(m, k, RandomSource(4));
  for (VertexId x = 0; x < m.n; ++x)
    for (VertexId y = x + 1; y < m.n; ++y) {
      const double q = o.query(x, y);
      REQUIRE(q >= m.at(x, y));
      REQUIRE(q <= 1280.0 * k * m.at(x, y));
    }
}
