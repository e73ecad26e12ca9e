#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "ckr/frt.hpp"
#include "test_support.hpp"

using namespace ckr;

TEST_CASE("single vertex embeds as a single leaf") {
  const WeightedGraph g(1, {});
  const UltrametricTree t = sample_frt(g, RandomSource(1));
  CHECK(t.node_count() == 1);
  CHECK(t.distance(0, 0) == 0.0);
}

TEST_CASE("disconnected graphs are rejected") {
  const WeightedGraph g(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(sample_frt(g, RandomSource(1)), input_error);
}

TEST_CASE("two points land within [d, 32d] for every seed") {
  for (double d : {1.0, 1.2, 3.0, 100.0, 0.01}) {
    const WeightedGraph g(2, {{0, 1, d}});
    HierarchySampler sampler(g);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const UltrametricTree t = sample_frt(sampler, RandomSource(seed));
      const double nu = t.distance(0, 1);
      REQUIRE(nu >= d);
      REQUIRE(nu <= 32.0 * d);
    }
  }
}

TEST_CASE("samples dominate the graph metric exactly") {
  for (const WeightedGraph& g : testing::small_corpus(12, 64, 550)) {
    if (!is_connected(g)) continue;
    const DistanceMatrix m = exact_metric(g);
    HierarchySampler sampler(g);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const UltrametricTree t = sample_frt(sampler, RandomSource(seed));
      for (VertexId x = 0; x < g.vertex_count(); ++x)
        for (VertexId y = x + 1; y < g.vertex_count(); ++y)
          REQUIRE(t.distance(x, y) >= m.at(x, y));
    }
  }
}

TEST_CASE("sampled trees satisfy the strong triangle inequality") {
  RandomSource rng(888);
  const WeightedGraph g = gen::random_connected(24, 20, rng);
  HierarchySampler sampler(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const UltrametricTree t = sample_frt(sampler, RandomSource(seed));
    const VertexId n = g.vertex_count();
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = 0; y < n; ++y)
        for (VertexId z = 0; z < n; ++z)
          REQUIRE(t.distance(x, z) <=
                  std::max(t.distance(x, y), t.distance(y, z)));
  }
}

TEST_CASE("ultra_distance basics") {
  const WeightedGraph g = gen::cycle(8);
  const UltrametricTree t = sample_frt(g, RandomSource(5));
  CHECK(ultra_distance(t, 3, 3) == 0.0);
  CHECK(ultra_distance(t, 2, 6) == ultra_distance(t, 6, 2));
  CHECK_THROWS_AS(ultra_distance(t, 0, 99), input_error);

  std::vector<UltrametricTree::Node> nodes(3);
  nodes[0] = {-1, 64.0, -1};
  nodes[1] = {0, 0.0, 0};
  nodes[2] = {0, 0.0, 1};
  const UltrametricTree two(std::move(nodes), 0, 2);
  CHECK(ultra_distance(two, 0, 1) == 64.0);
}

TEST_CASE("distortion report is deterministic and bounded for two points") {
  const WeightedGraph g(2, {{0, 1, 1.0}});
  const DistortionReport a = empirical_distortion(g, 50, RandomSource(3));
  const DistortionReport b = empirical_distortion(g, 50, RandomSource(3));
  REQUIRE(a.pairs.size() == 1);
  CHECK(a.empirical_d >= 1.0);
  CHECK(a.empirical_d <= 32.0);
  CHECK(a.empirical_d == b.empirical_d);
  CHECK(a.pairs[0].mean_nu == b.pairs[0].mean_nu);
}

TEST_CASE("mean stretch stays within 40 log2 n on unit cycles") {
  for (VertexId n : {8, 16, 32}) {
    const DistortionReport r =
        empirical_distortion(gen::cycle(n), 200, RandomSource(n));
    INFO("n=" << n << " D=" << r.empirical_d);
    CHECK(r.empirical_d <= 40.0 * std::log2(static_cast<double>(n)));
  }
}

TEST_CASE("fitted distortion constant is stable across cycle sizes") {
  double lo = 1e300, hi = 0.0;
  for (VertexId n : {8, 16, 32, 64}) {
    const DistortionReport r =
        empirical_distortion(gen::cycle(n), 300, RandomSource(77 + n));
    const double c = r.empirical_d / std::log2(static_cast<double>(n));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  INFO("c range [" << lo << ", " << hi << "]");
  CHECK(hi <= 2.0 * lo);
}

TEST_CASE("tree text output round-trips") {
  const WeightedGraph g = gen::cycle(12);
  const UltrametricTree t = sample_frt(g, RandomSource(9));
  std::ostringstream out;
  t.write_text(out);
  std::istringstream in(out.str());
  const UltrametricTree back = UltrametricTree::read_text(in);
  for (VertexId x = 0; x < 12; ++x)
    for (VertexId y = 0; y < 12; ++y)
      REQUIRE(back.distance(x, y) == t.distance(x, y));
}
