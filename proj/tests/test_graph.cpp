#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ckr/graph.hpp"
#include "test_support.hpp"

using namespace ckr;

TEST_CASE("load_graph parses the edge-list format") {
  std::istringstream in("# comment\n2\n0 1 1.0\n");
  const WeightedGraph g = load_graph(in);
  REQUIRE(g.vertex_count() == 2);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].w == 1.0);
}

TEST_CASE("load_graph drops self-loops") {
  std::istringstream in("1\n0 0 5.0\n");
  const WeightedGraph g = load_graph(in);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("load_graph collapses parallel edges to the minimum") {
  std::istringstream in("2\n0 1 3.0\n1 0 2.0\n");
  const WeightedGraph g = load_graph(in);
  REQUIRE(g.edge_count() == 1);
  CHECK(g.edges()[0].w == 2.0);
}

TEST_CASE("load_graph reports bad input with line numbers") {
  auto message_of = [](const char* text) {
    std::istringstream in(text);
    try {
      load_graph(in);
    } catch (const input_error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message_of("2\n0 1\n") == "line 2: expected 'u v w'");
  CHECK(message_of("2\n0 1 0.0\n") == "line 2: non-positive weight");
  CHECK(message_of("# x\n2\n0 5 1.0\n") == "line 3: vertex id out of range");
  CHECK(message_of("") == "missing vertex count line");
}

TEST_CASE("graph round-trips through save_graph") {
  RandomSource rng(11);
  const WeightedGraph g = gen::random_connected(17, 9, rng);
  std::stringstream buf;
  save_graph(buf, g);
  const WeightedGraph h = load_graph(buf);
  REQUIRE(h.edge_count() == g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    CHECK(g.edges()[i].u == h.edges()[i].u);
    CHECK(g.edges()[i].v == h.edges()[i].v);
    CHECK(g.edges()[i].w == h.edges()[i].w);
  }
}

TEST_CASE("dijkstra on a unit path") {
  const WeightedGraph g = gen::path(3);
  const DistanceMap d = dijkstra(g, 0);
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 1.0);
  CHECK(d[2] == 2.0);
}

TEST_CASE("dijkstra radius cutoff leaves far vertices unreached") {
  const WeightedGraph g = gen::path(3);
  const DistanceMap d = dijkstra(g, 0, 1.0);
  CHECK(d.reached(1));
  CHECK_FALSE(d.reached(2));
}

TEST_CASE("dijkstra routes around a heavy edge") {
  const WeightedGraph g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 3.0}});
  const DistanceMap d = dijkstra(g, 0);
  CHECK(d[2] == testing::brute_force_shortest(g, 0, 2));
  CHECK(d[2] == 2.0);
}

TEST_CASE("exact_metric basics") {
  CHECK(exact_metric(WeightedGraph(1, {})).at(0, 0) == 0.0);
  CHECK(exact_metric(gen::path(3)).at(0, 2) == 2.0);
  const DistanceMatrix two = exact_metric(WeightedGraph(2, {}));
  CHECK(two.at(0, 1) == kUnreached);
}

TEST_CASE("dijkstra agrees with exact_metric rows on a corpus") {
  for (const WeightedGraph& g : testing::small_corpus(30, 64, 101)) {
    const DistanceMatrix m = exact_metric(g);
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
      const DistanceMap d = dijkstra(g, s);
      for (VertexId v = 0; v < g.vertex_count(); ++v) REQUIRE(d[v] == m.at(s, v));
    }
  }
}

TEST_CASE("exact_metric is symmetric and satisfies the triangle inequality") {
  for (const WeightedGraph& g : testing::small_corpus(20, 32, 202)) {
    const DistanceMatrix m = exact_metric(g);
    const VertexId n = g.vertex_count();
    for (VertexId i = 0; i < n; ++i) {
      REQUIRE(m.at(i, i) == 0.0);
      for (VertexId j = 0; j < n; ++j) REQUIRE(m.at(i, j) == m.at(j, i));
    }
    for (VertexId i = 0; i < n; ++i)
      for (VertexId j = 0; j < n; ++j)
        for (VertexId k = 0; k < n; ++k)
          REQUIRE(m.at(i, j) <= m.at(i, k) + m.at(k, j));
  }
}
