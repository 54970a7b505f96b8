#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopym/graph.hpp"
#include "loopym/loop.hpp"
#include "loopym/network.hpp"
#include "loopym/plaquette.hpp"

using namespace loopym;

TEST_CASE("torus(3,2) counts and regularity") {
  Graph g = Graph::torus(3, 2);
  CHECK(g.num_vertices() == 9);
  CHECK(g.num_edges() == 18);
  for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) == 4);
}

TEST_CASE("torus regularity, exhaustive L <= 4, n <= 3") {
  for (int L = 3; L <= 4; ++L) {
    for (int n = 2; n <= 3; ++n) {
      Graph g = Graph::torus(L, n);
      int count = 1;
      for (int i = 0; i < n; ++i) count *= L;
      CHECK(g.num_vertices() == count);
      CHECK(g.num_edges() == n * count);
      for (Vertex v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) == 2 * n);
    }
  }
}

TEST_CASE("torus(2,2) rejected") {
  CHECK_THROWS_AS(Graph::torus(2, 2), Error);
  try {
    Graph::torus(2, 2);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::TorusTooSmall);
  }
}

TEST_CASE("cycle(3) is the triangle") {
  Graph g = Graph::cycle(3);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.name(0) == "a");
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(0, 2));
}

TEST_CASE("explicit graph validation") {
  CHECK_THROWS_AS(Graph::explicit_graph({"a", "b"}, {{"a", "a"}}), Error);
  CHECK_THROWS_AS(Graph::explicit_graph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), Error);
  CHECK_THROWS_AS(Graph::explicit_graph({"a", "b", "c"}, {{"a", "b"}}), Error);
  Graph g = Graph::explicit_graph({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  CHECK(g.num_edges() == 3);
}

TEST_CASE("spanning tree on cycle(3) from a") {
  Graph g = Graph::cycle(3);
  SpanningTree t = spanning_tree(g, 0);
  CHECK(t.parent[1] == 0);
  CHECK(t.parent[2] == 0);
  CHECK(t.bfs_order.size() == 3);
}

TEST_CASE("spanning tree edge count") {
  for (const Graph& g : {Graph::torus(3, 2), Graph::complete(4), Graph::cycle(5)}) {
    SpanningTree t = spanning_tree(g, 0);
    int tree_edges = 0;
    for (Vertex v = 0; v < g.num_vertices(); ++v)
      if (v != t.root && t.parent_edge[v] >= 0) ++tree_edges;
    CHECK(tree_edges == g.num_vertices() - 1);
  }
  CHECK_THROWS_AS(spanning_tree(Graph::cycle(3), 7), Error);
}

TEST_CASE("plaquette census") {
  struct Case { int L, n, expect; };
  for (auto [L, n, expect] : {Case{3, 2, 18}, Case{3, 3, 162}, Case{4, 2, 32}}) {
    Graph g = Graph::torus(L, n);
    auto plaq = enumerate_plaquettes(g);
    CHECK(static_cast<int>(plaq.size()) == expect);
    for (const auto& p : plaq) {
      CHECK(p.length() == 4);
      CHECK(p.is_geodesic());
    }
    // distinct cyclic classes
    for (size_t i = 0; i < plaq.size(); ++i)
      for (size_t j = i + 1; j < plaq.size(); ++j) CHECK(plaq[i] != plaq[j]);
  }
}

TEST_CASE("plaquettes containing an oriented edge") {
  for (int n = 2; n <= 3; ++n) {
    Graph g = Graph::torus(3, n);
    auto all = enumerate_plaquettes(g);
    int total = 0;
    for (int oid = 0; oid < g.num_oriented(); ++oid) {
      OrientedEdge e = g.oriented_edge(oid);
      auto pcs = plaquettes_containing(g, e);
      CHECK(static_cast<int>(pcs.size()) == 2 * (n - 1));
      total += static_cast<int>(pcs.size());
      for (const auto& pc : pcs) {
        auto cr = crossings(pc.loop, e.tail, e.head);
        REQUIRE(cr.size() == 1);
        CHECK(cr[0] == pc.index);
        CHECK(std::find(all.begin(), all.end(), pc.loop) != all.end());
      }
    }
    CHECK(total == 4 * n * (n - 1) * g.num_vertices());
  }
  Graph g = Graph::torus(3, 2);
  CHECK_THROWS_AS(plaquettes_containing(Graph::cycle(3), {0, 1}), Error);
  CHECK_THROWS_AS(plaquettes_containing(g, {0, 8}), Error);
}

TEST_CASE("non-torus plaquette enumeration rejected") {
  CHECK_THROWS_AS(enumerate_plaquettes(Graph::complete(4)), Error);
}
