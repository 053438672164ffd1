#include <algorithm>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "brute.hpp"
#include "corpus.hpp"
#include "hardcore/graph.hpp"

using namespace hardcore;

TEST_CASE("graph construction validates simplicity") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), std::invalid_argument);
  Graph g(4, {{0, 1}, {2, 1}, {2, 3}});
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.max_degree() == 2);
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});
}

TEST_CASE("adjacency symmetry holds for all constructed graphs") {
  for (const auto& [name, g] : corpus::connected_corpus()) {
    INFO(name);
    for (int v = 0; v < g.vertex_count(); ++v)
      for (int u : g.neighbors(v)) CHECK(g.has_edge(u, v));
  }
}

TEST_CASE("girth: named cases") {
  CHECK(girth(cycle_graph(6)) == 6);
  CHECK(girth(path_graph(5)) == kInfiniteGirth);
  CHECK(girth(heawood_graph()) == 6);
  CHECK(girth(petersen_graph()) == 5);
  CHECK(girth(complete_graph(4)) == 3);
  CHECK(girth(random_tree(30, 5)) == kInfiniteGirth);
}

TEST_CASE("girth matches backtracking oracle on the corpus") {
  for (const auto& [name, g] : corpus::connected_corpus()) {
    if (g.vertex_count() > 10) continue;
    INFO(name);
    CHECK(girth(g) == brute::girth(g));
  }
  CHECK(girth(heawood_graph()) == brute::girth(heawood_graph()));
}

TEST_CASE("short_cycle_count") {
  Graph triangle = cycle_graph(3);
  for (int v = 0; v < 3; ++v) CHECK(short_cycle_count(triangle, v, 7) == 1);
  Graph tree = random_tree(20, 9);
  for (int v = 0; v < 20; ++v) CHECK(short_cycle_count(tree, v, 8) == 0);
  Graph k4 = complete_graph(4);
  for (int v = 0; v < 4; ++v) CHECK(short_cycle_count(k4, v, 4) == 3);
  // Heawood: girth 6, and by vertex-transitivity each vertex lies on
  // 28*6/14 = 12 of the 28 hexagons.
  Graph hw = heawood_graph();
  for (int v = 0; v < 14; ++v) {
    CHECK(short_cycle_count(hw, v, 6) == 0);
    CHECK(short_cycle_count(hw, v, 7) == 12);
  }
  CHECK_THROWS_AS(short_cycle_count(k4, 0, 2), std::invalid_argument);
}

TEST_CASE("girth lower-bounds any cycle found by short-cycle scans") {
  for (const auto& [name, g] : corpus::connected_corpus()) {
    if (girth(g) == kInfiniteGirth) continue;
    INFO(name);
    for (int v = 0; v < g.vertex_count(); ++v)
      if (short_cycle_count(g, v, girth(g)) != 0) FAIL("cycle below girth");
  }
}

TEST_CASE("random_regular basics") {
  Graph k4 = random_regular(4, 3, 123);
  CHECK(k4.edge_count() == 6);  // K4 is the only 3-regular graph on 4 vertices

  Graph a = random_regular(10, 3, 77);
  Graph b = random_regular(10, 3, 77);
  CHECK(a.edges() == b.edges());
  Graph c = random_regular(10, 3, 78);
  CHECK(a.edges() != c.edges());

  Graph big = random_regular(1000, 10, 5);
  for (int v = 0; v < big.vertex_count(); ++v) CHECK(big.degree(v) == 10);

  CHECK_THROWS_AS(random_regular(5, 3, 1), std::invalid_argument);  // odd sum
  CHECK_THROWS_AS(random_regular(4, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(random_regular(10, 3, 1, 0), std::runtime_error);
  CHECK_THROWS_AS(random_regular_bipartite(8, 3, 1, 0), std::runtime_error);
}

TEST_CASE("random_regular degree audit across seeds") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    Graph g = random_regular(50, 12, seed);
    CHECK(g.is_regular());
    CHECK(g.max_degree() == 12);
  }
}

TEST_CASE("random_regular_bipartite") {
  Graph k33 = random_regular_bipartite(3, 3, 9);
  CHECK(k33.edge_count() == 9);  // forced K_{3,3}
  for (int v = 0; v < 6; ++v) CHECK(k33.degree(v) == 3);

  Graph g = random_regular_bipartite(500, 8, 4);
  std::vector<int> side;
  REQUIRE(is_bipartite(g, &side));
  for (const auto& [u, v] : g.edges()) CHECK(side[u] != side[v]);
  for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) == 8);
  int gi = girth(g);
  CHECK(gi >= 4);
  CHECK(gi % 2 == 0);
}

TEST_CASE("oriented_view on a star") {
  Graph star = star_graph(5);
  OrientedView view = oriented_view(star, 0);
  CHECK(view.in_neighbors[0] == star.neighbors(0));
  for (int leaf = 1; leaf <= 5; ++leaf) CHECK(view.in_neighbors[leaf].empty());
  CHECK(view.oriented_edge_count == 5);
}

TEST_CASE("oriented_view on a path endpoint orients the 3 nearest edges") {
  Graph p = path_graph(8);
  OrientedView view = oriented_view(p, 0);
  CHECK(view.oriented_edge_count == 3);
  // Heads keep listening to tails; tails drop their heads.
  CHECK(view.in_neighbors[0] == std::vector<int>{1});
  CHECK(view.in_neighbors[1] == std::vector<int>{2});
  CHECK(view.in_neighbors[2] == std::vector<int>{3});
  CHECK(view.in_neighbors[3] == std::vector<int>{4});
  CHECK(view.in_neighbors[4] == p.neighbors(4));
}

TEST_CASE("oriented_view audit against the distance-2 edge set") {
  for (const Graph& g :
       {heawood_graph(), petersen_graph(), cycle_graph(5),
        random_regular(40, 4, 17)}) {
    for (int w = 0; w < g.vertex_count(); w += 3) {
      OrientedView view = oriented_view(g, w);
      auto dist = bfs_distances(g, w);
      int oriented = 0;
      std::set<int> tails;
      for (const auto& [a, b] : g.edges()) {
        if (std::min(dist[a], dist[b]) <= 2 && dist[a] != dist[b]) {
          ++oriented;
          tails.insert(dist[a] > dist[b] ? a : b);
        }
      }
      CHECK(view.oriented_edge_count == oriented);
      int dropped_total = 0;
      std::set<int> changed;
      for (int x = 0; x < g.vertex_count(); ++x) {
        int d = g.degree(x) - static_cast<int>(view.in_neighbors[x].size());
        dropped_total += d;
        if (d > 0) changed.insert(x);
        // N*(x) is always a subset of N(x).
        for (int z : view.in_neighbors[x]) CHECK(g.has_edge(x, z));
      }
      CHECK(dropped_total == oriented);
      CHECK(changed == tails);
    }
  }
}

TEST_CASE("ball and sphere") {
  Graph c6 = cycle_graph(6);
  CHECK(ball(c6, 2, 0) == std::vector<int>{2});
  CHECK(sphere(c6, 0, 3) == std::vector<int>{3});
  CHECK(sphere(c6, 0, 1) == std::vector<int>{1, 5});

  // |B(v,r)| <= 1 + Delta((Delta-1)^r - 1)/(Delta-2) + Delta.
  Graph g = random_regular(200, 5, 3);
  double d = 5.0;
  for (int r = 1; r <= 3; ++r) {
    double bound = 1.0 + d * (std::pow(d - 1.0, r) - 1.0) / (d - 2.0) + d;
    for (int v = 0; v < 20; ++v)
      CHECK(static_cast<double>(ball(g, v, r).size()) <= bound);
  }
}

TEST_CASE("edge list round trip") {
  Graph p3 = load_edge_list("0 1\n1 2\n");
  CHECK(p3.vertex_count() == 3);
  CHECK(p3.edge_count() == 2);
  CHECK(p3.degree(1) == 2);

  for (std::uint64_t seed : {1u, 9u}) {
    Graph g = random_regular(30, 4, seed);
    Graph back = load_edge_list(save_edge_list(g));
    CHECK(back.vertex_count() == g.vertex_count());
    CHECK(back.edges() == g.edges());
  }

  CHECK_THROWS_WITH(load_edge_list("0 0\n"),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(load_edge_list("0 1\nnope\n"),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_AS(load_edge_list("0 1\n0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(load_edge_list("0 1 2\n"), std::invalid_argument);

  Graph padded = load_edge_list("0 1\n", 5);
  CHECK(padded.vertex_count() == 5);
  CHECK(padded.degree(4) == 0);
}
