#include "feynq/graph.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

using feynq::FeynmanGraph;

namespace {

// independent spanning-tree oracle: try every (n-1)-subset of edge indices
// and keep those that connect all vertices
std::vector<std::vector<int>> spanning_trees_by_subsets(const FeynmanGraph& g) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<std::vector<int>> trees;
  if (n == 1) {
    trees.push_back({});
    return trees;
  }
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.begin(), pick.begin() + (n - 1), true);
  std::sort(pick.begin(), pick.end()); // lowest combination first
  do {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    const auto find = [&](int v) {
      while (parent[static_cast<std::size_t>(v)] != v)
        v = parent[static_cast<std::size_t>(v)];
      return v;
    };
    int merges = 0;
    std::vector<int> chosen;
    for (int k = 0; k < m; ++k) {
      if (!pick[static_cast<std::size_t>(k)]) continue;
      chosen.push_back(k);
      const auto& [a, b] = g.edges()[static_cast<std::size_t>(k)];
      const int ra = find(a - 1), rb = find(b - 1);
      if (ra != rb) {
        parent[static_cast<std::size_t>(ra)] = rb;
        ++merges;
      }
    }
    if (merges == n - 1) trees.push_back(chosen);
  } while (std::next_permutation(pick.begin(), pick.end()));
  std::sort(trees.begin(), trees.end());
  return trees;
}

long long cayley(int n) {
  long long r = 1;
  for (int i = 0; i < n - 2; ++i) r *= n;
  return r;
}

} // namespace

TEST_CASE("construction and validation") {
  const auto k3 = FeynmanGraph::complete(3);
  CHECK(k3.vertex_count() == 3);
  CHECK(k3.edges() ==
        std::vector<FeynmanGraph::Edge>{{1, 2}, {1, 3}, {2, 3}});
  CHECK(FeynmanGraph::complete(1).edge_count() == 0);
  CHECK(FeynmanGraph::complete(5).edge_count() == 10);

  CHECK_THROWS_AS(FeynmanGraph(3, {{1, 2}}), feynq::Disconnected);
  CHECK_THROWS_AS(FeynmanGraph(2, {{1, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(FeynmanGraph(2, {{1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(FeynmanGraph(0, {}), std::invalid_argument);

  // duplicate edges are allowed and keep their positions
  const FeynmanGraph doubled(2, {{1, 2}, {1, 2}});
  CHECK(doubled.edge_count() == 2);
  CHECK(doubled.edges()[0] == doubled.edges()[1]);
}

TEST_CASE("stars") {
  const auto k4 = FeynmanGraph::complete(4);
  // edges: (1,2) (1,3) (1,4) (2,3) (2,4) (3,4)
  CHECK(k4.star(2) == std::vector<int>{0, 3, 4});
  CHECK(k4.star(1) == std::vector<int>{0, 1, 2});
  CHECK(FeynmanGraph::complete(1).star(1).empty());
  CHECK_THROWS_AS(k4.star(5), std::invalid_argument);
}

TEST_CASE("vertex removal") {
  const auto k4 = FeynmanGraph::complete(4);
  CHECK(k4.remove_vertex(4) == FeynmanGraph::complete(3));
  // removing an inner vertex relabels order-preservingly
  const auto r2 = k4.remove_vertex(2);
  CHECK(r2 == FeynmanGraph::complete(3));

  const FeynmanGraph path(3, {{1, 2}, {2, 3}});
  CHECK_THROWS_AS(path.remove_vertex(2), feynq::Disconnected);
  CHECK(path.remove_vertex(3) == FeynmanGraph(2, {{1, 2}}));

  const auto k2 = FeynmanGraph::complete(2);
  CHECK(k2.remove_vertex(2).vertex_count() == 1);
  CHECK_THROWS_AS(FeynmanGraph::complete(1).remove_vertex(1),
                  std::invalid_argument);
}

TEST_CASE("spanning trees") {
  CHECK(FeynmanGraph::complete(3).spanning_trees() ==
        std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(FeynmanGraph::complete(1).spanning_trees() ==
        std::vector<std::vector<int>>{{}});

  SECTION("Cayley counts for complete graphs") {
    for (int n = 2; n <= 6; ++n)
      CHECK(FeynmanGraph::complete(n).spanning_trees().size() ==
            static_cast<std::size_t>(cayley(n)));
  }

  SECTION("agrees with the subset-enumeration oracle") {
    const std::vector<FeynmanGraph> graphs{
        FeynmanGraph::complete(2),
        FeynmanGraph::complete(3),
        FeynmanGraph::complete(4),
        FeynmanGraph::complete(5),
        FeynmanGraph(2, {{1, 2}, {1, 2}}),
        FeynmanGraph(3, {{1, 2}, {2, 3}, {1, 3}, {1, 3}}),
        FeynmanGraph(4, {{1, 2}, {2, 3}, {3, 4}, {4, 1}, {1, 3}}),
    };
    for (const auto& g : graphs)
      CHECK(g.spanning_trees() == spanning_trees_by_subsets(g));
  }
}

TEST_CASE("graph polynomial monomials") {
  SECTION("triangle") {
    const auto mono = FeynmanGraph::complete(3).graph_polynomial();
    REQUIRE(mono.size() == 3);
    for (const auto& [vars, mult] : mono) {
      CHECK(vars.size() == 1);
      CHECK(mult == 1);
    }
  }
  SECTION("single edge gives the empty monomial") {
    const auto mono = FeynmanGraph::complete(2).graph_polynomial();
    REQUIRE(mono.size() == 1);
    CHECK(mono.begin()->first.empty());
    CHECK(mono.begin()->second == 1);
  }
  SECTION("doubled edge gives two distinct variables") {
    const auto mono =
        FeynmanGraph(2, {{1, 2}, {1, 2}}).graph_polynomial();
    REQUIRE(mono.size() == 2);
    CHECK(mono.count({0}) == 1);
    CHECK(mono.count({1}) == 1);
  }
  SECTION("every monomial has the loop-number degree") {
    const std::vector<FeynmanGraph> graphs{
        FeynmanGraph::complete(4), FeynmanGraph::complete(5),
        FeynmanGraph(3, {{1, 2}, {2, 3}, {1, 3}, {1, 3}})};
    for (const auto& g : graphs) {
      const std::size_t loops = static_cast<std::size_t>(
          g.edge_count() - (g.vertex_count() - 1));
      for (const auto& [vars, mult] : g.graph_polynomial()) {
        CHECK(vars.size() == loops);
        CHECK(mult == 1);
      }
    }
  }
}
