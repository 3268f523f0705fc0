#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "fraclocal/generators.hpp"
#include "fraclocal/graph.hpp"
#include "fraclocal/graph_io.hpp"

using namespace fraclocal;

namespace {

GridSpec spec(std::vector<int> sides, bool wrap) {
  GridSpec s;
  s.sides = sides;
  s.wrap.assign(sides.size(), wrap);
  return s;
}

std::set<Edge> edge_set(const Graph& g) {
  auto e = g.edges();
  return {e.begin(), e.end()};
}

}  // namespace

TEST_CASE("grid examples") {
  const Graph c5 = generate_grid(spec({5}, true));
  CHECK(c5.size() == 5);
  CHECK(c5.edge_count() == 5);

  const Graph open = generate_grid(spec({3, 3}, false));
  CHECK(open.size() == 9);
  CHECK(open.edge_count() == 12);

  const Graph torus = generate_grid(spec({4, 4}, true));
  CHECK(torus.size() == 16);
  CHECK(torus.edge_count() == 32);
  for (NodeIndex v = 0; v < torus.size(); ++v) CHECK(torus.degree(v) == 4);
}

TEST_CASE("grid adjacency follows coordinates") {
  for (auto s : {spec({5, 3}, false), spec({4, 5}, true), spec({3, 3, 4}, true), spec({7}, false)}) {
    const Graph g = generate_grid(s);
    const GridEmbedding* emb = g.grid();
    REQUIRE(emb != nullptr);
    for (NodeIndex u = 0; u < g.size(); ++u)
      for (NodeIndex v = u + 1; v < g.size(); ++v) {
        int axes_by_one = 0, axes_other = 0;
        for (int i = 0; i < s.dimension(); ++i) {
          int d = std::abs(emb->coords[u][i] - emb->coords[v][i]);
          if (s.wrap[i]) d = std::min(d, s.sides[i] - d);
          if (d == 1) ++axes_by_one;
          else if (d != 0) ++axes_other;
        }
        CHECK(g.adjacent(u, v) == (axes_by_one == 1 && axes_other == 0));
      }
    if (std::all_of(s.wrap.begin(), s.wrap.end(), [](bool w) { return w; }))
      for (NodeIndex v = 0; v < g.size(); ++v) CHECK(g.degree(v) == 2 * s.dimension());
  }
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(generate_grid(spec({}, false)), PreconditionError);
  CHECK_THROWS_AS(generate_grid(spec({2}, true)), PreconditionError);
}

TEST_CASE("random regular graphs") {
  const Graph k4 = generate_random_regular(4, 3, 7);
  CHECK(k4.edge_count() == 6);

  const Graph g = generate_random_regular(10, 3, 1);
  CHECK(g.size() == 10);
  for (NodeIndex v = 0; v < g.size(); ++v) CHECK(g.degree(v) == 3);
  CHECK(edge_set(g) == edge_set(generate_random_regular(10, 3, 1)));

  CHECK_THROWS_AS(generate_random_regular(5, 3, 1), GenerationError);
  CHECK_THROWS_AS(generate_random_regular(3, 3, 1), GenerationError);
}

TEST_CASE("power graph examples") {
  const Graph c5 = generate_cycle(5);
  CHECK(power_graph(c5, 2).edge_count() == 10);

  const Graph p4 = generate_path(4);
  CHECK(testing::degree_sequence(power_graph(p4, 2)) == std::vector<int>{2, 3, 3, 2});

  const Graph torus = generate_grid(spec({4, 4}, true));
  const Graph moore = power_graph(torus, 1, PowerMetric::InfinityNorm);
  for (NodeIndex v = 0; v < moore.size(); ++v) CHECK(moore.degree(v) == 8);

  CHECK_THROWS_AS(power_graph(generate_petersen(), 1, PowerMetric::InfinityNorm), PreconditionError);
  CHECK_THROWS_AS(power_graph(c5, 0), PreconditionError);
}

TEST_CASE("power graph matches brute-force distances") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Graph g = testing::random_graph(seed, 14, 0.2);
    const auto dist = testing::all_pairs(g);
    for (int k = 1; k <= 3; ++k) {
      const Graph h = power_graph(g, k);
      for (NodeIndex u = 0; u < g.size(); ++u)
        for (NodeIndex v = 0; v < g.size(); ++v)
          if (u != v) CHECK(h.adjacent(u, v) == (dist[u][v] > 0 && dist[u][v] <= k));
    }
  }
}

TEST_CASE("powers compose") {
  auto subset = [](const std::set<Edge>& a, const std::set<Edge>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = testing::random_bounded_degree(seed, 20, 3, 60);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b)
        CHECK(subset(edge_set(power_graph(power_graph(g, a), b)), edge_set(power_graph(g, a * b))));
  }
  for (int n : {5, 9, 16, 30}) {
    for (const Graph& g : {generate_path(n), generate_cycle(n)})
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
          CHECK(edge_set(power_graph(power_graph(g, a), b)) == edge_set(power_graph(g, a * b)));
  }
}

TEST_CASE("infinity power within hops equals the plain one on intact grids") {
  for (auto s : {spec({6, 7}, true), spec({5, 5}, false)}) {
    const Graph g = generate_grid(s);
    for (int k = 1; k <= 2; ++k)
      CHECK(edge_set(infinity_power_within_hops(g, k, 2 * k)) ==
            edge_set(power_graph(g, k, PowerMetric::InfinityNorm)));
  }
}

TEST_CASE("subdivision examples") {
  const Graph c9 = subdivide_edges(generate_complete(3), 1);
  CHECK(c9.size() == 9);
  CHECK(girth(c9) == 9);

  const Graph pet = subdivide_edges(generate_petersen(), 1);
  CHECK(pet.size() == 10 + 2 * 15);
  CHECK(girth(pet) == 15);

  const Graph single = subdivide_edges(generate_path(2), 2);
  CHECK(single.size() == 6);
  CHECK(single.edge_count() == 5);
  CHECK(girth(single) == kInfiniteGirth);
  int parts = 0;
  connected_components(single, &parts);
  CHECK(parts == 1);

  const auto* tags = pet.subdivision();
  REQUIRE(tags != nullptr);
  int originals = 0;
  for (const auto& t : *tags) originals += t.role == NodeRole::Original;
  CHECK(originals == 10);
}

TEST_CASE("subdivision multiplies the girth") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Graph base = testing::random_graph(seed, 8, 0.35);
    const int g0 = testing::girth_by_edge_removal(base);
    CHECK(girth(base) == g0);
    if (g0 == kInfiniteGirth) continue;
    for (int k = 1; k <= 2; ++k) {
      const Graph h = subdivide_edges(base, k);
      CHECK(h.size() == base.size() + 2 * k * base.edge_count());
      CHECK(girth(h) == (2 * k + 1) * g0);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("girth") {
  CHECK(girth(generate_random_tree(30, 4)) == kInfiniteGirth);
  CHECK(girth(generate_cycle(5)) == 5);
  CHECK(girth(generate_petersen()) == 5);
  CHECK(girth(generate_complete_bipartite(3, 3)) == 4);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Graph g = testing::random_graph(seed, 12, 0.25);
    CHECK(girth(g) == testing::girth_by_edge_removal(g));
  }
}

TEST_CASE("diameters") {
  const Graph c8 = generate_cycle(8);
  std::vector<NodeIndex> arc{0, 1, 2, 3, 4, 5, 6};
  CHECK(strong_diameter(c8, arc) == 6);
  CHECK(weak_diameter(c8, arc) == 4);
  std::vector<NodeIndex> split{0, 4};
  CHECK(strong_diameter(c8, split) == -1);
  CHECK(weak_diameter(c8, split) == 4);
}

TEST_CASE("bipartition") {
  CHECK(bipartition(generate_cycle(6)).has_value());
  CHECK_FALSE(bipartition(generate_cycle(7)).has_value());
  const auto side = bipartition(generate_hypercube(4));
  REQUIRE(side);
  const Graph q4 = generate_hypercube(4);
  for (const auto& [u, v] : q4.edges()) CHECK((*side)[u] != (*side)[v]);
}

TEST_CASE("permuted IDs are distinct and inside the ID space") {
  for (int n : {1, 2, 10, 300}) {
    const Graph g = generate_path(n).with_permuted_ids(n * 31 + 5);
    CHECK(g.id_space() == polynomial_id_space(n, 2));
    std::set<NodeId> seen(g.ids().begin(), g.ids().end());
    CHECK(static_cast<int>(seen.size()) == n);
    for (NodeId id : g.ids()) {
      CHECK(id >= 1);
      CHECK(id <= g.id_space());
    }
    for (NodeIndex v = 0; v < n; ++v) CHECK(g.index_of(g.id(v)) == v);
  }
  const Graph g = generate_cycle(6);
  CHECK_THROWS_AS(g.with_ids({1, 2, 3, 4, 5, 5}, 36), PreconditionError);
  CHECK_THROWS_AS(g.with_ids({1, 2, 3, 4, 5, 37}, 36), PreconditionError);
}

TEST_CASE("edge list round trip") {
  const Graph g = generate_grid(spec({4, 3}, true)).with_permuted_ids(3);
  const std::string text = to_edge_list_string(g);
  const Graph back = parse_edge_list(text);
  CHECK(back.size() == g.size());
  CHECK(edge_set(back) == edge_set(g));
  CHECK(back.ids() == g.ids());
  CHECK(back.id_space() == g.id_space());
  REQUIRE(back.grid() != nullptr);
  CHECK(back.grid()->coords == g.grid()->coords);
  CHECK(to_edge_list_string(back) == text);

  const Graph pet = generate_petersen();
  CHECK(edge_set(parse_edge_list(to_edge_list_string(pet))) == edge_set(pet));
}

TEST_CASE("edge list parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      parse_edge_list(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("3 2\n0 1\n1 x\n") == 3);
  CHECK(line_of("3 2\n0 1\n1 3\n") == 3);
  CHECK(line_of("3 1\n# note\n2 2\n") == 3);
  CHECK(line_of("hello\n") == 1);
  CHECK(line_of("3 2\n0 1\n") >= 0);
  CHECK(line_of("") >= 0);
  CHECK(line_of("3 2\n0 1\n1 2\n") == -1);
}
