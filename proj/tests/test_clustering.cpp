#include <cmath>
#include <map>

#include "doctest.h"
#include "support.hpp"

#include "fraclocal/clustering.hpp"
#include "fraclocal/generators.hpp"
#include "fraclocal/oracle.hpp"

using namespace fraclocal;

namespace {

Graph from_list(int n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

bool connected(const Graph& g) {
  int parts = 0;
  connected_components(g, &parts);
  return parts == 1;
}

// Shift of node `id` as the MPX program draws it.
double shift_of(NodeId id, std::uint64_t seed, double epsilon, int cap) {
  CounterStream rng(derive_seed(seed, {id, 0}));
  return std::min(exponential(rng, epsilon / 2.0), static_cast<double>(cap));
}

}  // namespace

TEST_CASE("degree-choosability examples") {
  CHECK(is_degree_choosable(generate_cycle(4)));
  CHECK_FALSE(is_degree_choosable(generate_cycle(5)));
  CHECK_FALSE(is_degree_choosable(generate_complete(4)));
  const Graph bowtie = from_list(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
  CHECK_FALSE(is_degree_choosable(bowtie));
  const Graph c4_pendant = from_list(5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}});
  CHECK(is_degree_choosable(c4_pendant));
  CHECK_FALSE(is_degree_choosable(generate_path(4)));
  CHECK(is_degree_choosable(generate_complete_bipartite(2, 3)));

  CHECK(degree_choosable_bruteforce(generate_cycle(4)));
  CHECK_FALSE(degree_choosable_bruteforce(generate_cycle(5)));
}

TEST_CASE("block test agrees with exhaustive search") {
  int seen_true = 0, seen_false = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const Graph g = testing::random_graph(seed, n, 0.55);
    if (!connected(g) || !bruteforce_choosable_feasible(g)) continue;
    const bool blocks = !is_gallai_tree(g);
    CHECK(blocks == degree_choosable_bruteforce(g));
    (blocks ? seen_true : seen_false)++;
  }
  CHECK(seen_true > 10);
  CHECK(seen_false > 10);
}

TEST_CASE("c_alpha frozen values") {
  CHECK(clustering_alpha(3, 2, default_c_alpha(3, 2)) == 10);
  CHECK(clustering_alpha(3, 4, default_c_alpha(3, 4)) == 14);
  CHECK(clustering_alpha(3, 8, default_c_alpha(3, 8)) == 18);
  for (std::int64_t delta : {3, 4, 6}) {
    for (int q : {2, 3, 5, 8, 16}) {
      const int c = default_c_alpha(delta, q);
      auto enough = [&](int cc) {
        const int a = clustering_alpha(delta, q, cc);
        return std::floor(a / 2.0 - 3.0) / 2.0 * std::log(static_cast<double>(delta - 1)) >= std::log(q) - 1e-12;
      };
      CHECK(enough(c));
      if (c > 1) CHECK_FALSE(enough(c - 1));
    }
  }
}

TEST_CASE("ruling-set clustering on a clique") {
  const Graph k4 = generate_complete(4).with_permuted_ids(1);
  const auto cl = ruling_set_clustering(k4, 2);
  REQUIRE(cl.clusters.size() == 1);
  CHECK(cl.clusters[0].tag.kind == ClusterKind::Large);
  CHECK(cl.clusters[0].members.size() == 4);
}

TEST_CASE("ruling-set clustering on trees uses low-degree witnesses") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph t = testing::random_bounded_degree(seed, 40, 3, 400);
    // keep a spanning forest, then cluster its components as one graph
    std::vector<Edge> forest;
    std::vector<int> parent(t.size());
    for (int i = 0; i < t.size(); ++i) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& [u, v] : t.edges())
      if (find(u) != find(v)) {
        parent[find(u)] = find(v);
        forest.emplace_back(u, v);
      }
    const Graph g = Graph::from_edges(t.size(), forest).with_permuted_ids(seed);
    const int q = 50;
    RulingClusteringOptions opt;
    opt.model = sim::ModelInfo{g.size(), 3, g.id_space()};
    const auto cl = ruling_set_clustering(g, q, opt);
    for (const auto& c : cl.clusters) {
      const bool has_leaf =
          std::any_of(c.members.begin(), c.members.end(), [&](NodeIndex v) { return g.degree(v) <= 2; });
      if (has_leaf) CHECK(c.tag.kind == ClusterKind::LowDegree);
      std::string why;
      CHECK_MESSAGE(verify_cluster_tag(g, c, q, 3, &why), why);
    }
  }
}

TEST_CASE("ruling-set clustering properties on cubic graphs") {
  for (int q : {2, 4}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Graph g = generate_random_regular(60, 3, seed).with_permuted_ids(seed);
      const auto cl = ruling_set_clustering(g, q);
      const double bound = 2.0 * cl.alpha * cl.alpha * std::log2(3.0);
      const auto report = check_clustering(g, cl, DiameterMode::Strong, 1, static_cast<int>(bound));
      CHECK_MESSAGE(report.valid, (report.problems.empty() ? "" : report.problems.front()));
      CHECK(report.unclustered == 0);

      std::vector<NodeIndex> centers;
      for (const auto& c : cl.clusters) centers.push_back(c.center);
      const auto dist = testing::all_pairs(g);
      for (NodeIndex a : centers)
        for (NodeIndex b : centers)
          if (a != b) CHECK(dist[a][b] >= cl.alpha);
      for (NodeIndex v = 0; v < g.size(); ++v) {
        NodeIndex best = -1;
        for (NodeIndex c : centers)
          if (best < 0 || dist[v][c] < dist[v][best] || (dist[v][c] == dist[v][best] && g.id(c) < g.id(best)))
            best = c;
        CHECK(cl.clusters[cl.assignment[v]].center == best);
        CHECK(dist[v][best] <= cl.radius_bound);
      }
      for (const auto& c : cl.clusters) {
        std::string why;
        CHECK_MESSAGE(verify_cluster_tag(g, c, q, 3, &why), why);
        CHECK(c.tag.kind != ClusterKind::Unclassified);
      }
    }
  }
}

TEST_CASE("gathered snapshots match the clusters") {
  const Graph g = generate_random_regular(40, 3, 9).with_permuted_ids(9);
  RulingClusteringOptions opt;
  opt.classify = false;
  const auto cl = ruling_set_clustering(g, 2, opt);
  const auto snaps = gather_cluster_snapshots(g, cl, 2 * cl.radius_bound + 1);
  REQUIRE(snaps.size() == cl.clusters.size());
  for (std::size_t c = 0; c < snaps.size(); ++c) {
    const auto direct = ClusterSnapshot::from_graph(g, cl.clusters[c].center, cl.clusters[c].members);
    CHECK(snaps[c].center == direct.center);
    CHECK(snaps[c].members == direct.members);
    for (const auto& [id, adj] : direct.adjacency) {
      auto mine = snaps[c].adjacency.at(id);
      auto theirs = adj;
      std::sort(mine.begin(), mine.end());
      std::sort(theirs.begin(), theirs.end());
      CHECK(mine == theirs);
    }
  }
}

TEST_CASE("MPX assignment matches the centralized definition") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const double eps = seed % 2 ? 0.2 : 0.5;
    const Graph g = testing::random_bounded_degree(seed, 50, 3, 120).with_permuted_ids(seed);
    const int cap = default_mpx_shift_cap(g.size(), eps);
    const auto cl = mpx_clustering_separated(g, eps, seed);
    const auto dist = testing::all_pairs(g);
    std::vector<double> shift(g.size());
    for (NodeIndex v = 0; v < g.size(); ++v) shift[v] = shift_of(g.id(v), seed, eps, cap);
    for (NodeIndex v = 0; v < g.size(); ++v) {
      NodeIndex best = v;
      for (NodeIndex u = 0; u < g.size(); ++u) {
        if (dist[u][v] < 0) continue;
        const double key = dist[u][v] - shift[u], best_key = dist[best][v] - shift[best];
        if (key < best_key || (key == best_key && g.id(u) < g.id(best))) best = u;
      }
      CHECK(cl.pre_removal_center[v] == best);
    }
    // pre-removal clusters are connected through members
    std::map<NodeIndex, std::vector<NodeIndex>> groups;
    for (NodeIndex v = 0; v < g.size(); ++v) groups[cl.pre_removal_center[v]].push_back(v);
    for (const auto& [c, members] : groups) CHECK(strong_diameter(g, members) >= 0);

    const auto report = check_clustering(g, cl, DiameterMode::Weak, 2);
    CHECK(report.valid);
    CHECK_FALSE(report.separation_witness.has_value());
    for (const auto& [u, v] : g.edges()) {
      const int a = cl.assignment[u], b = cl.assignment[v];
      if (a != kUnclustered && b != kUnclustered) CHECK(a == b);
    }
  }
}

TEST_CASE("MPX corner cases") {
  const auto single = mpx_clustering_separated(Graph(1), 0.3, 4);
  CHECK(single.assignment[0] != kUnclustered);

  const Graph g = generate_random_regular(30, 3, 2);
  for (double eps : {0.95, 0.999}) {
    const auto cl = mpx_clustering_separated(g, eps, 11);
    CHECK(check_clustering(g, cl, DiameterMode::Weak, 2).valid);
  }
  CHECK_THROWS_AS(mpx_clustering_separated(g, 0.0, 1), PreconditionError);
  CHECK_THROWS_AS(mpx_clustering_separated(g, 1.0, 1), PreconditionError);
}

TEST_CASE("MPX unclustered rate") {
  const Graph g = generate_random_regular(200, 3, 1).with_permuted_ids(1);
  const double eps = 0.2;
  const int seeds = 60;
  std::int64_t out = 0;
  for (int s = 1; s <= seeds; ++s) out += check_clustering(g, mpx_clustering_separated(g, eps, s), DiameterMode::Weak, 2).unclustered;
  const double trials = seeds * 200.0;
  CHECK(out / trials <= eps + 3 * std::sqrt(eps * (1 - eps) / trials));
}

TEST_CASE("clustering JSON") {
  const Graph g = generate_path(3).with_ids({4, 5, 6}, 9);
  Clustering cl;
  cl.assignment = {0, 0, kUnclustered};
  cl.clusters.push_back({1, {0, 1}, {}, -1, -1});
  const auto j = clustering_json(g, cl);
  CHECK(j["0"] == 5);
  CHECK(j["2"].is_null());
}
