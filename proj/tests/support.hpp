#pragma once

// Hand-rolled generators and brute-force references shared by the tests.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "fraclocal/graph.hpp"
#include "fraclocal/random.hpp"

namespace testing {

using namespace fraclocal;

// G(n, p) from a counter stream.
inline Graph random_graph(std::uint64_t seed, int n, double p) {
  CounterStream rng(derive_seed(seed, {0xab}));
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform01(rng) < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Random graph with at most max_degree per node (edges offered in random order).
inline Graph random_bounded_degree(std::uint64_t seed, int n, int max_degree, int tries) {
  CounterStream rng(derive_seed(seed, {0xbd}));
  std::vector<int> deg(n, 0);
  std::set<Edge> edges;
  for (int t = 0; t < tries; ++t) {
    int u = static_cast<int>(uniform_below(rng, n)), v = static_cast<int>(uniform_below(rng, n));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (deg[u] >= max_degree || deg[v] >= max_degree || edges.count({u, v})) continue;
    edges.insert({u, v});
    ++deg[u];
    ++deg[v];
  }
  std::vector<Edge> list(edges.begin(), edges.end());
  return Graph::from_edges(n, list);
}

// Floyd-Warshall, -1 for unreachable.
inline std::vector<std::vector<int>> all_pairs(const Graph& g) {
  const int n = g.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) {
    d[v][v] = 0;
    for (NodeIndex w : g.neighbors(v)) d[v][w] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x >= inf) x = -1;
  return d;
}

// Shortest cycle through each edge: dist(u, v) once the edge is gone, plus one.
inline int girth_by_edge_removal(const Graph& g) {
  int best = kInfiniteGirth;
  for (const auto& [u, v] : g.edges()) {
    std::vector<Edge> rest;
    for (const auto& e : g.edges())
      if (e != Edge{u, v}) rest.push_back(e);
    const Graph h = Graph::from_edges(g.size(), rest);
    const int d = all_pairs(h)[u][v];
    if (d >= 0) best = std::min(best, d + 1);
  }
  return best;
}

inline std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> out;
  for (NodeIndex v = 0; v < g.size(); ++v) out.push_back(g.degree(v));
  return out;
}

}  // namespace testing

#include "fraclocal/collect_ball.hpp"
#include "fraclocal/sim.hpp"

namespace testing {

// Every node floods the smallest (draw, id) pair it has seen for `radius` rounds.
struct MinDrawFlood {
  using Input = sim::NoInput;
  using Message = std::pair<std::uint64_t, NodeId>;
  using Output = std::pair<std::uint64_t, NodeId>;
  struct State {
    Message best;
  };
  int radius = 1;

  State init(const sim::NodeContext<Input>& ctx) const {
    auto rng = ctx.random(0);
    return {{rng(), ctx.id}};
  }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>&, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    for (const auto& in : inbox) s.best = std::min(s.best, *in.message);
    if (round >= radius) {
      act.output = s.best;
      act.sleep();
    } else {
      act.send = s.best;
    }
    return act;
  }
};

// Ball contents reduced to something comparable: (id, label, neighbor IDs or empty).
template <class Label>
std::vector<std::tuple<NodeId, Label, bool, std::vector<NodeId>>> flatten(const sim::BallView<Label>& view) {
  std::vector<std::tuple<NodeId, Label, bool, std::vector<NodeId>>> out;
  for (const auto& [id, rec] : view.nodes) {
    std::vector<NodeId> nb = rec.neighbors ? *rec.neighbors : std::vector<NodeId>{};
    std::sort(nb.begin(), nb.end());
    out.emplace_back(id, rec.label, rec.neighbors.has_value(), nb);
  }
  return out;
}

// Rewires the edges whose endpoints are both farther than `radius` from
// `center`: drops each with probability 1/2 and adds random ones among those
// nodes. Node set and IDs stay the same.
inline Graph rewire_outside(const Graph& g, NodeIndex center, int radius, std::uint64_t seed) {
  const auto dist = bfs_distances(g, center);
  auto far = [&](NodeIndex v) { return dist[v] == kUnreachable || dist[v] > radius; };
  CounterStream rng(derive_seed(seed, {0x5e}));
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (!(far(e.first) && far(e.second)) || uniform_below(rng, 2) == 0) edges.push_back(e);
  std::vector<NodeIndex> outside;
  for (NodeIndex v = 0; v < g.size(); ++v)
    if (far(v)) outside.push_back(v);
  if (outside.size() >= 2)
    for (std::size_t i = 0; i < outside.size(); ++i) {
      NodeIndex a = outside[uniform_below(rng, outside.size())], b = outside[uniform_below(rng, outside.size())];
      if (a != b) edges.emplace_back(std::min(a, b), std::max(a, b));
    }
  return Graph::from_edges(g.size(), edges).with_ids(g.ids(), g.id_space());
}

// Largest independent set by trying every subset (n <= 20).
inline int independence_bruteforce(const Graph& g) {
  const int n = g.size();
  std::vector<std::uint32_t> nbr(n, 0);
  for (const auto& [u, v] : g.edges()) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  int best = 0;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v)
      if ((m >> v & 1) && (nbr[v] & m)) ok = false;
    if (ok) best = std::max(best, std::popcount(m));
  }
  return best;
}

// Smallest k admitting a proper k-coloring, by backtracking.
inline int chromatic_bruteforce(const Graph& g) {
  const int n = g.size();
  if (n == 0) return 0;
  std::vector<int> color(n, 0);
  std::function<bool(int, int)> fill = [&](int v, int k) {
    if (v == n) return true;
    for (int c = 1; c <= k; ++c) {
      bool ok = true;
      for (NodeIndex w : g.neighbors(v))
        if (w < v && color[w] == c) ok = false;
      if (!ok) continue;
      color[v] = c;
      if (fill(v + 1, k)) return true;
    }
    return false;
  };
  for (int k = 1;; ++k)
    if (fill(0, k)) return k;
}

// Iterated log2 down to <= 1.
inline int log_star(double x) {
  int k = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++k;
  }
  return k;
}

struct ShapeFit {
  double a = 0, b = 0;
  double max_relative_residual = 0;
};

// Least squares y ~ a*x + b*z with a, b >= 0 (two variables, so the active
// set is enumerated directly).
inline ShapeFit fit_nonnegative(const std::vector<double>& x, const std::vector<double>& z,
                                const std::vector<double>& y) {
  double xx = 0, zz = 0, xz = 0, xy = 0, zy = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    xx += x[i] * x[i];
    zz += z[i] * z[i];
    xz += x[i] * z[i];
    xy += x[i] * y[i];
    zy += z[i] * y[i];
  }
  std::vector<std::pair<double, double>> candidates{{0, 0}};
  const double det = xx * zz - xz * xz;
  if (std::abs(det) > 1e-12 * std::max(1.0, xx * zz)) candidates.emplace_back((xy * zz - zy * xz) / det, (zy * xx - xy * xz) / det);
  if (xx > 0) candidates.emplace_back(xy / xx, 0);
  if (zz > 0) candidates.emplace_back(0, zy / zz);
  ShapeFit best;
  double best_sse = -1;
  for (auto [a, b] : candidates) {
    if (a < 0 || b < 0) continue;
    double sse = 0, worst = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = y[i] - a * x[i] - b * z[i];
      sse += r * r;
      if (y[i] != 0) worst = std::max(worst, std::abs(r) / std::abs(y[i]));
    }
    if (best_sse < 0 || sse < best_sse) {
      best_sse = sse;
      best = {a, b, worst};
    }
  }
  return best;
}

}  // namespace testing
