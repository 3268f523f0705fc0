#include "fraclocal/independent_sets.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace fraclocal {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

std::vector<Mask> adjacency_masks(const Graph& g) {
  if (g.size() > kBitsetNodeCap) throw OracleCapExceeded("oracle supports at most 64 nodes");
  std::vector<Mask> adj(g.size(), 0);
  for (NodeIndex v = 0; v < g.size(); ++v)
    for (NodeIndex w : g.neighbors(v)) adj[v] |= bit(w);
  return adj;
}

Mask all_nodes(int n) { return n == 64 ? ~Mask{0} : bit(n) - 1; }

std::vector<NodeIndex> to_list(Mask m) {
  std::vector<NodeIndex> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Walks the paths and cycles left when every candidate has degree <= 2.
template <class Visit>
void for_each_thin_component(const std::vector<Mask>& adj, Mask p, Visit visit) {
  while (p) {
    // start from an endpoint if the component is a path
    int start = std::countr_zero(p);
    Mask comp = 0, frontier = bit(start);
    while (frontier) {
      comp |= frontier;
      Mask next = 0;
      for (Mask f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)] & p;
      frontier = next & ~comp;
    }
    for (Mask c = comp; c; c &= c - 1) {
      int v = std::countr_zero(c);
      if (std::popcount(adj[v] & comp) <= 1) {
        start = v;
        break;
      }
    }
    std::vector<int> order{start};
    Mask seen = bit(start);
    while (true) {
      Mask next = adj[order.back()] & comp & ~seen;
      if (!next) break;
      int w = std::countr_zero(next);
      order.push_back(w);
      seen |= bit(w);
    }
    const bool cycle = order.size() >= 3 && (adj[order.front()] & bit(order.back()));
    visit(order, cycle);
    p &= ~comp;
  }
}

}  // namespace

std::vector<std::vector<NodeIndex>> maximal_independent_sets(const Graph& g, std::size_t limit) {
  const int n = g.size();
  auto adj = adjacency_masks(g);
  std::vector<Mask> non(n);
  for (int v = 0; v < n; ++v) non[v] = all_nodes(n) & ~adj[v] & ~bit(v);
  std::vector<std::vector<NodeIndex>> out;
  std::function<void(Mask, Mask, Mask)> expand = [&](Mask r, Mask p, Mask x) {
    if (!p && !x) {
      if (out.size() >= limit) throw OracleCapExceeded("too many maximal independent sets");
      out.push_back(to_list(r));
      return;
    }
    int pivot = -1, best = -1;
    for (Mask px = p | x; px; px &= px - 1) {
      int u = std::countr_zero(px);
      int score = std::popcount(p & non[u]);
      if (score > best) {
        best = score;
        pivot = u;
      }
    }
    for (Mask cand = p & ~non[pivot]; cand; cand &= cand - 1) {
      int v = std::countr_zero(cand);
      expand(r | bit(v), p & non[v], x & non[v]);
      p &= ~bit(v);
      x |= bit(v);
    }
  };
  if (n > 0) expand(0, all_nodes(n), 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeIndex> maximum_independent_set(const Graph& g) {
  const int n = g.size();
  auto adj = adjacency_masks(g);
  Mask best_set = 0;
  int best = -1;
  std::function<void(Mask, Mask)> search = [&](Mask p, Mask chosen) {
    const int size = std::popcount(chosen);
    if (size + std::popcount(p) <= best) return;
    // forced moves: isolated and degree-1 candidates can always be taken
    bool changed = true;
    while (changed) {
      changed = false;
      for (Mask c = p; c; c &= c - 1) {
        int v = std::countr_zero(c);
        if (std::popcount(adj[v] & p) <= 1) {
          chosen |= bit(v);
          p &= ~(adj[v] | bit(v));
          changed = true;
          break;
        }
      }
    }
    if (!p) {
      if (std::popcount(chosen) > best) {
        best = std::popcount(chosen);
        best_set = chosen;
      }
      return;
    }
    int v = -1, deg = -1;
    for (Mask c = p; c; c &= c - 1) {
      int u = std::countr_zero(c);
      int d = std::popcount(adj[u] & p);
      if (d > deg) {
        deg = d;
        v = u;
      }
    }
    if (deg <= 2) {
      Mask extra = 0;
      for_each_thin_component(adj, p, [&](const std::vector<int>& order, bool cycle) {
        const std::size_t take = cycle ? order.size() / 2 : (order.size() + 1) / 2;
        for (std::size_t i = 0; i < take; ++i) extra |= bit(order[2 * i]);
      });
      if (std::popcount(chosen | extra) > best) {
        best = std::popcount(chosen | extra);
        best_set = chosen | extra;
      }
      return;
    }
    search(p & ~(adj[v] | bit(v)), chosen | bit(v));
    search(p & ~bit(v), chosen);
  };
  if (n > 0) search(all_nodes(n), 0);
  return to_list(best_set);
}

WeightedSet max_weight_independent_set(const Graph& g, const std::vector<Rational>& weights) {
  const int n = g.size();
  auto adj = adjacency_masks(g);
  std::vector<double> approx(n);
  Mask positive = 0;
  for (int v = 0; v < n; ++v) {
    approx[v] = weights[v].get_d();
    if (weights[v] > 0) positive |= bit(v);
  }
  WeightedSet best{0, {}};
  double best_approx = 0.0;

  auto consider = [&](Mask chosen) {
    Rational w = 0;
    for (Mask c = chosen; c; c &= c - 1) w += weights[std::countr_zero(c)];
    if (w > best.weight) {
      best.weight = w;
      best.nodes = to_list(chosen);
      best_approx = w.get_d();
    }
  };

  // exact DP over a path (or a cycle, split on its first node)
  auto path_best = [&](const std::vector<int>& order, std::size_t from, std::size_t to, Mask& picked) {
    // take[i]/skip[i]: best over order[from..i] with order[i] taken / not taken
    const std::size_t len = to - from;
    if (len == 0) return;
    std::vector<Rational> take(len), skip(len);
    for (std::size_t i = 0; i < len; ++i) {
      const Rational w = weights[order[from + i]];
      const Rational prev_best = i == 0 ? Rational(0) : std::max(take[i - 1], skip[i - 1]);
      take[i] = (i == 0 ? Rational(0) : skip[i - 1]) + w;
      skip[i] = prev_best;
    }
    bool taking = take[len - 1] > skip[len - 1];
    for (std::size_t i = len; i-- > 0;) {
      if (taking) {
        picked |= bit(order[from + i]);
        taking = false;
      } else if (i > 0) {
        taking = take[i - 1] > skip[i - 1];
      }
    }
  };

  std::function<void(Mask, Mask, double)> search = [&](Mask p, Mask chosen, double current) {
    p &= positive;
    double bound = current;
    for (Mask c = p; c; c &= c - 1) bound += approx[std::countr_zero(c)];
    if (bound + 1e-9 < best_approx) return;
    if (!p) {
      consider(chosen);
      return;
    }
    int v = -1, deg = -1;
    for (Mask c = p; c; c &= c - 1) {
      int u = std::countr_zero(c);
      int d = std::popcount(adj[u] & p);
      if (d > deg) {
        deg = d;
        v = u;
      }
    }
    if (deg <= 2) {
      Mask extra = 0;
      for_each_thin_component(adj, p, [&](const std::vector<int>& order, bool cycle) {
        if (!cycle) {
          path_best(order, 0, order.size(), extra);
          return;
        }
        // first node excluded, or first node included (then its two neighbors excluded)
        Mask without = 0, with = bit(order[0]);
        path_best(order, 1, order.size(), without);
        if (order.size() > 3) path_best(order, 2, order.size() - 1, with);
        Rational w0 = 0, w1 = 0;
        for (Mask c = without; c; c &= c - 1) w0 += weights[std::countr_zero(c)];
        for (Mask c = with; c; c &= c - 1) w1 += weights[std::countr_zero(c)];
        extra |= w1 > w0 ? with : without;
      });
      consider(chosen | extra);
      return;
    }
    search(p & ~(adj[v] | bit(v)), chosen | bit(v), current + approx[v]);
    search(p & ~bit(v), chosen, current);
  };
  if (n > 0) search(all_nodes(n), 0, 0.0);
  return best;
}

int chromatic_number(const Graph& g) {
  const int n = g.size();
  if (n == 0) return 0;
  if (g.edge_count() == 0) return 1;
  std::vector<NodeIndex> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return g.degree(a) > g.degree(b); });
  std::vector<int> color(n, -1);
  std::function<bool(int, int, int)> place = [&](int i, int k, int used) -> bool {
    if (i == n) return true;
    NodeIndex v = order[i];
    // symmetry: a fresh color is only ever the next unused one
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      bool ok = true;
      for (NodeIndex w : g.neighbors(v))
        if (color[w] == c) {
          ok = false;
          break;
        }
      if (!ok) continue;
      color[v] = c;
      if (place(i + 1, k, std::max(used, c + 1))) return true;
      color[v] = -1;
    }
    return false;
  };
  for (int k = 2; k <= n; ++k) {
    std::fill(color.begin(), color.end(), -1);
    if (place(0, k, 0)) return k;
  }
  return n;
}

}  // namespace fraclocal
