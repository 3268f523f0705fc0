#include "fraclocal/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace fraclocal {

std::int64_t GridSpec::node_count() const {
  std::int64_t total = 1;
  for (int s : sides) total *= s;
  return total;
}

void GridSpec::validate() const {
  if (sides.empty()) throw PreconditionError("grid needs at least one dimension");
  if (wrap.size() != sides.size()) throw PreconditionError("grid wrap flags must match dimension");
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (sides[i] < 1) throw PreconditionError("grid side must be positive");
    // a wrapped side below 3 would create loops or parallel edges
    if (wrap[i] && sides[i] < 3) throw PreconditionError("wrapped grid side must be at least 3");
  }
}

std::vector<int> GridEmbedding::offset(NodeIndex from, NodeIndex to) const {
  const auto& a = coords[from];
  const auto& b = coords[to];
  std::vector<int> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    int delta = b[i] - a[i];
    if (spec.wrap[i]) {
      const int side = spec.sides[i];
      delta = ((delta % side) + side) % side;
      if (delta > side / 2) delta -= side;
    }
    out[i] = delta;
  }
  return out;
}

int GridEmbedding::infinity_distance(NodeIndex a, NodeIndex b) const {
  int best = 0;
  for (int x : offset(a, b)) best = std::max(best, std::abs(x));
  return best;
}

std::uint64_t polynomial_id_space(std::int64_t n, int exponent) {
  const std::uint64_t cap = std::uint64_t{1} << 63;
  std::uint64_t result = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(std::max<std::int64_t>(n, 1));
  for (int i = 0; i < exponent; ++i) {
    if (result > cap / base) return cap;
    result *= base;
  }
  return std::max<std::uint64_t>(result, static_cast<std::uint64_t>(std::max<std::int64_t>(n, 1)));
}

Graph::Graph(int n) {
  if (n < 0) throw PreconditionError("negative node count");
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  ids_.resize(n);
  std::iota(ids_.begin(), ids_.end(), NodeId{1});
  id_space_ = polynomial_id_space(n, 2);
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  std::vector<Edge> clean;
  clean.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw PreconditionError("edge endpoint out of range");
    if (u == v) throw PreconditionError("self-loops are not allowed");
    clean.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(clean.begin(), clean.end());
  clean.erase(std::unique(clean.begin(), clean.end()), clean.end());

  std::vector<std::int64_t> deg(n + 1, 0);
  for (auto [u, v] : clean) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.targets_.assign(g.offsets_[n], 0);
  std::vector<std::int64_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : clean) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (int v = 0; v < n; ++v) {
    std::sort(g.targets_.begin() + g.offsets_[v], g.targets_.begin() + g.offsets_[v + 1]);
    g.max_degree_ = std::max(g.max_degree_, g.degree(v));
  }
  return g;
}

bool Graph::adjacent(NodeIndex u, NodeIndex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeIndex> Graph::index_of(NodeId id) const {
  for (NodeIndex v = 0; v < size(); ++v)
    if (ids_[v] == id) return v;
  return std::nullopt;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeIndex u = 0; u < size(); ++u)
    for (NodeIndex v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::with_ids(std::vector<NodeId> ids, std::uint64_t id_space) const {
  if (static_cast<int>(ids.size()) != size()) throw PreconditionError("one ID per node required");
  std::unordered_set<NodeId> seen;
  for (NodeId id : ids) {
    if (id < 1 || id > id_space) throw PreconditionError("ID outside the ID space");
    if (!seen.insert(id).second) throw PreconditionError("IDs must be distinct");
  }
  Graph g = *this;
  g.ids_ = std::move(ids);
  g.id_space_ = id_space;
  return g;
}

Graph Graph::with_permuted_ids(std::uint64_t seed, int exponent) const {
  const std::uint64_t space = polynomial_id_space(size(), exponent);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, space);
  std::vector<NodeId> ids;
  ids.reserve(size());
  std::unordered_set<NodeId> used;
  // Floyd's sampling would avoid the retry loop; n << space so retries are rare
  while (static_cast<int>(ids.size()) < size()) {
    NodeId candidate = pick(rng);
    if (used.insert(candidate).second) ids.push_back(candidate);
  }
  return with_ids(std::move(ids), space);
}

Graph Graph::with_grid(GridEmbedding grid) const {
  if (static_cast<int>(grid.coords.size()) != size()) throw PreconditionError("one coordinate per node required");
  Graph g = *this;
  g.grid_ = std::make_shared<const GridEmbedding>(std::move(grid));
  return g;
}

Graph Graph::with_subdivision(std::vector<SubdivisionTag> tags) const {
  if (static_cast<int>(tags.size()) != size()) throw PreconditionError("one tag per node required");
  Graph g = *this;
  g.subdivision_ = std::make_shared<const std::vector<SubdivisionTag>>(std::move(tags));
  return g;
}

InducedSubgraph Graph::induced(std::span<const NodeIndex> nodes) const {
  InducedSubgraph out;
  out.from_parent.assign(size(), -1);
  out.to_parent.assign(nodes.begin(), nodes.end());
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.to_parent.erase(std::unique(out.to_parent.begin(), out.to_parent.end()), out.to_parent.end());
  for (std::size_t i = 0; i < out.to_parent.size(); ++i) out.from_parent[out.to_parent[i]] = static_cast<NodeIndex>(i);

  std::vector<Edge> sub_edges;
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    for (NodeIndex w : neighbors(out.to_parent[i])) {
      NodeIndex j = out.from_parent[w];
      if (j > static_cast<NodeIndex>(i)) sub_edges.emplace_back(static_cast<NodeIndex>(i), j);
    }
  const int m = static_cast<int>(out.to_parent.size());
  Graph sub = Graph::from_edges(m, sub_edges);
  std::vector<NodeId> sub_ids(m);
  for (int i = 0; i < m; ++i) sub_ids[i] = ids_[out.to_parent[i]];
  sub.ids_ = std::move(sub_ids);
  sub.id_space_ = id_space_;
  if (grid_) {
    GridEmbedding emb{grid_->spec, {}};
    emb.coords.reserve(m);
    for (NodeIndex v : out.to_parent) emb.coords.push_back(grid_->coords[v]);
    sub.grid_ = std::make_shared<const GridEmbedding>(std::move(emb));
  }
  out.graph = std::move(sub);
  return out;
}

std::vector<int> bfs_distances(const Graph& g, NodeIndex source, int max_depth) {
  NodeIndex src[1] = {source};
  return multi_source_distances(g, src, max_depth);
}

std::vector<int> multi_source_distances(const Graph& g, std::span<const NodeIndex> sources, int max_depth) {
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<NodeIndex> frontier;
  for (NodeIndex s : sources) {
    if (dist[s] == 0) continue;
    dist[s] = 0;
    frontier.push_back(s);
  }
  std::size_t head = 0;
  while (head < frontier.size()) {
    NodeIndex u = frontier[head++];
    if (max_depth >= 0 && dist[u] >= max_depth) continue;
    for (NodeIndex w : g.neighbors(u))
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
  }
  return dist;
}

int strong_diameter(const Graph& g, std::span<const NodeIndex> nodes) {
  if (nodes.empty()) return 0;
  InducedSubgraph sub = g.induced(nodes);
  int best = 0;
  for (NodeIndex v = 0; v < sub.graph.size(); ++v) {
    for (int d : bfs_distances(sub.graph, v)) {
      if (d == kUnreachable) return -1;
      best = std::max(best, d);
    }
  }
  return best;
}

int weak_diameter(const Graph& g, std::span<const NodeIndex> nodes) {
  int best = 0;
  for (NodeIndex v : nodes) {
    auto dist = bfs_distances(g, v);
    for (NodeIndex w : nodes) {
      if (dist[w] == kUnreachable) return -1;
      best = std::max(best, dist[w]);
    }
  }
  return best;
}

std::vector<int> connected_components(const Graph& g, int* count) {
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (NodeIndex s = 0; s < g.size(); ++s) {
    if (comp[s] != -1) continue;
    std::vector<NodeIndex> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      NodeIndex u = stack.back();
      stack.pop_back();
      for (NodeIndex w : g.neighbors(u))
        if (comp[w] == -1) {
          comp[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

std::optional<std::vector<int>> bipartition(const Graph& g) {
  std::vector<int> side(g.size(), -1);
  for (NodeIndex s = 0; s < g.size(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::vector<NodeIndex> stack{s};
    while (!stack.empty()) {
      NodeIndex u = stack.back();
      stack.pop_back();
      for (NodeIndex w : g.neighbors(u)) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          stack.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

int girth(const Graph& g) {
  int best = kInfiniteGirth;
  std::vector<int> dist(g.size());
  std::vector<NodeIndex> parent(g.size());
  for (NodeIndex s = 0; s < g.size(); ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    dist[s] = 0;
    parent[s] = -1;
    std::vector<NodeIndex> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeIndex u = queue[head];
      if (2 * dist[u] + 1 >= best) break;
      for (NodeIndex w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

std::int64_t power_degree_bound(std::int64_t max_degree, int k) {
  const std::int64_t cap = std::int64_t{1} << 62;
  std::int64_t total = 0;
  std::int64_t layer = max_degree;
  for (int i = 0; i < k; ++i) {
    total = std::min(cap, total + layer);
    if (max_degree > 1 && layer > cap / (max_degree - 1)) layer = cap;
    else layer *= std::max<std::int64_t>(max_degree - 1, 0);
    if (layer == 0) break;
  }
  return total;
}

namespace {

Graph copy_labels(const Graph& source, Graph built) {
  built = built.with_ids(source.ids(), source.id_space());
  if (source.grid()) built = built.with_grid(*source.grid());
  return built;
}

// Coordinates reachable from `x` within infinity distance k on one axis.
std::vector<int> axis_window(int x, int k, int side, bool wrap) {
  std::vector<int> out;
  if (wrap) {
    if (2 * k + 1 >= side) {
      out.resize(side);
      std::iota(out.begin(), out.end(), 0);
    } else {
      for (int d = -k; d <= k; ++d) out.push_back(((x + d) % side + side) % side);
    }
  } else {
    for (int y = std::max(0, x - k); y <= std::min(side - 1, x + k); ++y) out.push_back(y);
  }
  return out;
}

}  // namespace

Graph power_graph(const Graph& g, int k, PowerMetric metric) {
  if (k < 1) throw PreconditionError("power exponent must be at least 1");
  std::vector<Edge> edges;
  if (metric == PowerMetric::Hop) {
    for (NodeIndex s = 0; s < g.size(); ++s) {
      auto dist = bfs_distances(g, s, k);
      for (NodeIndex w = s + 1; w < g.size(); ++w)
        if (dist[w] != kUnreachable && dist[w] <= k) edges.emplace_back(s, w);
    }
    return copy_labels(g, Graph::from_edges(g.size(), edges));
  }

  const GridEmbedding* grid = g.grid();
  if (!grid) throw PreconditionError("infinity-norm power needs grid coordinates");
  const GridSpec& spec = grid->spec;
  const int dim = spec.dimension();
  std::unordered_map<std::int64_t, NodeIndex> by_position;
  auto encode = [&](const std::vector<int>& c) {
    std::int64_t key = 0;
    for (int i = 0; i < dim; ++i) key = key * (spec.sides[i] + 1) + c[i];
    return key;
  };
  for (NodeIndex v = 0; v < g.size(); ++v) by_position[encode(grid->coords[v])] = v;

  for (NodeIndex v = 0; v < g.size(); ++v) {
    std::vector<std::vector<int>> windows;
    for (int i = 0; i < dim; ++i)
      windows.push_back(axis_window(grid->coords[v][i], k, spec.sides[i], spec.wrap[i]));
    std::vector<int> cursor(dim, 0), coord(dim);
    while (true) {
      for (int i = 0; i < dim; ++i) coord[i] = windows[i][cursor[i]];
      auto it = by_position.find(encode(coord));
      if (it != by_position.end() && it->second > v) edges.emplace_back(v, it->second);
      int axis = dim - 1;
      while (axis >= 0 && ++cursor[axis] == static_cast<int>(windows[axis].size())) cursor[axis--] = 0;
      if (axis < 0) break;
    }
  }
  return copy_labels(g, Graph::from_edges(g.size(), edges));
}

Graph infinity_power_within_hops(const Graph& g, int k, int hop_limit) {
  const GridEmbedding* grid = g.grid();
  if (!grid) throw PreconditionError("infinity-norm power needs grid coordinates");
  std::vector<Edge> edges;
  for (NodeIndex s = 0; s < g.size(); ++s) {
    auto dist = bfs_distances(g, s, hop_limit);
    for (NodeIndex w = s + 1; w < g.size(); ++w)
      if (dist[w] != kUnreachable && grid->infinity_distance(s, w) <= k) edges.emplace_back(s, w);
  }
  return copy_labels(g, Graph::from_edges(g.size(), edges));
}

Graph subdivide_edges(const Graph& base, int k) {
  if (k < 0) throw PreconditionError("subdivision parameter must be non-negative");
  const int n = base.size();
  const auto base_edges = base.edges();
  const std::int64_t total = n + 2LL * k * static_cast<std::int64_t>(base_edges.size());
  if (total > std::numeric_limits<NodeIndex>::max()) throw PreconditionError("subdivided graph too large");

  std::vector<SubdivisionTag> tags(total);
  for (NodeIndex v = 0; v < n; ++v) tags[v] = {NodeRole::Original, v, -1, 0};
  std::vector<Edge> edges;
  NodeIndex next = n;
  for (std::size_t e = 0; e < base_edges.size(); ++e) {
    NodeIndex prev = base_edges[e].first;
    for (int pos = 1; pos <= 2 * k; ++pos) {
      tags[next] = {NodeRole::Inner, -1, static_cast<std::int64_t>(e), pos};
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, base_edges[e].second);
  }
  return Graph::from_edges(static_cast<int>(total), edges).with_subdivision(std::move(tags));
}

}  // namespace fraclocal
