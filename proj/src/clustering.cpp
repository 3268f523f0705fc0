#include "fraclocal/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "fraclocal/random.hpp"

namespace fraclocal {

std::string to_string(ClusterKind kind) {
  switch (kind) {
    case ClusterKind::Unclassified: return "unclassified";
    case ClusterKind::Large: return "large";
    case ClusterKind::LowDegree: return "low_degree";
    case ClusterKind::Choosable: return "choosable";
  }
  return "?";
}

bool is_gallai_tree(const Graph& g) {
  const int n = g.size();
  if (n == 0) return false;
  // Tarjan's biconnected components over edges.
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> edge_stack;
  int timer = 0;
  bool gallai = true;

  auto close_block = [&](Edge until) {
    std::set<NodeIndex> nodes;
    std::int64_t edges = 0;
    while (true) {
      Edge e = edge_stack.back();
      edge_stack.pop_back();
      nodes.insert(e.first);
      nodes.insert(e.second);
      ++edges;
      if (e == until) break;
    }
    const std::int64_t k = static_cast<std::int64_t>(nodes.size());
    const bool clique = edges == k * (k - 1) / 2;
    const bool odd_cycle = edges == k && k % 2 == 1;
    if (!clique && !odd_cycle) gallai = false;
  };

  std::function<void(NodeIndex, NodeIndex)> dfs = [&](NodeIndex u, NodeIndex parent) {
    disc[u] = low[u] = timer++;
    for (NodeIndex w : g.neighbors(u)) {
      if (disc[w] == -1) {
        edge_stack.emplace_back(u, w);
        dfs(w, u);
        low[u] = std::min(low[u], low[w]);
        if (low[w] >= disc[u]) close_block({u, w});
      } else if (w != parent && disc[w] < disc[u]) {
        edge_stack.emplace_back(u, w);
        low[u] = std::min(low[u], disc[w]);
      }
    }
  };
  int components = 0;
  for (NodeIndex s = 0; s < n; ++s)
    if (disc[s] == -1) {
      ++components;
      dfs(s, -1);
    }
  if (components != 1) throw PreconditionError("Gallai test expects a connected graph");
  return gallai;
}

namespace {

bool list_colorable(const Graph& g, const std::vector<std::vector<int>>& lists, std::vector<int>& colors,
                    NodeIndex next) {
  if (next == g.size()) return true;
  for (int c : lists[next]) {
    bool ok = true;
    for (NodeIndex w : g.neighbors(next))
      if (w < next && colors[w] == c) {
        ok = false;
        break;
      }
    if (!ok) continue;
    colors[next] = c;
    if (list_colorable(g, lists, colors, next + 1)) return true;
  }
  return false;
}

// Walks list assignments up to renaming of colors: a node may introduce new
// colors only as the next unused integers.
bool every_assignment_colorable(const Graph& g, std::vector<std::vector<int>>& lists, NodeIndex node, int used) {
  if (node == g.size()) {
    std::vector<int> colors(g.size(), 0);
    return list_colorable(g, lists, colors, 0);
  }
  const int need = g.degree(node);
  for (int fresh = 0; fresh <= need; ++fresh) {
    const int reuse = need - fresh;
    if (reuse > used) continue;
    // choose `reuse` old colors
    std::vector<int> pick(reuse);
    std::function<bool(int, int)> choose = [&](int slot, int start) -> bool {
      if (slot == reuse) {
        std::vector<int> list = pick;
        for (int i = 1; i <= fresh; ++i) list.push_back(used + i);
        lists[node] = list;
        return every_assignment_colorable(g, lists, node + 1, used + fresh);
      }
      for (int c = start; c <= used; ++c) {
        pick[slot] = c;
        if (!choose(slot + 1, c + 1)) return false;
      }
      return true;
    };
    if (!choose(0, 1)) return false;
  }
  return true;
}

}  // namespace

bool degree_choosable_bruteforce(const Graph& g) {
  if (g.size() > kBruteForceChoosableNodes + 2) throw PreconditionError("graph too large for brute force");
  std::vector<std::vector<int>> lists(g.size());
  return every_assignment_colorable(g, lists, 0, 0);
}

bool is_degree_choosable(const Graph& g) {
  const bool by_blocks = !is_gallai_tree(g);
  if (bruteforce_choosable_feasible(g)) {
    const bool by_search = degree_choosable_bruteforce(g);
    if (by_search != by_blocks) throw std::logic_error("block test and exhaustive search disagree");
  }
  return by_blocks;
}

ClusterSnapshot ClusterSnapshot::from_view(const sim::BallView<NodeId>& view) {
  ClusterSnapshot snap;
  const NodeId label = view.at(view.center).label;
  snap.center = label;
  for (const auto& [id, rec] : view.nodes) {
    if (rec.label != label) continue;
    snap.members.push_back(id);
    if (rec.neighbors) snap.adjacency[id] = *rec.neighbors;
  }
  return snap;
}

ClusterSnapshot ClusterSnapshot::from_graph(const Graph& g, NodeIndex center, const std::vector<NodeIndex>& members) {
  ClusterSnapshot snap;
  snap.center = g.id(center);
  for (NodeIndex v : members) {
    snap.members.push_back(g.id(v));
    auto& adj = snap.adjacency[g.id(v)];
    for (NodeIndex w : g.neighbors(v)) adj.push_back(g.id(w));
  }
  std::sort(snap.members.begin(), snap.members.end());
  return snap;
}

bool ClusterSnapshot::contains(NodeId id) const { return std::binary_search(members.begin(), members.end(), id); }

Graph ClusterSnapshot::induced(const std::vector<NodeId>& subset) const {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto it = adjacency.find(subset[i]);
    if (it == adjacency.end()) continue;
    for (NodeId w : it->second) {
      auto pos = std::lower_bound(subset.begin(), subset.end(), w);
      if (pos != subset.end() && *pos == w) edges.emplace_back(static_cast<NodeIndex>(i), static_cast<NodeIndex>(pos - subset.begin()));
    }
  }
  Graph g = Graph::from_edges(static_cast<int>(subset.size()), edges);
  std::uint64_t space = std::max<std::uint64_t>(subset.empty() ? 1 : subset.back(), subset.size());
  return g.with_ids(subset, space);
}

std::optional<SnapshotTag> classify_snapshot(const ClusterSnapshot& snap, int q, std::int64_t max_degree,
                                             int search_cap) {
  SnapshotTag tag;
  if (static_cast<int>(snap.members.size()) >= q) {
    tag.kind = ClusterKind::Large;
    return tag;
  }
  for (NodeId id : snap.members) {
    auto it = snap.adjacency.find(id);
    if (it != snap.adjacency.end() && static_cast<std::int64_t>(it->second.size()) <= max_degree - 1) {
      tag.kind = ClusterKind::LowDegree;
      tag.low_degree_witness = id;
      return tag;
    }
  }
  std::vector<NodeId> interior;
  for (NodeId id : snap.members) {
    auto it = snap.adjacency.find(id);
    if (it == snap.adjacency.end()) continue;
    if (std::all_of(it->second.begin(), it->second.end(), [&](NodeId w) { return snap.contains(w); }))
      interior.push_back(id);
  }
  std::set<NodeId> interior_set(interior.begin(), interior.end());
  std::set<std::vector<NodeId>> level;
  for (NodeId id : interior) level.insert({id});
  for (int size = 1; size <= search_cap && !level.empty(); ++size) {
    for (const auto& subset : level) {
      Graph sub = snap.induced(subset);
      if (is_degree_choosable(sub)) {
        tag.kind = ClusterKind::Choosable;
        tag.choosable_witness = subset;
        return tag;
      }
    }
    std::set<std::vector<NodeId>> next;
    for (const auto& subset : level)
      for (NodeId u : subset)
        for (NodeId w : snap.adjacency.at(u)) {
          if (!interior_set.count(w) || std::binary_search(subset.begin(), subset.end(), w)) continue;
          auto grown = subset;
          grown.insert(std::upper_bound(grown.begin(), grown.end(), w), w);
          next.insert(std::move(grown));
        }
    level = std::move(next);
  }
  return std::nullopt;
}

namespace {

double growth_log(std::int64_t max_degree) { return std::log(static_cast<double>(std::max<std::int64_t>(max_degree - 1, 2))); }
double log_base(std::int64_t max_degree) { return std::log(static_cast<double>(std::max<std::int64_t>(max_degree, 2))); }

}  // namespace

int clustering_alpha(std::int64_t max_degree, int q, int c_alpha) {
  const double ratio = std::log(static_cast<double>(std::max(q, 1))) / log_base(max_degree);
  // tiny slack so exact integers are not pushed up by rounding noise
  int alpha = static_cast<int>(std::ceil(c_alpha * (1.0 + ratio) - 1e-9));
  return std::max(alpha, 2);
}

int default_c_alpha(std::int64_t max_degree, int q) {
  const double need = std::log(static_cast<double>(std::max(q, 1)));
  for (int c = 1; c < 1000; ++c) {
    const int alpha = clustering_alpha(max_degree, q, c);
    const double have = std::floor(alpha / 2.0 - 3.0) / 2.0 * growth_log(max_degree);
    if (have >= need - 1e-12) return c;
  }
  throw PreconditionError("no admissible c_alpha below 1000");
}

namespace {

struct VoronoiProgram {
  using Input = bool;  // is a center
  struct Message {
    int dist;
    NodeId center;
  };
  using Output = NodeId;
  struct State {
    std::optional<Message> best;
  };
  int radius;

  State init(const sim::NodeContext<bool>&) const { return {}; }

  sim::Action<Message, Output> step(const sim::NodeContext<bool>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    act.sleep();
    if (s.best) return act;
    if (round == 0 && ctx.input()) {
      s.best = Message{0, ctx.id};
    } else {
      for (const auto& in : inbox) {
        Message cand{in.message->dist + 1, in.message->center};
        if (!s.best || std::tie(cand.dist, cand.center) < std::tie(s.best->dist, s.best->center)) s.best = cand;
      }
    }
    if (s.best) {
      // the first offers to arrive come from the nearest centers, so this is final
      act.output = s.best->center;
      if (s.best->dist < radius) act.send = *s.best;
    }
    return act;
  }
};

template <class Accept>
std::vector<sim::BallView<NodeId>> collect_views(const Graph& g, const std::vector<NodeId>& labels, int radius,
                                                Accept accept) {
  sim::CollectBall<NodeId, Accept> program{radius, accept};
  sim::RunOptions ro;
  ro.round_cap = radius;
  auto run = sim::run(g, program, std::span<const NodeId>(labels), ro);
  std::vector<sim::BallView<NodeId>> views;
  views.reserve(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) views.push_back(run.output(v));
  return views;
}

struct SameCluster {
  bool operator()(NodeId own, NodeId other) const { return own != 0 && own == other; }
};

std::vector<NodeId> center_labels(const Graph& g, const Clustering& c) {
  std::vector<NodeId> labels(g.size(), 0);
  for (NodeIndex v = 0; v < g.size(); ++v)
    if (c.assignment[v] != kUnclustered) labels[v] = g.id(c.clusters[c.assignment[v]].center);
  return labels;
}

}  // namespace

std::vector<ClusterSnapshot> gather_cluster_snapshots(const Graph& g, const Clustering& clustering, int radius,
                                                      std::int64_t* rounds) {
  auto labels = center_labels(g, clustering);
  // Cells of strong clusterings are connected, so flooding can stay inside
  // them; separated clusters may only be weakly connected.
  const bool strong = clustering.pre_removal_center.empty();
  std::vector<sim::BallView<NodeId>> views =
      strong ? collect_views(g, labels, radius, SameCluster{}) : collect_views(g, labels, radius, sim::AcceptAll{});
  std::vector<ClusterSnapshot> snaps(clustering.clusters.size());
  std::vector<bool> have(clustering.clusters.size(), false);
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const int c = clustering.assignment[v];
    if (c == kUnclustered) continue;
    auto snap = ClusterSnapshot::from_view(views[v]);
    if (!have[c]) {
      snaps[c] = std::move(snap);
      have[c] = true;
    } else if (snap.center != snaps[c].center || snap.members != snaps[c].members || snap.adjacency != snaps[c].adjacency) {
      throw std::logic_error("members of one cluster gathered different views; radius too small");
    }
  }
  if (rounds) *rounds = radius;
  return snaps;
}

Clustering ruling_set_clustering(const Graph& g, int q, const RulingClusteringOptions& options) {
  if (q < 1) throw PreconditionError("q must be positive");
  const sim::ModelInfo model = options.model.value_or(sim::default_model(g));
  const std::int64_t delta = model.max_degree;
  const int c_alpha = options.c_alpha.value_or(default_c_alpha(delta, q));
  const int alpha = options.alpha.value_or(clustering_alpha(delta, q, c_alpha));
  if (alpha < 2) throw PreconditionError("alpha must be at least 2");
  const double log_delta = std::log2(static_cast<double>(std::max<std::int64_t>(delta, 2)));
  const int digits_budget = static_cast<int>(std::ceil(alpha * log_delta - 1e-9));
  const int beta = (alpha - 1) * digits_budget;

  Clustering out;
  out.alpha = alpha;

  RulingSetOptions rso;
  rso.precoloring = options.power_precoloring;
  rso.power_model = options.power_model;
  auto rs = ruling_set(g, alpha, beta, rso);
  out.phases.emplace_back("ruling_set", rs.rounds);
  // schedule with the guaranteed beta, not the achieved domination: the latter
  // shrinks with the ID space and would make every later phase depend on n
  out.radius_bound = beta;

  std::vector<bool> is_center(g.size());
  for (NodeIndex v = 0; v < g.size(); ++v) is_center[v] = rs.in_set[v];
  VoronoiProgram voronoi{out.radius_bound};
  sim::RunOptions ro;
  ro.round_cap = out.radius_bound;
  ro.model = model;
  // std::vector<bool> has no contiguous storage; copy into a plain array
  std::unique_ptr<bool[]> inputs(new bool[g.size()]);
  for (NodeIndex v = 0; v < g.size(); ++v) inputs[v] = is_center[v];
  auto cells = sim::run(g, voronoi, std::span<const bool>(inputs.get(), g.size()), ro);
  out.phases.emplace_back("voronoi", out.radius_bound);

  std::map<NodeId, int> cluster_of_center;
  for (NodeIndex v = 0; v < g.size(); ++v)
    if (is_center[v]) {
      cluster_of_center[g.id(v)] = static_cast<int>(out.clusters.size());
      out.clusters.push_back({v, {}, {}, -1, -1});
    }
  out.assignment.assign(g.size(), kUnclustered);
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const int c = cluster_of_center.at(cells.output(v));
    out.assignment[v] = c;
    out.clusters[c].members.push_back(v);
  }

  if (options.classify) {
    std::int64_t gather = 0;
    auto snaps = gather_cluster_snapshots(g, out, 2 * out.radius_bound + 1, &gather);
    out.phases.emplace_back("classify", gather);
    for (std::size_t c = 0; c < out.clusters.size(); ++c) {
      auto tag = classify_snapshot(snaps[c], q, delta, options.search_cap);
      if (!tag)
        throw ClassificationError("cluster around node " + std::to_string(g.id(out.clusters[c].center)) +
                                  " is small, has no low-degree node and no degree-choosable part");
      Cluster& cl = out.clusters[c];
      cl.tag.kind = tag->kind;
      if (tag->kind == ClusterKind::LowDegree) cl.tag.low_degree_witness = *g.index_of(tag->low_degree_witness);
      for (NodeId id : tag->choosable_witness) cl.tag.choosable_witness.push_back(*g.index_of(id));
      std::sort(cl.tag.choosable_witness.begin(), cl.tag.choosable_witness.end());
    }
  }
  for (auto& [name, r] : out.phases) out.rounds += r;
  return out;
}

int default_mpx_shift_cap(int n, double epsilon) {
  return std::max(1, static_cast<int>(std::ceil(4.0 * std::log(std::max(n, 2)) / epsilon)));
}

namespace {

struct MpxProgram {
  using Input = sim::NoInput;
  struct Offer {
    double shift;
    int dist;
    NodeId center;
    double key() const { return dist - shift; }
  };
  struct Message {
    std::optional<Offer> offer;
    NodeId final_center = 0;
  };
  struct Output {
    NodeId center;
    bool removed;
  };
  struct State {
    Offer best{};
    bool final = false;
    std::map<NodeId, NodeId> neighbor_centers;
  };
  double rate;
  int cap;

  static bool better(const Offer& a, const Offer& b) {
    if (a.key() != b.key()) return a.key() < b.key();
    return a.center < b.center;
  }
  std::int64_t final_round(const Offer& best) const {
    // no center at distance > r can win once best < r + 1 - cap
    return static_cast<std::int64_t>(std::floor(best.key() + cap - 1)) + 1;
  }

  State init(const sim::NodeContext<Input>& ctx) const {
    auto rng = ctx.random(0);
    State s;
    s.best = {std::min(exponential(rng, rate), static_cast<double>(cap)), 0, ctx.id};
    return s;
  }

  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    Message msg;
    bool improved = round == 0;
    for (const auto& in : inbox) {
      if (in.message->final_center) s.neighbor_centers[in.from] = in.message->final_center;
      if (!in.message->offer || s.final) continue;
      Offer cand = *in.message->offer;
      ++cand.dist;
      if (better(cand, s.best)) {
        s.best = cand;
        improved = true;
      }
    }
    if (improved && !s.final) msg.offer = s.best;
    if (!s.final && (round >= final_round(s.best) || round >= cap)) {
      s.final = true;
      msg.final_center = s.best.center;
    }
    if (round >= cap + 1) {
      bool removed = false;
      for (const auto& [id, c] : s.neighbor_centers)
        if (c != s.best.center && ctx.id < id) removed = true;
      act.output = Output{s.best.center, removed};
      act.sleep();
      return act;
    }
    if (msg.offer || msg.final_center) act.send = msg;
    act.wake_at(s.final ? cap + 1 : std::min<std::int64_t>(final_round(s.best), cap));
    return act;
  }
};

}  // namespace

Clustering mpx_clustering_separated(const Graph& g, double epsilon, std::uint64_t seed, std::optional<int> shift_cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  const int cap = shift_cap.value_or(default_mpx_shift_cap(g.size(), epsilon));
  if (cap < 1) throw PreconditionError("shift cap must be positive");
  MpxProgram program{epsilon / 2.0, cap};
  sim::RunOptions ro;
  ro.master_seed = seed;
  ro.round_cap = cap + 1;
  auto run = sim::run(g, program, ro);

  Clustering out;
  out.radius_bound = cap;
  out.rounds = cap + 1;
  out.phases.emplace_back("mpx", cap + 1);
  out.assignment.assign(g.size(), kUnclustered);
  out.pre_removal_center.assign(g.size(), -1);
  std::map<NodeId, NodeIndex> index;
  for (NodeIndex v = 0; v < g.size(); ++v) index[g.id(v)] = v;
  std::map<NodeId, int> cluster_of_center;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const auto& o = run.output(v);
    out.pre_removal_center[v] = index.at(o.center);
    if (o.removed) continue;
    auto [it, fresh] = cluster_of_center.emplace(o.center, static_cast<int>(out.clusters.size()));
    if (fresh) out.clusters.push_back({index.at(o.center), {}, {}, -1, -1});
    out.assignment[v] = it->second;
    out.clusters[it->second].members.push_back(v);
  }
  return out;
}

void measure_diameters(const Graph& g, Clustering& clustering) {
  for (auto& c : clustering.clusters) {
    c.strong_diameter = strong_diameter(g, c.members);
    c.weak_diameter = weak_diameter(g, c.members);
  }
}

nlohmann::json clustering_json(const Graph& g, const Clustering& clustering) {
  nlohmann::json out = nlohmann::json::object();
  for (NodeIndex v = 0; v < g.size(); ++v) {
    const int c = clustering.assignment[v];
    out[std::to_string(v)] = c == kUnclustered ? nlohmann::json(nullptr) : nlohmann::json(g.id(clustering.clusters[c].center));
  }
  return out;
}

}  // namespace fraclocal
