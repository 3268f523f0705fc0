#include "fraclocal/frac_color.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "fraclocal/path_coloring.hpp"
#include "fraclocal/random.hpp"

namespace fraclocal {

PartialColoring SweepListSolver::solve(const Graph& g, const ListAssignment& lists, const ProperColoring& helper,
                                       std::uint64_t) const {
  auto run = list_color_det(g, lists, helper);
  return {run.coloring.colors, run.coloring.palette};
}

PartialColoring SloppyListSolver::solve(const Graph& g, const ListAssignment& lists, const ProperColoring&,
                                        std::uint64_t seed) const {
  return list_color_sloppy(g, lists, trials_, seed).coloring;
}

namespace {

std::unordered_map<NodeId, NodeIndex> id_index(const Graph& g) {
  std::unordered_map<NodeId, NodeIndex> index;
  for (NodeIndex v = 0; v < g.size(); ++v) index[g.id(v)] = v;
  return index;
}

bool backtrack_lists(const Graph& g, const ListAssignment& lists, std::vector<Color>& colors, NodeIndex next) {
  if (next == g.size()) return true;
  for (Color c : lists[next]) {
    bool ok = true;
    for (NodeIndex w : g.neighbors(next))
      if (w < next && colors[w] == c) ok = false;
    if (!ok) continue;
    colors[next] = c;
    if (backtrack_lists(g, lists, colors, next + 1)) return true;
  }
  colors[next] = kUncolored;
  return false;
}

ColorList free_colors(std::int64_t palette, const std::vector<std::pair<NodeId, Color>>& neighbor_colors,
                      const std::set<NodeId>& ignore = {}) {
  std::set<Color> used;
  for (auto [id, c] : neighbor_colors)
    if (c != kUncolored && !ignore.count(id)) used.insert(c);
  ColorList out;
  for (Color c = 1; c <= palette; ++c)
    if (!used.count(c)) out.push_back(c);
  return out;
}

SeedPlan plan_from_tag(const Graph& g, const Cluster& cluster, const std::optional<NodeIndex>& mark) {
  SeedPlan plan;
  if (mark) {
    plan.seeds = {g.id(*mark)};
    plan.finish = SeedPlan::Finish::LeaveUncolored;
    return plan;
  }
  switch (cluster.tag.kind) {
    case ClusterKind::LowDegree:
      plan.seeds = {g.id(cluster.tag.low_degree_witness)};
      plan.finish = SeedPlan::Finish::LowDegreeGreedy;
      return plan;
    case ClusterKind::Choosable:
      for (NodeIndex v : cluster.tag.choosable_witness) plan.seeds.push_back(g.id(v));
      plan.finish = SeedPlan::Finish::ChoosableSearch;
      return plan;
    default:
      throw PreconditionError("cluster around node " + std::to_string(g.id(cluster.center)) +
                              " has neither a mark nor a classification witness");
  }
}

Color saturating_power(std::int64_t base, int exponent, std::int64_t factor) {
  const Color cap = Color{1} << 62;
  __int128 acc = factor;
  for (int i = 0; i < exponent; ++i) {
    acc *= base;
    if (acc >= cap) return cap;
  }
  return static_cast<Color>(acc);
}

}  // namespace

PeelResult peel_layers(const Graph& g, const Clustering& clustering, const std::vector<ClusterSnapshot>& snapshots,
                       const std::vector<SeedPlan>& plans, const ProperColoring& helper, const ListSolver& solver,
                       std::uint64_t seed, std::int64_t max_degree, int layer_bound) {
  const int n = g.size();
  const auto index = id_index(g);
  std::vector<int> layer(n, -1);

  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    const ClusterSnapshot& snap = snapshots[c];
    std::map<NodeId, int> dist;
    std::vector<NodeId> queue;
    for (NodeId s : plans[c].seeds) {
      if (!snap.contains(s)) throw std::logic_error("seed outside its cluster");
      dist[s] = 0;
      queue.push_back(s);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId u = queue[head];
      for (NodeId w : snap.adjacency.at(u))
        if (snap.contains(w) && !dist.count(w)) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    for (NodeId id : snap.members) {
      auto it = dist.find(id);
      if (it == dist.end()) throw std::logic_error("cluster is not connected to its seed set");
      if (it->second > layer_bound) throw std::logic_error("layer beyond the scheduled bound");
      layer[index.at(id)] = it->second;
    }
  }

  PeelResult out;
  out.coloring.palette = max_degree;
  out.coloring.colors.assign(n, kUncolored);
  const std::int64_t per_layer = solver.rounds(helper.palette);

  for (int i = layer_bound; i >= 1; --i) {
    std::vector<NodeIndex> nodes;
    for (NodeIndex v = 0; v < n; ++v)
      if (layer[v] == i) nodes.push_back(v);
    if (nodes.empty()) continue;
    auto seen = exchange_with_neighbors(g, out.coloring.colors);
    InducedSubgraph sub = g.induced(nodes);
    ListAssignment lists;
    ProperColoring sub_helper{{}, helper.palette};
    for (NodeIndex v : sub.to_parent) {
      lists.push_back(free_colors(max_degree, seen[v]));
      sub_helper.colors.push_back(helper.colors[v]);
    }
    PartialColoring part = solver.solve(sub.graph, lists, sub_helper, derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    for (std::size_t k = 0; k < sub.to_parent.size(); ++k) out.coloring.colors[sub.to_parent[k]] = part.colors[k];
  }
  out.phases.emplace_back("layers", static_cast<std::int64_t>(layer_bound) * (per_layer + 1));

  auto seen = exchange_with_neighbors(g, out.coloring.colors);
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    const SeedPlan& plan = plans[c];
    if (plan.finish == SeedPlan::Finish::LowDegreeGreedy) {
      NodeIndex v = index.at(plan.seeds.front());
      ColorList options = free_colors(max_degree, seen[v]);
      if (options.empty()) throw ClassificationError("low-degree witness has no free color");
      out.coloring.colors[v] = options.front();
    } else if (plan.finish == SeedPlan::Finish::ChoosableSearch) {
      std::vector<NodeIndex> members;
      for (NodeId id : plan.seeds) members.push_back(index.at(id));
      InducedSubgraph sub = g.induced(members);
      std::set<NodeId> inside(plan.seeds.begin(), plan.seeds.end());
      ListAssignment lists;
      for (NodeIndex v : sub.to_parent) lists.push_back(free_colors(max_degree, seen[v], inside));
      std::vector<Color> colors(sub.graph.size(), kUncolored);
      if (!backtrack_lists(sub.graph, lists, colors, 0))
        throw ClassificationError("degree-choosable witness admits no list coloring");
      for (std::size_t k = 0; k < sub.to_parent.size(); ++k) out.coloring.colors[sub.to_parent[k]] = colors[k];
    }
  }
  // the witness step gathers the witness and its surroundings inside the cluster
  out.phases.emplace_back("finish", 2LL * clustering.radius_bound + 2);
  for (auto& [name, r] : out.phases) out.rounds += r;
  return out;
}

PeelResult partial_delta_coloring_with_marks(const Graph& g, const Clustering& clustering,
                                             const std::vector<std::optional<NodeIndex>>& marks,
                                             const ProperColoring& helper, const ListSolver& solver,
                                             std::uint64_t seed, std::optional<sim::ModelInfo> model) {
  const std::int64_t delta = model.value_or(sim::default_model(g)).max_degree;
  if (marks.size() != clustering.clusters.size()) throw PreconditionError("one mark slot per cluster required");
  const int radius = clustering.radius_bound;
  std::int64_t gather = 0;
  auto snaps = gather_cluster_snapshots(g, clustering, 2 * radius + 1, &gather);
  std::vector<SeedPlan> plans;
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c)
    plans.push_back(plan_from_tag(g, clustering.clusters[c], marks[c]));
  PeelResult out = peel_layers(g, clustering, snaps, plans, helper, solver, seed, delta, 2 * radius);
  out.phases.insert(out.phases.begin(), {"gather", gather});
  out.rounds += gather;
  return out;
}

namespace {

struct Prepared {
  sim::ModelInfo model;
  ColoringRun helper;
  Clustering clustering;
  std::vector<ClusterSnapshot> snapshots;
  std::int64_t gather_rounds = 0;
  PhaseLog phases;
};

Prepared prepare(const Graph& g, int q, const QDeltaOptions& options, RulingClusteringOptions copt) {
  Prepared p;
  p.model = options.model.value_or(sim::default_model(g));
  if (p.model.max_degree < 1) throw PreconditionError("graph needs at least one edge");
  LinialOptions lo;
  lo.initial = options.helper_initial;
  lo.model = p.model;
  p.helper = linial_coloring(g, lo);
  p.phases.emplace_back("helper_coloring", p.helper.rounds);
  if (!copt.model) copt.model = p.model;
  p.clustering = ruling_set_clustering(g, q, copt);
  for (const auto& ph : p.clustering.phases) p.phases.push_back(ph);
  p.snapshots = gather_cluster_snapshots(g, p.clustering, 2 * p.clustering.radius_bound + 1, &p.gather_rounds);
  p.phases.emplace_back("gather", p.gather_rounds);
  return p;
}

std::int64_t total(const PhaseLog& phases) {
  std::int64_t sum = 0;
  for (const auto& [name, r] : phases) sum += r;
  return sum;
}

}  // namespace

MultiColoringRun q_delta_coloring(const Graph& g, int q, const QDeltaOptions& options) {
  if (q < 1) throw PreconditionError("q must be positive");
  SweepListSolver sweep;
  const ListSolver& solver = options.solver ? *options.solver : sweep;
  Prepared prep = prepare(g, q, options, options.clustering);
  const std::int64_t delta = prep.model.max_degree;
  const int layer_bound = 2 * prep.clustering.radius_bound;

  MultiColoringRun out;
  out.coloring = {q * delta, q - 1, std::vector<std::vector<Color>>(g.size())};
  const auto index = id_index(g);
  std::int64_t slowest = 0;
  for (int j = 0; j < q; ++j) {
    std::vector<SeedPlan> plans;
    for (std::size_t c = 0; c < prep.clustering.clusters.size(); ++c) {
      const Cluster& cl = prep.clustering.clusters[c];
      std::optional<NodeIndex> mark;
      if (cl.tag.kind == ClusterKind::Large) mark = index.at(prep.snapshots[c].members.at(j));
      plans.push_back(plan_from_tag(g, cl, mark));
    }
    PeelResult run = peel_layers(g, prep.clustering, prep.snapshots, plans, prep.helper.coloring, solver,
                                 derive_seed(options.seed, {static_cast<std::uint64_t>(j)}), delta, layer_bound);
    for (NodeIndex v = 0; v < g.size(); ++v)
      if (run.coloring.colors[v] != kUncolored) out.coloring.sets[v].push_back(j * delta + run.coloring.colors[v]);
    slowest = std::max(slowest, run.rounds);
  }
  out.phases = prep.phases;
  out.phases.emplace_back("parallel_runs", slowest);
  out.rounds = total(out.phases);
  out.alpha = prep.clustering.alpha;
  out.list_rounds = solver.rounds(prep.helper.coloring.palette);
  out.helper_palette = prep.helper.coloring.palette;
  out.layer_bound = layer_bound;
  out.clustering = std::move(prep.clustering);
  return out;
}

namespace {

// Shortest path of 2q+1 nodes from the center inside the cluster: the far end
// is the smallest-ID node at distance 2q, predecessors by smallest ID.
std::vector<NodeId> center_path(const ClusterSnapshot& snap, int q) {
  std::map<NodeId, int> dist;
  std::vector<NodeId> queue{snap.center};
  dist[snap.center] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId w : snap.adjacency.at(u))
      if (snap.contains(w) && !dist.count(w)) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
  const int target = 2 * q;
  std::optional<NodeId> end;
  for (auto [id, d] : dist)
    if (d == target) {
      end = id;
      break;
    }
  if (!end) throw ClassificationError("cluster around node " + std::to_string(snap.center) + " has no node at distance " +
                                      std::to_string(target) + " from its center");
  std::vector<NodeId> path{*end};
  while (path.back() != snap.center) {
    NodeId cur = path.back();
    NodeId best = 0;
    for (NodeId w : snap.adjacency.at(cur)) {
      auto it = dist.find(w);
      if (it != dist.end() && it->second == dist[cur] - 1 && (best == 0 || w < best)) best = w;
    }
    path.push_back(best);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

MultiColoringRun small_support_coloring(const Graph& g, int q, const QDeltaOptions& options) {
  if (q < 1) throw PreconditionError("q must be positive");
  SweepListSolver sweep;
  const ListSolver& solver = options.solver ? *options.solver : sweep;
  RulingClusteringOptions copt = options.clustering;
  copt.alpha = 4 * q + 4;
  copt.classify = false;
  Prepared prep = prepare(g, q, options, copt);
  const std::int64_t delta = prep.model.max_degree;
  const int layer_bound = 2 * prep.clustering.radius_bound;
  const auto index = id_index(g);

  std::vector<SeedPlan> plans;
  std::vector<std::vector<NodeId>> paths;
  for (const auto& snap : prep.snapshots) {
    paths.push_back(center_path(snap, q));
    plans.push_back({paths.back(), SeedPlan::Finish::LeaveUncolored});
  }
  PeelResult peel = peel_layers(g, prep.clustering, prep.snapshots, plans, prep.helper.coloring, solver,
                                options.seed, delta, layer_bound);

  MultiColoringRun out;
  out.coloring = expand_blocks(peel.coloring, q);
  out.coloring.p = q * delta + 1;
  out.coloring.q = q;

  // lists for the path nodes: everything not blocked by a colored neighbor
  auto seen = exchange_with_neighbors(g, peel.coloring.colors);
  for (const auto& path : paths) {
    std::vector<ColorList> lists;
    for (NodeId id : path) {
      NodeIndex v = index.at(id);
      std::set<Color> blocked;
      for (auto [nid, c] : seen[v])
        if (c != kUncolored)
          for (int i = 1; i <= q; ++i) blocked.insert((c - 1) * q + i);
      ColorList list;
      for (Color c = 1; c <= out.coloring.p; ++c)
        if (!blocked.count(c)) list.push_back(c);
      lists.push_back(std::move(list));
    }
    auto sets = path_complete(lists, q);
    for (std::size_t i = 0; i < path.size(); ++i) out.coloring.sets[index.at(path[i])] = sets[i];
  }

  out.phases = prep.phases;
  for (const auto& ph : peel.phases) out.phases.push_back(ph);
  out.phases.emplace_back("path_completion", 2LL * prep.clustering.radius_bound + 2);
  out.rounds = total(out.phases);
  out.alpha = prep.clustering.alpha;
  out.list_rounds = solver.rounds(prep.helper.coloring.palette);
  out.helper_palette = prep.helper.coloring.palette;
  out.layer_bound = layer_bound;
  out.clustering = std::move(prep.clustering);
  return out;
}

int amplification_runs(double epsilon, double n, double failure) {
  if (!(epsilon > 0.0) || !(failure > 0.0) || !(n > 0.0)) throw PreconditionError("invalid amplification parameters");
  const double t = std::ceil(6.0 / epsilon * std::log(n / failure) - 1e-9);
  return std::max(1, static_cast<int>(t));
}

AmplifyResult amplify(const RandomizedColoring& base, int runs, std::uint64_t seed, double epsilon) {
  if (runs < 1) throw PreconditionError("at least one run required");
  AmplifyResult out;
  out.runs = runs;
  for (int j = 0; j < runs; ++j) {
    MultiColoringRun run = base(derive_seed(seed, {static_cast<std::uint64_t>(j)}));
    if (j == 0) {
      out.base_p = run.coloring.p;
      out.base_q = run.coloring.q;
      out.successes.assign(run.coloring.sets.size(), 0);
    } else if (run.coloring.p != out.base_p || run.coloring.q != out.base_q) {
      throw std::logic_error("amplified runs must share (p, q)");
    }
    merge_shifted(out.coloring, run.coloring, static_cast<std::int64_t>(j) * out.base_p);
    for (std::size_t v = 0; v < run.coloring.sets.size(); ++v)
      if (static_cast<std::int64_t>(run.coloring.sets[v].size()) >= out.base_q) ++out.successes[v];
    out.rounds = std::max(out.rounds, run.rounds);
  }
  out.coloring.p = out.base_p * runs;
  out.coloring.q = static_cast<std::int64_t>(std::ceil((1.0 - epsilon) * runs * out.base_q - 1e-9));
  out.min_successes = out.successes.empty() ? 0 : *std::min_element(out.successes.begin(), out.successes.end());
  out.complete = std::all_of(out.coloring.sets.begin(), out.coloring.sets.end(),
                             [&](const auto& s) { return static_cast<std::int64_t>(s.size()) >= out.coloring.q; });
  return out;
}

DerandomizeResult enumerate_seeds_derandomize(const RandomizedColoring& base, std::span<const std::uint64_t> pool) {
  if (pool.empty()) throw PreconditionError("seed pool is empty");
  DerandomizeResult out;
  std::int64_t p = 0;
  std::int64_t good = 0;
  for (std::size_t j = 0; j < pool.size(); ++j) {
    MultiColoringRun run = base(pool[j]);
    if (j == 0) p = run.coloring.p;
    else if (run.coloring.p != p) throw std::logic_error("runs must share the palette size");
    merge_shifted(out.coloring, run.coloring, static_cast<std::int64_t>(j) * p);
    bool complete = std::all_of(run.coloring.sets.begin(), run.coloring.sets.end(),
                                [&](const auto& s) { return static_cast<std::int64_t>(s.size()) >= run.coloring.q; });
    out.run_complete.push_back(complete);
    good += complete;
    out.rounds = std::max(out.rounds, run.rounds);
  }
  out.coloring.p = p * static_cast<std::int64_t>(pool.size());
  out.coloring.q = std::numeric_limits<std::int64_t>::max();
  for (const auto& s : out.coloring.sets) out.coloring.q = std::min<std::int64_t>(out.coloring.q, s.size());
  if (out.coloring.sets.empty()) out.coloring.q = 0;
  out.success_fraction = static_cast<double>(good) / static_cast<double>(pool.size());
  return out;
}

MultiColoringRun fast_no_logstar(const Graph& g, int q, std::uint64_t seed, const FastOptions& options) {
  if (q < 1) throw PreconditionError("q must be positive");
  const std::int64_t delta = g.max_degree();
  if (delta < 1) throw PreconditionError("graph needs at least one edge");
  const int alpha = clustering_alpha(delta, q, default_c_alpha(delta, q));
  const Color palette = options.palette.value_or(saturating_power(delta, alpha, q));

  auto pre = random_distance_coloring(g, alpha, palette, derive_seed(seed, {0x5052ULL}));
  std::vector<NodeIndex> colored;
  for (NodeIndex v = 0; v < g.size(); ++v)
    if (pre.coloring.colors[v] != kUncolored) colored.push_back(v);
  InducedSubgraph sub = g.induced(colored);

  ProperColoring start{{}, palette};
  for (NodeIndex v : sub.to_parent) start.colors.push_back(pre.coloring.colors[v]);
  QDeltaOptions qo;
  qo.seed = seed;
  qo.model = sim::ModelInfo{g.size(), delta, g.id_space()};
  qo.helper_initial = start;
  qo.clustering.alpha = alpha;
  qo.clustering.power_precoloring = start;
  // schedule must not depend on n, so no min(n - 1, .) here
  qo.clustering.power_model = sim::ModelInfo{g.size(), power_degree_bound(delta, alpha - 1), g.id_space()};

  MultiColoringRun inner;
  if (sub.graph.size() > 0) {
    inner = q_delta_coloring(sub.graph, q, qo);
  } else {
    // nobody survived the precoloring; the schedule length is still fixed
    Graph probe = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    ProperColoring probe_start{{1, 2}, std::max<Color>(palette, 2)};
    qo.helper_initial = probe_start;
    qo.clustering.power_precoloring = probe_start;
    inner = q_delta_coloring(probe, q, qo);
    inner.coloring.sets.clear();
  }
  MultiColoringRun out;
  out.coloring = {q * delta, q - 1, std::vector<std::vector<Color>>(g.size())};
  for (std::size_t k = 0; k < sub.to_parent.size(); ++k) out.coloring.sets[sub.to_parent[k]] = inner.coloring.sets[k];
  out.phases.emplace_back("distance_precoloring", pre.rounds);
  for (const auto& ph : inner.phases) out.phases.push_back(ph);
  out.rounds = total(out.phases);
  out.alpha = alpha;
  out.list_rounds = inner.list_rounds;
  out.helper_palette = inner.helper_palette;
  out.layer_bound = inner.layer_bound;
  return out;
}

MultiColoringRun q_delta_coloring_sloppy(const Graph& g, int q, std::uint64_t seed, double trials_factor) {
  if (q < 1) throw PreconditionError("q must be positive");
  QDeltaOptions options;
  options.seed = seed;
  Prepared prep = prepare(g, q, options, options.clustering);
  const std::int64_t delta = prep.model.max_degree;
  const int trials = q <= 1 ? 0 : static_cast<int>(std::ceil(trials_factor * std::log2(static_cast<double>(q)) - 1e-9));
  SloppyListSolver solver(trials);
  const auto index = id_index(g);

  std::vector<SeedPlan> plans;
  for (std::size_t c = 0; c < prep.clustering.clusters.size(); ++c) {
    const Cluster& cl = prep.clustering.clusters[c];
    const ClusterSnapshot& snap = prep.snapshots[c];
    std::optional<NodeIndex> mark;
    if (cl.tag.kind == ClusterKind::Large) {
      // the center draws the mark and announces it during the gather
      CounterStream rng(derive_seed(seed, {snap.center, 0x4d41524bULL}));
      mark = index.at(snap.members[uniform_below(rng, snap.members.size())]);
    }
    plans.push_back(plan_from_tag(g, cl, mark));
  }
  const int layer_bound = 2 * prep.clustering.radius_bound;
  PeelResult peel = peel_layers(g, prep.clustering, prep.snapshots, plans, prep.helper.coloring, solver,
                                derive_seed(seed, {0x534cULL}), delta, layer_bound);
  MultiColoringRun out;
  out.coloring = from_partial(peel.coloring);
  out.coloring.p = delta;
  out.coloring.q = 1;
  out.phases = prep.phases;
  // the helper coloring is not needed by the randomized solver
  out.phases.erase(out.phases.begin());
  for (const auto& ph : peel.phases) out.phases.push_back(ph);
  out.rounds = total(out.phases);
  out.alpha = prep.clustering.alpha;
  out.list_rounds = trials;
  out.layer_bound = layer_bound;
  out.clustering = std::move(prep.clustering);
  return out;
}

}  // namespace fraclocal
