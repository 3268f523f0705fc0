#include "fraclocal/grid_color.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fraclocal/path_coloring.hpp"
#include "fraclocal/sim.hpp"

namespace fraclocal {

namespace {

std::int64_t saturating_pow(std::int64_t base, int exponent) {
  std::int64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > std::numeric_limits<std::int64_t>::max() / base) return std::numeric_limits<std::int64_t>::max();
    out *= base;
  }
  return out;
}

std::int64_t power_graph_degree(int ell, int dimension) { return saturating_pow(2LL * ell + 1, dimension) - 1; }

// Lattice points of Z^d within L1 distance r: sum_k 2^k C(d,k) C(r,k).
double grid_ball(double r, int dimension) {
  double total = 0.0, choose_d = 1.0, choose_r = 1.0, two = 1.0;
  for (int k = 0; k <= dimension; ++k) {
    if (k > 0) {
      choose_d = choose_d * (dimension - k + 1) / k;
      choose_r = choose_r * (r - k + 1) / k;
      two *= 2.0;
    }
    if (choose_r <= 0.0) break;
    total += two * choose_d * choose_r;
  }
  return total;
}

void check_dimension(const Graph& g, int q, bool allow_three) {
  if (!g.grid()) throw PreconditionError("grid coloring needs grid coordinates");
  const int d = g.grid()->spec.dimension();
  if (d < 1 || d > 3 || (d == 3 && !allow_three)) throw PreconditionError("grid dimension must be 1 or 2 (3 behind a flag)");
  if (q < 1) throw PreconditionError("q must be positive");
}

ColorList block(std::int64_t index, int q) {
  ColorList out;
  for (int i = 1; i <= q; ++i) out.push_back(index * q + i);
  return out;
}

// One step along the single axis of a one-dimensional grid, or -1.
NodeIndex walk(const Graph& g, NodeIndex x, int direction) {
  for (NodeIndex y : g.neighbors(x))
    if (g.grid()->offset(x, y)[0] == direction) return y;
  return -1;
}

void repair_windows(const Graph& g, int q, const std::vector<int>& parity, GridRun& run) {
  const int n = g.size();
  const Color palette = 2LL * q + 1;
  std::vector<int> window_of(n, -1);
  struct Window {
    std::vector<NodeIndex> nodes;
    NodeIndex before = -1, after = -1;
  };
  std::vector<Window> windows;
  for (const auto& [a, b] : g.edges()) {
    if (parity[a] != parity[b]) continue;
    auto [u, v] = g.grid()->offset(a, b)[0] == 1 ? Edge{a, b} : Edge{b, a};
    Window w;
    std::vector<NodeIndex> back{u};
    for (int i = 1; i < q; ++i) {
      NodeIndex prev = walk(g, back.back(), -1);
      if (prev < 0) break;
      back.push_back(prev);
    }
    w.nodes.assign(back.rbegin(), back.rend());
    w.nodes.push_back(v);
    for (int i = 0; i < q; ++i) {
      NodeIndex next = walk(g, w.nodes.back(), 1);
      if (next < 0) break;
      w.nodes.push_back(next);
    }
    w.before = walk(g, w.nodes.front(), -1);
    w.after = walk(g, w.nodes.back(), 1);
    std::vector<NodeIndex> sorted = w.nodes;
    if (w.before >= 0) sorted.push_back(w.before);
    if (w.after >= 0) sorted.push_back(w.after);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw PreconditionError("cycle too short for a repair window of 2q+1 nodes");
    for (NodeIndex x : w.nodes) {
      if (window_of[x] != -1) throw std::logic_error("repair windows overlap");
      window_of[x] = static_cast<int>(windows.size());
    }
    windows.push_back(std::move(w));
  }
  for (const auto& w : windows) {
    if ((w.before >= 0 && window_of[w.before] != -1) || (w.after >= 0 && window_of[w.after] != -1))
      throw std::logic_error("repair windows touch");
    std::vector<ColorList> lists(w.nodes.size());
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      std::vector<bool> blocked(palette + 1, false);
      for (NodeIndex y : g.neighbors(w.nodes[i]))
        if (window_of[y] == -1)
          for (Color c : run.coloring.sets[y]) blocked[c] = true;
      for (Color c = 1; c <= palette; ++c)
        if (!blocked[c]) lists[i].push_back(c);
    }
    std::vector<ColorList> picks;
    if (static_cast<int>(w.nodes.size()) == 2 * q + 1 && w.before >= 0 && w.after >= 0) {
      picks = path_complete(lists, q);
    } else {
      auto found = path_list_multicolor(lists, q);
      if (!found) throw std::logic_error("truncated repair window has no completion");
      picks = std::move(*found);
    }
    for (std::size_t i = 0; i < w.nodes.size(); ++i) {
      run.coloring.sets[w.nodes[i]] = picks[i];
      run.repaired[w.nodes[i]] = true;
    }
  }
}

void repair_from_reserve(const Graph& g, int q, const std::vector<int>& parity, const std::vector<NodeId>& anchor_id,
                         const ProperColoring& helper, GridRun& run) {
  const int d = g.grid()->spec.dimension();
  std::vector<NodeIndex> reserve;
  for (const auto& [a, b] : g.edges()) {
    if (parity[a] != parity[b]) continue;
    const auto key_a = std::make_pair(anchor_id[a], g.id(a));
    const auto key_b = std::make_pair(anchor_id[b], g.id(b));
    reserve.push_back(key_a > key_b ? a : b);
  }
  std::sort(reserve.begin(), reserve.end());
  reserve.erase(std::unique(reserve.begin(), reserve.end()), reserve.end());
  if (reserve.empty()) return;
  const auto sub = g.induced(reserve);
  ProperColoring sub_helper{{}, helper.palette};
  for (NodeIndex x : sub.to_parent) sub_helper.colors.push_back(helper.colors[x]);
  ColorList blocks(2 * d + 1);
  std::iota(blocks.begin(), blocks.end(), Color{1});
  const auto picked = list_color_det(sub.graph, ListAssignment(sub.graph.size(), blocks), sub_helper);
  for (NodeIndex i = 0; i < sub.graph.size(); ++i) {
    const NodeIndex x = sub.to_parent[i];
    run.coloring.sets[x] = block(2 + picked.coloring.colors[i] - 1, q);
    run.repaired[x] = true;
  }
}

struct BeaconProgram {
  using Input = char;  // 1: source
  using Message = char;
  using Output = char;  // 1: a source lies within the horizon
  struct State {
    bool heard = false;
  };
  std::int64_t horizon;

  State init(const sim::NodeContext<Input>&) const { return {}; }
  sim::Action<Message, Output> step(const sim::NodeContext<Input>& ctx, State& s, std::int64_t round,
                                    std::span<const sim::Incoming<Message>> inbox) const {
    sim::Action<Message, Output> act;
    if (!s.heard && ((round == 0 && ctx.input()) || !inbox.empty())) {
      s.heard = true;
      if (round < horizon) act.send = 1;
    }
    if (round >= horizon) {
      act.output = s.heard ? 1 : 0;
      act.sleep();
      return act;
    }
    act.wake_at(horizon);
    return act;
  }
};

}  // namespace

int grid_ell(int q, int dimension) {
  const int ell = q + 2 * static_cast<int>(saturating_pow(6, dimension));
  return dimension == 1 ? std::max(ell, 2 * q + 2) : ell;
}

std::int64_t grid_palette(int q, int dimension) {
  return dimension == 1 ? 2LL * q + 1 : 2LL * q + (2LL * dimension + 1) * q;
}

std::int64_t grid_schedule_rounds(int q, int dimension, Color start_palette, PhaseLog* phases) {
  const int ell = grid_ell(q, dimension);
  const std::int64_t hop = static_cast<std::int64_t>(dimension) * ell;
  const auto steps = linial_schedule(start_palette, power_graph_degree(ell, dimension));
  const Color helper = steps.empty() ? start_palette : steps.back().palette_out;
  PhaseLog log{{"linial", static_cast<std::int64_t>(steps.size()) * hop},
               {"mis", helper * hop},
               {"cells", hop},
               {"repair", dimension == 1 ? 2LL * q + 2 : 1 + helper}};
  std::int64_t total = 0;
  for (const auto& [name, r] : log) total += r;
  if (phases) *phases = std::move(log);
  return total;
}

GridRun grid_multicolor_logstar(const Graph& g, int q, const GridOptions& options) {
  check_dimension(g, q, options.allow_three_dimensions);
  const int n = g.size();
  const int d = g.grid()->spec.dimension();
  GridRun run;
  run.ell = grid_ell(q, d);
  run.dimension = d;
  run.anchor.assign(n, false);
  run.repaired.assign(n, false);
  run.coloring.q = q;
  run.coloring.sets.assign(n, {});
  const int hop = d * run.ell;

  if (options.trivial && n > 0) {
    int components = 0;
    connected_components(g, &components);
    auto sides = bipartition(g);
    bool visible = components == 1 && sides;
    for (NodeIndex v = 0; visible && v < n; ++v) {
      const auto dist = bfs_distances(g, v);
      visible = *std::max_element(dist.begin(), dist.end()) <= hop;
    }
    if (visible) {
      run.trivial_used = true;
      run.coloring.p = 2LL * q;
      for (NodeIndex v = 0; v < n; ++v) run.coloring.sets[v] = block((*sides)[v], q);
      run.rounds = hop;
      run.phases = {{"gather", hop}};
      return run;
    }
  }

  run.coloring.p = grid_palette(q, d);
  const ProperColoring start = options.precoloring.value_or(coloring_from_ids(g));
  run.rounds = grid_schedule_rounds(q, d, start.palette, &run.phases);
  if (n == 0) return run;

  const Graph h = infinity_power_within_hops(g, run.ell, hop);
  LinialOptions lo;
  lo.initial = start;
  lo.model = sim::ModelInfo{options.declared_n.value_or(n), power_graph_degree(run.ell, d), g.id_space()};
  const auto helper = linial_coloring(h, lo);
  const auto independent = mis(h, helper.coloring);

  // anchor: nearest MIS node in the infinity norm, ties to the smaller ID
  std::vector<int> parity(n);
  std::vector<NodeId> anchor_id(n);
  for (NodeIndex x = 0; x < n; ++x) {
    run.anchor[x] = independent.in_set[x];
    NodeIndex best = independent.in_set[x] ? x : -1;
    for (NodeIndex y : h.neighbors(x)) {
      if (!independent.in_set[y] || best == x) continue;
      const auto key = std::make_pair(g.grid()->infinity_distance(x, y), g.id(y));
      if (best < 0 || key < std::make_pair(g.grid()->infinity_distance(x, best), g.id(best))) best = y;
    }
    if (best < 0) throw std::logic_error("node without an anchor; MIS not maximal");
    int sum = 0;
    for (int c : g.grid()->offset(best, x)) sum += std::abs(c);
    parity[x] = sum % 2;
    anchor_id[x] = g.id(best);
    run.coloring.sets[x] = block(parity[x], q);
  }
  if (d == 1)
    repair_windows(g, q, parity, run);
  else
    repair_from_reserve(g, q, parity, anchor_id, helper.coloring, run);
  return run;
}

Color grid_precoloring_palette(int q, int dimension, double epsilon, Color cap) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  const double hop_ball = grid_ball(static_cast<double>(dimension) * grid_ell(q, dimension), dimension);
  const double limit = static_cast<double>(cap);
  double c = std::ceil(hop_ball / epsilon);
  for (int iter = 0; iter < 64 && c < limit; ++iter) {
    const auto t = grid_schedule_rounds(q, dimension, static_cast<Color>(c));
    const double next = std::ceil(grid_ball(static_cast<double>(t), dimension) * hop_ball / epsilon);
    if (next <= c) break;
    c = next;
  }
  return static_cast<Color>(std::min(c, limit));
}

GridConstantRun grid_constant_time(const Graph& g, int q, double epsilon, std::uint64_t seed,
                                   const GridConstantOptions& options) {
  check_dimension(g, q, true);
  const int n = g.size();
  const int d = g.grid()->spec.dimension();
  GridConstantRun out;
  out.ell = grid_ell(q, d);
  const int hop = d * out.ell;
  out.palette = options.palette.value_or(grid_precoloring_palette(q, d, epsilon, options.palette_cap));
  out.coloring.p = grid_palette(q, d);
  out.coloring.q = q;
  out.coloring.sets.assign(n, {});

  const auto pre = random_distance_coloring(g, hop, out.palette, seed);
  std::vector<NodeIndex> colored;
  std::vector<char> source(n, 0);
  out.precolored.assign(n, false);
  for (NodeIndex v = 0; v < n; ++v) {
    if (pre.coloring.colors[v] != kUncolored) {
      colored.push_back(v);
      out.precolored[v] = true;
    } else {
      source[v] = 1;
    }
  }
  PhaseLog inner;
  out.algorithm_rounds = grid_schedule_rounds(q, d, out.palette, &inner);
  out.rounds = hop + out.algorithm_rounds;
  out.phases.emplace_back("precolor", hop);
  for (auto& [name, r] : inner) out.phases.emplace_back(name, r);

  // a node is happy when no uncolored node is within the schedule length
  BeaconProgram beacon{out.algorithm_rounds};
  sim::RunOptions ro;
  ro.round_cap = out.algorithm_rounds;
  auto heard = sim::run(g, beacon, std::span<const char>(source), ro);
  out.happy.assign(n, false);
  int unhappy = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    out.happy[v] = !heard.output(v);
    if (!out.happy[v]) ++unhappy;
  }
  out.unhappy_fraction = n > 0 ? static_cast<double>(unhappy) / n : 0.0;

  if (!colored.empty()) {
    const auto sub = g.induced(colored);
    GridOptions go;
    go.precoloring = ProperColoring{{}, out.palette};
    for (NodeIndex v : sub.to_parent) go.precoloring->colors.push_back(pre.coloring.colors[v]);
    go.declared_n = n;
    go.allow_three_dimensions = true;
    const auto inner_run = grid_multicolor_logstar(sub.graph, q, go);
    for (NodeIndex i = 0; i < sub.graph.size(); ++i)
      if (out.happy[sub.to_parent[i]]) out.coloring.sets[sub.to_parent[i]] = inner_run.coloring.sets[i];
  }
  return out;
}

MultiColoringRun grid_constant_time_run(const Graph& g, int q, double epsilon, std::uint64_t seed,
                                        const GridConstantOptions& options) {
  auto r = grid_constant_time(g, q, epsilon, seed, options);
  MultiColoringRun out;
  out.coloring = std::move(r.coloring);
  out.rounds = r.rounds;
  out.phases = std::move(r.phases);
  return out;
}

}  // namespace fraclocal
