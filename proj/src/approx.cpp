#include "fraclocal/approx.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <unordered_set>

#include "fraclocal/independent_sets.hpp"
#include "fraclocal/oracle.hpp"
#include "fraclocal/random.hpp"

namespace fraclocal {

DerivedPalette derive_palette(const ApproxParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) throw PreconditionError("epsilon must lie in (0, 1)");
  if (params.palette_cap < 1) throw PreconditionError("palette cap must be positive");
  if (const auto* pq = std::get_if<KnownPQ>(&params.knowledge)) {
    if (pq->p < 1 || pq->q < 1) throw PreconditionError("known (p:q) must be positive");
    return {pq->p, pq->q};
  }
  if (const auto* known = std::get_if<KnownChi>(&params.knowledge)) {
    if (known->chi < 1) throw PreconditionError("chi_f is at least 1");
    const mpz_class num = known->chi.get_num();
    const std::int64_t a = num.get_si();
    const std::int64_t palette = a <= params.palette_cap ? a * (params.palette_cap / a) : a;
    const Rational target_exact = Rational(1.0 - params.epsilon) * Rational(palette) / known->chi;
    const mpz_class floor = target_exact.get_num() / target_exact.get_den();
    return {palette, std::max<std::int64_t>(1, floor.get_si())};
  }
  return {params.palette_cap, 1};
}

std::int64_t formula_palette(const ApproxParams& params, int n, std::int64_t max_degree, double c) {
  double chi = static_cast<double>(max_degree + 1);
  if (const auto* known = std::get_if<KnownChi>(&params.knowledge)) chi = known->chi.get_d();
  if (const auto* pq = std::get_if<KnownPQ>(&params.knowledge)) return pq->p;
  const double value = chi * c * std::log(std::max(n, 2)) / (params.epsilon * params.epsilon);
  return static_cast<std::int64_t>(std::ceil(value));
}

namespace {

// Chooses `palette` maximal independent sets (colors) covering every node of
// h at least q times.
std::optional<std::vector<int>> cover_with_sets(const Graph& h, const std::vector<std::vector<NodeIndex>>& sets,
                                                std::int64_t palette, std::int64_t q) {
  const int k = h.size();
  std::vector<std::vector<int>> containing(k);
  for (int s = 0; s < static_cast<int>(sets.size()); ++s)
    for (NodeIndex v : sets[s]) containing[v].push_back(s);
  std::vector<std::int64_t> deficit(k, q);
  std::vector<int> chosen;
  std::unordered_set<std::string> failed;
  std::function<bool(std::int64_t)> search = [&](std::int64_t remaining) -> bool {
    int v = -1;
    for (int u = 0; u < k; ++u)
      if (deficit[u] > 0 && (v == -1 || deficit[u] > deficit[v])) v = u;
    if (v == -1) return true;
    if (deficit[v] > remaining) return false;
    std::string key(reinterpret_cast<const char*>(deficit.data()), deficit.size() * sizeof(std::int64_t));
    key += std::to_string(remaining);
    if (failed.count(key)) return false;
    for (int s : containing[v]) {
      for (NodeIndex w : sets[s]) --deficit[w];
      chosen.push_back(s);
      if (search(remaining - 1)) return true;
      chosen.pop_back();
      for (NodeIndex w : sets[s]) ++deficit[w];
    }
    failed.insert(std::move(key));
    return false;
  };
  if (!search(palette)) return std::nullopt;
  return chosen;
}

BestMultiColoring solve_component(const Graph& h, std::int64_t palette, int size_cap) {
  const int k = h.size();
  BestMultiColoring out;
  out.sets.assign(k, {});
  if (k == 1 || h.edge_count() == 0) {
    for (int v = 0; v < k; ++v)
      for (Color c = 1; c <= palette; ++c) out.sets[v].push_back(c);
    out.q = palette;
    return out;
  }
  if (auto sides = bipartition(h)) {
    out.q = palette / 2;
    for (int v = 0; v < k; ++v)
      for (Color c = 1; c <= out.q; ++c) out.sets[v].push_back(c + ((*sides)[v] == 1 ? out.q : 0));
    return out;
  }
  if (k > size_cap) throw ClusterTooLarge("cluster component with " + std::to_string(k) + " nodes exceeds the cap");
  const auto sets = maximal_independent_sets(h);
  // no (palette : q)-coloring exists above palette / chi_f
  const Rational bound = Rational(palette) / chi_f(h).value;
  const mpz_class upper = bound.get_num() / bound.get_den();
  for (std::int64_t q = upper.get_si(); q >= 1; --q) {
    auto chosen = cover_with_sets(h, sets, palette, q);
    if (!chosen) continue;
    for (std::size_t c = 0; c < chosen->size(); ++c)
      for (NodeIndex v : sets[(*chosen)[c]]) out.sets[v].push_back(static_cast<Color>(c + 1));
    out.q = q;
    return out;
  }
  out.q = 0;
  return out;
}

}  // namespace

BestMultiColoring best_multicoloring(const Graph& g, std::int64_t palette, int size_cap) {
  if (palette < 0) throw PreconditionError("palette must be nonnegative");
  BestMultiColoring out;
  out.sets.assign(g.size(), {});
  if (g.size() == 0) return out;
  int count = 0;
  const auto comp = connected_components(g, &count);
  out.q = palette;
  for (int c = 0; c < count; ++c) {
    std::vector<NodeIndex> nodes;
    for (NodeIndex v = 0; v < g.size(); ++v)
      if (comp[v] == c) nodes.push_back(v);
    const auto sub = g.induced(nodes);
    auto best = solve_component(sub.graph, palette, size_cap);
    out.q = std::min(out.q, best.q);
    for (std::size_t i = 0; i < nodes.size(); ++i) out.sets[nodes[i]] = std::move(best.sets[i]);
  }
  return out;
}

ClusterColoringRun cluster_optimal_coloring(const Graph& g, const Clustering& clustering, const ApproxParams& params) {
  const DerivedPalette derived = derive_palette(params);
  ClusterColoringRun out;
  out.coloring.p = derived.palette;
  out.coloring.q = derived.target;
  out.coloring.sets.assign(g.size(), {});
  for (const auto& [u, v] : g.edges()) {
    const int cu = clustering.assignment[u], cv = clustering.assignment[v];
    if (cu != kUnclustered && cv != kUnclustered && cu != cv)
      throw PreconditionError("clusters must be at least two hops apart");
  }
  // every member can see its whole cluster (and the members' edges) from here
  const int radius = 2 * clustering.radius_bound + 1;
  const auto snapshots = gather_cluster_snapshots(g, clustering, radius, &out.rounds);
  out.cluster_q.assign(clustering.clusters.size(), 0);
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    const auto& snap = snapshots[c];
    if (snap.members.empty()) continue;
    const Graph h = snap.induced(snap.members);
    const auto best = best_multicoloring(h, derived.palette, params.cluster_cap);
    out.cluster_q[c] = best.q;
    for (std::size_t i = 0; i < snap.members.size(); ++i) {
      const NodeIndex v = *g.index_of(snap.members[i]);
      out.coloring.sets[v] = best.sets[i];
    }
  }
  return out;
}

MultiColoringRun approx_single_run(const Graph& g, const ApproxParams& params, std::uint64_t seed) {
  MultiColoringRun run;
  run.clustering = mpx_clustering_separated(g, params.epsilon / 4.0, seed);
  auto colored = cluster_optimal_coloring(g, run.clustering, params);
  run.coloring = std::move(colored.coloring);
  run.phases.emplace_back("clustering", run.clustering.rounds);
  run.phases.emplace_back("gather", colored.rounds);
  run.rounds = run.clustering.rounds + colored.rounds;
  return run;
}

ApproxRun approx_chi_f(const Graph& g, const ApproxParams& params, std::uint64_t seed) {
  ApproxRun out;
  out.per_run = derive_palette(params);
  const double n = std::max(g.size(), 2);
  const double failure = params.failure > 0.0 ? params.failure : 1.0 / n;
  const int runs = amplification_runs(params.epsilon, n, failure);
  auto amp = amplify([&](std::uint64_t s) { return approx_single_run(g, params, s); }, runs, seed, params.epsilon);
  out.coloring = std::move(amp.coloring);
  out.runs = runs;
  out.rounds = amp.rounds;
  out.min_successes = amp.min_successes;
  out.complete = amp.complete;
  int good = 0;
  for (int s : amp.successes) good += s;
  out.success_fraction = amp.successes.empty() ? 1.0 : static_cast<double>(good) / (runs * amp.successes.size());
  return out;
}

ApproxRun approx_chi_f_det(const Graph& g, const ApproxParams& params, std::span<const std::uint64_t> pool) {
  ApproxRun out;
  out.per_run = derive_palette(params);
  auto det = enumerate_seeds_derandomize([&](std::uint64_t s) { return approx_single_run(g, params, s); }, pool);
  out.coloring = std::move(det.coloring);
  out.runs = static_cast<int>(pool.size());
  out.rounds = det.rounds;
  out.success_fraction = det.success_fraction;
  out.min_successes = static_cast<int>(std::count(det.run_complete.begin(), det.run_complete.end(), true));
  out.complete = true;
  return out;
}

}  // namespace fraclocal
