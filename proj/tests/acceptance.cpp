// Acceptance run: one PASS/FAIL line per criterion, exit code 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"

#include "fraclocal/approx.hpp"
#include "fraclocal/clustering.hpp"
#include "fraclocal/collect_ball.hpp"
#include "fraclocal/frac_color.hpp"
#include "fraclocal/generators.hpp"
#include "fraclocal/grid_color.hpp"
#include "fraclocal/oracle.hpp"

using namespace fraclocal;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s %2d %-24s %s\n", ok ? "PASS" : "FAIL", number, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double three_sigma_bound(double eps, double trials) { return eps + 3 * std::sqrt(eps * (1 - eps) / trials); }

struct MatrixRun {
  int n = 0, q = 0;
  Graph g;
  MultiColoringRun run;
};

constexpr int kMaxDegree = 3;
const std::vector<int> kSizes{60, 120, 240};
const std::vector<int> kQs{2, 4, 8};
constexpr int kSeeds = 20;

// Criteria 1-3 share the runs.
std::vector<MatrixRun> q_delta_matrix() {
  std::vector<MatrixRun> runs;
  bool ok = true;
  double slowest = 0;
  int checked = 0, passed = 0;
  for (int n : kSizes)
    for (int q : kQs) {
      const auto start = std::chrono::steady_clock::now();
      for (int s = 1; s <= kSeeds; ++s) {
        MatrixRun m{n, q, generate_random_regular(n, kMaxDegree, s).with_permuted_ids(s), {}};
        QDeltaOptions opt;
        opt.seed = s;
        m.run = q_delta_coloring(m.g, q, opt);
        const auto r = check_multicoloring(m.g, m.run.coloring);
        ++checked;
        if (r.valid && r.complete && r.p == q * kMaxDegree && r.q == q - 1) ++passed;
        runs.push_back(std::move(m));
      }
      const double took = seconds_since(start);
      slowest = std::max(slowest, took);
      ok = ok && took <= 60.0;
    }
  ok = ok && passed == checked;
  report(1, "q-delta-validity", ok,
         fmt("%d/%d complete (3q:q-1)-colorings, slowest cell %.1f s", passed, checked, slowest));
  return runs;
}

void round_shape(const std::vector<MatrixRun>& runs) {
  std::vector<double> x, z, y;
  for (const auto& m : runs) {
    const double alpha = m.run.alpha;
    x.push_back(alpha * alpha * std::log2(kMaxDegree) * static_cast<double>(m.run.list_rounds));
    z.push_back(alpha * testing::log_star(static_cast<double>(m.g.id_space())));
    y.push_back(static_cast<double>(m.run.rounds));
  }
  const auto fit = testing::fit_nonnegative(x, z, y);
  const bool ok = fit.a >= 0 && fit.b >= 0 && (fit.a > 0 || fit.b > 0) && fit.max_relative_residual <= 0.20;
  report(2, "q-delta-round-shape", ok,
         fmt("a=%.4f b=%.4f max relative residual %.4f", fit.a, fit.b, fit.max_relative_residual));
}

void clustering_lemma(const std::vector<MatrixRun>& runs) {
  int clusters = 0, bad = 0, worst = 0;
  std::string first_problem;
  for (const auto& m : runs) {
    const int alpha = m.run.clustering.alpha;
    const int bound = static_cast<int>(std::floor(2.0 * alpha * alpha * std::log2(kMaxDegree)));
    const auto r = check_clustering(m.g, m.run.clustering, DiameterMode::Strong, 1, bound);
    worst = std::max(worst, r.max_diameter);
    if (!r.valid || r.unclustered != 0) {
      ++bad;
      if (first_problem.empty()) first_problem = r.problems.empty() ? "unclustered nodes" : r.problems.front();
    }
    for (const auto& c : m.run.clustering.clusters) {
      ++clusters;
      std::string why;
      if (!verify_cluster_tag(m.g, c, m.q, kMaxDegree, &why)) {
        ++bad;
        if (first_problem.empty()) first_problem = why;
      }
    }
  }
  report(3, "clustering-lemma", bad == 0 && clusters > 0,
         fmt("%d clusters, max strong diameter %d, %d problems %s", clusters, worst, bad, first_problem.c_str()));
}

void small_support() {
  int passed = 0;
  for (int s = 1; s <= kSeeds; ++s) {
    const Graph g = generate_random_regular(60, kMaxDegree, 100 + s).with_permuted_ids(s);
    QDeltaOptions opt;
    opt.seed = s;
    const auto run = small_support_coloring(g, 2, opt);
    const auto r = check_multicoloring(g, run.coloring);
    if (r.valid && r.complete && r.p == 7 && r.q == 2 && r.ratio == 3.5) ++passed;
  }
  report(4, "small-support", passed == kSeeds, fmt("%d/%d valid (7:2)-colorings with ratio 3.5", passed, kSeeds));
}

void amplification() {
  const double eps = 0.25;
  const int n = 100;
  const int runs = amplification_runs(eps, n, 0.01);
  const Graph g = generate_cycle(n);
  // proper 2-coloring of the even cycle, each node dropped w.p. eps/2
  const RandomizedColoring base = [&](std::uint64_t seed) {
    CounterStream rng(seed);
    MultiColoringRun run;
    run.coloring.p = 2;
    run.coloring.q = 1;
    run.coloring.sets.resize(n);
    for (int v = 0; v < n; ++v)
      if (uniform01(rng) >= eps / 2) run.coloring.sets[v] = {static_cast<Color>(v % 2 + 1)};
    return run;
  };
  const int trials = 500;
  int events = 0, invalid = 0;
  for (int t = 1; t <= trials; ++t) {
    const auto r = amplify(base, runs, t, eps);
    if (r.min_successes < (1 - eps) * runs) ++events;
    if (!check_multicoloring(g, r.coloring).valid) ++invalid;
  }
  const bool ok = runs == static_cast<int>(std::ceil(6 / eps * std::log(n / 0.01))) && events <= 0.02 * trials &&
                  invalid == 0;
  report(5, "amplification", ok, fmt("t=%d, failure event in %d/%d trials, %d invalid", runs, events, trials, invalid));
}

void mpx() {
  const int n = 200;
  const int seeds = 300;
  const Graph g = generate_random_regular(n, kMaxDegree, 7).with_permuted_ids(7);
  bool ok = true;
  std::string detail;
  for (double eps : {0.1, 0.2}) {
    std::vector<int> unclustered(n, 0);
    int touching = 0, worst = 0;
    for (int s = 1; s <= seeds; ++s) {
      const auto c = mpx_clustering_separated(g, eps, s);
      const auto r = check_clustering(g, c, DiameterMode::Weak, 2);
      if (r.separation_witness) ++touching;
      worst = std::max(worst, r.max_diameter);
      for (int v = 0; v < n; ++v) unclustered[v] += c.assignment[v] == kUnclustered;
    }
    const double max_rate = *std::max_element(unclustered.begin(), unclustered.end()) / static_cast<double>(seeds);
    const double bound = three_sigma_bound(eps, seeds);
    const double fitted = worst * eps / std::log(n);
    // members are within the shift cap of their center
    const int diameter_cap = 2 * default_mpx_shift_cap(n, eps);
    ok = ok && touching == 0 && max_rate <= bound && worst <= diameter_cap;
    detail += fmt("eps=%.1f: %d touching runs, max node unclustered rate %.3f (bound %.3f), weak diameter %d, a=%.3f; ",
                  eps, touching, max_rate, bound, worst, fitted);
  }
  report(6, "mpx-separated", ok, detail);
}

void approximation() {
  const std::vector<std::pair<std::string, Graph>> graphs{
      {"C5", generate_cycle(5)},
      {"C7", generate_cycle(7)},
      {"Petersen", generate_petersen()},
      {"K5", generate_complete(5)},
      {"tree40", generate_random_tree(40, 11).with_permuted_ids(11)},
      {"bipartite40", generate_random_bipartite(20, 20, 0.1, 12).with_permuted_ids(12)}};
  int total = 0, valid = 0, within = 0;
  double worst_excess = 0;
  for (const auto& [name, g] : graphs) {
    const Rational chi = chi_f(g).value;
    for (double eps : {0.2, 0.25})
      for (int s = 1; s <= 50; ++s) {
        ApproxParams params;
        params.epsilon = eps;
        params.knowledge = KnownChi{chi};
        const auto run = approx_chi_f(g, params, s);
        const auto r = check_multicoloring(g, run.coloring);
        ++total;
        if (r.valid && r.complete) ++valid;
        const double bound = (1 + 5 * eps) * chi.get_d();
        if (r.valid && r.complete && r.ratio <= bound) ++within;
        worst_excess = std::max(worst_excess, r.ratio / chi.get_d());
      }
  }
  const bool ok = valid == total && within >= 0.95 * total;
  report(7, "approximation", ok,
         fmt("%d/%d valid, %d/%d within (1+5eps) chi_f, worst ratio/chi_f %.3f", valid, total, within, total,
             worst_excess));
}

void lower_bound() {
  const auto k3 = certify_lowerbound_family(generate_complete(3), 1);
  const auto pet = certify_lowerbound_family(generate_petersen(), 1);
  const auto bip = certify_lowerbound_family(generate_cycle(6), 1);
  Rational nine_quarters(9, 4);
  nine_quarters.canonicalize();
  const bool ok = k3.chi_f == nine_quarters && k3.certified && pet.chi_f > 2 && pet.girth == 15 && pet.certified &&
                  bip.margin == 0;
  report(8, "lower-bound-family", ok,
         fmt("K3: chi_f %s; Petersen: chi_f %s, girth %d; C6 margin %s", k3.chi_f.get_str().c_str(),
             pet.chi_f.get_str().c_str(), pet.girth, bip.margin.get_str().c_str()));
}

void grid() {
  const int q = 8;
  const double eps = 0.2;
  const int seeds = 200;
  bool ok = true;
  std::vector<std::int64_t> rounds;
  double unhappy = 0, trials = 0;
  int invalid = 0;
  double worst_ratio = 0;
  for (int n : kSizes) {
    const Graph g = generate_grid(GridSpec{{n}, {true}}).with_permuted_ids(n);
    std::int64_t r0 = -1;
    for (int s = 1; s <= seeds; ++s) {
      const auto r = grid_constant_time(g, q, eps, s);
      if (r0 < 0) r0 = r.rounds;
      if (r.rounds != r0) ok = false;
      if (!check_multicoloring(g, r.coloring).valid) ++invalid;
      unhappy += r.unhappy_fraction * n;
      trials += n;
    }
    rounds.push_back(r0);
    const int runs = amplification_runs(eps, n, 1.0 / n);
    const auto amp = amplify([&](std::uint64_t s) { return grid_constant_time_run(g, q, eps, s); }, runs, n, eps);
    const auto rep = check_multicoloring(g, amp.coloring);
    if (!rep.valid || !rep.complete || rep.ratio > 2 + 5 * eps) ok = false;
    worst_ratio = std::max(worst_ratio, rep.ratio);
  }
  for (auto r : rounds) ok = ok && r == rounds.front();
  const double rate = unhappy / trials;
  ok = ok && invalid == 0 && rate <= three_sigma_bound(eps, trials);

  int torus_valid = 0;
  double torus_ratio = 0;
  const double torus_bound = 2 + 4.0 * 36 / q;
  for (int s = 1; s <= 5; ++s) {
    const Graph t = generate_grid(GridSpec{{24, 24}, {true, true}}).with_permuted_ids(s);
    const auto r = grid_multicolor_logstar(t, q);
    const auto rep = check_multicoloring(t, r.coloring);
    if (rep.valid && rep.complete && rep.ratio <= torus_bound) ++torus_valid;
    torus_ratio = std::max(torus_ratio, rep.ratio);
  }
  ok = ok && torus_valid == 5;
  report(9, "grid-flatness", ok,
         fmt("rounds %lld/%lld/%lld, unhappy rate %.4f (bound %.4f), amplified ratio %.3f, %d invalid; torus %d/5 "
             "ratio %.3f (bound %.1f)",
             static_cast<long long>(rounds[0]), static_cast<long long>(rounds[1]), static_cast<long long>(rounds[2]),
             rate, three_sigma_bound(eps, trials), worst_ratio, invalid, torus_valid, torus_ratio, torus_bound));
}

void oracle_consistency() {
  bool cycles = true;
  for (int k = 1; k <= 5; ++k) {
    Rational expected(2 * k + 1, k);
    expected.canonicalize();
    cycles = cycles && chi_f_exact(generate_cycle(2 * k + 1)).value == expected;
  }
  int sandwiched = 0;
  const int graphs = 100;
  for (int s = 1; s <= graphs; ++s) {
    const int n = 4 + s % 17;
    const Graph g = testing::random_graph(1000 + s, n, 0.15 + 0.05 * (s % 9));
    const Rational value = chi_f_exact(g).value;
    Rational lower(n, testing::independence_bruteforce(g));
    lower.canonicalize();
    if (lower <= value && value <= testing::chromatic_bruteforce(g)) ++sandwiched;
  }
  report(10, "oracle-consistency", cycles && sandwiched == graphs,
         fmt("odd cycles %s, n/alpha <= chi_f <= chi on %d/%d graphs", cycles ? "exact" : "WRONG", sandwiched, graphs));
}

void locality() {
  int same = 0;
  const int triples = 20;
  for (int trial = 1; trial <= triples; ++trial) {
    const int n = 30 + 5 * (trial % 4);
    const Graph g = testing::random_bounded_degree(trial, n, 3, 3 * n).with_permuted_ids(trial);
    const NodeIndex center = static_cast<NodeIndex>(trial * 11 % n);
    const sim::ModelInfo model{n, 6, g.id_space()};
    const int radius = 1 + trial % 3;
    const std::uint64_t seed = 500 + trial;
    bool equal = false;
    if (trial % 2 == 0) {
      const testing::MinDrawFlood flood{radius};
      const auto a = sim::run(g, flood, {.master_seed = seed, .model = model});
      const Graph h = testing::rewire_outside(g, center, static_cast<int>(a.output_round[center]), seed);
      const auto b = sim::run(h, flood, {.master_seed = seed, .model = model});
      equal = a.output(center) == b.output(center);
    } else {
      std::vector<int> labels(n);
      for (int i = 0; i < n; ++i) labels[i] = (i * 7 + trial) % 5;
      const sim::CollectBall<int> ball{radius};
      const auto a = sim::run(g, ball, std::span<const int>(labels), {.master_seed = seed, .model = model});
      const Graph h = testing::rewire_outside(g, center, static_cast<int>(a.output_round[center]), seed);
      const auto b = sim::run(h, ball, std::span<const int>(labels), {.master_seed = seed, .model = model});
      equal = testing::flatten(a.output(center)) == testing::flatten(b.output(center));
    }
    same += equal;
  }
  report(11, "engine-locality", same == triples, fmt("%d/%d outputs unchanged after rewiring", same, triples));
}

void guarded(const std::function<void()>& body, int number, const std::string& name) {
  try {
    body();
  } catch (const std::exception& e) {
    report(number, name, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<MatrixRun> matrix;
  guarded([&] { matrix = q_delta_matrix(); }, 1, "q-delta-validity");
  guarded([&] { round_shape(matrix); }, 2, "q-delta-round-shape");
  guarded([&] { clustering_lemma(matrix); }, 3, "clustering-lemma");
  guarded(small_support, 4, "small-support");
  guarded(amplification, 5, "amplification");
  guarded(mpx, 6, "mpx-separated");
  guarded(approximation, 7, "approximation");
  guarded(lower_bound, 8, "lower-bound-family");
  guarded(grid, 9, "grid-flatness");
  guarded(oracle_consistency, 10, "oracle-consistency");
  guarded(locality, 11, "engine-locality");
  std::printf("%d failing, %.1f s\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
