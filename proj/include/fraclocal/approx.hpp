#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fraclocal/clustering.hpp"
#include "fraclocal/exact_lp.hpp"
#include "fraclocal/frac_color.hpp"
#include "fraclocal/graph.hpp"
#include "fraclocal/multicoloring.hpp"

namespace fraclocal {

struct KnownPQ {
  std::int64_t p = 0;
  std::int64_t q = 0;
};
struct KnownChi {
  Rational chi;
};
struct Unknown {};

using Knowledge = std::variant<KnownPQ, KnownChi, Unknown>;

struct ApproxParams {
  double epsilon = 0.25;
  Knowledge knowledge = Unknown{};
  int palette_cap = 12;  // largest per-cluster palette searched exhaustively
  int cluster_cap = 10;  // largest non-bipartite cluster component searched exhaustively
  double failure = 0.0;  // 0: 1/n
};

class ClusterTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-cluster palette and the per-run target used to count successes.
// KnownPQ: (p, q). KnownChi(a/b): p' the largest multiple of a within the
// cap, q' = floor((1-eps) p' / chi). Unknown: p' = palette_cap, q' = 1.
struct DerivedPalette {
  std::int64_t palette = 0;
  std::int64_t target = 0;
};
DerivedPalette derive_palette(const ApproxParams& params);

// The palette an exact-size implementation would use: chi c ln n / eps^2 with
// chi the known value or Delta+1. Reported, never searched.
std::int64_t formula_palette(const ApproxParams& params, int n, std::int64_t max_degree, double c = 1.0);

struct BestMultiColoring {
  std::int64_t q = 0;
  std::vector<std::vector<Color>> sets;  // colors 1..palette, indexed like the graph
};

// Largest q such that `g` has a (palette : q)-coloring, with one witness.
// Bipartite components use the two-block closed form; others are searched.
BestMultiColoring best_multicoloring(const Graph& g, std::int64_t palette, int size_cap = 10);

struct ClusterColoringRun {
  MultiColoring coloring;
  std::vector<std::int64_t> cluster_q;
  std::int64_t rounds = 0;
};

// Every cluster is gathered at its members, which solve it identically.
// Unclustered nodes stay empty. Clusters must be pairwise non-adjacent.
ClusterColoringRun cluster_optimal_coloring(const Graph& g, const Clustering& clustering, const ApproxParams& params);

struct ApproxRun {
  MultiColoring coloring;
  DerivedPalette per_run;
  int runs = 0;
  std::int64_t rounds = 0;
  int min_successes = 0;
  double success_fraction = 1.0;
  bool complete = false;
};

// One randomized run: separated clustering with eps/4, then cluster_optimal_coloring.
MultiColoringRun approx_single_run(const Graph& g, const ApproxParams& params, std::uint64_t seed);

// ceil((6/eps) ln(n/f')) runs on disjoint palettes.
ApproxRun approx_chi_f(const Graph& g, const ApproxParams& params, std::uint64_t seed);
// Same base run over a fixed seed pool.
ApproxRun approx_chi_f_det(const Graph& g, const ApproxParams& params, std::span<const std::uint64_t> pool);

}  // namespace fraclocal
