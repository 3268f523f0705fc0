#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fraclocal/frac_color.hpp"
#include "fraclocal/graph.hpp"
#include "fraclocal/multicoloring.hpp"
#include "fraclocal/primitives.hpp"

namespace fraclocal {

// Cell radius q + 2 * 6^d; on cycles at least 2q + 2 so that the repair
// windows of neighboring cells never touch.
int grid_ell(int q, int dimension);
// 2q + 1 for d = 1, 2q + (2d + 1) q otherwise.
std::int64_t grid_palette(int q, int dimension);

struct GridOptions {
  // Proper coloring of the nodes within d * ell hops; IDs when absent.
  std::optional<ProperColoring> precoloring;
  // A node that sees the whole (bipartite) graph within d * ell hops outputs
  // the exact (2q : q)-coloring.
  bool trivial = false;
  bool allow_three_dimensions = false;
  // Graph size the nodes are told; defaults to g.size().
  std::optional<int> declared_n;
};

struct GridRun {
  MultiColoring coloring;
  int ell = 0;
  int dimension = 0;
  std::int64_t rounds = 0;  // scheduled, independent of the input beyond the precoloring palette
  PhaseLog phases;
  std::vector<bool> anchor;
  std::vector<bool> repaired;  // in a repair window (d = 1) or recolored from the reserve (d >= 2)
  bool trivial_used = false;
};

// Rounds of grid_multicolor_logstar given the palette it starts from.
std::int64_t grid_schedule_rounds(int q, int dimension, Color start_palette, PhaseLog* phases = nullptr);

// MIS on the infinity-norm power G^ell, Voronoi cells around it, and colors
// from the parity of each node's offset to its anchor. Same-parity edges are
// repaired: on cycles by completing a path of 2q+1 nodes around the edge with
// one extra color, otherwise by moving one endpoint to a reserve of 2d+1
// blocks of q colors.
GridRun grid_multicolor_logstar(const Graph& g, int q, const GridOptions& options = {});

struct GridConstantOptions {
  std::optional<Color> palette;  // default from the fixed point below
  Color palette_cap = Color{1} << 40;
};

struct GridConstantRun {
  MultiColoring coloring;
  std::vector<bool> precolored;
  std::vector<bool> happy;
  Color palette = 0;
  std::int64_t algorithm_rounds = 0;
  std::int64_t rounds = 0;
  int ell = 0;
  double unhappy_fraction = 0.0;
  PhaseLog phases;
};

// Smallest palette c (up to the cap) with B(T(c)) * B(d ell) / c <= epsilon,
// where B(r) bounds the r-hop ball of a d-dimensional grid and T(c) is the
// schedule started from c colors.
Color grid_precoloring_palette(int q, int dimension, double epsilon, Color cap = Color{1} << 40);

// Random distance-(d ell) precoloring replaces the IDs; the algorithm runs on
// the precolored nodes and only nodes with no uncolored node within the
// schedule length keep their colors.
GridConstantRun grid_constant_time(const Graph& g, int q, double epsilon, std::uint64_t seed,
                                   const GridConstantOptions& options = {});

// grid_constant_time as an amplifiable partial (P:q)-coloring.
MultiColoringRun grid_constant_time_run(const Graph& g, int q, double epsilon, std::uint64_t seed,
                                        const GridConstantOptions& options = {});

}  // namespace fraclocal
