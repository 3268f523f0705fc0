#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fraclocal/graph.hpp"
#include "fraclocal/sim.hpp"

namespace fraclocal {

using Color = std::int64_t;
inline constexpr Color kUncolored = 0;

// Colors are 1..palette.
struct ProperColoring {
  std::vector<Color> colors;
  Color palette = 0;
};

// Colors are 1..palette, or kUncolored.
struct PartialColoring {
  std::vector<Color> colors;
  Color palette = 0;
  int uncolored_count() const;
};

using ColorList = std::vector<Color>;
using ListAssignment = std::vector<ColorList>;

bool is_proper(const Graph& g, const std::vector<Color>& colors);
ProperColoring coloring_from_ids(const Graph& g);

// Nodes assume this maximum degree when they do not know the true one, e.g.
// on power graphs: min(n - 1, Delta * sum (Delta-1)^i).
sim::ModelInfo power_model(const Graph& base, int k);

struct LinialStep {
  std::int64_t prime = 0;
  int degree = 0;  // of the polynomials
  Color palette_in = 0;
  Color palette_out = 0;
};

// Polynomial color reduction steps starting from `palette`, stopping once no
// step shrinks the palette any further.
std::vector<LinialStep> linial_schedule(Color palette, std::int64_t max_degree);

struct ColoringRun {
  ProperColoring coloring;
  std::int64_t rounds = 0;  // scheduled
  std::int64_t measured_rounds = 0;
};

struct PartialColoringRun {
  PartialColoring coloring;
  std::int64_t rounds = 0;
  std::int64_t measured_rounds = 0;
};

struct LinialOptions {
  std::optional<ProperColoring> initial;  // default: the IDs
  std::optional<sim::ModelInfo> model;
};

// The resulting palette is at most 16 * Delta^2 (Delta = declared max degree).
inline constexpr std::int64_t kLinialPaletteFactor = 16;
ColoringRun linial_coloring(const Graph& g, const LinialOptions& options = {});

// One round per removed color: nodes of color c > target recolor in round
// palette - c + 1 with the smallest free color.
ColoringRun color_reduction(const Graph& g, const ProperColoring& input, Color target);

struct MisRun {
  std::vector<bool> in_set;
  std::int64_t rounds = 0;
  std::int64_t measured_rounds = 0;
};

// Greedy sweep over the color classes of `precoloring`.
MisRun mis(const Graph& g, const ProperColoring& precoloring);

struct RulingSetOptions {
  // Proper coloring of G^(alpha-1) that Linial reduction starts from; IDs when absent.
  std::optional<ProperColoring> precoloring;
  std::optional<sim::ModelInfo> power_model;
};

struct RulingSetRun {
  std::vector<bool> in_set;
  int digits = 0;       // digits of the precoloring processed, in base `base`
  std::int64_t base = 0;
  int domination = 0;   // guaranteed: every node is within this many hops of the set
  std::int64_t power_palette = 0;
  std::int64_t rounds = 0;
  std::int64_t measured_rounds = 0;
};

// (alpha, beta)-ruling set: members pairwise at distance >= alpha, every node
// within distance beta of a member. Requires alpha >= 2 and beta >= alpha - 1.
RulingSetRun ruling_set(const Graph& g, int alpha, int beta, const RulingSetOptions& options = {});

// Sweep over the helper color classes; each node takes the smallest color of
// its list not used by a neighbor. Lists must satisfy |L(v)| >= deg(v) + 1.
ColoringRun list_color_det(const Graph& g, const ListAssignment& lists, const ProperColoring& helper);

// Each trial, every uncolored node proposes a random free color from its list
// and keeps it when no neighbor proposed or holds the same color.
PartialColoringRun list_color_sloppy(const Graph& g, const ListAssignment& lists, int trials, std::uint64_t seed);

// Uniform color from 1..palette; a node stays uncolored if another node within
// `radius` hops drew the same color.
PartialColoringRun random_distance_coloring(const Graph& g, int radius, Color palette, std::uint64_t seed);

// Each node learns the values of its neighbors in one round.
std::vector<std::vector<std::pair<NodeId, Color>>> exchange_with_neighbors(const Graph& g,
                                                                          const std::vector<Color>& values);

std::int64_t next_prime(std::int64_t at_least);
// Smallest r with r^k >= m.
std::int64_t integer_root_ceil(std::int64_t m, int k);

}  // namespace fraclocal
