#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclocal/clustering.hpp"
#include "fraclocal/multicoloring.hpp"
#include "fraclocal/primitives.hpp"

namespace fraclocal {

using PhaseLog = std::vector<std::pair<std::string, std::int64_t>>;

// Colors the nodes of one layer from (deg+1)-lists.
class ListSolver {
 public:
  virtual ~ListSolver() = default;
  virtual PartialColoring solve(const Graph& g, const ListAssignment& lists, const ProperColoring& helper,
                                std::uint64_t seed) const = 0;
  // Scheduled rounds per call given the palette of the helper coloring.
  virtual std::int64_t rounds(Color helper_palette) const = 0;
};

class SweepListSolver final : public ListSolver {
 public:
  PartialColoring solve(const Graph& g, const ListAssignment& lists, const ProperColoring& helper,
                        std::uint64_t seed) const override;
  std::int64_t rounds(Color helper_palette) const override { return helper_palette; }
};

class SloppyListSolver final : public ListSolver {
 public:
  explicit SloppyListSolver(int trials) : trials_(trials) {}
  PartialColoring solve(const Graph& g, const ListAssignment& lists, const ProperColoring& helper,
                        std::uint64_t seed) const override;
  std::int64_t rounds(Color) const override { return trials_; }
  int trials() const { return trials_; }

 private:
  int trials_;
};

struct MultiColoringRun {
  MultiColoring coloring;
  std::int64_t rounds = 0;
  PhaseLog phases;
  int alpha = 0;
  std::int64_t list_rounds = 0;  // per layer
  std::int64_t helper_palette = 0;
  int layer_bound = 0;
  Clustering clustering;
};

// Which nodes of a cluster the layers are measured from, and how they get
// colored once everything else is.
struct SeedPlan {
  enum class Finish { LeaveUncolored, LowDegreeGreedy, ChoosableSearch };
  std::vector<NodeId> seeds;
  Finish finish = Finish::LeaveUncolored;
};

struct PeelResult {
  PartialColoring coloring;
  std::int64_t rounds = 0;
  PhaseLog phases;
};

// Layers are hop distances (inside the cluster) to the seed set. Layers are
// colored from the outermost inwards with lists {1..Delta} minus the colors
// of already colored neighbors.
PeelResult peel_layers(const Graph& g, const Clustering& clustering, const std::vector<ClusterSnapshot>& snapshots,
                       const std::vector<SeedPlan>& plans, const ProperColoring& helper, const ListSolver& solver,
                       std::uint64_t seed, std::int64_t max_degree, int layer_bound);

// marks[c]: node left uncolored in cluster c (for Large clusters). Clusters
// without a mark use their classification witness.
PeelResult partial_delta_coloring_with_marks(const Graph& g, const Clustering& clustering,
                                             const std::vector<std::optional<NodeIndex>>& marks,
                                             const ProperColoring& helper, const ListSolver& solver,
                                             std::uint64_t seed = 0,
                                             std::optional<sim::ModelInfo> model = std::nullopt);

struct QDeltaOptions {
  const ListSolver* solver = nullptr;  // default: sweep
  std::uint64_t seed = 0;
  RulingClusteringOptions clustering;
  std::optional<ProperColoring> helper_initial;  // Linial starts from IDs otherwise
  std::optional<sim::ModelInfo> model;
};

// q runs with disjoint Delta-palettes; in run j the j-th smallest member of
// each Large cluster stays uncolored. Result is a (q Delta : q-1)-coloring.
MultiColoringRun q_delta_coloring(const Graph& g, int q, const QDeltaOptions& options = {});

// Clusters from an (4q+4)-ruling set; a path of 2q+1 nodes from each center is
// left out of the Delta-coloring, colors become blocks of q, and the paths are
// completed with the extra color. Result is a (q Delta + 1 : q)-coloring.
MultiColoringRun small_support_coloring(const Graph& g, int q, const QDeltaOptions& options = {});

// Number of independent runs for amplification: ceil((6/eps) ln(n / failure)).
int amplification_runs(double epsilon, double n, double failure);

using RandomizedColoring = std::function<MultiColoringRun(std::uint64_t seed)>;

struct AmplifyResult {
  MultiColoring coloring;  // q = ceil((1-eps) * runs * base q)
  int runs = 0;
  std::int64_t base_p = 0;
  std::int64_t base_q = 0;
  std::vector<int> successes;  // runs in which each node received >= base q colors
  int min_successes = 0;
  std::int64_t rounds = 0;  // runs are parallel
  bool complete = false;
};

// Union of `runs` independent executions on disjoint palettes.
AmplifyResult amplify(const RandomizedColoring& base, int runs, std::uint64_t seed, double epsilon);

struct DerandomizeResult {
  MultiColoring coloring;
  std::vector<bool> run_complete;
  double success_fraction = 0.0;
  std::int64_t rounds = 0;
};

// Runs the algorithm once for every seed in the pool (in parallel) and takes
// the union on disjoint palettes.
DerandomizeResult enumerate_seeds_derandomize(const RandomizedColoring& base, std::span<const std::uint64_t> pool);

struct FastOptions {
  std::optional<Color> palette;  // default q * Delta^alpha
};

// Random distance-alpha coloring replaces the ID-based symmetry breaking, so
// the schedule depends on Delta and q only. Nodes left uncolored by it get
// the empty set.
MultiColoringRun fast_no_logstar(const Graph& g, int q, std::uint64_t seed, const FastOptions& options = {});

// One run with a random mark per Large cluster and the randomized list
// solver with ceil(a log2 q) trials. Output is a partial (Delta:1)-coloring.
MultiColoringRun q_delta_coloring_sloppy(const Graph& g, int q, std::uint64_t seed, double trials_factor = 4.0);

}  // namespace fraclocal
