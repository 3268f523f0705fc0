#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fraclocal/collect_ball.hpp"
#include "fraclocal/graph.hpp"
#include "fraclocal/primitives.hpp"

namespace fraclocal {

// Degree-choosable: every list assignment with |L(v)| = deg(v) admits a proper
// coloring. For connected graphs this fails exactly for Gallai trees (every
// block a clique or an odd cycle).
bool is_gallai_tree(const Graph& g);
// Exhaustive over canonical list assignments; only for tiny graphs.
bool degree_choosable_bruteforce(const Graph& g);
inline constexpr int kBruteForceChoosableNodes = 6;
// The enumeration explodes with the list sizes: K_{3,3} already takes seconds.
inline constexpr int kBruteForceChoosableEdges = 7;
inline bool bruteforce_choosable_feasible(const Graph& g) {
  return g.size() <= kBruteForceChoosableNodes && g.edge_count() <= kBruteForceChoosableEdges;
}
// Uses the block structure; cross-checks against brute force on tiny inputs.
bool is_degree_choosable(const Graph& g);

enum class ClusterKind { Unclassified, Large, LowDegree, Choosable };
std::string to_string(ClusterKind kind);

struct ClusterTag {
  ClusterKind kind = ClusterKind::Unclassified;
  NodeIndex low_degree_witness = -1;
  std::vector<NodeIndex> choosable_witness;  // sorted
};

struct Cluster {
  NodeIndex center = -1;
  std::vector<NodeIndex> members;  // sorted
  ClusterTag tag;
  int strong_diameter = -1;  // filled by measure_diameters; -1 = not connected
  int weak_diameter = -1;
};

inline constexpr int kUnclustered = -1;

struct Clustering {
  std::vector<int> assignment;  // cluster index per node or kUnclustered
  std::vector<Cluster> clusters;
  int radius_bound = 0;  // hops from any member to its center, inside the cluster
  int alpha = 0;
  std::int64_t rounds = 0;
  std::vector<std::pair<std::string, std::int64_t>> phases;
  // MPX only: cluster centers before intercluster edges were cut.
  std::vector<NodeIndex> pre_removal_center;
};

// A cluster as one of its members sees it after gathering.
struct ClusterSnapshot {
  NodeId center = 0;
  std::vector<NodeId> members;  // sorted
  std::map<NodeId, std::vector<NodeId>> adjacency;  // full neighbor lists of members

  static ClusterSnapshot from_view(const sim::BallView<NodeId>& view);
  static ClusterSnapshot from_graph(const Graph& g, NodeIndex center, const std::vector<NodeIndex>& members);
  bool contains(NodeId id) const;
  Graph induced(const std::vector<NodeId>& subset) const;
};

struct SnapshotTag {
  ClusterKind kind = ClusterKind::Unclassified;
  NodeId low_degree_witness = 0;
  std::vector<NodeId> choosable_witness;
};

inline constexpr int kChoosableSearchCap = 12;

// Large (>= q members), else the smallest-ID member of degree <= Delta - 1,
// else the first connected set of interior members (all neighbors inside the
// cluster) inducing a degree-choosable graph, by size then by sorted IDs.
std::optional<SnapshotTag> classify_snapshot(const ClusterSnapshot& snap, int q, std::int64_t max_degree,
                                             int search_cap = kChoosableSearchCap);

// Smallest c >= 1 with floor(alpha/2 - 3)/2 * log(Delta - 1) >= log q, where
// alpha = ceil(c (1 + log_Delta q)). Growth below Delta = 3 is taken as base 2.
int default_c_alpha(std::int64_t max_degree, int q);
int clustering_alpha(std::int64_t max_degree, int q, int c_alpha);

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RulingClusteringOptions {
  std::optional<int> c_alpha;
  std::optional<int> alpha;  // overrides the alpha formula
  bool classify = true;
  int search_cap = kChoosableSearchCap;
  std::optional<sim::ModelInfo> model;  // Delta known to nodes; default from g
  // Proper coloring of G^(alpha-1) to start the ruling set from instead of IDs.
  std::optional<ProperColoring> power_precoloring;
  std::optional<sim::ModelInfo> power_model;
};

// Voronoi cells (ties to the smaller center ID) around an
// (alpha, (alpha-1) ceil(alpha log2 Delta)) ruling set.
Clustering ruling_set_clustering(const Graph& g, int q, const RulingClusteringOptions& options = {});

// Default shift cap ceil(4 ln n / epsilon).
int default_mpx_shift_cap(int n, double epsilon);

// Exponential shifts with rate epsilon/2 clamped at `shift_cap`; every node
// joins the center minimizing dist - shift (ties to the smaller ID), then the
// smaller-ID endpoint of each intercluster edge leaves its cluster.
Clustering mpx_clustering_separated(const Graph& g, double epsilon, std::uint64_t seed,
                                    std::optional<int> shift_cap = std::nullopt);

// Gathers every cluster at its members; the view of each member is restricted
// to its own cluster. Returns one snapshot per cluster index.
std::vector<ClusterSnapshot> gather_cluster_snapshots(const Graph& g, const Clustering& clustering, int radius,
                                                      std::int64_t* rounds = nullptr);

void measure_diameters(const Graph& g, Clustering& clustering);

nlohmann::json clustering_json(const Graph& g, const Clustering& clustering);

}  // namespace fraclocal
