#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fraclocal {

using NodeIndex = std::int32_t;
using NodeId = std::uint64_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

inline constexpr int kUnreachable = -1;
inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// Thrown when an operation is called outside its documented domain.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  std::vector<int> sides;
  std::vector<bool> wrap;

  int dimension() const { return static_cast<int>(sides.size()); }
  std::int64_t node_count() const;
  void validate() const;
};

// Coordinates attached to nodes of grid-derived graphs. Algorithms only ever
// look at coordinate differences, never at absolute positions.
struct GridEmbedding {
  GridSpec spec;
  std::vector<std::vector<int>> coords;

  // Shortest signed displacement from `from` to `to` along every axis.
  std::vector<int> offset(NodeIndex from, NodeIndex to) const;
  int infinity_distance(NodeIndex a, NodeIndex b) const;
};

enum class NodeRole : std::uint8_t { Original, Inner };

// Provenance of a node in an edge-subdivided graph.
struct SubdivisionTag {
  NodeRole role = NodeRole::Original;
  NodeIndex base_node = -1;  // for originals
  std::int64_t base_edge = -1;  // for inner nodes, index into base.edges()
  int position = 0;             // 1..2k along the path, for inner nodes
};

class Graph;

struct InducedSubgraph;

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  // Builds a simple undirected graph. Rejects loops, out-of-range endpoints;
  // duplicate edges are merged.
  static Graph from_edges(int n, std::span<const Edge> edges);

  int size() const { return static_cast<int>(ids_.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(targets_.size() / 2); }
  int max_degree() const { return max_degree_; }
  int degree(NodeIndex v) const { return static_cast<int>(offsets_[v + 1] - offsets_[v]); }
  std::span<const NodeIndex> neighbors(NodeIndex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  bool adjacent(NodeIndex u, NodeIndex v) const;

  NodeId id(NodeIndex v) const { return ids_[v]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  // IDs come from {1, ..., id_space()}.
  std::uint64_t id_space() const { return id_space_; }
  std::optional<NodeIndex> index_of(NodeId id) const;

  std::vector<Edge> edges() const;

  const GridEmbedding* grid() const { return grid_.get(); }
  const std::vector<SubdivisionTag>* subdivision() const { return subdivision_.get(); }

  Graph with_ids(std::vector<NodeId> ids, std::uint64_t id_space) const;
  // Distinct IDs drawn uniformly from {1, ..., n^exponent}.
  Graph with_permuted_ids(std::uint64_t seed, int exponent = 2) const;
  Graph with_grid(GridEmbedding grid) const;
  Graph with_subdivision(std::vector<SubdivisionTag> tags) const;

  InducedSubgraph induced(std::span<const NodeIndex> nodes) const;

 private:
  std::vector<std::int64_t> offsets_{0};
  std::vector<NodeIndex> targets_;
  std::vector<NodeId> ids_;
  std::uint64_t id_space_ = 0;
  int max_degree_ = 0;
  std::shared_ptr<const GridEmbedding> grid_;
  std::shared_ptr<const std::vector<SubdivisionTag>> subdivision_;
};

struct InducedSubgraph {
  Graph graph;
  std::vector<NodeIndex> to_parent;
  std::vector<NodeIndex> from_parent;  // -1 for nodes not in the subgraph
};

// n^exponent, saturating at 2^63.
std::uint64_t polynomial_id_space(std::int64_t n, int exponent);

std::vector<int> bfs_distances(const Graph& g, NodeIndex source, int max_depth = -1);
std::vector<int> multi_source_distances(const Graph& g, std::span<const NodeIndex> sources,
                                        int max_depth = -1);

// Largest BFS distance inside the subgraph induced by `nodes`; -1 if disconnected.
int strong_diameter(const Graph& g, std::span<const NodeIndex> nodes);
// Largest distance in `g` between two members of `nodes`; -1 if some pair is disconnected.
int weak_diameter(const Graph& g, std::span<const NodeIndex> nodes);

std::vector<int> connected_components(const Graph& g, int* count = nullptr);
// Returns a 2-coloring (0/1) if bipartite.
std::optional<std::vector<int>> bipartition(const Graph& g);
int girth(const Graph& g);

enum class PowerMetric { Hop, InfinityNorm };

Graph power_graph(const Graph& g, int k, PowerMetric metric = PowerMetric::Hop);
// Pairs at infinity-norm distance <= k that are also joined by a path of at most
// `hop_limit` edges of g. Equals the infinity-norm power on intact grids.
Graph infinity_power_within_hops(const Graph& g, int k, int hop_limit);

// Replaces every edge by a path with 2k inner nodes (length 2k+1). Original
// nodes keep indices 0..n-1; inner nodes follow edge order.
Graph subdivide_edges(const Graph& base, int k);

// Upper bound on the maximum degree of the hop power G^k knowing only the
// maximum degree of G: Delta * sum_{i<k} (Delta-1)^i, saturating.
std::int64_t power_degree_bound(std::int64_t max_degree, int k);

}  // namespace fraclocal
