#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fraclocal/clustering.hpp"
#include "fraclocal/exact_lp.hpp"
#include "fraclocal/graph.hpp"
#include "fraclocal/independent_sets.hpp"
#include "fraclocal/multicoloring.hpp"

namespace fraclocal {

struct MultiColoringReport {
  bool valid = false;
  bool complete = false;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::int64_t achieved_q_min = 0;  // over nodes with a nonempty set
  int colored_nodes = 0;
  double ratio = 0.0;  // p / achieved_q_min, infinite if nothing is colored
  std::optional<Edge> conflict;
  std::optional<NodeIndex> bad_node;  // color outside 1..p, or a repeated color
  std::string message;
};

// Never throws; a malformed input is reported as invalid.
MultiColoringReport check_multicoloring(const Graph& g, const MultiColoring& coloring);

struct WeightedIndependentSet {
  std::vector<NodeIndex> nodes;
  Rational weight;
};

// chi_f with both sides of the LP: a fractional coloring (independent sets
// with weights covering every node) and a fractional clique (node weights,
// at most 1 on every independent set) of the same total.
struct ChiFCertificate {
  Rational value;
  std::vector<WeightedIndependentSet> coloring;
  std::vector<Rational> clique;
  std::string method;
  int sets_considered = 0;
};

inline constexpr int kChiFExactCap = 30;
inline constexpr int kIndependenceCap = kBitsetNodeCap;

// LP over every maximal independent set. n <= 30.
ChiFCertificate chi_f_exact(const Graph& g);
// Same LP, with independent sets priced in by exact maximum-weight search.
// n <= 64.
ChiFCertificate chi_f_column_generation(const Graph& g);
// chi_f_exact when n <= 30, column generation otherwise.
ChiFCertificate chi_f(const Graph& g);

// Rechecks a certificate from scratch: sets independent, coverage >= 1,
// clique weight <= 1 on every independent set, both totals equal the value.
bool verify_certificate(const Graph& g, const ChiFCertificate& cert, std::string* why = nullptr);

int independence_number(const Graph& g);

std::uint64_t graph_fingerprint(const Graph& g);

struct OracleCertificate {
  std::uint64_t fingerprint = 0;
  int n = 0;
  int independence_number = 0;
  ChiFCertificate chi_f;
  int girth = kInfiniteGirth;
  std::optional<int> chromatic_number;
};

OracleCertificate certify(const Graph& g, bool with_chromatic = true);
nlohmann::json certificate_json(const OracleCertificate& cert);

struct LowerBoundReport {
  int base_nodes = 0;
  std::int64_t base_edges = 0;
  int k = 0;
  int nodes = 0;  // base_nodes + 2 k base_edges
  int girth = kInfiniteGirth;
  int base_independence = 0;
  int independence = 0;
  std::int64_t independence_bound = 0;  // alpha(base) + k * base_edges
  Rational chi_f;
  std::string chi_f_method;
  bool base_has_odd_cycle = false;
  Rational margin;  // chi_f - 2
  bool certified = false;
  std::string message;
};

// Subdivides every edge of `base` into a path of length 2k+1 and measures
// what the lower-bound argument needs.
LowerBoundReport certify_lowerbound_family(const Graph& base, int k);

enum class DiameterMode { Strong, Weak };

struct ClusteringReport {
  bool valid = true;
  int clusters = 0;
  int unclustered = 0;
  double unclustered_fraction = 0.0;
  int max_diameter = 0;
  std::optional<int> bad_cluster;  // first cluster over the bound or disconnected
  std::optional<Edge> separation_witness;
  std::vector<std::string> problems;
};

// Diameters are recomputed here; the ones stored in the clustering are ignored.
// Distinct clusters must be at least `separation` hops apart.
ClusteringReport check_clustering(const Graph& g, const Clustering& clustering, DiameterMode mode,
                                  int separation, std::optional<int> diameter_bound = std::nullopt);

// Independent check of a cluster's classification witness. Choosable
// witnesses up to the brute-force size are confirmed exhaustively.
bool verify_cluster_tag(const Graph& g, const Cluster& cluster, int q, std::int64_t max_degree,
                        std::string* why = nullptr);

}  // namespace fraclocal
