#include "fraclocal/oracle.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "fraclocal/random.hpp"

namespace fraclocal {

MultiColoringReport check_multicoloring(const Graph& g, const MultiColoring& coloring) {
  MultiColoringReport r;
  r.p = coloring.p;
  r.q = coloring.q;
  const int n = g.size();
  if (static_cast<int>(coloring.sets.size()) != n) {
    r.message = "coloring has " + std::to_string(coloring.sets.size()) + " sets for " + std::to_string(n) + " nodes";
    return r;
  }
  std::vector<std::vector<Color>> sorted(n);
  std::int64_t q_min = std::numeric_limits<std::int64_t>::max();
  bool complete = true;
  for (int v = 0; v < n; ++v) {
    sorted[v] = coloring.sets[v];
    std::sort(sorted[v].begin(), sorted[v].end());
    for (std::size_t i = 0; i < sorted[v].size(); ++i) {
      const Color c = sorted[v][i];
      if (c < 1 || c > coloring.p || (i > 0 && sorted[v][i - 1] == c)) {
        r.bad_node = v;
        r.message = "node " + std::to_string(v) + " holds color " + std::to_string(c) +
                    (c < 1 || c > coloring.p ? " outside the palette" : " twice");
        return r;
      }
    }
    const auto size = static_cast<std::int64_t>(sorted[v].size());
    if (size > 0) {
      ++r.colored_nodes;
      q_min = std::min(q_min, size);
    }
    if (size < coloring.q) complete = false;
  }
  for (const auto& [u, v] : g.edges()) {
    std::vector<Color> shared;
    std::set_intersection(sorted[u].begin(), sorted[u].end(), sorted[v].begin(), sorted[v].end(),
                          std::back_inserter(shared));
    if (!shared.empty()) {
      r.conflict = Edge{u, v};
      r.message = "edge " + std::to_string(u) + "-" + std::to_string(v) + " shares color " + std::to_string(shared[0]);
      return r;
    }
  }
  r.valid = true;
  r.complete = complete;
  r.achieved_q_min = r.colored_nodes > 0 ? q_min : 0;
  r.ratio = r.achieved_q_min > 0 ? static_cast<double>(r.p) / static_cast<double>(r.achieved_q_min)
                                 : std::numeric_limits<double>::infinity();
  return r;
}

namespace {

ChiFCertificate certificate_from_lp(const Graph& g, const std::vector<std::vector<NodeIndex>>& sets,
                                    const PackingSolution& lp, std::string method) {
  ChiFCertificate cert;
  cert.value = lp.value;
  cert.clique = lp.primal;
  cert.method = std::move(method);
  cert.sets_considered = static_cast<int>(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (lp.dual[i] > 0) cert.coloring.push_back({sets[i], lp.dual[i]});
  (void)g;
  return cert;
}

// Extends `seed_set` greedily (by index) to a maximal independent set.
std::vector<NodeIndex> extend_to_maximal(const Graph& g, std::vector<NodeIndex> seed_set) {
  std::vector<bool> blocked(g.size(), false);
  for (NodeIndex v : seed_set) {
    blocked[v] = true;
    for (NodeIndex w : g.neighbors(v)) blocked[w] = true;
  }
  for (NodeIndex v = 0; v < g.size(); ++v) {
    if (blocked[v]) continue;
    seed_set.push_back(v);
    blocked[v] = true;
    for (NodeIndex w : g.neighbors(v)) blocked[w] = true;
  }
  std::sort(seed_set.begin(), seed_set.end());
  return seed_set;
}

}  // namespace

ChiFCertificate chi_f_exact(const Graph& g) {
  if (g.size() > kChiFExactCap) throw OracleCapExceeded("chi_f_exact supports at most 30 nodes");
  if (g.size() == 0) return {0, {}, {}, "empty", 0};
  const auto sets = maximal_independent_sets(g);
  const auto lp = solve_packing_lp(g.size(), sets);
  return certificate_from_lp(g, sets, lp, "maximal-independent-sets");
}

ChiFCertificate chi_f_column_generation(const Graph& g) {
  if (g.size() > kBitsetNodeCap) throw OracleCapExceeded("column generation supports at most 64 nodes");
  if (g.size() == 0) return {0, {}, {}, "empty", 0};
  std::set<std::vector<NodeIndex>> seen;
  std::vector<std::vector<NodeIndex>> sets;
  for (NodeIndex v = 0; v < g.size(); ++v) {
    auto s = extend_to_maximal(g, {v});
    if (seen.insert(s).second) sets.push_back(std::move(s));
  }
  PackingLp lp_state(g.size());
  for (const auto& s : sets) lp_state.add_row(s);
  while (true) {
    const auto lp = lp_state.solve();
    // a set violating the clique constraint is a column with negative reduced cost
    const auto heaviest = max_weight_independent_set(g, lp.primal);
    if (heaviest.weight <= 1) return certificate_from_lp(g, sets, lp, "column-generation");
    auto s = extend_to_maximal(g, heaviest.nodes);
    if (!seen.insert(s).second) throw std::logic_error("column generation repeated a set");
    lp_state.add_row(s);
    sets.push_back(std::move(s));
  }
}

ChiFCertificate chi_f(const Graph& g) {
  return g.size() <= kChiFExactCap ? chi_f_exact(g) : chi_f_column_generation(g);
}

bool verify_certificate(const Graph& g, const ChiFCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const int n = g.size();
  std::vector<Rational> cover(n, 0);
  Rational total = 0;
  for (const auto& s : cert.coloring) {
    if (s.weight < 0) return fail("negative set weight");
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (s.nodes[i] < 0 || s.nodes[i] >= n) return fail("set names an unknown node");
      for (std::size_t j = 0; j < i; ++j)
        if (g.adjacent(s.nodes[i], s.nodes[j])) return fail("set is not independent");
      cover[s.nodes[i]] += s.weight;
    }
    total += s.weight;
  }
  for (int v = 0; v < n; ++v)
    if (cover[v] < 1) return fail("node " + std::to_string(v) + " covered less than once");
  if (total != cert.value) return fail("set weights do not add up to the value");
  if (static_cast<int>(cert.clique.size()) != n) return fail("clique has the wrong length");
  Rational clique_total = 0;
  for (const auto& y : cert.clique) {
    if (y < 0) return fail("negative clique weight");
    clique_total += y;
  }
  if (clique_total != cert.value) return fail("clique weights do not add up to the value");
  if (n > 0 && max_weight_independent_set(g, cert.clique).weight > 1)
    return fail("an independent set carries clique weight above 1");
  return true;
}

int independence_number(const Graph& g) {
  if (g.size() > kIndependenceCap) throw OracleCapExceeded("independence_number supports at most 64 nodes");
  return static_cast<int>(maximum_independent_set(g).size());
}

std::uint64_t graph_fingerprint(const Graph& g) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(g.size()));
  for (const auto& [u, v] : g.edges()) h = mix64(h ^ (static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint32_t>(v)));
  return h;
}

OracleCertificate certify(const Graph& g, bool with_chromatic) {
  OracleCertificate c;
  c.fingerprint = graph_fingerprint(g);
  c.n = g.size();
  c.independence_number = independence_number(g);
  c.chi_f = chi_f(g);
  c.girth = girth(g);
  if (with_chromatic) c.chromatic_number = chromatic_number(g);
  return c;
}

nlohmann::json certificate_json(const OracleCertificate& cert) {
  auto rational = [](const Rational& r) { return r.get_str(); };
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : cert.chi_f.coloring) sets.push_back({{"nodes", s.nodes}, {"weight", rational(s.weight)}});
  nlohmann::json clique = nlohmann::json::array();
  for (const auto& y : cert.chi_f.clique) clique.push_back(rational(y));
  std::ostringstream fp;
  fp << std::hex << cert.fingerprint;
  nlohmann::json out = {{"fingerprint", fp.str()},
                        {"n", cert.n},
                        {"independence_number", cert.independence_number},
                        {"chi_f", rational(cert.chi_f.value)},
                        {"chi_f_method", cert.chi_f.method},
                        {"fractional_coloring", std::move(sets)},
                        {"fractional_clique", std::move(clique)}};
  out["girth"] = cert.girth == kInfiniteGirth ? nlohmann::json(nullptr) : nlohmann::json(cert.girth);
  if (cert.chromatic_number) out["chromatic_number"] = *cert.chromatic_number;
  return out;
}

LowerBoundReport certify_lowerbound_family(const Graph& base, int k) {
  if (base.size() == 0) throw PreconditionError("base graph must be nonempty");
  if (k < 1) throw PreconditionError("k must be at least 1");
  LowerBoundReport r;
  r.base_nodes = base.size();
  r.base_edges = base.edge_count();
  r.k = k;
  const Graph h = subdivide_edges(base, k);
  r.nodes = h.size();
  if (h.size() > kBitsetNodeCap) throw OracleCapExceeded("subdivided graph exceeds the oracle cap");
  r.girth = girth(h);
  r.base_independence = independence_number(base);
  r.independence = independence_number(h);
  r.independence_bound = r.base_independence + static_cast<std::int64_t>(k) * r.base_edges;
  const auto cert = chi_f(h);
  std::string why;
  if (!verify_certificate(h, cert, &why)) throw std::logic_error("chi_f certificate rejected: " + why);
  r.chi_f = cert.value;
  r.chi_f_method = cert.method;
  r.base_has_odd_cycle = !bipartition(base).has_value();
  r.margin = r.chi_f - 2;
  const bool bound_holds = r.independence <= r.independence_bound;
  const bool separation = r.base_has_odd_cycle ? r.chi_f > 2 : (base.edge_count() == 0 || r.chi_f == 2);
  r.certified = bound_holds && separation;
  std::ostringstream msg;
  msg << "N=" << r.nodes << " girth=" << (r.girth == kInfiniteGirth ? std::string("inf") : std::to_string(r.girth))
      << " alpha(H)=" << r.independence << " (bound " << r.independence_bound << ") chi_f=" << r.chi_f.get_str()
      << " margin=" << r.margin.get_str();
  r.message = msg.str();
  return r;
}

ClusteringReport check_clustering(const Graph& g, const Clustering& clustering, DiameterMode mode, int separation,
                                  std::optional<int> diameter_bound) {
  ClusteringReport r;
  const int n = g.size();
  auto problem = [&](const std::string& msg) {
    r.valid = false;
    r.problems.push_back(msg);
  };
  if (static_cast<int>(clustering.assignment.size()) != n) {
    problem("assignment length differs from the node count");
    return r;
  }
  r.clusters = static_cast<int>(clustering.clusters.size());
  for (int v = 0; v < n; ++v) {
    const int c = clustering.assignment[v];
    if (c == kUnclustered) {
      ++r.unclustered;
      continue;
    }
    if (c < 0 || c >= r.clusters) {
      problem("node " + std::to_string(v) + " assigned to unknown cluster");
      continue;
    }
    const auto& members = clustering.clusters[c].members;
    if (!std::binary_search(members.begin(), members.end(), v))
      problem("node " + std::to_string(v) + " missing from its cluster's member list");
  }
  r.unclustered_fraction = n > 0 ? static_cast<double>(r.unclustered) / n : 0.0;
  for (int c = 0; c < r.clusters; ++c) {
    const auto& cl = clustering.clusters[c];
    for (NodeIndex v : cl.members)
      if (v < 0 || v >= n || clustering.assignment[v] != c)
        problem("cluster " + std::to_string(c) + " lists a node assigned elsewhere");
    if (cl.members.empty()) continue;
    // a separated clustering may have cut its own center loose
    const bool cut = !clustering.pre_removal_center.empty();
    if (!cut && (cl.center < 0 || cl.center >= n || clustering.assignment[cl.center] != c))
      problem("cluster " + std::to_string(c) + " does not contain its center");
    const int diam = mode == DiameterMode::Strong ? strong_diameter(g, cl.members) : weak_diameter(g, cl.members);
    if (diam < 0 || (diameter_bound && diam > *diameter_bound)) {
      if (!r.bad_cluster) r.bad_cluster = c;
      problem("cluster " + std::to_string(c) + (diam < 0 ? " is disconnected" : " exceeds the diameter bound"));
    }
    r.max_diameter = std::max(r.max_diameter, diam);
  }
  if (separation >= 2) {
    for (NodeIndex v = 0; v < n && !r.separation_witness; ++v) {
      const int c = clustering.assignment[v];
      if (c == kUnclustered) continue;
      const auto dist = bfs_distances(g, v, separation - 1);
      for (NodeIndex w = 0; w < n; ++w) {
        if (dist[w] == kUnreachable || clustering.assignment[w] == kUnclustered || clustering.assignment[w] == c) continue;
        r.separation_witness = Edge{v, w};
        problem("nodes " + std::to_string(v) + " and " + std::to_string(w) + " of different clusters are " +
                std::to_string(dist[w]) + " hops apart");
        break;
      }
    }
  }
  return r;
}

bool verify_cluster_tag(const Graph& g, const Cluster& cluster, int q, std::int64_t max_degree, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  auto in_cluster = [&](NodeIndex v) { return std::binary_search(cluster.members.begin(), cluster.members.end(), v); };
  switch (cluster.tag.kind) {
    case ClusterKind::Large:
      if (static_cast<std::int64_t>(cluster.members.size()) < q) return fail("Large cluster with fewer than q members");
      return true;
    case ClusterKind::LowDegree: {
      const NodeIndex w = cluster.tag.low_degree_witness;
      if (w < 0 || w >= g.size() || !in_cluster(w)) return fail("low-degree witness outside the cluster");
      if (g.degree(w) > max_degree - 1) return fail("low-degree witness has degree " + std::to_string(g.degree(w)));
      return true;
    }
    case ClusterKind::Choosable: {
      const auto& witness = cluster.tag.choosable_witness;
      if (witness.empty()) return fail("empty choosable witness");
      for (NodeIndex v : witness) {
        if (v < 0 || v >= g.size() || !in_cluster(v)) return fail("choosable witness leaves the cluster");
        for (NodeIndex w : g.neighbors(v))
          if (!in_cluster(w)) return fail("choosable witness member has a neighbor outside the cluster");
      }
      const auto sub = g.induced(witness);
      int components = 0;
      connected_components(sub.graph, &components);
      if (components != 1) return fail("choosable witness is not connected");
      // the block test is only a fallback for witnesses too big to enumerate
      const bool choosable = bruteforce_choosable_feasible(sub.graph) ? degree_choosable_bruteforce(sub.graph)
                                                                           : !is_gallai_tree(sub.graph);
      if (!choosable) return fail("choosable witness is a Gallai tree");
      return true;
    }
    case ClusterKind::Unclassified:
      break;
  }
  return fail("cluster is unclassified");
}

}  // namespace fraclocal
