#include "fraclocal/generators.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace fraclocal {

Graph generate_grid(const GridSpec& spec) {
  spec.validate();
  const int dim = spec.dimension();
  const std::int64_t count = spec.node_count();
  if (count > std::numeric_limits<NodeIndex>::max()) throw PreconditionError("grid too large");
  const int n = static_cast<int>(count);

  std::vector<std::int64_t> stride(dim, 1);
  for (int i = dim - 2; i >= 0; --i) stride[i] = stride[i + 1] * spec.sides[i + 1];

  GridEmbedding emb{spec, std::vector<std::vector<int>>(n, std::vector<int>(dim))};
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) {
    std::int64_t rest = v;
    for (int i = 0; i < dim; ++i) {
      emb.coords[v][i] = static_cast<int>(rest / stride[i]);
      rest %= stride[i];
    }
    for (int i = 0; i < dim; ++i) {
      const int x = emb.coords[v][i];
      if (x + 1 < spec.sides[i]) edges.emplace_back(v, static_cast<NodeIndex>(v + stride[i]));
      else if (spec.wrap[i]) edges.emplace_back(v, static_cast<NodeIndex>(v - x * stride[i]));
    }
  }
  return Graph::from_edges(n, edges).with_grid(std::move(emb));
}

Graph generate_cycle(int n) {
  if (n < 3) throw PreconditionError("a cycle needs at least 3 nodes");
  return generate_grid(GridSpec{{n}, {true}});
}

Graph generate_path(int n) {
  if (n < 1) throw PreconditionError("a path needs at least 1 node");
  return generate_grid(GridSpec{{n}, {false}});
}

Graph generate_complete(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph generate_complete_bipartite(int left, int right) {
  std::vector<Edge> edges;
  for (int u = 0; u < left; ++u)
    for (int v = 0; v < right; ++v) edges.emplace_back(u, left + v);
  return Graph::from_edges(left + right, edges);
}

Graph generate_petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, 5 + i);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
  }
  return Graph::from_edges(10, edges);
}

Graph generate_hypercube(int dimension) {
  if (dimension < 0 || dimension > 20) throw PreconditionError("hypercube dimension out of range");
  const int n = 1 << dimension;
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < dimension; ++b)
      if (!(v & (1 << b))) edges.emplace_back(v, v | (1 << b));
  return Graph::from_edges(n, edges);
}

Graph generate_random_regular(int n, int max_degree, std::uint64_t seed, int attempts) {
  if (n < 1 || max_degree < 0) throw PreconditionError("invalid regular graph parameters");
  if (max_degree >= n) throw GenerationError("degree must be smaller than n");
  if ((static_cast<std::int64_t>(n) * max_degree) % 2 != 0)
    throw GenerationError("n * degree must be even for a regular graph");

  std::mt19937_64 rng(seed);
  std::vector<NodeIndex> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * max_degree);
  for (int v = 0; v < n; ++v)
    for (int j = 0; j < max_degree; ++j) stubs.push_back(v);

  for (int attempt = 0; attempt < attempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<Edge> seen;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      NodeIndex a = std::min(stubs[i], stubs[i + 1]);
      NodeIndex b = std::max(stubs[i], stubs[i + 1]);
      if (a == b || !seen.emplace(a, b).second) {
        simple = false;
        break;
      }
    }
    if (simple) {
      std::vector<Edge> edges(seen.begin(), seen.end());
      return Graph::from_edges(n, edges);
    }
  }
  throw GenerationError("pairing model did not produce a simple graph within the attempt budget");
}

Graph generate_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("a tree needs at least 1 node");
  if (n == 1) return Graph(1);
  if (n == 2) {
    Edge e[1] = {{0, 1}};
    return Graph::from_edges(2, e);
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> code(n - 2);
  for (int& c : code) c = pick(rng);
  std::vector<int> degree(n, 1);
  for (int c : code) ++degree[c];
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<Edge> edges;
  for (int c : code) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.insert(c);
  }
  int a = *leaves.begin();
  int b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return Graph::from_edges(n, edges);
}

Graph generate_random_bipartite(int left, int right, double edge_probability, std::uint64_t seed) {
  if (left < 0 || right < 0) throw PreconditionError("negative side size");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_probability);
  std::vector<Edge> edges;
  for (int u = 0; u < left; ++u)
    for (int v = 0; v < right; ++v)
      if (coin(rng)) edges.emplace_back(u, left + v);
  return Graph::from_edges(left + right, edges);
}

Graph generate_erdos_renyi(int n, double edge_probability, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(edge_probability);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

}  // namespace fraclocal
