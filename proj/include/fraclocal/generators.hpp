#pragma once

#include <cstdint>
#include <stdexcept>

#include "fraclocal/graph.hpp"

namespace fraclocal {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nodes are numbered in row-major order of their coordinates.
Graph generate_grid(const GridSpec& spec);
Graph generate_cycle(int n);
Graph generate_path(int n);
Graph generate_complete(int n);
Graph generate_complete_bipartite(int left, int right);
Graph generate_petersen();
Graph generate_hypercube(int dimension);

// Uniform simple Delta-regular graph via the pairing model with rejection.
Graph generate_random_regular(int n, int max_degree, std::uint64_t seed, int attempts = 10000);
// Uniform labelled tree (Pruefer sequence).
Graph generate_random_tree(int n, std::uint64_t seed);
Graph generate_random_bipartite(int left, int right, double edge_probability, std::uint64_t seed);
Graph generate_erdos_renyi(int n, double edge_probability, std::uint64_t seed);

}  // namespace fraclocal
