#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fraclocal/exact_lp.hpp"
#include "fraclocal/graph.hpp"

namespace fraclocal {

class OracleCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr int kBitsetNodeCap = 64;

// All maximal independent sets (Bron-Kerbosch with pivoting on the
// complement). Throws OracleCapExceeded past `limit` sets.
std::vector<std::vector<NodeIndex>> maximal_independent_sets(const Graph& g, std::size_t limit = 2'000'000);

std::vector<NodeIndex> maximum_independent_set(const Graph& g);

struct WeightedSet {
  Rational weight;
  std::vector<NodeIndex> nodes;
};
// Exact maximum-weight independent set; nonpositive weights are ignored.
WeightedSet max_weight_independent_set(const Graph& g, const std::vector<Rational>& weights);

// Exact chromatic number by backtracking (small graphs).
int chromatic_number(const Graph& g);

}  // namespace fraclocal
