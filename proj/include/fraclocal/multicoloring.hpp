#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "fraclocal/primitives.hpp"

namespace fraclocal {

// A (p:q)-coloring candidate: every node holds a set of colors from 1..p and
// adjacent sets must be disjoint. Nodes with fewer than q colors are
// incomplete; verification reports the smallest set size actually achieved.
struct MultiColoring {
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::vector<std::vector<Color>> sets;  // sorted
};

// Color c becomes the singleton {c}; uncolored nodes get the empty set.
MultiColoring from_partial(const PartialColoring& coloring);
// Color c becomes the block {(c-1)k+1, ..., ck}.
MultiColoring expand_blocks(const PartialColoring& coloring, int k);
// Appends `other` with its colors shifted by `offset`.
void merge_shifted(MultiColoring& into, const MultiColoring& other, std::int64_t offset);

nlohmann::json multicoloring_json(const MultiColoring& coloring);
MultiColoring multicoloring_from_json(const nlohmann::json& doc, int n);

}  // namespace fraclocal
