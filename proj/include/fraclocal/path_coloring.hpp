#pragma once

#include <optional>
#include <vector>

#include "fraclocal/primitives.hpp"

namespace fraclocal {

// Picks q colors from each list along a path so that consecutive picks are
// disjoint. Backtracking search; empty optional when impossible.
std::optional<std::vector<ColorList>> path_list_multicolor(const std::vector<ColorList>& lists, int q);

// The 2q+1 node case with endpoint lists of size >= q+1 and inner lists of
// size >= 2q+1, which always has a solution. Throws PreconditionError otherwise.
std::vector<ColorList> path_complete(const std::vector<ColorList>& lists, int q);

}  // namespace fraclocal
