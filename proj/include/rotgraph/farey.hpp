#pragma once

#include <cstdint>
#include <vector>

#include "rotgraph/geometry.hpp"

namespace rotgraph {

// Slopes are primitive classes up to sign, adjacent when |det| = 1.
bool farey_adjacent(IntVec2 s, IntVec2 t);
bool same_slope(IntVec2 s, IntVec2 t);

// Exact distance in the Farey graph.
std::int64_t farey_distance(IntVec2 s, IntVec2 t);

// The vertex set searched by farey_distance after moving s to (1, 0): the ladder of
// Stern-Brocot intervals descending to the image of t. Exposed for testing.
std::vector<IntVec2> farey_ladder(IntVec2 target);

}  // namespace rotgraph
