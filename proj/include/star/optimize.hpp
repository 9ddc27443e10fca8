#pragma once

#include <vector>

#include "star/binding.hpp"

namespace star {

// Register-compatibility graph over bound structures. Vertices are sorted by
// earliest lifetime start; an edge joins two same-kind nodes whose interval
// sets never overlap (touching endpoints are allowed, reads precede writes).
struct HierRcg {
  std::vector<HierNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (earlier, later)
};

bool lifetimes_disjoint(const std::vector<Interval>& u, const std::vector<Interval>& v);

HierRcg build_hier_rcg(const BoundGraph& b);

// Merges same-kind structures along Register-compatible paths until no edge
// remains. Node ids are renumbered per kind in order of first use.
BoundGraph merge_structures(const HierRcg& h, const BoundGraph& b);

// build_hier_rcg + merge_structures.
BoundGraph optimize(const BoundGraph& b);

}  // namespace star
