// SPDX-License-Identifier: MIT
//
// Small deterministic bipartite-matching helpers for matching bundles to
// agents: maximum matching by augmenting paths, and extraction of an
// inclusion-minimal set of left vertices violating the marriage condition
// when no perfect matching exists.

#pragma once

#include <vector>

namespace mmscopies {

// adj[l] lists the right-side vertices adjacent to left vertex l.
// Returns matchLeft: per left vertex, its partner or -1. Deterministic:
// left vertices are processed in increasing order and adjacency order decides
// tie-breaks.
std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int rightCount);

// Given a maximum matching that is not perfect on the left, return an
// inclusion-minimal set D of left vertices with |neighborhood(D)| < |D|.
// Such a set always exists by the marriage theorem; the result also satisfies
// |neighborhood(D)| == |D| - 1 and |D| >= 1.
std::vector<int> minimal_violating_set(const std::vector<std::vector<int>>& adj, int rightCount);

}  // namespace mmscopies
