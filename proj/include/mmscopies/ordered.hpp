// SPDX-License-Identifier: MIT
//
// Ordered instances and the conversions between allocations of ranks and
// allocations of the original goods. In an ordered instance every agent's
// values are non-increasing in the good index; "rank r" means the r-th most
// valuable good (0-indexed). Converting rank bundles back to real goods uses
// picking passes that never decrease any agent's value; with duplicated
// ranks this needs the allocation to be "simple": each rank duplicated at
// most once, at most n/2 duplicated ranks, and the 2t holders of duplicated
// ranks pairwise distinct with each sharing pair overlapping in exactly its
// shared rank.

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mmscopies/core.hpp"

namespace mmscopies {

struct OrderedInstance {
  Instance instance;                    // same sizes, rows sorted non-increasing
  std::vector<std::vector<int>> sigma;  // sigma[i][r] = original good at agent i's rank r
};

// Sort each agent's goods by value (descending, ties by ascending good
// index). Additive instances only. Idempotent: ordering an already ordered
// instance yields identity rank maps.
OrderedInstance to_ordered(const Instance& inst);

// Convert a copy-free allocation of ranks to an allocation of the original
// goods via a single picking pass over ranks in increasing order; each rank's
// holder takes their most valuable remaining good (ties: lowest index).
// Every agent ends up at least as well off as under the rank bundles.
CopyAllocation from_ordered_no_copies(const OrderedInstance& ord, const CopyAllocation& rankAlloc);

struct SimpleWitness {
  std::vector<int> dupRanks;                  // duplicated ranks, strictly increasing
  std::vector<std::pair<int, int>> pairs;     // per duplicated rank: (copy holder, original holder)
};

// Check the simple-allocation conditions for an allocation of ranks; returns
// the witness (sharing pairs oriented lower-index agent = copy holder) or
// nullopt. Rank multiplicity above 2 rejects.
std::optional<SimpleWitness> is_simple(const CopyAllocation& rankAlloc, int n, int m);

// Convert a simple allocation of ranks to an allocation of original goods
// with at most one extra copy per good: a picking pass over ranks for the
// original holders, then one pick per duplicated rank for the copy holders
// (in increasing rank order, most valuable good not already picked in this
// second round and not in the picker's own first-round bundle). Throws
// std::logic_error if any agent would end below their rank-bundle value.
CopyAllocation from_ordered_simple(const OrderedInstance& ord, const CopyAllocation& rankAlloc,
                                   const SimpleWitness& witness);

}  // namespace mmscopies
