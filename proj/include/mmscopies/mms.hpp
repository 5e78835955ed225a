// SPDX-License-Identifier: MIT
//
// Exact maximin-share computation and a few exhaustive searches built on it.
// Two independent implementations are provided: a branch-and-bound search
// meant for real use, and a deliberately naive full enumeration kept as a
// cross-check. Both are exact; all arithmetic is rational.

#pragma once

#include <optional>
#include <vector>

#include "mmscopies/core.hpp"

namespace mmscopies {

struct SearchLimits {
  int maxGoods = 16;    // hard cap on goods considered by exact searches
  int maxBundles = 5;   // hard cap on partition size
};

struct MmsResult {
  Rational value;                            // max over d-partitions of the min bundle value
  std::vector<std::vector<int>> partition;   // a witness partition, d bundles covering the goods
};

// Maximin share of `agent` over d bundles, by branch-and-bound.
// `goodsSubset` (strictly increasing) restricts the search to those goods;
// null means all goods. MonotoneOracle instances are rejected: exact search
// over black-box set functions is out of scope, callers must bring
// partitions. The MMS_COPIES_SIZE_CAP environment variable, when set to an
// integer, overrides limits.maxGoods. Exceeding either cap throws.
MmsResult exact_mms(const Instance& inst, int agent, int d, const SearchLimits& limits = {},
                    const std::vector<int>* goodsSubset = nullptr);

// Reference implementation: enumerate every assignment of goods to bundles.
// Intentionally tiny caps (12 goods, 4 bundles) — this exists to check the
// pruned search, not to be used.
MmsResult exact_mms_unpruned(const Instance& inst, int agent, int d,
                             const std::vector<int>* goodsSubset = nullptr);

struct NormalizeResult {
  Instance instance;            // agents with zero maximin share removed, values scaled so each kept agent's share is 1
  std::vector<Rational> mu;     // original maximin shares of the kept agents
  std::vector<int> agentMap;    // kept-agent index -> original agent index
  std::vector<int> droppedAgents;  // original indices of removed (zero-share) agents
};

// Scale every kept agent's values by 1/share. Additive and KDemand only.
NormalizeResult normalize(const Instance& inst, const SearchLimits& limits = {});

// Exhaustive search for a copy-free allocation of all goods among the n
// agents giving each agent i value >= targets[i]. Goods left over once all
// targets are met are appended to the agent whose bundle value is currently
// lowest (lowest index on ties). Returns nullopt when no such allocation
// exists. Additive and KDemand only.
std::optional<CopyAllocation> one_out_of_d_alloc(const Instance& inst,
                                                 const std::vector<Rational>& targets,
                                                 const SearchLimits& limits = {});

// Test helper: true iff every after-agent's maximin share (over the after
// instance, d = its agent count) is at least the corresponding before-agent's
// share (over the before instance, d = its agent count).
bool check_valid_reduction(const Instance& before, const Instance& after,
                           const std::vector<int>& afterToBeforeAgent,
                           const SearchLimits& limits = {});

}  // namespace mmscopies
