// SPDX-License-Identifier: MIT
//
// Two variants of the copy-bounded allocation story:
//
//  * chores — agents bear additive costs and want bundles at or below their
//    min-max share. The matching + bag-fill mirror removes (discards) at most
//    n-2 chores instead of copying goods.
//  * k-demand goods — an agent's value for a set is the sum of its k most
//    valuable goods. A modified bag fill awards only a qualifying k-subset
//    containing the good that closed the bag, returns the rest of the bag to
//    the pool, and gets by with at most n-1 extra copies.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmscopies/core.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/solve.hpp"
#include "mmscopies/variants_types.hpp"

namespace mmscopies {

// Sum of the bundle's costs for one agent.
Rational chores_evaluate(const ChoreInstance& inst, int agent, const std::vector<int>& bundle);

// Min-max share over d bundles: the smallest achievable worst-bundle cost,
// with a witness partition. Same caps and environment override as the goods
// search.
MmsResult chores_exact_mms(const ChoreInstance& inst, int agent, int d,
                           const SearchLimits& limits = {});

// Reference enumeration (12 chores / 4 bundles); exists to check the pruned
// search.
MmsResult chores_exact_mms_unpruned(const ChoreInstance& inst, int agent, int d);

struct ChoresMatchNFillResult {
  CopyAllocation allocation;         // pairwise-disjoint bundles, no copies
  std::vector<int> discarded;        // chores removed, strictly increasing
  bool matchingWasPerfect = false;   // nothing was discarded
};

// Match one agent's min-max partition to agents who can bear the bundles;
// when the matching is imperfect, drop the lowest-index bundle of an
// inclusion-minimal unmatchable bundle set, match the rest, and serve the
// leftover agents by growing bags that stay strictly below some remaining
// agent's target — on overflow the triggering chore is discarded and the bag
// goes to the cheapest-feeling agent. Targets may be supplied (aligned with
// agents); otherwise exact min-max shares are computed. Requires
// cost_i(all chores) <= n * target_i for every agent.
ChoresMatchNFillResult match_n_fill_chores(const ChoreInstance& inst,
                                           const SearchLimits& limits = {},
                                           const std::vector<Rational>* targets = nullptr);

struct ChoresAgentReport {
  Rational cost;
  Rational target;
  bool ok = false;  // cost <= target
};

struct ChoresReport {
  std::vector<ChoresAgentReport> agents;
  bool disjoint = false;    // no chore appears in two bundles
  bool coverage = false;    // allocated and discarded chores together are all chores
  bool allOk = false;       // every agent's cost is within target AND structure holds
};

// Recompute everything from the raw allocation; nothing is trusted from the
// solver that produced it.
ChoresReport verify_chores_guarantee(const ChoreInstance& inst, const CopyAllocation& alloc,
                                     const std::vector<int>& discarded,
                                     const std::vector<Rational>& targets);

struct KDemandBagFillResult {
  BagFillStatus status = BagFillStatus::Ok;
  std::string detail;
  CopyAllocation allocation;     // meaningful when status == Ok
  std::vector<int> copiedGoods;  // goods whose copies seeded a bag, in seeding order
  int lastAllocated = -1;        // agent receiving the final award / pool leftovers
};

// Bag fill for k-demand agents. Goods enter the bag from the pool front (the
// given order, ascending ids by default). On inserting g, the lowest-index
// remaining agent whose best g-containing subset of the bag (g plus their
// min(k_i,|B|)-1 most valuable other bag items) reaches their target is
// awarded exactly that subset; the rest of the bag returns to the pool tail
// in bag order, and a fresh copy of g seeds the next bag while agents remain.
// Total extra copies stay at or below n-1. Leftover pool items join the last
// award. Returns PoolExhausted when the pool empties with agents unserved.
KDemandBagFillResult kdemand_bagfill(const Instance& inst, const std::vector<Rational>& targets,
                                     const std::vector<int>* order = nullptr);

}  // namespace mmscopies
