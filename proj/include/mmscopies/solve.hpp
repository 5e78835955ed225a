// SPDX-License-Identifier: MIT
//
// Allocation algorithms for goods, all built around bounded duplication:
//
//  * bagfill_with_copies — fill one bag at a time from an insertion plan;
//    whenever a remaining agent values the bag at their target, the bag is
//    awarded and a fresh copy of the good that closed it seeds the next bag.
//  * match_n_fill — hand out qualifying singletons, try to match the other
//    agents to one agent's maximin partition, and on a matching failure drop
//    one bundle of an inclusion-minimal unmatchable bundle set, match the
//    rest, and serve the leftover agents by bag filling. At most n-2 copies.
//  * bagfill_round_robin — deal goods round-robin into open bags, award bags
//    as they reach an alpha-share, and finish unawarded bags by injecting one
//    copied top rank each.
//  * reduction pipelines (alpha caps 6/7 and 4/5) — normalize, order, reduce,
//    round-robin the remainder, merge, and convert back to original goods
//    through the simple-allocation picking passes.
//  * mms_via_one_out_of_d — trade approximation for copies using a relaxed
//    1-out-of-d allocator twice and keeping the cheapest bundles.
//  * randomized_monotone — draw each agent's bundle uniformly from their own
//    maximin partition and accept draws with few duplicates.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmscopies/core.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/ordered.hpp"
#include "mmscopies/reduce.hpp"

namespace mmscopies {

// --- bag filling -----------------------------------------------------------

struct InsertionEvent {
  int good = -1;
  bool isCopy = false;  // insert a fresh copy of an already consumed good
};

struct InsertionPlan {
  std::vector<InsertionEvent> events;
  // Optional validated recipients, one per closed bag in closing order; each
  // must qualify when its bag closes. Empty means lowest qualifying index.
  std::vector<int> awardChoices;
};

// Ascending-index plan over all goods, no explicit copies.
InsertionPlan default_plan(int m);
// Plan visiting the goods in the given order.
InsertionPlan plan_from_order(const std::vector<int>& order);

enum class BagFillStatus {
  Ok,
  PreconditionViolated,  // some agent values a single good at their target
  InvariantViolated,     // remaining pool worth less than (remaining agents) x target
  PoolExhausted,         // plan ran out of events with agents still unserved
};

struct BagFillResult {
  BagFillStatus status = BagFillStatus::Ok;
  std::string detail;
  CopyAllocation allocation;     // meaningful when status == Ok
  std::vector<int> closerLog;    // goods whose closer copies seeded a next bag
  int bagsClosed = 0;
  int lastAllocated = -1;        // agent receiving the final bag / leftovers
};

// Targets are per-agent bag thresholds (each agent's share, or alpha times
// it), indexed by instance agent. Additive and k-demand valuations. The pool
// is the whole instance unless `poolGoods` (strictly increasing) narrows it;
// the plan may cover only part of the pool — pool goods it never inserts,
// like the leftovers of an early finish, go to the last-served agent in a
// completion pass. `agentSubset` (strictly increasing) restricts service to
// those agents; null serves everyone. When checkInvariants is set (the
// default), the singleton precondition and the pool-value bound are checked
// at entry and after every closure, and violations come back as structured
// failures instead of bad allocations. Plans with explicit copy events may
// exceed the one-copy-per-good bound by construction; plans without them are
// asserted to respect it.
BagFillResult bagfill_with_copies(const Instance& inst, const std::vector<Rational>& targets,
                                  const InsertionPlan* plan = nullptr,
                                  const std::vector<int>* agentSubset = nullptr,
                                  bool checkInvariants = true,
                                  const std::vector<int>* poolGoods = nullptr);

// --- matching + bag filling ------------------------------------------------

struct MatchNFillResult {
  CopyAllocation allocation;
  std::vector<int> singletonAgents;  // agents served in the singleton stage
  bool matchingWasPerfect = false;   // no copies were needed
  std::vector<int> copiedGoods;      // closer copies made by the bag-fill stage
};

// Full-share allocation with at most n-2 copies, each good copied at most
// once. Shares may be supplied (aligned with agents); otherwise they are
// computed exactly. Every share must be positive.
MatchNFillResult match_n_fill(const Instance& inst, const SearchLimits& limits = {},
                              const std::vector<Rational>* shares = nullptr);

// --- round-robin bag filling ----------------------------------------------

struct RoundRobinResult {
  CopyAllocation allocation;       // per agent of the given instance, over its ranks
  std::vector<int> injectedRanks;  // ranks copied into leftover bags, ascending
  int awardedInDealing = 0;        // bags closed during dealing
  std::vector<std::pair<int, int>> awardOrder;  // (bag index, agent) in award order
  std::vector<std::vector<int>> closedBags;      // bag contents at closing time
};

// The instance must be ordered. thresholds[i] is agent i's award threshold
// (alpha times their share). An irreducibility precondition is checked: for
// every level k with rank nk present, every agent must value rank nk below
// threshold/(k+1); violations throw std::invalid_argument.
RoundRobinResult bagfill_round_robin(const Instance& ordered, const std::vector<Rational>& thresholds);

// --- reduction pipelines ---------------------------------------------------

struct PipelineResult {
  CopyAllocation allocation;         // original agents and goods
  CopyAllocation rankAllocation;     // over ranks of the normalized ordered instance
  SimpleWitness witness;             // for rankAllocation
  ReductionState trace;              // reduction record (normalized ordered agents/ranks)
  NormalizeResult normalization;
  OrderedInstance ordered;           // the normalized instance, ordered
  std::vector<Rational> targets;     // alpha * share per original agent
};

// Guarantee alpha times each share with at most floor(n/2) copies.  Every
// good is allocated: ranks left over once the reductions have served all
// agents go to the most recently served one.  Requires alpha in (0, 6/7].
PipelineResult pipeline_half_copies(const Instance& inst, const Rational& alpha = Rational(6, 7),
                                    const SearchLimits& limits = {});

// Guarantee alpha times each share with at most floor(n/3) copies; leftover
// ranks are handed out as in pipeline_half_copies.  Requires alpha in
// (0, 4/5] and n > 5.
PipelineResult pipeline_third_copies(const Instance& inst, const Rational& alpha = Rational(4, 5),
                                     const SearchLimits& limits = {});

// --- share via relaxed shares ---------------------------------------------

struct OneOutOfDResult {
  CopyAllocation allocation;
  std::vector<int> keptAgents;      // agents who keep their first-round bundle
  std::vector<int> keptGoodsUnion;  // union of kept bundles = the goods that may be copied
  int firstRoundD = 0;              // relaxed partition size used for the first round
  int secondRoundD = 0;             // ... and for the second round
};

// Every agent ends with a full maximin-share bundle when the relaxed
// partition sizes stay within n; copies are confined to the kept bundles.
// Requires 0 < alpha < 1 and floor(n/(1+alpha)) >= n - floor(n/(1+alpha)).
OneOutOfDResult mms_via_one_out_of_d(const Instance& inst, const Rational& alpha,
                                     const SearchLimits& limits = {});

// --- randomized sampling ---------------------------------------------------

struct RandomizedResult {
  bool accepted = false;
  CopyAllocation allocation;  // each agent holds one bundle of their own partition
  std::int64_t iterations = 0;
  int totalExtraCopies = 0;
  int maxPerGoodExtra = 0;
};

// Draw each agent's bundle uniformly from their carried partition, up to
// 3 * m * beta attempts; accept when total duplication stays within
// floor(m * 0.3678794) and per-good duplication within
// floor(3 ln m / ln ln m) (n-1 when m <= 2). The accepted draw is returned
// as-is: coverage is not patched up, so leftover goods stay unallocated.
RandomizedResult randomized_monotone(const Instance& inst, int beta, std::uint64_t seed);

}  // namespace mmscopies
