// SPDX-License-Identifier: MIT
//
// Threshold-driven reductions on ordered instances. Each rule hands one or
// more agents a bundle worth at least alpha times their share and removes
// those agents and goods; one rule family never duplicates, the other two
// buy extra removals with a single duplicated good. Rank indices are always
// relative to the CURRENT (shrunken) instance; the recorded trace translates
// everything back to the ranks of the instance the state was built from.
//
// Rules on a current instance with n agents and m goods (0-indexed ranks,
// thresholds alpha * share):
//   window rule, level k (k+1 goods):  K = ranks [k(n-1), nk]; some agent
//     values K at threshold -> lowest such agent takes K.
//   pair rule: requires the level-1 window rule inapplicable. If some agent i
//     values {0, n} at threshold, i takes it; if additionally another agent j
//     values {0, n} at threshold (j's own values), rank 0 is duplicated and
//     j takes {0, n-1}.
//   triple rule: requires window levels 0 and 1 inapplicable and
//     alpha <= 4/5. Three distinct agents value {0, n}, {1, n+1}, {0, n+2}
//     respectively at threshold (lexicographically first such triple); rank 0
//     is duplicated once and all three bundles are awarded.

#pragma once

#include <vector>

#include "mmscopies/core.hpp"

namespace mmscopies {

enum class ReductionRule { Window, Pair, Triple };

struct ReductionStep {
  ReductionRule rule;
  int k = -1;                                    // window level; -1 for the other rules
  std::vector<int> removedAgents;                // base-instance agent indices
  std::vector<std::vector<int>> awardedBundles;  // base-instance ranks, aligned with removedAgents
  std::vector<int> copiesIntroduced;             // base-instance ranks duplicated by this step
};

struct ReductionState {
  Instance current;                 // remaining ordered instance (ranks renumbered)
  std::vector<Rational> targets;    // per current agent: their share in the base instance
  std::vector<int> agentMap;        // current agent index -> base agent index
  std::vector<int> goodMap;         // current rank -> base rank
  std::vector<ReductionStep> steps;
};

// Start a reduction over an ordered additive instance; shares[i] is agent i's
// maximin share (1 after normalization).
ReductionState make_reduction_state(const Instance& ordered, const std::vector<Rational>& shares);

// True iff the level-k window rule could fire right now.
bool window_rule_applicable(const ReductionState& state, const Rational& alpha, int k);

// Apply one rule if possible; return whether anything happened.
bool try_window_rule(ReductionState& state, const Rational& alpha, int k);
bool try_pair_rule(ReductionState& state, const Rational& alpha);
bool try_triple_rule(ReductionState& state, const Rational& alpha);

// Fixed points: window rules alone (restarting from level 0 after each hit);
// then alternating with the pair rule / the triple rule.
void window_reduce(ReductionState& state, const Rational& alpha);
void pair_reduce(ReductionState& state, const Rational& alpha);
void triple_reduce(ReductionState& state, const Rational& alpha);

}  // namespace mmscopies
