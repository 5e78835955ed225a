// SPDX-License-Identifier: MIT
//
// Instance generators and hand-built fixtures: seeded random profiles on a
// coarse value grid, the lattice-cube family of monotone valuations with
// known maximin partitions, a fully worked 4-agent example with a scripted
// run, a pair of small profiles whose virtual allocations are rejected by the
// simple-allocation test, and a 2-demand family that defeats plain bag
// filling.

#pragma once

#include <utility>
#include <vector>

#include "mmscopies/core.hpp"
#include "mmscopies/variants_types.hpp"

namespace mmscopies {

// Additive profile; every value is num/den with den <= maxDen, in (0, 1].
Instance gen_random_additive(int n, int m, std::uint64_t seed, int maxDen = 10);

// Same grid, k-demand valuations (uniform per-agent demand k >= 1).
Instance gen_random_kdemand(int n, int m, int k, std::uint64_t seed, int maxDen = 10);

// Positive additive chore costs on the same grid.
ChoreInstance gen_random_chores(int n, int m, std::uint64_t seed, int maxDen = 10);

// n agents, n^n goods (points of {0..n-1}^n). Agent i partitions the goods
// into n classes by coordinate i; a bundle is worth 1 exactly when it
// contains a full class, else 0. Each agent's class partition is carried as
// the agent's maximin certificate. 2 <= n <= 5.
Instance gen_cube(int n);

// Scripted 12-good, 4-agent worked example. All four maximin shares equal 1.
Instance worked_example_instance();

struct WorkedExampleScript {
  // Insertion events: good index, and whether the event inserts a fresh copy
  // of an already consumed good.
  std::vector<std::pair<int, bool>> events;
  // Validated per-closed-bag recipients.
  std::vector<int> awardChoices;
  // Expected results, for tests: bundles per agent, and the goods whose
  // closer-seeded copies get logged.
  std::vector<std::vector<int>> expectedBundles;
  std::vector<int> expectedCloserLog;
};
WorkedExampleScript worked_example_script();

// Two 3-good, 3-agent profiles paired with allocations over ranks that
// violate the simple-allocation conditions in different ways. The profiles
// motivate the rank bundles (agents rank the goods differently); run them
// through to_ordered when actual rank maps are needed.
struct NonSimpleFixture {
  Instance instance;               // additive profile, rows not necessarily sorted
  CopyAllocation orderedBundles;   // bundles of ranks
};
std::pair<NonSimpleFixture, NonSimpleFixture> picking_sequence_counterexamples();

// Identical 2-demand agents, m = 2n goods:
//   goods 0..n-2        value (1-eps)/2 each,
//   goods n-1..2n-3     value (1+eps)/2 each,
//   goods 2n-2, 2n-1    value 1/2 each.
// The maximin share is exactly 1 (pairs + the two halves), yet the whole
// pool is worth only 1+eps to anyone, so plain bag filling cannot serve n
// agents. n >= 2, 0 < eps < 1.
Instance two_demand_adversarial(int n, const Rational& eps);

// The insertion order the adversarial analysis walks: the low-value goods,
// then the two halves, then the high-value goods.
std::vector<int> two_demand_documented_order(int n);

}  // namespace mmscopies
