// SPDX-License-Identifier: MIT
//
// Core data model: valuation profiles, allocations that may hand the same
// good to several agents, duplication statistics, and guarantee checking.
// Goods and agents are 0-indexed throughout. A bundle is a strictly
// increasing vector of good indices; the same good may appear in several
// bundles (that is what a "copy" is), but never twice in one bundle.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mmscopies/rational.hpp"

namespace mmscopies {

enum class ValuationKind {
  Additive,        // v(S) = sum of the agent's values over S
  KDemand,         // v(S) = sum of the agent's k largest values in S
  MonotoneOracle,  // v(S) supplied by a callback; partitions may ride along
};

struct Instance {
  ValuationKind kind = ValuationKind::Additive;
  int n = 0;  // agents
  int m = 0;  // goods
  // n rows of m values (Additive, KDemand). Empty for MonotoneOracle.
  std::vector<std::vector<Rational>> values;
  // Per-agent demand cap (KDemand only), size n, each >= 1.
  std::vector<int> demand;
  // MonotoneOracle: set-value callback (agent, sorted bundle) -> value.
  std::function<Rational(int, const std::vector<int>&)> oracle;
  // MonotoneOracle: optional per-agent partition of the goods into n parts,
  // used by samplers that need a maximin certificate for each agent.
  std::vector<std::vector<std::vector<int>>> oraclePartitions;
};

struct CopyAllocation {
  // bundles[i] is agent i's bundle; strictly increasing good indices.
  std::vector<std::vector<int>> bundles;
};

struct CopyStats {
  int totalExtraCopies = 0;            // sum over goods of (holders - 1), held goods only
  int maxPerGoodExtra = 0;             // largest per-good (holders - 1)
  std::vector<int> multiplicity;       // holders per good, size m
};

struct AgentReport {
  Rational value;
  Rational target;
  bool ok = false;
};

struct GuaranteeReport {
  std::vector<AgentReport> agents;
  CopyStats stats;
  bool coverage = false;  // every good held by at least one agent
  bool allOk = false;     // conjunction of per-agent ok flags (coverage is informational)
};

// Value of `bundle` (strictly increasing good indices) for `agent`.
Rational evaluate(const Instance& inst, int agent, const std::vector<int>& bundle);

// Throws std::invalid_argument unless every bundle is a strictly increasing
// vector of good indices in [0, m) and there are exactly n bundles.
void validate_allocation_shape(const CopyAllocation& alloc, int n, int m);

// Duplication statistics for an allocation over m goods.
CopyStats copy_stats(const CopyAllocation& alloc, int m);

// Per-agent value-vs-target report plus duplication stats and coverage.
GuaranteeReport verify_guarantee(const Instance& inst, const CopyAllocation& alloc,
                                 const std::vector<Rational>& targets);

// --- small shared helpers -------------------------------------------------

// True iff strictly increasing.
bool is_sorted_unique(const std::vector<int>& xs);

// Sorted union / difference of strictly increasing vectors.
std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b);
std::vector<int> sorted_difference(const std::vector<int>& a, const std::vector<int>& b);

// {0, 1, ..., m-1}.
std::vector<int> all_goods(int m);

// Deterministic RNG wrapper: identical streams on every platform (the
// standard distributions are not pinned by the standard, so we draw bounded
// integers by rejection ourselves).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next();
  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  // Uniform in [lo, hi] inclusive.
  int range(int lo, int hi);
  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& xs) {
    for (std::size_t i = xs.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(xs[i - 1], xs[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace mmscopies
