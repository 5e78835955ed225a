// SPDX-License-Identifier: MIT

#include "mmscopies/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Rational evaluate(const Instance& inst, int agent, const std::vector<int>& bundle) {
  check(agent >= 0 && agent < inst.n, "evaluate: agent out of range");
  switch (inst.kind) {
    case ValuationKind::Additive: {
      Rational sum;
      for (int g : bundle) {
        check(g >= 0 && g < inst.m, "evaluate: good out of range");
        sum += inst.values[agent][g];
      }
      return sum;
    }
    case ValuationKind::KDemand: {
      std::vector<Rational> vals;
      vals.reserve(bundle.size());
      for (int g : bundle) {
        check(g >= 0 && g < inst.m, "evaluate: good out of range");
        vals.push_back(inst.values[agent][g]);
      }
      std::sort(vals.begin(), vals.end(), [](const Rational& a, const Rational& b) { return b < a; });
      int k = inst.demand[agent];
      check(k >= 1, "evaluate: demand must be >= 1");
      Rational sum;
      for (std::size_t i = 0; i < vals.size() && static_cast<int>(i) < k; ++i) sum += vals[i];
      return sum;
    }
    case ValuationKind::MonotoneOracle:
      check(static_cast<bool>(inst.oracle), "evaluate: missing oracle");
      return inst.oracle(agent, bundle);
  }
  throw std::logic_error("evaluate: unknown valuation kind");
}

bool is_sorted_unique(const std::vector<int>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i - 1] >= xs[i]) return false;
  return true;
}

void validate_allocation_shape(const CopyAllocation& alloc, int n, int m) {
  check(static_cast<int>(alloc.bundles.size()) == n, "allocation: wrong number of bundles");
  for (const auto& b : alloc.bundles) {
    check(is_sorted_unique(b), "allocation: bundle not strictly increasing");
    for (int g : b) check(g >= 0 && g < m, "allocation: good out of range");
  }
}

CopyStats copy_stats(const CopyAllocation& alloc, int m) {
  CopyStats stats;
  stats.multiplicity.assign(m, 0);
  for (const auto& b : alloc.bundles) {
    check(is_sorted_unique(b), "copy_stats: bundle not strictly increasing");
    for (int g : b) {
      check(g >= 0 && g < m, "copy_stats: good out of range");
      ++stats.multiplicity[g];
    }
  }
  for (int g = 0; g < m; ++g) {
    int extra = stats.multiplicity[g] > 0 ? stats.multiplicity[g] - 1 : 0;
    stats.totalExtraCopies += extra;
    stats.maxPerGoodExtra = std::max(stats.maxPerGoodExtra, extra);
  }
  return stats;
}

GuaranteeReport verify_guarantee(const Instance& inst, const CopyAllocation& alloc,
                                 const std::vector<Rational>& targets) {
  validate_allocation_shape(alloc, inst.n, inst.m);
  check(static_cast<int>(targets.size()) == inst.n, "verify_guarantee: wrong target count");
  GuaranteeReport report;
  report.stats = copy_stats(alloc, inst.m);
  report.coverage = true;
  for (int g = 0; g < inst.m; ++g)
    if (report.stats.multiplicity[g] == 0) report.coverage = false;
  report.allOk = true;
  for (int i = 0; i < inst.n; ++i) {
    AgentReport ar;
    ar.value = evaluate(inst, i, alloc.bundles[i]);
    ar.target = targets[i];
    ar.ok = ar.value >= ar.target;
    if (!ar.ok) report.allOk = false;
    report.agents.push_back(ar);
  }
  return report;
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> sorted_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<int> all_goods(int m) {
  std::vector<int> out(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) out[static_cast<std::size_t>(g)] = g;
  return out;
}

std::uint64_t Rng::next() {
  // splitmix64; fixed algorithm so streams are reproducible everywhere.
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
  // Rejection sampling to avoid modulo bias.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

int Rng::range(int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("Rng::range: empty range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace mmscopies
