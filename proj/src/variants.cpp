// SPDX-License-Identifier: MIT

#include "mmscopies/variants.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "mmscopies/matching.hpp"

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int effective_goods_cap(const SearchLimits& limits) {
  if (const char* s = std::getenv("MMS_COPIES_SIZE_CAP")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return limits.maxGoods;
}

void check_chore_shape(const ChoreInstance& inst) {
  check(inst.n >= 0 && inst.m >= 0, "chores: negative sizes");
  check(static_cast<int>(inst.costs.size()) == inst.n, "chores: cost row count mismatch");
  for (const auto& row : inst.costs) {
    check(static_cast<int>(row.size()) == inst.m, "chores: cost row length mismatch");
    for (const Rational& c : row) check(c.sign() >= 0, "chores: negative cost");
  }
}

void insert_sorted(std::vector<int>& xs, int x) {
  xs.insert(std::upper_bound(xs.begin(), xs.end(), x), x);
}

// ---------------------------------------------------------------------------
// Min-max branch-and-bound on integer-scaled costs.
// ---------------------------------------------------------------------------

struct ChoresScaled {
  std::vector<std::int64_t> weights;  // descending
  std::vector<int> chores;            // original ids, same order
  std::int64_t scale = 1;
};

ChoresScaled scale_costs(const ChoreInstance& inst, int agent) {
  using Wide = __int128;
  Wide lcm = 1;
  for (int g = 0; g < inst.m; ++g) {
    std::int64_t d = inst.costs[static_cast<std::size_t>(agent)][static_cast<std::size_t>(g)].den();
    Wide gg = std::gcd(static_cast<std::int64_t>(lcm % d), d);
    lcm = lcm / (gg == 0 ? d : gg) * d;
    if (lcm > Wide(INT64_MAX)) throw OverflowError("chores_exact_mms: cost denominators too fine");
  }
  ChoresScaled out;
  out.scale = static_cast<std::int64_t>(lcm);
  std::vector<std::pair<std::int64_t, int>> items;
  for (int g = 0; g < inst.m; ++g) {
    const Rational& c = inst.costs[static_cast<std::size_t>(agent)][static_cast<std::size_t>(g)];
    Wide w = Wide(c.num()) * (out.scale / c.den());
    if (w > Wide(INT64_MAX)) throw OverflowError("chores_exact_mms: scaled cost overflow");
    items.emplace_back(static_cast<std::int64_t>(w), g);
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [w, g] : items) {
    out.weights.push_back(w);
    out.chores.push_back(g);
  }
  return out;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

class ChoresMinMaxSearch {
 public:
  ChoresMinMaxSearch(std::vector<std::int64_t> weights, int d)
      : w_(std::move(weights)), d_(d), sums_(static_cast<std::size_t>(d), 0),
        assign_(w_.size(), 0), bestAssign_(w_.size(), 0) {
    for (std::int64_t x : w_) total_ += x;
    std::int64_t largest = w_.empty() ? 0 : w_.front();
    globalLb_ = std::max(largest, d_ > 0 ? ceil_div(total_, d_) : total_);
    greedy_incumbent();
  }

  std::int64_t best_value() const { return best_; }
  const std::vector<int>& best_assignment() const { return bestAssign_; }

  void run() {
    if (best_ <= globalLb_) return;  // greedy already optimal
    dfs(0, 0);
  }

 private:
  void greedy_incumbent() {
    std::vector<std::int64_t> sums(static_cast<std::size_t>(d_), 0);
    for (std::size_t i = 0; i < w_.size(); ++i) {
      std::size_t argmin = 0;
      for (std::size_t b = 1; b < sums.size(); ++b)
        if (sums[b] < sums[argmin]) argmin = b;
      sums[argmin] += w_[i];
      bestAssign_[i] = static_cast<int>(argmin);
    }
    best_ = *std::max_element(sums.begin(), sums.end());
  }

  void dfs(std::size_t idx, std::int64_t curMax) {
    if (best_ <= globalLb_) return;
    if (std::max(curMax, globalLb_) >= best_) return;  // cannot strictly improve
    if (idx == w_.size()) {
      if (curMax < best_) {
        best_ = curMax;
        bestAssign_ = assign_;
      }
      return;
    }
    std::vector<std::int64_t> tried;
    tried.reserve(static_cast<std::size_t>(d_));
    for (int b = 0; b < d_; ++b) {
      std::int64_t s = sums_[static_cast<std::size_t>(b)];
      if (std::find(tried.begin(), tried.end(), s) != tried.end()) continue;  // same-sum bundles are interchangeable
      tried.push_back(s);
      sums_[static_cast<std::size_t>(b)] = s + w_[idx];
      assign_[idx] = b;
      dfs(idx + 1, std::max(curMax, s + w_[idx]));
      sums_[static_cast<std::size_t>(b)] = s;
      if (best_ <= globalLb_) return;
    }
  }

  std::vector<std::int64_t> w_;
  int d_;
  std::vector<std::int64_t> sums_;
  std::vector<int> assign_;
  std::vector<int> bestAssign_;
  std::int64_t total_ = 0;
  std::int64_t globalLb_ = 0;
  std::int64_t best_ = 0;
};

// ---------------------------------------------------------------------------
// Bag filling with removals: serve the leftover agents after the chores
// matching stage, discarding the chore that would overflow every bag.
// ---------------------------------------------------------------------------

void bagfill_and_remove(const ChoreInstance& inst, const std::vector<Rational>& targets,
                        std::vector<int> agents, const std::vector<int>& pool,
                        CopyAllocation& allocation, std::vector<int>& discarded) {
  std::vector<int> bag;
  auto award_to_cheapest = [&](const std::vector<int>& bundle) {
    std::size_t argmin = 0;
    Rational bestCost = chores_evaluate(inst, agents[0], bundle);
    for (std::size_t a = 1; a < agents.size(); ++a) {
      Rational c = chores_evaluate(inst, agents[a], bundle);
      if (c < bestCost) {
        bestCost = c;
        argmin = a;
      }
    }
    const int winner = agents[argmin];
    allocation.bundles[static_cast<std::size_t>(winner)] = bundle;
    agents.erase(agents.begin() + static_cast<std::ptrdiff_t>(argmin));
  };

  for (std::size_t idx = 0; idx < pool.size(); ++idx) {
    const int chore = pool[idx];
    if (agents.size() == 1) {
      // A single remaining agent absorbs the bag and everything still unseen.
      std::vector<int> rest(pool.begin() + static_cast<std::ptrdiff_t>(idx), pool.end());
      std::sort(rest.begin(), rest.end());
      allocation.bundles[static_cast<std::size_t>(agents[0])] = sorted_union(bag, rest);
      return;
    }
    std::vector<int> grown = bag;
    insert_sorted(grown, chore);
    bool fits = false;
    for (int i : agents)
      if (chores_evaluate(inst, i, grown) < targets[static_cast<std::size_t>(i)]) {
        fits = true;
        break;
      }
    if (fits) {
      bag = std::move(grown);
    } else {
      // The triggering chore is removed; the bag as it stood goes to whoever
      // minds it least.
      discarded.push_back(chore);
      award_to_cheapest(bag);
      bag.clear();
    }
  }
  if (!agents.empty()) award_to_cheapest(bag);
  // Any agents still unserved keep empty bundles (zero cost).
}

}  // namespace

Rational chores_evaluate(const ChoreInstance& inst, int agent, const std::vector<int>& bundle) {
  check(agent >= 0 && agent < inst.n, "chores_evaluate: agent out of range");
  Rational total(0);
  for (int g : bundle) {
    check(g >= 0 && g < inst.m, "chores_evaluate: chore out of range");
    total += inst.costs[static_cast<std::size_t>(agent)][static_cast<std::size_t>(g)];
  }
  return total;
}

MmsResult chores_exact_mms(const ChoreInstance& inst, int agent, int d,
                           const SearchLimits& limits) {
  check_chore_shape(inst);
  check(agent >= 0 && agent < inst.n, "chores_exact_mms: agent out of range");
  check(d >= 1, "chores_exact_mms: need at least one bundle");
  check(inst.m <= effective_goods_cap(limits),
        "chores_exact_mms: chores cap exceeded (" + std::to_string(inst.m) + ")");
  check(d <= limits.maxBundles,
        "chores_exact_mms: bundle cap exceeded (" + std::to_string(d) + ")");
  ChoresScaled scaled = scale_costs(inst, agent);
  ChoresMinMaxSearch search(scaled.weights, d);
  search.run();
  MmsResult result;
  result.value = Rational(search.best_value(), scaled.scale);
  result.partition.assign(static_cast<std::size_t>(d), {});
  const auto& assign = search.best_assignment();
  for (std::size_t i = 0; i < assign.size(); ++i)
    result.partition[static_cast<std::size_t>(assign[i])].push_back(scaled.chores[i]);
  for (auto& b : result.partition) std::sort(b.begin(), b.end());
  return result;
}

MmsResult chores_exact_mms_unpruned(const ChoreInstance& inst, int agent, int d) {
  check_chore_shape(inst);
  check(agent >= 0 && agent < inst.n, "chores_exact_mms_unpruned: agent out of range");
  check(d >= 1, "chores_exact_mms_unpruned: need at least one bundle");
  check(inst.m <= 12, "chores_exact_mms_unpruned: reference search capped at 12 chores");
  check(d <= 4, "chores_exact_mms_unpruned: reference search capped at 4 bundles");

  std::vector<int> assign(static_cast<std::size_t>(inst.m), 0);
  MmsResult best;
  bool haveBest = false;
  // Odometer over all d^m assignments.
  while (true) {
    std::vector<std::vector<int>> bundles(static_cast<std::size_t>(d));
    for (int g = 0; g < inst.m; ++g)
      bundles[static_cast<std::size_t>(assign[static_cast<std::size_t>(g)])].push_back(g);
    Rational worst(0);
    for (const auto& b : bundles) {
      Rational c = chores_evaluate(inst, agent, b);
      if (c > worst) worst = c;
    }
    if (!haveBest || worst < best.value) {
      best.value = worst;
      best.partition = bundles;
      haveBest = true;
    }
    std::size_t i = 0;
    while (i < assign.size()) {
      if (++assign[i] < d) break;
      assign[i] = 0;
      ++i;
    }
    if (i == assign.size()) break;
  }
  if (best.partition.empty()) best.partition.assign(static_cast<std::size_t>(d), {});
  return best;
}

ChoresMatchNFillResult match_n_fill_chores(const ChoreInstance& inst, const SearchLimits& limits,
                                           const std::vector<Rational>* targetsPtr) {
  check_chore_shape(inst);
  check(inst.n >= 1, "match_n_fill_chores: need at least one agent");
  std::vector<Rational> targets;
  if (targetsPtr != nullptr) {
    check(static_cast<int>(targetsPtr->size()) == inst.n,
          "match_n_fill_chores: targets must align with the agents");
    targets = *targetsPtr;
  } else {
    targets.reserve(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i)
      targets.push_back(chores_exact_mms(inst, i, inst.n, limits).value);
  }
  std::vector<int> everything = all_goods(inst.m);
  for (int i = 0; i < inst.n; ++i)
    check(chores_evaluate(inst, i, everything) <= Rational(inst.n) * targets[static_cast<std::size_t>(i)],
          "match_n_fill_chores: total cost exceeds n times the target for some agent");

  ChoresMatchNFillResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});

  const int d = inst.n;
  MmsResult pivotPartition = chores_exact_mms(inst, 0, d, limits);
  const std::vector<std::vector<int>>& P = pivotPartition.partition;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
  for (int b = 0; b < d; ++b)
    for (int i = 0; i < inst.n; ++i)
      if (chores_evaluate(inst, i, P[static_cast<std::size_t>(b)]) <=
          targets[static_cast<std::size_t>(i)])
        adj[static_cast<std::size_t>(b)].push_back(i);

  std::vector<int> matched = max_bipartite_matching(adj, inst.n);
  if (std::none_of(matched.begin(), matched.end(), [](int x) { return x < 0; })) {
    for (int b = 0; b < d; ++b)
      res.allocation.bundles[static_cast<std::size_t>(matched[static_cast<std::size_t>(b)])] =
          P[static_cast<std::size_t>(b)];
    res.matchingWasPerfect = true;
    return res;
  }

  std::vector<int> violating = minimal_violating_set(adj, inst.n);
  if (static_cast<int>(violating.size()) < 2)
    throw std::logic_error("unmatchable bundle set has no droppable bundle");
  std::vector<int> neighborhood;
  for (int b : violating)
    neighborhood = sorted_union(neighborhood, adj[static_cast<std::size_t>(b)]);
  if (neighborhood.size() != violating.size() - 1)
    throw std::logic_error("unmatchable bundle set is short by more than one agent");

  std::vector<int> kept(violating.begin() + 1, violating.end());
  std::vector<std::vector<int>> keptAdj;
  keptAdj.reserve(kept.size());
  for (int b : kept) keptAdj.push_back(adj[static_cast<std::size_t>(b)]);
  std::vector<int> keptMatch = max_bipartite_matching(keptAdj, inst.n);

  std::vector<char> served(static_cast<std::size_t>(inst.n), 0);
  std::vector<int> awardedChores;
  for (std::size_t idx = 0; idx < kept.size(); ++idx) {
    if (keptMatch[idx] < 0)
      throw std::logic_error("dropping one bundle did not make the rest matchable");
    const int agent = keptMatch[idx];
    res.allocation.bundles[static_cast<std::size_t>(agent)] = P[static_cast<std::size_t>(kept[idx])];
    served[static_cast<std::size_t>(agent)] = 1;
    awardedChores = sorted_union(awardedChores, P[static_cast<std::size_t>(kept[idx])]);
  }

  std::vector<int> tailAgents;
  for (int i = 0; i < inst.n; ++i)
    if (!served[static_cast<std::size_t>(i)]) tailAgents.push_back(i);
  std::vector<int> pool = sorted_difference(everything, awardedChores);

  bagfill_and_remove(inst, targets, tailAgents, pool, res.allocation, res.discarded);
  std::sort(res.discarded.begin(), res.discarded.end());
  return res;
}

ChoresReport verify_chores_guarantee(const ChoreInstance& inst, const CopyAllocation& alloc,
                                     const std::vector<int>& discarded,
                                     const std::vector<Rational>& targets) {
  check_chore_shape(inst);
  validate_allocation_shape(alloc, inst.n, inst.m);
  check(is_sorted_unique(discarded), "verify_chores_guarantee: discarded list not strictly increasing");
  for (int g : discarded)
    check(g >= 0 && g < inst.m, "verify_chores_guarantee: discarded chore out of range");
  check(static_cast<int>(targets.size()) == inst.n,
        "verify_chores_guarantee: targets must align with the agents");

  ChoresReport report;
  std::vector<int> occurrences(static_cast<std::size_t>(inst.m), 0);
  for (const auto& bundle : alloc.bundles)
    for (int g : bundle) ++occurrences[static_cast<std::size_t>(g)];
  for (int g : discarded) ++occurrences[static_cast<std::size_t>(g)];
  report.disjoint = std::all_of(occurrences.begin(), occurrences.end(),
                                [](int c) { return c <= 1; });
  report.coverage = std::all_of(occurrences.begin(), occurrences.end(),
                                [](int c) { return c == 1; });
  bool agentsOk = true;
  for (int i = 0; i < inst.n; ++i) {
    ChoresAgentReport ar;
    ar.cost = chores_evaluate(inst, i, alloc.bundles[static_cast<std::size_t>(i)]);
    ar.target = targets[static_cast<std::size_t>(i)];
    ar.ok = ar.cost <= ar.target;
    agentsOk = agentsOk && ar.ok;
    report.agents.push_back(ar);
  }
  report.allOk = agentsOk && report.disjoint && report.coverage;
  return report;
}

KDemandBagFillResult kdemand_bagfill(const Instance& inst, const std::vector<Rational>& targets,
                                     const std::vector<int>* order) {
  check(inst.kind == ValuationKind::KDemand, "kdemand_bagfill: k-demand valuations required");
  check(inst.n >= 1, "kdemand_bagfill: need at least one agent");
  check(static_cast<int>(targets.size()) == inst.n,
        "kdemand_bagfill: targets must align with the agents");
  check(static_cast<int>(inst.demand.size()) == inst.n, "kdemand_bagfill: demand per agent required");
  for (int k : inst.demand) check(k >= 1, "kdemand_bagfill: demands must be positive");

  std::vector<int> feed;
  if (order != nullptr) {
    feed = *order;
    std::vector<int> sorted = feed;
    std::sort(sorted.begin(), sorted.end());
    check(sorted == all_goods(inst.m), "kdemand_bagfill: order must visit every good exactly once");
  } else {
    feed = all_goods(inst.m);
  }

  KDemandBagFillResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  std::deque<int> pool(feed.begin(), feed.end());
  std::vector<int> remaining = all_goods(inst.n);
  std::vector<int> bag;  // arrival order, distinct ids

  // Best qualifying subset for agent i once `trigger` has entered the bag:
  // the trigger plus their min(k_i, |bag|) - 1 most valuable other bag items.
  auto forced_subset = [&](int agent, int trigger) {
    std::vector<int> others;
    others.reserve(bag.size());
    for (int g : bag)
      if (g != trigger) others.push_back(g);
    std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
      const Rational& va = inst.values[static_cast<std::size_t>(agent)][static_cast<std::size_t>(a)];
      const Rational& vb = inst.values[static_cast<std::size_t>(agent)][static_cast<std::size_t>(b)];
      if (va != vb) return vb < va;
      return a < b;
    });
    const std::size_t want = static_cast<std::size_t>(
        std::min<std::int64_t>(inst.demand[static_cast<std::size_t>(agent)],
                               static_cast<std::int64_t>(bag.size())));
    std::vector<int> subset{trigger};
    for (std::size_t idx = 0; idx + 1 < want && idx < others.size(); ++idx)
      subset.push_back(others[idx]);
    return subset;
  };

  while (!remaining.empty()) {
    if (pool.empty()) {
      res.status = BagFillStatus::PoolExhausted;
      std::ostringstream os;
      os << "pool ran dry with " << remaining.size() << " agent(s) still unserved";
      res.detail = os.str();
      return res;
    }
    const int g = pool.front();
    pool.pop_front();
    if (std::find(bag.begin(), bag.end(), g) != bag.end())
      continue;  // a second copy of a good adds nothing to this bag
    bag.push_back(g);

    int winner = -1;
    std::vector<int> subset;
    for (int i : remaining) {
      std::vector<int> candidate = forced_subset(i, g);
      Rational value(0);
      for (int x : candidate)
        value += inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
      if (value >= targets[static_cast<std::size_t>(i)]) {
        winner = i;
        subset = std::move(candidate);
        break;
      }
    }
    if (winner < 0) continue;

    std::vector<int> bundle = subset;
    std::sort(bundle.begin(), bundle.end());
    res.allocation.bundles[static_cast<std::size_t>(winner)] = bundle;
    res.lastAllocated = winner;
    remaining.erase(std::find(remaining.begin(), remaining.end(), winner));

    // Unawarded bag items return to the pool tail in bag order.
    for (int x : bag)
      if (!std::binary_search(bundle.begin(), bundle.end(), x)) pool.push_back(x);
    bag.clear();
    if (!remaining.empty()) {
      res.copiedGoods.push_back(g);
      bag.push_back(g);
    }
  }

  if (!pool.empty()) {
    std::vector<int> leftovers(pool.begin(), pool.end());
    std::sort(leftovers.begin(), leftovers.end());
    leftovers.erase(std::unique(leftovers.begin(), leftovers.end()), leftovers.end());
    std::vector<int>& last = res.allocation.bundles[static_cast<std::size_t>(res.lastAllocated)];
    last = sorted_union(last, leftovers);
  }

  res.status = BagFillStatus::Ok;
  return res;
}

}  // namespace mmscopies
