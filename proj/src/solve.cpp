// SPDX-License-Identifier: MIT

#include "mmscopies/solve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "mmscopies/matching.hpp"

namespace mmscopies {

namespace {

void insert_sorted(std::vector<int>& xs, int x) {
  xs.insert(std::upper_bound(xs.begin(), xs.end(), x), x);
}

bool contains_sorted(const std::vector<int>& xs, int x) {
  return std::binary_search(xs.begin(), xs.end(), x);
}

std::vector<int> iota_vec(int count) {
  std::vector<int> xs(count);
  std::iota(xs.begin(), xs.end(), 0);
  return xs;
}

}  // namespace

// --- bag filling -----------------------------------------------------------

InsertionPlan default_plan(int m) {
  if (m < 0) throw std::invalid_argument("good count must be nonnegative");
  InsertionPlan plan;
  plan.events.reserve(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) plan.events.push_back({g, false});
  return plan;
}

InsertionPlan plan_from_order(const std::vector<int>& order) {
  InsertionPlan plan;
  plan.events.reserve(order.size());
  for (int g : order) plan.events.push_back({g, false});
  return plan;
}

BagFillResult bagfill_with_copies(const Instance& inst, const std::vector<Rational>& targets,
                                  const InsertionPlan* planPtr,
                                  const std::vector<int>* agentSubset, bool checkInvariants,
                                  const std::vector<int>* poolGoods) {
  if (inst.kind == ValuationKind::MonotoneOracle)
    throw std::invalid_argument("bag filling needs additive or k-demand valuations");
  if (static_cast<int>(targets.size()) != inst.n)
    throw std::invalid_argument("targets must align with the instance agents");

  std::vector<int> agents;
  if (agentSubset != nullptr) {
    agents = *agentSubset;
    if (agents.empty() || !is_sorted_unique(agents) || agents.front() < 0 ||
        agents.back() >= inst.n)
      throw std::invalid_argument(
          "agent subset must be a nonempty strictly increasing list of instance agents");
  } else {
    if (inst.n < 1) throw std::invalid_argument("need at least one agent to serve");
    agents = iota_vec(inst.n);
  }

  std::vector<int> pool;
  if (poolGoods != nullptr) {
    pool = *poolGoods;
    if (!is_sorted_unique(pool) || (!pool.empty() && (pool.front() < 0 || pool.back() >= inst.m)))
      throw std::invalid_argument(
          "pool must be a strictly increasing list of instance goods");
  } else {
    pool = all_goods(inst.m);
  }
  std::vector<char> inPool(static_cast<std::size_t>(inst.m), 0);
  for (int g : pool) inPool[static_cast<std::size_t>(g)] = 1;

  InsertionPlan ownPlan;
  if (planPtr == nullptr) {
    ownPlan = plan_from_order(pool);
    planPtr = &ownPlan;
  }
  const InsertionPlan& plan = *planPtr;

  // Static plan validation: known pool goods, each original inserted at most
  // once.
  std::vector<char> planned(static_cast<std::size_t>(inst.m), 0);
  bool planHasCopies = false;
  for (const InsertionEvent& ev : plan.events) {
    if (ev.good < 0 || ev.good >= inst.m)
      throw std::invalid_argument("plan references a good outside the instance");
    if (!inPool[static_cast<std::size_t>(ev.good)])
      throw std::invalid_argument("plan references a good outside the pool");
    if (ev.isCopy) {
      planHasCopies = true;
    } else {
      if (planned[static_cast<std::size_t>(ev.good)])
        throw std::invalid_argument("plan inserts the same original good twice");
      planned[static_cast<std::size_t>(ev.good)] = 1;
    }
  }

  BagFillResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  std::vector<char> inserted(static_cast<std::size_t>(inst.m), 0);
  std::vector<int> remaining = agents;
  std::vector<int> bag;

  // Pool = originals not yet consumed, plus the open bag.
  auto current_pool = [&]() {
    std::vector<int> waiting;
    for (int g : pool)
      if (!inserted[static_cast<std::size_t>(g)]) waiting.push_back(g);
    return sorted_union(waiting, bag);
  };
  auto pool_value_ok = [&]() {
    std::vector<int> pool = current_pool();
    for (int i : remaining) {
      Rational have = evaluate(inst, i, pool);
      Rational need = targets[static_cast<std::size_t>(i)] *
                      Rational(static_cast<std::int64_t>(remaining.size()));
      if (have < need) {
        res.status = BagFillStatus::InvariantViolated;
        std::ostringstream os;
        os << "agent " << i << " values the remaining pool at " << have.str() << ", below "
           << remaining.size() << " times their target "
           << targets[static_cast<std::size_t>(i)].str();
        res.detail = os.str();
        return false;
      }
    }
    return true;
  };

  if (checkInvariants) {
    for (int i : agents) {
      for (int g : pool) {
        std::vector<int> single{g};
        if (evaluate(inst, i, single) >= targets[static_cast<std::size_t>(i)]) {
          res.status = BagFillStatus::PreconditionViolated;
          std::ostringstream os;
          os << "agent " << i << " values good " << g << " alone at their target";
          res.detail = os.str();
          return res;
        }
      }
    }
    if (!pool_value_ok()) return res;
  }

  for (const InsertionEvent& ev : plan.events) {
    if (remaining.empty()) break;
    const int g = ev.good;
    if (ev.isCopy) {
      if (!inserted[static_cast<std::size_t>(g)])
        throw std::invalid_argument("plan copies a good whose original was never inserted");
    } else {
      inserted[static_cast<std::size_t>(g)] = 1;
    }
    if (contains_sorted(bag, g))
      throw std::invalid_argument("plan would put two copies of one good in the same bag");
    insert_sorted(bag, g);

    int winner = -1;
    for (int i : remaining) {
      if (evaluate(inst, i, bag) >= targets[static_cast<std::size_t>(i)]) {
        winner = i;
        break;
      }
    }
    if (winner < 0) continue;

    if (res.bagsClosed < static_cast<int>(plan.awardChoices.size())) {
      const int chosen = plan.awardChoices[static_cast<std::size_t>(res.bagsClosed)];
      const bool stillThere =
          std::find(remaining.begin(), remaining.end(), chosen) != remaining.end();
      if (!stillThere || chosen < 0 || chosen >= inst.n ||
          evaluate(inst, chosen, bag) < targets[static_cast<std::size_t>(chosen)]) {
        std::ostringstream os;
        os << "award choice " << chosen << " for bag " << res.bagsClosed
           << " does not name a remaining agent who values the bag at their target";
        throw std::invalid_argument(os.str());
      }
      winner = chosen;
    }

    res.allocation.bundles[static_cast<std::size_t>(winner)] = bag;
    remaining.erase(std::find(remaining.begin(), remaining.end(), winner));
    res.lastAllocated = winner;
    ++res.bagsClosed;
    bag.clear();
    if (!remaining.empty()) {
      // The good that closed the bag seeds the next one as a fresh copy.
      res.closerLog.push_back(g);
      bag.push_back(g);
      if (checkInvariants && !pool_value_ok()) return res;
    }
  }

  if (!remaining.empty()) {
    res.status = BagFillStatus::PoolExhausted;
    std::ostringstream os;
    os << "plan ran out of events with " << remaining.size() << " agent(s) still unserved";
    res.detail = os.str();
    return res;
  }

  // Completion pass: pool goods never consumed — either planned past the last
  // closure or absent from the plan — join the final award.
  std::vector<int> leftovers;
  for (int g : pool)
    if (!inserted[static_cast<std::size_t>(g)]) leftovers.push_back(g);
  if (!leftovers.empty()) {
    std::vector<int>& last = res.allocation.bundles[static_cast<std::size_t>(res.lastAllocated)];
    last = sorted_union(last, leftovers);
  }

  if (!planHasCopies) {
    // Without explicit copy events the only duplication source is closer
    // seeding: one copy per non-final closure, never two of one good.
    CopyStats stats = copy_stats(res.allocation, inst.m);
    if (stats.maxPerGoodExtra > 1 ||
        stats.totalExtraCopies > static_cast<int>(agents.size()) - 1)
      throw std::logic_error("bag filling duplicated more than its closers can explain");
  }

  res.status = BagFillStatus::Ok;
  return res;
}

// --- matching + bag filling ------------------------------------------------

MatchNFillResult match_n_fill(const Instance& inst, const SearchLimits& limits,
                              const std::vector<Rational>* sharesPtr) {
  if (inst.kind != ValuationKind::Additive)
    throw std::invalid_argument("matching + bag filling needs additive valuations");
  if (inst.n < 1) throw std::invalid_argument("need at least one agent");

  std::vector<Rational> shares;
  if (sharesPtr != nullptr) {
    if (static_cast<int>(sharesPtr->size()) != inst.n)
      throw std::invalid_argument("shares must align with the instance agents");
    shares = *sharesPtr;
  } else {
    shares.reserve(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i) shares.push_back(exact_mms(inst, i, inst.n, limits).value);
  }
  for (const Rational& s : shares)
    if (!(s > Rational(0))) throw std::invalid_argument("every share must be positive");

  MatchNFillResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  std::vector<int> agents = iota_vec(inst.n);
  std::vector<int> goods = iota_vec(inst.m);

  // Singleton stage: repeatedly award the lexicographically first qualifying
  // (agent, good) pair as a one-good bundle.
  bool awarded = true;
  while (awarded && !agents.empty()) {
    awarded = false;
    for (std::size_t ai = 0; ai < agents.size() && !awarded; ++ai) {
      const int i = agents[ai];
      for (std::size_t gi = 0; gi < goods.size() && !awarded; ++gi) {
        const int g = goods[gi];
        std::vector<int> single{g};
        if (evaluate(inst, i, single) >= shares[static_cast<std::size_t>(i)]) {
          res.allocation.bundles[static_cast<std::size_t>(i)] = {g};
          res.singletonAgents.push_back(i);
          agents.erase(agents.begin() + static_cast<std::ptrdiff_t>(ai));
          goods.erase(goods.begin() + static_cast<std::ptrdiff_t>(gi));
          awarded = true;
        }
      }
    }
  }

  if (agents.empty()) {
    // Everyone got a singleton; park any remaining goods with the last one.
    if (!goods.empty()) {
      const int last = res.singletonAgents.back();
      std::vector<int>& bundle = res.allocation.bundles[static_cast<std::size_t>(last)];
      bundle = sorted_union(bundle, goods);
    }
    res.matchingWasPerfect = true;
    return res;
  }

  // Partition the remaining goods as the lowest remaining agent would to
  // maximize their worst bundle, then match bundles to agents who value them
  // at their share.
  const int d = static_cast<int>(agents.size());
  const int pivot = agents.front();
  MmsResult pivotPartition = exact_mms(inst, pivot, d, limits, &goods);
  const std::vector<std::vector<int>>& P = pivotPartition.partition;

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(d));
  for (int b = 0; b < d; ++b)
    for (int a = 0; a < d; ++a)
      if (evaluate(inst, agents[static_cast<std::size_t>(a)], P[static_cast<std::size_t>(b)]) >=
          shares[static_cast<std::size_t>(agents[static_cast<std::size_t>(a)])])
        adj[static_cast<std::size_t>(b)].push_back(a);

  std::vector<int> matched = max_bipartite_matching(adj, d);
  if (std::none_of(matched.begin(), matched.end(), [](int x) { return x < 0; })) {
    for (int b = 0; b < d; ++b)
      res.allocation.bundles[static_cast<std::size_t>(
          agents[static_cast<std::size_t>(matched[static_cast<std::size_t>(b)])])] =
          P[static_cast<std::size_t>(b)];
    res.matchingWasPerfect = true;
    return res;
  }

  // No perfect matching: find an inclusion-minimal unmatchable bundle set,
  // drop its lowest-index bundle, and match the rest (its neighborhood is one
  // short, so this must succeed).
  std::vector<int> violating = minimal_violating_set(adj, d);
  if (static_cast<int>(violating.size()) < 2)
    throw std::logic_error("unmatchable bundle set has no droppable bundle");
  std::vector<int> neighborhood;
  for (int b : violating) neighborhood = sorted_union(neighborhood, adj[static_cast<std::size_t>(b)]);
  if (neighborhood.size() != violating.size() - 1)
    throw std::logic_error("unmatchable bundle set is short by more than one agent");

  std::vector<int> kept(violating.begin() + 1, violating.end());
  std::vector<std::vector<int>> keptAdj;
  keptAdj.reserve(kept.size());
  for (int b : kept) keptAdj.push_back(adj[static_cast<std::size_t>(b)]);
  std::vector<int> keptMatch = max_bipartite_matching(keptAdj, d);

  std::vector<char> served(static_cast<std::size_t>(inst.n), 0);
  std::vector<int> awardedGoods;
  for (std::size_t idx = 0; idx < kept.size(); ++idx) {
    if (keptMatch[idx] < 0)
      throw std::logic_error("dropping one bundle did not make the rest matchable");
    const int agent = agents[static_cast<std::size_t>(keptMatch[idx])];
    res.allocation.bundles[static_cast<std::size_t>(agent)] =
        P[static_cast<std::size_t>(kept[idx])];
    served[static_cast<std::size_t>(agent)] = 1;
    awardedGoods = sorted_union(awardedGoods, P[static_cast<std::size_t>(kept[idx])]);
  }

  std::vector<int> tailAgents;
  for (int i : agents)
    if (!served[static_cast<std::size_t>(i)]) tailAgents.push_back(i);
  std::vector<int> tailGoods = sorted_difference(goods, awardedGoods);

  InsertionPlan tailPlan = plan_from_order(tailGoods);
  BagFillResult filled =
      bagfill_with_copies(inst, shares, &tailPlan, &tailAgents, true, &tailGoods);
  if (filled.status != BagFillStatus::Ok)
    throw std::logic_error("bag-filling the unmatched agents failed: " + filled.detail);
  for (int i : tailAgents)
    res.allocation.bundles[static_cast<std::size_t>(i)] =
        filled.allocation.bundles[static_cast<std::size_t>(i)];
  res.copiedGoods = filled.closerLog;
  return res;
}

// --- round-robin bag filling ----------------------------------------------

RoundRobinResult bagfill_round_robin(const Instance& ordered,
                                     const std::vector<Rational>& thresholds) {
  if (ordered.kind != ValuationKind::Additive)
    throw std::invalid_argument("round-robin bag filling needs additive valuations");
  const int n = ordered.n;
  const int m = ordered.m;
  if (n < 1) throw std::invalid_argument("need at least one agent");
  if (static_cast<int>(thresholds.size()) != n)
    throw std::invalid_argument("thresholds must align with the instance agents");
  for (int i = 0; i < n; ++i)
    for (int r = 1; r < m; ++r)
      if (ordered.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] >
          ordered.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(r - 1)])
        throw std::invalid_argument("instance rows must be non-increasing in rank");

  // Irreducibility scan: if any agent values rank n*k at threshold/(k+1),
  // the level-k awarding rule would still fire and dealing can stall.
  for (int k = 0; static_cast<std::int64_t>(n) * k <= m - 1; ++k) {
    const int rank = n * k;
    for (int i = 0; i < n; ++i) {
      if (ordered.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(rank)] >=
          thresholds[static_cast<std::size_t>(i)] / Rational(k + 1)) {
        std::ostringstream os;
        os << "agent " << i << " values rank " << rank
           << " at or above their threshold split " << (k + 1) << " ways";
        throw std::invalid_argument(os.str());
      }
    }
  }

  RoundRobinResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(n), {});
  std::vector<std::vector<int>> bags(static_cast<std::size_t>(n));
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  int awarded = 0;
  int cursor = 0;
  int lastAllocated = -1;
  int g = 0;
  for (; g < m; ++g) {
    if (awarded == n) break;
    std::vector<int>& bag = bags[static_cast<std::size_t>(cursor)];
    bag.push_back(g);
    int winner = -1;
    for (int i = 0; i < n; ++i) {
      if (active[static_cast<std::size_t>(i)] &&
          evaluate(ordered, i, bag) >= thresholds[static_cast<std::size_t>(i)]) {
        winner = i;
        break;
      }
    }
    if (winner >= 0) {
      res.allocation.bundles[static_cast<std::size_t>(winner)] = bag;
      res.closedBags.push_back(bag);
      res.awardOrder.push_back({cursor, winner});
      active[static_cast<std::size_t>(winner)] = 0;
      ++awarded;
      lastAllocated = winner;
    }
    ++cursor;
    if (cursor >= n) cursor = awarded;
  }
  res.awardedInDealing = awarded;

  if (g < m) {
    // All agents were served before the goods ran out; the rest piles onto
    // the last award.
    std::vector<int> rest;
    for (; g < m; ++g) rest.push_back(g);
    std::vector<int>& last = res.allocation.bundles[static_cast<std::size_t>(lastAllocated)];
    last = sorted_union(last, rest);
  } else if (awarded < n) {
    // Leftover bags: agent #idx among the survivors takes bag awarded+idx
    // plus a copy of rank idx.
    std::vector<int> survivors;
    for (int i = 0; i < n; ++i)
      if (active[static_cast<std::size_t>(i)]) survivors.push_back(i);
    for (std::size_t idx = 0; idx < survivors.size(); ++idx) {
      const int bagIdx = awarded + static_cast<int>(idx);
      const int rank = static_cast<int>(idx);
      std::vector<int>& bag = bags[static_cast<std::size_t>(bagIdx)];
      if (contains_sorted(bag, rank))
        throw std::logic_error("leftover bag already holds the rank it would copy");
      insert_sorted(bag, rank);
      res.allocation.bundles[static_cast<std::size_t>(survivors[idx])] = bag;
      res.injectedRanks.push_back(rank);
    }
  }

  // Structural checks: bags must have closed in index order and every rank
  // must have landed somewhere.
  for (std::size_t k = 0; k < res.awardOrder.size(); ++k)
    if (res.awardOrder[k].first != static_cast<int>(k))
      throw std::logic_error("bags closed out of index order");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (const std::vector<int>& bundle : res.allocation.bundles)
    for (int r : bundle) seen[static_cast<std::size_t>(r)] = 1;
  for (int r = 0; r < m; ++r)
    if (!seen[static_cast<std::size_t>(r)]) throw std::logic_error("a rank was left unallocated");

  return res;
}

// --- reduction pipelines ---------------------------------------------------

namespace {

PipelineResult run_pipeline(const Instance& inst, const Rational& alpha, const SearchLimits& limits,
                            bool thirdVariant) {
  PipelineResult res;
  res.normalization = normalize(inst, limits);
  const Instance& base = res.normalization.instance;
  const int nn = base.n;

  res.targets.assign(static_cast<std::size_t>(inst.n), Rational(0));
  for (int idx = 0; idx < nn; ++idx)
    res.targets[static_cast<std::size_t>(res.normalization.agentMap[static_cast<std::size_t>(idx)])] =
        alpha * res.normalization.mu[static_cast<std::size_t>(idx)];
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  res.rankAllocation.bundles.assign(static_cast<std::size_t>(nn), {});
  res.ordered = to_ordered(base);

  std::vector<Rational> ones(static_cast<std::size_t>(nn), Rational(1));
  res.trace = make_reduction_state(res.ordered.instance, ones);
  if (nn == 0) return res;

  if (thirdVariant)
    triple_reduce(res.trace, alpha);
  else
    pair_reduce(res.trace, alpha);

  for (const ReductionStep& step : res.trace.steps)
    for (std::size_t idx = 0; idx < step.removedAgents.size(); ++idx)
      res.rankAllocation.bundles[static_cast<std::size_t>(step.removedAgents[idx])] =
          step.awardedBundles[idx];

  if (res.trace.current.n > 0) {
    std::vector<Rational> thresholds;
    thresholds.reserve(res.trace.targets.size());
    for (const Rational& t : res.trace.targets) thresholds.push_back(alpha * t);
    RoundRobinResult rr = bagfill_round_robin(res.trace.current, thresholds);
    for (int cur = 0; cur < res.trace.current.n; ++cur) {
      std::vector<int> mapped;
      mapped.reserve(rr.allocation.bundles[static_cast<std::size_t>(cur)].size());
      for (int r : rr.allocation.bundles[static_cast<std::size_t>(cur)])
        mapped.push_back(res.trace.goodMap[static_cast<std::size_t>(r)]);
      std::sort(mapped.begin(), mapped.end());
      res.rankAllocation.bundles[static_cast<std::size_t>(
          res.trace.agentMap[static_cast<std::size_t>(cur)])] = std::move(mapped);
    }
  } else if (res.trace.current.m > 0) {
    // The reductions served every agent; the surviving ranks belong to nobody.
    // Hand them to the most recently served agent: extra goods never lower a
    // value, add no duplicates, and keep the rank allocation simple.
    std::vector<int>& tail = res.rankAllocation.bundles[static_cast<std::size_t>(
        res.trace.steps.back().removedAgents.back())];
    for (int r = 0; r < res.trace.current.m; ++r)
      tail.push_back(res.trace.goodMap[static_cast<std::size_t>(r)]);
    std::sort(tail.begin(), tail.end());
  }

  std::optional<SimpleWitness> witness = is_simple(res.rankAllocation, nn, base.m);
  if (!witness)
    throw std::runtime_error(
        "the combined rank allocation is not simple, so it cannot be converted back");
  res.witness = *witness;

  CopyAllocation real = from_ordered_simple(res.ordered, res.rankAllocation, res.witness);
  for (int idx = 0; idx < nn; ++idx)
    res.allocation.bundles[static_cast<std::size_t>(
        res.normalization.agentMap[static_cast<std::size_t>(idx)])] =
        real.bundles[static_cast<std::size_t>(idx)];
  return res;
}

}  // namespace

PipelineResult pipeline_half_copies(const Instance& inst, const Rational& alpha,
                                    const SearchLimits& limits) {
  if (!(alpha > Rational(0)) || alpha > Rational(6, 7))
    throw std::invalid_argument("alpha must lie in (0, 6/7] for the half-copies pipeline");
  return run_pipeline(inst, alpha, limits, false);
}

PipelineResult pipeline_third_copies(const Instance& inst, const Rational& alpha,
                                     const SearchLimits& limits) {
  if (!(alpha > Rational(0)) || alpha > Rational(4, 5))
    throw std::invalid_argument("alpha must lie in (0, 4/5] for the third-copies pipeline");
  if (inst.n <= 5)
    throw std::invalid_argument("the third-copies pipeline needs more than five agents");
  return run_pipeline(inst, alpha, limits, true);
}

// --- share via relaxed shares ----------------------------------------------

OneOutOfDResult mms_via_one_out_of_d(const Instance& inst, const Rational& alpha,
                                     const SearchLimits& limits) {
  if (inst.kind == ValuationKind::MonotoneOracle)
    throw std::invalid_argument("relaxed-share allocation needs additive or k-demand valuations");
  if (inst.n < 1) throw std::invalid_argument("need at least one agent");
  if (!(alpha > Rational(0)) || !(alpha < Rational(1)))
    throw std::invalid_argument("alpha must lie strictly between 0 and 1");

  const Rational onePlus = Rational(1) + alpha;
  const int early = static_cast<int>((Rational(inst.n) / onePlus).floor());
  const int late = inst.n - early;
  if (late > early)
    throw std::invalid_argument(
        "alpha leaves more late agents than early ones; choose a smaller alpha");

  auto sub_instance = [&](const std::vector<int>& rows) {
    Instance sub;
    sub.kind = inst.kind;
    sub.n = static_cast<int>(rows.size());
    sub.m = inst.m;
    for (int i : rows) {
      sub.values.push_back(inst.values[static_cast<std::size_t>(i)]);
      if (!inst.demand.empty()) sub.demand.push_back(inst.demand[static_cast<std::size_t>(i)]);
    }
    return sub;
  };

  OneOutOfDResult res;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  res.firstRoundD = static_cast<int>((onePlus * Rational(early)).ceil());

  std::vector<int> earlyRows = iota_vec(early);
  std::vector<Rational> earlyTargets;
  earlyTargets.reserve(static_cast<std::size_t>(early));
  for (int i = 0; i < early; ++i)
    earlyTargets.push_back(exact_mms(inst, i, res.firstRoundD, limits).value);
  std::optional<CopyAllocation> firstRound =
      one_out_of_d_alloc(sub_instance(earlyRows), earlyTargets, limits);
  if (!firstRound) throw std::logic_error("no relaxed-share allocation for the early agents");

  // The cheapest (fewest-goods) early bundles are kept; everyone else is
  // reallocated from the full good set, so duplication stays inside the kept
  // bundles.
  std::vector<int> bySize = iota_vec(early);
  std::stable_sort(bySize.begin(), bySize.end(), [&](int a, int b) {
    return firstRound->bundles[static_cast<std::size_t>(a)].size() <
           firstRound->bundles[static_cast<std::size_t>(b)].size();
  });
  res.keptAgents.assign(bySize.begin(), bySize.begin() + late);
  std::sort(res.keptAgents.begin(), res.keptAgents.end());
  for (int i : res.keptAgents) {
    res.allocation.bundles[static_cast<std::size_t>(i)] =
        firstRound->bundles[static_cast<std::size_t>(i)];
    res.keptGoodsUnion =
        sorted_union(res.keptGoodsUnion, firstRound->bundles[static_cast<std::size_t>(i)]);
  }

  std::vector<int> rest;
  for (int i = 0; i < inst.n; ++i)
    if (!contains_sorted(res.keptAgents, i)) rest.push_back(i);
  res.secondRoundD =
      static_cast<int>((onePlus * Rational(static_cast<int>(rest.size()))).ceil());
  std::vector<Rational> restTargets;
  restTargets.reserve(rest.size());
  for (int i : rest) restTargets.push_back(exact_mms(inst, i, res.secondRoundD, limits).value);
  std::optional<CopyAllocation> secondRound =
      one_out_of_d_alloc(sub_instance(rest), restTargets, limits);
  if (!secondRound) throw std::logic_error("no relaxed-share allocation for the remaining agents");
  for (std::size_t idx = 0; idx < rest.size(); ++idx)
    res.allocation.bundles[static_cast<std::size_t>(rest[idx])] = secondRound->bundles[idx];
  return res;
}

// --- randomized sampling ----------------------------------------------------

RandomizedResult randomized_monotone(const Instance& inst, int beta, std::uint64_t seed) {
  if (inst.n < 1) throw std::invalid_argument("need at least one agent");
  if (beta < 1) throw std::invalid_argument("beta must be at least 1");
  if (static_cast<int>(inst.oraclePartitions.size()) != inst.n)
    throw std::invalid_argument("every agent must carry a partition to draw from");
  for (const auto& partition : inst.oraclePartitions)
    if (partition.empty())
      throw std::invalid_argument("every carried partition needs at least one bundle");

  const int m = inst.m;
  const std::int64_t totalCap =
      Rational(static_cast<std::int64_t>(m) * 3678794, 10000000).floor();
  int perGoodCap;
  if (m <= 2) {
    perGoodCap = inst.n - 1;
  } else {
    const long double lm = std::log(static_cast<long double>(m));
    perGoodCap = static_cast<int>(std::floor(3.0L * lm / std::log(lm)));
  }

  const std::int64_t budget = 3LL * m * beta;
  Rng rng(seed);
  RandomizedResult res;
  for (std::int64_t it = 1; it <= budget; ++it) {
    CopyAllocation draw;
    draw.bundles.reserve(static_cast<std::size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i) {
      const auto& partition = inst.oraclePartitions[static_cast<std::size_t>(i)];
      const std::uint64_t pick = rng.below(static_cast<std::uint64_t>(partition.size()));
      draw.bundles.push_back(partition[static_cast<std::size_t>(pick)]);
    }
    CopyStats stats = copy_stats(draw, m);
    if (stats.totalExtraCopies <= totalCap && stats.maxPerGoodExtra <= perGoodCap) {
      res.accepted = true;
      res.allocation = std::move(draw);
      res.iterations = it;
      res.totalExtraCopies = stats.totalExtraCopies;
      res.maxPerGoodExtra = stats.maxPerGoodExtra;
      return res;
    }
  }
  res.accepted = false;
  res.iterations = budget;
  res.allocation.bundles.assign(static_cast<std::size_t>(inst.n), {});
  return res;
}

}  // namespace mmscopies
