// SPDX-License-Identifier: MIT

#include "mmscopies/mms.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

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

std::vector<int> resolve_goods(const Instance& inst, const std::vector<int>* subset) {
  if (!subset) return all_goods(inst.m);
  check(is_sorted_unique(*subset), "exact search: goods subset not strictly increasing");
  for (int g : *subset) check(g >= 0 && g < inst.m, "exact search: good out of range");
  return *subset;
}

// ---------------------------------------------------------------------------
// Additive branch-and-bound on integer-scaled values.
// ---------------------------------------------------------------------------

struct AdditiveScaled {
  std::vector<std::int64_t> weights;  // per listed good, descending
  std::vector<int> goods;             // original good ids, same order as weights
  std::int64_t scale = 1;             // value = weight / scale
};

AdditiveScaled scale_additive(const Instance& inst, int agent, const std::vector<int>& goods) {
  using Wide = __int128;
  Wide lcm = 1;
  for (int g : goods) {
    std::int64_t d = inst.values[agent][g].den();
    Wide gg = std::gcd(static_cast<std::int64_t>(lcm % d), d);
    // gcd(lcm mod d, d) == gcd(lcm, d)
    lcm = lcm / (gg == 0 ? d : gg) * d;
    if (lcm > Wide(INT64_MAX)) throw OverflowError("exact_mms: value denominators too fine");
  }
  AdditiveScaled out;
  out.scale = static_cast<std::int64_t>(lcm);
  std::vector<std::pair<std::int64_t, int>> items;
  for (int g : goods) {
    const Rational& v = inst.values[agent][g];
    Wide w = Wide(v.num()) * (out.scale / v.den());
    if (w > Wide(INT64_MAX) || w < Wide(INT64_MIN)) throw OverflowError("exact_mms: scaled value overflow");
    items.emplace_back(static_cast<std::int64_t>(w), g);
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [w, g] : items) {
    out.weights.push_back(w);
    out.goods.push_back(g);
  }
  return out;
}

class AdditiveMaximinSearch {
 public:
  AdditiveMaximinSearch(std::vector<std::int64_t> weights, int d)
      : w_(std::move(weights)), d_(d), sums_(static_cast<std::size_t>(d), 0),
        assign_(w_.size(), 0), bestAssign_(w_.size(), 0) {
    for (std::int64_t x : w_) {
      if (x < 0) throw std::invalid_argument("exact_mms: negative value");
      total_ += x;
    }
    suffix_.assign(w_.size() + 1, 0);
    for (std::size_t i = w_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + w_[i];
    globalUb_ = total_ / d_;
    greedy_incumbent();
  }

  std::int64_t best_value() const { return best_; }
  const std::vector<int>& best_assignment() const { return bestAssign_; }

  void run() {
    if (best_ >= globalUb_) return;  // greedy already optimal
    dfs(0);
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
    best_ = *std::min_element(sums.begin(), sums.end());
  }

  // Upper bound on the final minimum: for every j, the j currently smallest
  // bundles can absorb at most all remaining weight between them, so the
  // final minimum is at most (their sum + remaining) / j.
  std::int64_t upper_bound(std::int64_t remaining) const {
    std::vector<std::int64_t> sorted(sums_);
    std::sort(sorted.begin(), sorted.end());
    std::int64_t ub = globalUb_;
    std::int64_t prefix = 0;
    for (int j = 1; j <= d_; ++j) {
      prefix += sorted[static_cast<std::size_t>(j - 1)];
      ub = std::min(ub, (prefix + remaining) / j);
    }
    return ub;
  }

  void dfs(std::size_t idx) {
    if (best_ >= globalUb_) return;
    if (idx == w_.size()) {
      std::int64_t value = *std::min_element(sums_.begin(), sums_.end());
      if (value > best_) {
        best_ = value;
        bestAssign_ = assign_;
      }
      return;
    }
    if (upper_bound(suffix_[idx]) <= best_) return;
    std::vector<std::int64_t> tried;
    tried.reserve(static_cast<std::size_t>(d_));
    for (int b = 0; b < d_; ++b) {
      std::int64_t s = sums_[static_cast<std::size_t>(b)];
      if (std::find(tried.begin(), tried.end(), s) != tried.end()) continue;  // same-sum bundles are interchangeable
      tried.push_back(s);
      sums_[static_cast<std::size_t>(b)] += w_[idx];
      assign_[idx] = b;
      dfs(idx + 1);
      sums_[static_cast<std::size_t>(b)] -= w_[idx];
      if (best_ >= globalUb_) return;
    }
  }

  std::vector<std::int64_t> w_;
  int d_;
  std::vector<std::int64_t> sums_;
  std::vector<int> assign_;
  std::vector<int> bestAssign_;
  std::vector<std::int64_t> suffix_;
  std::int64_t total_ = 0;
  std::int64_t globalUb_ = 0;
  std::int64_t best_ = -1;
};

MmsResult additive_exact(const Instance& inst, int agent, int d, const std::vector<int>& goods) {
  AdditiveScaled scaled = scale_additive(inst, agent, goods);
  AdditiveMaximinSearch search(scaled.weights, d);
  search.run();
  MmsResult result;
  result.value = Rational(search.best_value(), scaled.scale);
  result.partition.assign(static_cast<std::size_t>(d), {});
  const auto& assign = search.best_assignment();
  for (std::size_t i = 0; i < assign.size(); ++i)
    result.partition[static_cast<std::size_t>(assign[i])].push_back(scaled.goods[i]);
  for (auto& b : result.partition) std::sort(b.begin(), b.end());
  return result;
}

// ---------------------------------------------------------------------------
// Generic (KDemand) branch-and-bound; monotone valuations only.
// ---------------------------------------------------------------------------

class GenericMaximinSearch {
 public:
  GenericMaximinSearch(const Instance& inst, int agent, int d, std::vector<int> goods)
      : inst_(inst), agent_(agent), d_(d), goods_(std::move(goods)),
        bundles_(static_cast<std::size_t>(d)) {
    // Descending singleton value keeps strong bundles early.
    std::stable_sort(goods_.begin(), goods_.end(), [&](int a, int b) {
      return inst_.values[agent_][b] < inst_.values[agent_][a];
    });
    suffix_.resize(goods_.size() + 1);
    for (std::size_t i = goods_.size(); i-- > 0;) {
      suffix_[i] = suffix_[i + 1];
      suffix_[i].push_back(goods_[i]);
    }
    for (auto& s : suffix_) std::sort(s.begin(), s.end());
    greedy_incumbent();
  }

  MmsResult result() const {
    MmsResult r;
    r.value = best_;
    r.partition = bestBundles_;
    for (auto& b : r.partition) std::sort(b.begin(), b.end());
    return r;
  }

  void run() { dfs(0); }

 private:
  Rational value_of(const std::vector<int>& sortedBundle) const {
    return evaluate(inst_, agent_, sortedBundle);
  }

  void greedy_incumbent() {
    std::vector<std::vector<int>> bundles(static_cast<std::size_t>(d_));
    std::vector<Rational> vals(static_cast<std::size_t>(d_));
    for (int g : goods_) {
      std::size_t argmin = 0;
      for (std::size_t b = 1; b < vals.size(); ++b)
        if (vals[b] < vals[argmin]) argmin = b;
      bundles[argmin].push_back(g);
      std::vector<int> sorted = bundles[argmin];
      std::sort(sorted.begin(), sorted.end());
      vals[argmin] = value_of(sorted);
    }
    best_ = *std::min_element(vals.begin(), vals.end());
    bestBundles_ = bundles;
  }

  void dfs(std::size_t idx) {
    if (idx == goods_.size()) {
      Rational value = bundle_min();
      if (value > best_) {
        best_ = value;
        bestBundles_ = bundles_;
      }
      return;
    }
    // Bound: each bundle can end at most at v(bundle + all remaining goods).
    Rational ub;
    bool first = true;
    for (const auto& b : bundles_) {
      std::vector<int> with = b;
      with.insert(with.end(), suffix_[idx].begin(), suffix_[idx].end());
      std::sort(with.begin(), with.end());
      Rational v = value_of(with);
      if (first || v < ub) ub = v;
      first = false;
    }
    if (ub <= best_) return;
    bool triedEmpty = false;
    for (int b = 0; b < d_; ++b) {
      auto& bundle = bundles_[static_cast<std::size_t>(b)];
      if (bundle.empty()) {
        if (triedEmpty) continue;  // empty bundles are interchangeable
        triedEmpty = true;
      }
      bundle.push_back(goods_[idx]);
      dfs(idx + 1);
      bundle.pop_back();
    }
  }

  Rational bundle_min() {
    Rational worst;
    bool first = true;
    for (const auto& b : bundles_) {
      std::vector<int> sorted = b;
      std::sort(sorted.begin(), sorted.end());
      Rational v = value_of(sorted);
      if (first || v < worst) worst = v;
      first = false;
    }
    return worst;
  }

  const Instance& inst_;
  int agent_;
  int d_;
  std::vector<int> goods_;
  std::vector<std::vector<int>> bundles_;
  std::vector<std::vector<int>> suffix_;
  Rational best_ = Rational(-1);
  std::vector<std::vector<int>> bestBundles_;
};

}  // namespace

MmsResult exact_mms(const Instance& inst, int agent, int d, const SearchLimits& limits,
                    const std::vector<int>* goodsSubset) {
  check(agent >= 0 && agent < inst.n, "exact_mms: agent out of range");
  check(d >= 1, "exact_mms: need at least one bundle");
  check(inst.kind != ValuationKind::MonotoneOracle,
        "exact_mms: oracle valuations must carry their partitions; exact search is not available");
  std::vector<int> goods = resolve_goods(inst, goodsSubset);
  check(static_cast<int>(goods.size()) <= effective_goods_cap(limits),
        "exact_mms: goods cap exceeded (" + std::to_string(goods.size()) + ")");
  check(d <= limits.maxBundles,
        "exact_mms: bundle cap exceeded (" + std::to_string(d) + ")");
  if (inst.kind == ValuationKind::Additive) return additive_exact(inst, agent, d, goods);
  GenericMaximinSearch search(inst, agent, d, goods);
  search.run();
  return search.result();
}

MmsResult exact_mms_unpruned(const Instance& inst, int agent, int d,
                             const std::vector<int>* goodsSubset) {
  check(agent >= 0 && agent < inst.n, "exact_mms_unpruned: agent out of range");
  check(d >= 1, "exact_mms_unpruned: need at least one bundle");
  check(inst.kind != ValuationKind::MonotoneOracle,
        "exact_mms_unpruned: oracle valuations not supported");
  std::vector<int> goods = resolve_goods(inst, goodsSubset);
  check(goods.size() <= 12, "exact_mms_unpruned: reference search capped at 12 goods");
  check(d <= 4, "exact_mms_unpruned: reference search capped at 4 bundles");

  std::vector<int> assign(goods.size(), 0);
  MmsResult best;
  best.value = Rational(-1);
  auto leaf = [&]() {
    std::vector<std::vector<int>> bundles(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < goods.size(); ++i)
      bundles[static_cast<std::size_t>(assign[i])].push_back(goods[i]);
    Rational worst;
    bool first = true;
    for (const auto& b : bundles) {
      Rational v = evaluate(inst, agent, b);
      if (first || v < worst) worst = v;
      first = false;
    }
    if (worst > best.value) {
      best.value = worst;
      best.partition = bundles;
    }
  };
  // Odometer over all d^|goods| assignments.
  while (true) {
    leaf();
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

NormalizeResult normalize(const Instance& inst, const SearchLimits& limits) {
  check(inst.kind == ValuationKind::Additive || inst.kind == ValuationKind::KDemand,
        "normalize: additive or k-demand only");
  NormalizeResult out;
  out.instance.kind = inst.kind;
  out.instance.m = inst.m;
  for (int i = 0; i < inst.n; ++i) {
    Rational mu = exact_mms(inst, i, inst.n, limits).value;
    if (mu.sign() == 0) {
      out.droppedAgents.push_back(i);
      continue;
    }
    std::vector<Rational> row;
    row.reserve(static_cast<std::size_t>(inst.m));
    for (int g = 0; g < inst.m; ++g) row.push_back(inst.values[i][g] / mu);
    out.instance.values.push_back(std::move(row));
    if (inst.kind == ValuationKind::KDemand) out.instance.demand.push_back(inst.demand[i]);
    out.mu.push_back(mu);
    out.agentMap.push_back(i);
  }
  out.instance.n = static_cast<int>(out.agentMap.size());
  return out;
}

std::optional<CopyAllocation> one_out_of_d_alloc(const Instance& inst,
                                                 const std::vector<Rational>& targets,
                                                 const SearchLimits& limits) {
  check(inst.kind == ValuationKind::Additive || inst.kind == ValuationKind::KDemand,
        "one_out_of_d_alloc: additive or k-demand only");
  check(static_cast<int>(targets.size()) == inst.n, "one_out_of_d_alloc: wrong target count");
  check(inst.n >= 1, "one_out_of_d_alloc: need at least one agent");
  check(inst.m <= effective_goods_cap(limits), "one_out_of_d_alloc: goods cap exceeded");

  // Branch on goods in descending best-value order.
  std::vector<int> goods = all_goods(inst.m);
  auto best_value = [&](int g) {
    Rational v = inst.values[0][g];
    for (int i = 1; i < inst.n; ++i)
      if (inst.values[i][g] > v) v = inst.values[i][g];
    return v;
  };
  std::stable_sort(goods.begin(), goods.end(),
                   [&](int a, int b) { return best_value(b) < best_value(a); });
  std::vector<std::vector<int>> suffix(goods.size() + 1);
  for (std::size_t i = goods.size(); i-- > 0;) {
    suffix[i] = suffix[i + 1];
    suffix[i].push_back(goods[i]);
    std::sort(suffix[i].begin(), suffix[i].end());
  }

  std::vector<std::vector<int>> bundles(static_cast<std::size_t>(inst.n));
  std::optional<CopyAllocation> found;

  auto met = [&](int i) {
    std::vector<int> sorted = bundles[static_cast<std::size_t>(i)];
    std::sort(sorted.begin(), sorted.end());
    return evaluate(inst, i, sorted) >= targets[static_cast<std::size_t>(i)];
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t idx) -> bool {
    bool allMet = true;
    for (int i = 0; i < inst.n && allMet; ++i) allMet = met(i);
    if (allMet) {
      // Dump anything unassigned on the agent currently worst off.
      std::vector<Rational> vals(static_cast<std::size_t>(inst.n));
      std::vector<std::vector<int>> out(static_cast<std::size_t>(inst.n));
      for (int i = 0; i < inst.n; ++i) {
        out[static_cast<std::size_t>(i)] = bundles[static_cast<std::size_t>(i)];
        std::sort(out[static_cast<std::size_t>(i)].begin(), out[static_cast<std::size_t>(i)].end());
        vals[static_cast<std::size_t>(i)] = evaluate(inst, i, out[static_cast<std::size_t>(i)]);
      }
      if (idx < goods.size()) {
        std::size_t argmin = 0;
        for (std::size_t i = 1; i < vals.size(); ++i)
          if (vals[i] < vals[argmin]) argmin = i;
        for (std::size_t j = idx; j < goods.size(); ++j) out[argmin].push_back(goods[j]);
        std::sort(out[argmin].begin(), out[argmin].end());
      }
      CopyAllocation alloc;
      alloc.bundles = out;
      found = alloc;
      return true;
    }
    if (idx == goods.size()) return false;
    // Prune: an agent that cannot reach its target even with everything left.
    for (int i = 0; i < inst.n; ++i) {
      std::vector<int> with = bundles[static_cast<std::size_t>(i)];
      with.insert(with.end(), suffix[idx].begin(), suffix[idx].end());
      std::sort(with.begin(), with.end());
      if (evaluate(inst, i, with) < targets[static_cast<std::size_t>(i)]) return false;
    }
    for (int i = 0; i < inst.n; ++i) {
      bundles[static_cast<std::size_t>(i)].push_back(goods[idx]);
      if (dfs(idx + 1)) return true;
      bundles[static_cast<std::size_t>(i)].pop_back();
    }
    return false;
  };
  dfs(0);
  return found;
}

bool check_valid_reduction(const Instance& before, const Instance& after,
                           const std::vector<int>& afterToBeforeAgent,
                           const SearchLimits& limits) {
  check(static_cast<int>(afterToBeforeAgent.size()) == after.n,
        "check_valid_reduction: wrong agent map size");
  for (int a = 0; a < after.n; ++a) {
    Rational muAfter = exact_mms(after, a, after.n, limits).value;
    Rational muBefore = exact_mms(before, afterToBeforeAgent[static_cast<std::size_t>(a)],
                                  before.n, limits).value;
    if (muAfter < muBefore) return false;
  }
  return true;
}

}  // namespace mmscopies
