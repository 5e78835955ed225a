// SPDX-License-Identifier: MIT

#include "mmscopies/ordered.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Value of a bundle of ORIGINAL goods for `agent`: each good's value is the
// ordered row entry at the good's rank in this agent's preference order.
Rational original_bundle_value(const OrderedInstance& ord, int agent, const std::vector<int>& goods) {
  const auto& sigma = ord.sigma[static_cast<std::size_t>(agent)];
  const auto& row = ord.instance.values[static_cast<std::size_t>(agent)];
  Rational sum;
  for (int g : goods) {
    auto it = std::find(sigma.begin(), sigma.end(), g);
    if (it == sigma.end()) throw std::logic_error("original_bundle_value: good missing from rank map");
    sum += row[static_cast<std::size_t>(it - sigma.begin())];
  }
  return sum;
}

// holderOf[r] = unique agent charged with picking for rank r, or -1.
CopyAllocation picking_pass(const OrderedInstance& ord, const std::vector<int>& holderOf,
                            std::vector<bool>& taken) {
  const Instance& base = ord.instance;
  CopyAllocation out;
  out.bundles.assign(static_cast<std::size_t>(base.n), {});
  for (int r = 0; r < base.m; ++r) {
    int holder = holderOf[static_cast<std::size_t>(r)];
    if (holder < 0) continue;
    // The holder's sigma row is already sorted by their preference (value
    // descending, ties by lowest original index), so the first untaken entry
    // is exactly "most valuable remaining, ties lowest index".
    int picked = -1;
    for (int g : ord.sigma[static_cast<std::size_t>(holder)]) {
      if (!taken[static_cast<std::size_t>(g)]) {
        picked = g;
        break;
      }
    }
    if (picked < 0) throw std::logic_error("picking pass: no goods left");
    taken[static_cast<std::size_t>(picked)] = true;
    out.bundles[static_cast<std::size_t>(holder)].push_back(picked);
  }
  for (auto& b : out.bundles) std::sort(b.begin(), b.end());
  return out;
}

}  // namespace

OrderedInstance to_ordered(const Instance& inst) {
  check(inst.kind == ValuationKind::Additive, "to_ordered: additive only");
  OrderedInstance ord;
  ord.instance.kind = ValuationKind::Additive;
  ord.instance.n = inst.n;
  ord.instance.m = inst.m;
  ord.instance.values.assign(static_cast<std::size_t>(inst.n), {});
  ord.sigma.assign(static_cast<std::size_t>(inst.n), {});
  for (int i = 0; i < inst.n; ++i) {
    std::vector<int> perm(static_cast<std::size_t>(inst.m));
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
      return inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(b)] <
             inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    });
    ord.sigma[static_cast<std::size_t>(i)] = perm;
    auto& row = ord.instance.values[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(inst.m));
    for (int g : perm) row.push_back(inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)]);
  }
  return ord;
}

CopyAllocation from_ordered_no_copies(const OrderedInstance& ord, const CopyAllocation& rankAlloc) {
  const Instance& base = ord.instance;
  validate_allocation_shape(rankAlloc, base.n, base.m);
  std::vector<int> holderOf(static_cast<std::size_t>(base.m), -1);
  for (int i = 0; i < base.n; ++i) {
    for (int r : rankAlloc.bundles[static_cast<std::size_t>(i)]) {
      check(holderOf[static_cast<std::size_t>(r)] < 0, "from_ordered_no_copies: rank held twice");
      holderOf[static_cast<std::size_t>(r)] = i;
    }
  }
  std::vector<bool> taken(static_cast<std::size_t>(base.m), false);
  return picking_pass(ord, holderOf, taken);
}

std::optional<SimpleWitness> is_simple(const CopyAllocation& rankAlloc, int n, int m) {
  validate_allocation_shape(rankAlloc, n, m);
  CopyStats stats = copy_stats(rankAlloc, m);
  if (stats.maxPerGoodExtra > 1) return std::nullopt;
  SimpleWitness w;
  for (int r = 0; r < m; ++r)
    if (stats.multiplicity[static_cast<std::size_t>(r)] == 2) w.dupRanks.push_back(r);
  int t = static_cast<int>(w.dupRanks.size());
  if (2 * t > n) return std::nullopt;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int r : w.dupRanks) {
    int a = -1, b = -1;
    for (int i = 0; i < n; ++i) {
      const auto& bundle = rankAlloc.bundles[static_cast<std::size_t>(i)];
      if (std::binary_search(bundle.begin(), bundle.end(), r)) (a < 0 ? a : b) = i;
    }
    if (seen[static_cast<std::size_t>(a)] || seen[static_cast<std::size_t>(b)]) return std::nullopt;
    seen[static_cast<std::size_t>(a)] = seen[static_cast<std::size_t>(b)] = true;
    // The sharing pair may overlap in nothing but the shared rank.
    std::vector<int> inter;
    std::set_intersection(rankAlloc.bundles[static_cast<std::size_t>(a)].begin(),
                          rankAlloc.bundles[static_cast<std::size_t>(a)].end(),
                          rankAlloc.bundles[static_cast<std::size_t>(b)].begin(),
                          rankAlloc.bundles[static_cast<std::size_t>(b)].end(),
                          std::back_inserter(inter));
    if (inter != std::vector<int>{r}) return std::nullopt;
    w.pairs.emplace_back(a, b);  // lower index is the copy holder
  }
  return w;
}

CopyAllocation from_ordered_simple(const OrderedInstance& ord, const CopyAllocation& rankAlloc,
                                   const SimpleWitness& witness) {
  const Instance& base = ord.instance;
  validate_allocation_shape(rankAlloc, base.n, base.m);

  // First round: every rank is picked for by its original holder.
  std::vector<int> holderOf(static_cast<std::size_t>(base.m), -1);
  for (int i = 0; i < base.n; ++i)
    for (int r : rankAlloc.bundles[static_cast<std::size_t>(i)])
      holderOf[static_cast<std::size_t>(r)] = i;  // overwritten below for duplicated ranks
  for (std::size_t j = 0; j < witness.dupRanks.size(); ++j)
    holderOf[static_cast<std::size_t>(witness.dupRanks[j])] = witness.pairs[j].second;

  std::vector<bool> takenFirst(static_cast<std::size_t>(base.m), false);
  CopyAllocation out = picking_pass(ord, holderOf, takenFirst);

  // Second round: copy holders, in increasing duplicated-rank order, take
  // their most valuable good not yet taken in this round and outside their
  // own first-round bundle.
  std::vector<bool> takenSecond(static_cast<std::size_t>(base.m), false);
  for (std::size_t j = 0; j < witness.dupRanks.size(); ++j) {
    int picker = witness.pairs[j].first;
    const auto& own = out.bundles[static_cast<std::size_t>(picker)];
    int picked = -1;
    for (int g : ord.sigma[static_cast<std::size_t>(picker)]) {
      if (takenSecond[static_cast<std::size_t>(g)]) continue;
      if (std::binary_search(own.begin(), own.end(), g)) continue;
      picked = g;
      break;
    }
    if (picked < 0) throw std::logic_error("from_ordered_simple: no pick available");
    takenSecond[static_cast<std::size_t>(picked)] = true;
    auto& bundle = out.bundles[static_cast<std::size_t>(picker)];
    bundle.insert(std::upper_bound(bundle.begin(), bundle.end(), picked), picked);
  }

  // No agent may fall below their rank-bundle value. Converted bundles hold
  // original goods, whose values are read through the inverse rank map.
  for (int i = 0; i < base.n; ++i) {
    Rational got = original_bundle_value(ord, i, out.bundles[static_cast<std::size_t>(i)]);
    // The rank bundle's value under the ordered values *is* the virtual value.
    Rational want = evaluate(base, i, rankAlloc.bundles[static_cast<std::size_t>(i)]);
    if (got < want) throw std::logic_error("from_ordered_simple: conversion lost value");
  }
  return out;
}

}  // namespace mmscopies
