// SPDX-License-Identifier: MIT

#include "mmscopies/reduce.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

void assert_ordered_rows(const Instance& inst) {
  for (int i = 0; i < inst.n; ++i)
    for (int g = 1; g < inst.m; ++g)
      check(inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(g - 1)] >=
                inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)],
            "reduction: instance rows must be non-increasing");
}

Rational window_value(const ReductionState& state, int agent, int lo, int hi) {
  Rational sum;
  for (int r = lo; r <= hi; ++r)
    sum += state.current.values[static_cast<std::size_t>(agent)][static_cast<std::size_t>(r)];
  return sum;
}

Rational pair_value(const ReductionState& state, int agent, int r1, int r2) {
  return state.current.values[static_cast<std::size_t>(agent)][static_cast<std::size_t>(r1)] +
         state.current.values[static_cast<std::size_t>(agent)][static_cast<std::size_t>(r2)];
}

// Erase the given sorted current ranks and the given current agents.
void shrink(ReductionState& state, const std::vector<int>& agentIdxs, const std::vector<int>& rankIdxs) {
  for (auto it = agentIdxs.rbegin(); it != agentIdxs.rend(); ++it) {
    state.current.values.erase(state.current.values.begin() + *it);
    state.targets.erase(state.targets.begin() + *it);
    state.agentMap.erase(state.agentMap.begin() + *it);
  }
  state.current.n -= static_cast<int>(agentIdxs.size());
  for (auto it = rankIdxs.rbegin(); it != rankIdxs.rend(); ++it) {
    for (auto& row : state.current.values) row.erase(row.begin() + *it);
    state.goodMap.erase(state.goodMap.begin() + *it);
  }
  state.current.m -= static_cast<int>(rankIdxs.size());
}

std::vector<int> to_base_ranks(const ReductionState& state, const std::vector<int>& currentRanks) {
  std::vector<int> out;
  out.reserve(currentRanks.size());
  for (int r : currentRanks) out.push_back(state.goodMap[static_cast<std::size_t>(r)]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ReductionState make_reduction_state(const Instance& ordered, const std::vector<Rational>& shares) {
  check(ordered.kind == ValuationKind::Additive, "reduction: additive only");
  check(static_cast<int>(shares.size()) == ordered.n, "reduction: wrong share count");
  assert_ordered_rows(ordered);
  ReductionState state;
  state.current = ordered;
  state.targets = shares;
  state.agentMap.resize(static_cast<std::size_t>(ordered.n));
  for (int i = 0; i < ordered.n; ++i) state.agentMap[static_cast<std::size_t>(i)] = i;
  state.goodMap = all_goods(ordered.m);
  return state;
}

bool window_rule_applicable(const ReductionState& state, const Rational& alpha, int k) {
  int n = state.current.n, m = state.current.m;
  if (n < 1 || m < 1 || k < 0) return false;
  if (static_cast<long long>(k) * n >= m) return false;  // window [k(n-1), nk] must fit
  int lo = k * (n - 1), hi = k * n;
  for (int i = 0; i < n; ++i)
    if (window_value(state, i, lo, hi) >= alpha * state.targets[static_cast<std::size_t>(i)]) return true;
  return false;
}

bool try_window_rule(ReductionState& state, const Rational& alpha, int k) {
  int n = state.current.n, m = state.current.m;
  if (n < 1 || m < 1 || k < 0) return false;
  if (static_cast<long long>(k) * n >= m) return false;
  int lo = k * (n - 1), hi = k * n;
  for (int i = 0; i < n; ++i) {
    if (window_value(state, i, lo, hi) >= alpha * state.targets[static_cast<std::size_t>(i)]) {
      std::vector<int> ranks;
      for (int r = lo; r <= hi; ++r) ranks.push_back(r);
      ReductionStep step;
      step.rule = ReductionRule::Window;
      step.k = k;
      step.removedAgents = {state.agentMap[static_cast<std::size_t>(i)]};
      step.awardedBundles = {to_base_ranks(state, ranks)};
      shrink(state, {i}, ranks);
      state.steps.push_back(std::move(step));
      return true;
    }
  }
  return false;
}

bool try_pair_rule(ReductionState& state, const Rational& alpha) {
  check(!window_rule_applicable(state, alpha, 1),
        "pair rule requires the level-1 window rule to be inapplicable");
  int n = state.current.n, m = state.current.m;
  if (n < 1 || m < n + 1) return false;
  int first = -1;
  for (int i = 0; i < n; ++i) {
    if (pair_value(state, i, 0, n) >= alpha * state.targets[static_cast<std::size_t>(i)]) {
      first = i;
      break;
    }
  }
  if (first < 0) return false;
  int second = -1;
  for (int j = 0; j < n; ++j) {
    if (j == first) continue;
    // The second agent is tested on the same {0, n} bundle under their own
    // values; since rank n-1 is worth at least rank n to them, the bundle
    // they actually receive, {0, n-1}, clears the threshold too.
    if (pair_value(state, j, 0, n) >= alpha * state.targets[static_cast<std::size_t>(j)]) {
      second = j;
      break;
    }
  }
  ReductionStep step;
  step.rule = ReductionRule::Pair;
  if (second < 0) {
    step.removedAgents = {state.agentMap[static_cast<std::size_t>(first)]};
    step.awardedBundles = {to_base_ranks(state, {0, n})};
    shrink(state, {first}, {0, n});
  } else {
    step.removedAgents = {state.agentMap[static_cast<std::size_t>(first)],
                          state.agentMap[static_cast<std::size_t>(second)]};
    step.awardedBundles = {to_base_ranks(state, {0, n}), to_base_ranks(state, {0, n - 1})};
    step.copiesIntroduced = {state.goodMap[0]};
    std::vector<int> agents = {std::min(first, second), std::max(first, second)};
    shrink(state, agents, {0, n - 1, n});
  }
  state.steps.push_back(std::move(step));
  return true;
}

bool try_triple_rule(ReductionState& state, const Rational& alpha) {
  check(alpha <= Rational(4, 5), "triple rule requires alpha <= 4/5");
  check(!window_rule_applicable(state, alpha, 0) && !window_rule_applicable(state, alpha, 1),
        "triple rule requires window levels 0 and 1 to be inapplicable");
  int n = state.current.n, m = state.current.m;
  if (n < 3 || m < n + 3) return false;
  auto clears = [&](int agent, int r1, int r2) {
    return pair_value(state, agent, r1, r2) >= alpha * state.targets[static_cast<std::size_t>(agent)];
  };
  for (int i = 0; i < n; ++i) {
    if (!clears(i, 0, n)) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i || !clears(j, 1, n + 1)) continue;
      for (int l = 0; l < n; ++l) {
        if (l == i || l == j || !clears(l, 0, n + 2)) continue;
        ReductionStep step;
        step.rule = ReductionRule::Triple;
        step.removedAgents = {state.agentMap[static_cast<std::size_t>(i)],
                              state.agentMap[static_cast<std::size_t>(j)],
                              state.agentMap[static_cast<std::size_t>(l)]};
        step.awardedBundles = {to_base_ranks(state, {0, n}), to_base_ranks(state, {1, n + 1}),
                               to_base_ranks(state, {0, n + 2})};
        step.copiesIntroduced = {state.goodMap[0]};
        std::vector<int> agents = {i, j, l};
        std::sort(agents.begin(), agents.end());
        shrink(state, agents, {0, 1, n, n + 1, n + 2});
        state.steps.push_back(std::move(step));
        return true;
      }
    }
  }
  return false;
}

void window_reduce(ReductionState& state, const Rational& alpha) {
  bool hit = true;
  while (hit && state.current.n > 0) {
    hit = false;
    for (int k = 0; static_cast<long long>(k) * state.current.n < state.current.m; ++k) {
      if (try_window_rule(state, alpha, k)) {
        hit = true;  // restart from level 0 on the shrunken instance
        break;
      }
    }
  }
}

void pair_reduce(ReductionState& state, const Rational& alpha) {
  while (true) {
    window_reduce(state, alpha);
    if (state.current.n == 0 || !try_pair_rule(state, alpha)) break;
  }
}

void triple_reduce(ReductionState& state, const Rational& alpha) {
  while (true) {
    window_reduce(state, alpha);
    if (state.current.n == 0 || !try_triple_rule(state, alpha)) break;
  }
}

}  // namespace mmscopies
