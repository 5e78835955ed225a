// SPDX-License-Identifier: MIT
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmscopies/core.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/reduce.hpp"

using namespace mmscopies;

namespace {

Instance ordered_rows(std::vector<std::vector<Rational>> rows) {
  Instance inst;
  inst.kind = ValuationKind::Additive;
  inst.n = static_cast<int>(rows.size());
  inst.m = static_cast<int>(rows[0].size());
  inst.values = std::move(rows);
  return inst;
}

std::vector<Rational> ones(int n) { return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)); }

}  // namespace

TEST_SUITE("reduce") {
  TEST_CASE("state construction validates its input") {
    Instance bad = ordered_rows({{Rational(1, 3), Rational(1, 2)}});
    CHECK_THROWS_AS(make_reduction_state(bad, ones(1)), std::invalid_argument);
    Instance good = ordered_rows({{Rational(1, 2), Rational(1, 3)}});
    CHECK_THROWS_AS(make_reduction_state(good, ones(2)), std::invalid_argument);
    ReductionState st = make_reduction_state(good, ones(1));
    CHECK(st.current.n == 1);
    CHECK(st.agentMap == std::vector<int>{0});
    CHECK(st.goodMap == std::vector<int>{0, 1});
    CHECK(st.steps.empty());
  }

  TEST_CASE("window rules peel the whole crafted instance") {
    // Identical agents, share 3/5 each; at alpha = 6/7 the level-1 window
    // fires three times in a row, serving everyone without copies.
    Rational half(1, 2), tenth(1, 10);
    Instance inst = ordered_rows({{half, half, half, half, tenth, tenth},
                                  {half, half, half, half, tenth, tenth},
                                  {half, half, half, half, tenth, tenth}});
    std::vector<Rational> shares(3, Rational(3, 5));
    for (int i = 0; i < 3; ++i) CHECK(exact_mms(inst, i, 3).value == Rational(3, 5));

    ReductionState st = make_reduction_state(inst, shares);
    Rational alpha(6, 7);
    CHECK_FALSE(window_rule_applicable(st, alpha, 0));
    CHECK(window_rule_applicable(st, alpha, 1));

    window_reduce(st, alpha);
    CHECK(st.current.n == 0);
    CHECK(st.current.m == 0);
    REQUIRE(st.steps.size() == 3);
    std::vector<int> served;
    std::vector<int> ranksHanded;
    for (const auto& step : st.steps) {
      CHECK(step.rule == ReductionRule::Window);
      CHECK(step.copiesIntroduced.empty());
      REQUIRE(step.removedAgents.size() == 1);
      REQUIRE(step.awardedBundles.size() == 1);
      served.push_back(step.removedAgents[0]);
      for (int r : step.awardedBundles[0]) ranksHanded.push_back(r);
      // The award clears the leaving agent's threshold at base ranks.
      CHECK(evaluate(inst, step.removedAgents[0], step.awardedBundles[0]) >=
            alpha * Rational(3, 5));
    }
    std::sort(served.begin(), served.end());
    CHECK(served == std::vector<int>{0, 1, 2});
    std::sort(ranksHanded.begin(), ranksHanded.end());
    CHECK(ranksHanded == all_goods(6));  // copy-free: ranks partitioned exactly
    CHECK(st.steps[0].k == 1);
    CHECK(st.steps[0].removedAgents == std::vector<int>{0});
    CHECK(st.steps[0].awardedBundles[0] == std::vector<int>{2, 3});
  }

  TEST_CASE("pair rule duplicates the top rank for a second agent") {
    Rational a(3, 5), b(3, 10);
    Instance inst = ordered_rows({{a, b, b, b}, {a, b, b, b}, {a, b, b, b}});
    ReductionState st = make_reduction_state(inst, ones(3));
    Rational alpha(6, 7);
    CHECK_FALSE(window_rule_applicable(st, alpha, 0));
    CHECK_FALSE(window_rule_applicable(st, alpha, 1));

    CHECK(try_pair_rule(st, alpha));
    REQUIRE(st.steps.size() == 1);
    const ReductionStep& step = st.steps[0];
    CHECK(step.rule == ReductionRule::Pair);
    CHECK(step.removedAgents == std::vector<int>{0, 1});
    REQUIRE(step.awardedBundles.size() == 2);
    CHECK(step.awardedBundles[0] == std::vector<int>{0, 3});
    CHECK(step.awardedBundles[1] == std::vector<int>{0, 2});
    CHECK(step.copiesIntroduced == std::vector<int>{0});
    CHECK(st.current.n == 1);
    CHECK(st.current.m == 1);
    CHECK(st.agentMap == std::vector<int>{2});
    CHECK(st.goodMap == std::vector<int>{1});
    // Both award bundles clear the threshold: 3/5 + 3/10 = 9/10 >= 6/7.
    CHECK(evaluate(inst, 0, {0, 3}) >= alpha);
    CHECK(evaluate(inst, 1, {0, 2}) >= alpha);
  }

  TEST_CASE("pair rule refuses to run while a window rule is live") {
    Rational big(9, 10), small(1, 10);
    Instance inst = ordered_rows({{big, big, big, small},
                                  {big, big, big, small},
                                  {big, big, big, small}});
    ReductionState st = make_reduction_state(inst, ones(3));
    CHECK(window_rule_applicable(st, Rational(6, 7), 0));
    CHECK_THROWS_AS(try_pair_rule(st, Rational(6, 7)), std::invalid_argument);
  }

  TEST_CASE("triple rule serves three agents with one duplicated rank") {
    Rational a(1, 2), b(3, 10);
    Instance inst = ordered_rows({{a, a, b, b, b, b},
                                  {a, a, b, b, b, b},
                                  {a, a, b, b, b, b}});
    ReductionState st = make_reduction_state(inst, ones(3));
    Rational alpha(4, 5);
    CHECK_FALSE(window_rule_applicable(st, alpha, 0));
    CHECK_FALSE(window_rule_applicable(st, alpha, 1));

    CHECK(try_triple_rule(st, alpha));
    REQUIRE(st.steps.size() == 1);
    const ReductionStep& step = st.steps[0];
    CHECK(step.rule == ReductionRule::Triple);
    CHECK(step.removedAgents == std::vector<int>{0, 1, 2});
    REQUIRE(step.awardedBundles.size() == 3);
    CHECK(step.awardedBundles[0] == std::vector<int>{0, 3});
    CHECK(step.awardedBundles[1] == std::vector<int>{1, 4});
    CHECK(step.awardedBundles[2] == std::vector<int>{0, 5});
    CHECK(step.copiesIntroduced == std::vector<int>{0});
    CHECK(st.current.n == 0);
    CHECK(st.current.m == 1);
    CHECK(st.goodMap == std::vector<int>{2});
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(evaluate(inst, step.removedAgents[j], step.awardedBundles[j]) >= alpha);
    }
  }

  TEST_CASE("triple rule validates alpha and window preconditions") {
    Rational a(1, 2), b(3, 10);
    Instance inst = ordered_rows({{a, a, b, b, b, b},
                                  {a, a, b, b, b, b},
                                  {a, a, b, b, b, b}});
    ReductionState st = make_reduction_state(inst, ones(3));
    CHECK_THROWS_AS(try_triple_rule(st, Rational(6, 7)), std::invalid_argument);

    Rational big(9, 10), small(1, 10);
    Instance live = ordered_rows({{big, big, big, small, small, small},
                                  {big, big, big, small, small, small},
                                  {big, big, big, small, small, small}});
    ReductionState st2 = make_reduction_state(live, ones(3));
    CHECK_THROWS_AS(try_triple_rule(st2, Rational(4, 5)), std::invalid_argument);
  }

  TEST_CASE("rules return false when their patterns are absent") {
    Rational tiny(1, 100);
    Instance inst = ordered_rows({{tiny, tiny, tiny, tiny, tiny, tiny},
                                  {tiny, tiny, tiny, tiny, tiny, tiny},
                                  {tiny, tiny, tiny, tiny, tiny, tiny}});
    ReductionState st = make_reduction_state(inst, ones(3));
    CHECK_FALSE(try_window_rule(st, Rational(6, 7), 0));
    CHECK_FALSE(try_window_rule(st, Rational(6, 7), 1));
    CHECK_FALSE(try_pair_rule(st, Rational(6, 7)));
    CHECK_FALSE(try_triple_rule(st, Rational(4, 5)));
    CHECK(st.steps.empty());
    CHECK(st.current.n == 3);
  }

  TEST_CASE("the fixed-point drivers leave no rule applicable") {
    // A mixed instance: the drivers must stop only when nothing fires.
    Instance base = ordered_rows({{Rational(2, 5), Rational(2, 5), Rational(1, 5),
                                   Rational(1, 5), Rational(1, 10), Rational(1, 10)},
                                  {Rational(1, 2), Rational(1, 4), Rational(1, 4),
                                   Rational(1, 4), Rational(1, 8), Rational(1, 8)},
                                  {Rational(3, 10), Rational(3, 10), Rational(3, 10),
                                   Rational(3, 10), Rational(3, 10), Rational(3, 10)}});
    ReductionState st = make_reduction_state(base, ones(3));
    pair_reduce(st, Rational(6, 7));
    if (st.current.n > 0) {
      for (int k = 0; k * st.current.n < st.current.m; ++k) {
        CHECK_FALSE(window_rule_applicable(st, Rational(6, 7), k));
      }
      ReductionState probe = st;
      CHECK_FALSE(try_pair_rule(probe, Rational(6, 7)));
    }
    // Bookkeeping stays coherent regardless of how far it got.
    CHECK(static_cast<int>(st.agentMap.size()) == st.current.n);
    CHECK(static_cast<int>(st.goodMap.size()) == st.current.m);
    std::size_t servedCount = 0;
    for (const auto& step : st.steps) servedCount += step.removedAgents.size();
    CHECK(servedCount + st.agentMap.size() == 3);
  }
}
