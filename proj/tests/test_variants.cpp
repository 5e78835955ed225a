// SPDX-License-Identifier: MIT
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmscopies/core.hpp"
#include "mmscopies/instances.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/variants.hpp"

using namespace mmscopies;

namespace {

ChoreInstance chore_rows(std::vector<std::vector<Rational>> rows) {
  ChoreInstance inst;
  inst.n = static_cast<int>(rows.size());
  inst.m = static_cast<int>(rows[0].size());
  inst.costs = std::move(rows);
  return inst;
}

}  // namespace

TEST_SUITE("variants") {
  TEST_CASE("chore evaluation sums costs") {
    ChoreInstance inst = chore_rows({{Rational(3), Rational(1), Rational(2)}});
    CHECK(chores_evaluate(inst, 0, {0, 2}) == Rational(5));
    CHECK(chores_evaluate(inst, 0, {}) == Rational(0));
    CHECK_THROWS_AS(chores_evaluate(inst, 1, {0}), std::invalid_argument);
  }

  TEST_CASE("chore share is the best worst-load split") {
    ChoreInstance inst = chore_rows({{Rational(3), Rational(3), Rational(2), Rational(2)}});
    CHECK(chores_exact_mms(inst, 0, 2).value == Rational(5));
    CHECK(chores_exact_mms(inst, 0, 1).value == Rational(10));
    CHECK(chores_exact_mms(inst, 0, 4).value == Rational(3));
    MmsResult res = chores_exact_mms(inst, 0, 2);
    REQUIRE(res.partition.size() == 2);
    Rational worst(0);
    std::vector<int> seen;
    for (const auto& b : res.partition) {
      Rational c = chores_evaluate(inst, 0, b);
      if (c > worst) worst = c;
      for (int g : b) seen.push_back(g);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen == all_goods(4));
    CHECK(worst == res.value);
  }

  TEST_CASE("chore share: both searches agree on a seeded grid") {
    for (int n = 1; n <= 3; ++n) {
      for (int m = n; m <= 7; ++m) {
        ChoreInstance inst = gen_random_chores(n, m, static_cast<std::uint64_t>(50 * n + m));
        for (int agent = 0; agent < n; ++agent) {
          CHECK(chores_exact_mms(inst, agent, n).value ==
                chores_exact_mms_unpruned(inst, agent, n).value);
        }
      }
    }
  }

  TEST_CASE("chore assignment: one agent takes everything") {
    ChoreInstance inst = chore_rows({{Rational(2), Rational(3), Rational(5)}});
    ChoresMatchNFillResult res = match_n_fill_chores(inst);
    CHECK(res.allocation.bundles[0] == std::vector<int>{0, 1, 2});
    CHECK(res.discarded.empty());
    auto rep = verify_chores_guarantee(inst, res.allocation, res.discarded, {Rational(10)});
    CHECK(rep.allOk);
  }

  TEST_CASE("chore assignment: unit costs at m = n spread one each") {
    ChoreInstance inst = chore_rows({{Rational(1), Rational(1), Rational(1)},
                                     {Rational(1), Rational(1), Rational(1)},
                                     {Rational(1), Rational(1), Rational(1)}});
    ChoresMatchNFillResult res = match_n_fill_chores(inst);
    CHECK(res.discarded.empty());
    CHECK(res.matchingWasPerfect);
    std::vector<int> seen;
    for (const auto& b : res.allocation.bundles) {
      CHECK(b.size() == 1);
      seen.push_back(b[0]);
    }
    std::sort(seen.begin(), seen.end());
    CHECK(seen == all_goods(3));
  }

  TEST_CASE("chore assignment: two agents never need a discard") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ChoreInstance inst = gen_random_chores(2, 5 + static_cast<int>(seed % 4), seed);
      std::vector<Rational> mu;
      for (int i = 0; i < 2; ++i) mu.push_back(chores_exact_mms(inst, i, 2).value);
      ChoresMatchNFillResult res = match_n_fill_chores(inst);
      CHECK(res.discarded.empty());
      auto rep = verify_chores_guarantee(inst, res.allocation, res.discarded, mu);
      CHECK(rep.allOk);
      CHECK(rep.coverage);
      CHECK(rep.disjoint);
    }
  }

  TEST_CASE("chore assignment: three agents discard at most one chore") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      ChoreInstance inst = gen_random_chores(3, 6 + static_cast<int>(seed % 4), seed * 3);
      std::vector<Rational> mu;
      for (int i = 0; i < 3; ++i) mu.push_back(chores_exact_mms(inst, i, 3).value);
      ChoresMatchNFillResult res = match_n_fill_chores(inst);
      CHECK(res.discarded.size() <= 1);
      auto rep = verify_chores_guarantee(inst, res.allocation, res.discarded, mu);
      CHECK(rep.allOk);
      CHECK(rep.coverage);
      CHECK(rep.disjoint);
    }
  }

  TEST_CASE("chore assignment refuses targets the pool cannot fit") {
    ChoreInstance inst = chore_rows({{Rational(1), Rational(1), Rational(1), Rational(1)},
                                     {Rational(1), Rational(1), Rational(1), Rational(1)}});
    std::vector<Rational> tight = {Rational(3, 2), Rational(3, 2)};
    CHECK_THROWS_AS(match_n_fill_chores(inst, {}, &tight), std::invalid_argument);
  }

  TEST_CASE("chore report flags overloads, double duty, and dropped chores") {
    ChoreInstance inst = chore_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(2)}});
    std::vector<Rational> targets = {Rational(2), Rational(2)};

    CopyAllocation good;
    good.bundles = {{0}, {1}};
    CHECK(verify_chores_guarantee(inst, good, {}, targets).allOk);

    CopyAllocation overload;
    overload.bundles = {{0, 1}, {}};
    auto rep = verify_chores_guarantee(inst, overload, {}, targets);
    CHECK_FALSE(rep.agents[0].ok);
    CHECK_FALSE(rep.allOk);

    CopyAllocation doubled;
    doubled.bundles = {{0}, {0}};
    auto rep2 = verify_chores_guarantee(inst, doubled, {}, targets);
    CHECK_FALSE(rep2.disjoint);
    CHECK_FALSE(rep2.coverage);  // chore 1 is nowhere
    CHECK_FALSE(rep2.allOk);

    CopyAllocation partial;
    partial.bundles = {{0}, {}};
    auto rep3 = verify_chores_guarantee(inst, partial, {1}, targets);
    CHECK(rep3.coverage);  // the discard list accounts for chore 1
    CHECK(rep3.allOk);
  }

  TEST_CASE("capped-demand filling solves the adversarial family, three agents") {
    Instance inst = two_demand_adversarial(3, Rational(1, 10));
    std::vector<int> order = two_demand_documented_order(3);
    CHECK(order == std::vector<int>{0, 1, 4, 5, 2, 3});

    // Plain bag filling cannot even start: the whole pool is worth 1+eps
    // under a 2-demand valuation, far below three unit targets.
    InsertionPlan plainPlan = plan_from_order({0, 1, 4, 5, 2, 3});
    BagFillResult plain =
        bagfill_with_copies(inst, std::vector<Rational>(3, Rational(1)), &plainPlan);
    CHECK(plain.status == BagFillStatus::InvariantViolated);

    KDemandBagFillResult res =
        kdemand_bagfill(inst, std::vector<Rational>(3, Rational(1)), &order);
    REQUIRE(res.status == BagFillStatus::Ok);
    CHECK(res.allocation.bundles[0] == std::vector<int>{4, 5});
    CHECK(res.allocation.bundles[1] == std::vector<int>{2, 5});
    CHECK(res.allocation.bundles[2] == std::vector<int>{0, 1, 2, 3});
    CHECK(res.copiedGoods == std::vector<int>{5, 2});
    CHECK(res.lastAllocated == 2);
    CopyStats stats = copy_stats(res.allocation, 6);
    CHECK(stats.totalExtraCopies == 2);  // within the n-1 budget
    CHECK(stats.maxPerGoodExtra == 1);
    for (int i = 0; i < 3; ++i)
      CHECK(evaluate(inst, i, res.allocation.bundles[static_cast<std::size_t>(i)]) >=
            Rational(1));
  }

  TEST_CASE("capped-demand filling solves the adversarial family, four agents") {
    Instance inst = two_demand_adversarial(4, Rational(1, 10));
    std::vector<int> order = two_demand_documented_order(4);
    CHECK(order == std::vector<int>{0, 1, 2, 6, 7, 3, 4, 5});
    KDemandBagFillResult res =
        kdemand_bagfill(inst, std::vector<Rational>(4, Rational(1)), &order);
    REQUIRE(res.status == BagFillStatus::Ok);
    CHECK(res.allocation.bundles[0] == std::vector<int>{6, 7});
    CHECK(res.allocation.bundles[1] == std::vector<int>{3, 7});
    CHECK(res.allocation.bundles[2] == std::vector<int>{3, 4});
    CHECK(res.allocation.bundles[3] == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(res.copiedGoods == std::vector<int>{7, 3, 4});
    CopyStats stats = copy_stats(res.allocation, 8);
    CHECK(stats.totalExtraCopies == 3);
    CHECK(stats.maxPerGoodExtra == 1);
    for (int i = 0; i < 4; ++i)
      CHECK(evaluate(inst, i, res.allocation.bundles[static_cast<std::size_t>(i)]) >=
            Rational(1));
  }

  TEST_CASE("capped-demand filling with unit demands merges its seed copies") {
    Instance inst;
    inst.kind = ValuationKind::KDemand;
    inst.n = 2;
    inst.m = 2;
    inst.demand = {1, 1};
    inst.values.assign(2, std::vector<Rational>{Rational(1), Rational(1)});
    KDemandBagFillResult res = kdemand_bagfill(inst, {Rational(1), Rational(1)});
    REQUIRE(res.status == BagFillStatus::Ok);
    CHECK(res.allocation.bundles[0] == std::vector<int>{0});
    CHECK(res.allocation.bundles[1] == std::vector<int>{0, 1});
    CHECK(res.copiedGoods == std::vector<int>{0});
    for (int i = 0; i < 2; ++i)
      CHECK(evaluate(inst, i, res.allocation.bundles[static_cast<std::size_t>(i)]) >=
            Rational(1));
    CopyStats stats = copy_stats(res.allocation, 2);
    CHECK(stats.totalExtraCopies <= 1);  // n - 1
  }

  TEST_CASE("capped-demand filling validates its inputs") {
    Instance inst = two_demand_adversarial(3, Rational(1, 10));
    std::vector<Rational> targets(3, Rational(1));
    Instance additive = gen_random_additive(3, 6, 1);
    CHECK_THROWS_AS(kdemand_bagfill(additive, targets), std::invalid_argument);
    CHECK_THROWS_AS(kdemand_bagfill(inst, {Rational(1)}), std::invalid_argument);
    std::vector<int> badOrder = {0, 1, 2, 3, 4};  // one good short
    CHECK_THROWS_AS(kdemand_bagfill(inst, targets, &badOrder), std::invalid_argument);
    std::vector<int> dupOrder = {0, 1, 2, 3, 4, 4};
    CHECK_THROWS_AS(kdemand_bagfill(inst, targets, &dupOrder), std::invalid_argument);
  }
}
