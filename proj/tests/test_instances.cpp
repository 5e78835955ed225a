// SPDX-License-Identifier: MIT
#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmscopies/core.hpp"
#include "mmscopies/instances.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/variants.hpp"

using namespace mmscopies;

TEST_SUITE("instances") {
  TEST_CASE("random additive profiles sit on the value grid and repeat by seed") {
    Instance a = gen_random_additive(3, 8, 42);
    Instance b = gen_random_additive(3, 8, 42);
    Instance c = gen_random_additive(3, 8, 43);
    CHECK(a.kind == ValuationKind::Additive);
    CHECK(a.n == 3);
    CHECK(a.m == 8);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    for (const auto& row : a.values) {
      for (const auto& v : row) {
        CHECK(v > Rational(0));
        CHECK(v <= Rational(1));
      }
    }
    Instance fine = gen_random_additive(2, 5, 7, 30);
    CHECK(fine.values != gen_random_additive(2, 5, 7, 10).values);
  }

  TEST_CASE("random k-demand and chore generators") {
    Instance kd = gen_random_kdemand(3, 7, 2, 9);
    CHECK(kd.kind == ValuationKind::KDemand);
    CHECK(kd.demand == std::vector<int>{2, 2, 2});
    CHECK(kd.values == gen_random_kdemand(3, 7, 2, 9).values);

    ChoreInstance ch = gen_random_chores(3, 6, 5);
    CHECK(ch.n == 3);
    CHECK(ch.m == 6);
    CHECK(ch.costs == gen_random_chores(3, 6, 5).costs);
    for (const auto& row : ch.costs)
      for (const auto& v : row) CHECK(v > Rational(0));
  }

  TEST_CASE("cube family: classes are certificates, partial classes are worthless") {
    Instance cube = gen_cube(2);
    CHECK(cube.kind == ValuationKind::MonotoneOracle);
    CHECK(cube.n == 2);
    CHECK(cube.m == 4);
    REQUIRE(cube.oraclePartitions.size() == 2);
    for (int i = 0; i < 2; ++i) {
      std::vector<int> seen;
      for (const auto& cls : cube.oraclePartitions[static_cast<std::size_t>(i)]) {
        CHECK(cube.oracle(i, cls) == Rational(1));
        for (int g : cls) seen.push_back(g);
      }
      std::sort(seen.begin(), seen.end());
      CHECK(seen == all_goods(4));
    }
    // Exhaustive over all 16 subsets: worth 1 exactly when a full class fits inside.
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<int> bundle;
      for (int g = 0; g < 4; ++g)
        if (mask & (1 << g)) bundle.push_back(g);
      bool hasClass = false;
      for (int i = 0; i < 2 && !hasClass; ++i) {
        for (const auto& cls : cube.oraclePartitions[static_cast<std::size_t>(i)]) {
          bool inside = std::all_of(cls.begin(), cls.end(), [&](int g) {
            return std::binary_search(bundle.begin(), bundle.end(), g);
          });
          if (inside) hasClass = true;
        }
      }
      Rational v0 = cube.oracle(0, bundle);
      Rational v1 = cube.oracle(1, bundle);
      CHECK(((v0 == Rational(1)) || (v1 == Rational(1))) == hasClass);
      // Monotone 0/1 valuations only.
      CHECK((v0 == Rational(0) || v0 == Rational(1)));
    }

    Instance big = gen_cube(3);
    CHECK(big.m == 27);
    for (int i = 0; i < 3; ++i) {
      const auto& parts = big.oraclePartitions[static_cast<std::size_t>(i)];
      REQUIRE(parts.size() == 3);
      for (const auto& cls : parts) {
        CHECK(cls.size() == 9);
        CHECK(big.oracle(i, cls) == Rational(1));
        std::vector<int> partial(cls.begin(), cls.end() - 1);
        CHECK(big.oracle(i, partial) == Rational(0));
      }
    }
    CHECK(big.oracle(0, all_goods(27)) == Rational(1));
    CHECK_THROWS_AS(gen_cube(1), std::invalid_argument);
    CHECK_THROWS_AS(gen_cube(6), std::invalid_argument);
  }

  TEST_CASE("worked example: scripted bundles clear the unit share") {
    Instance inst = worked_example_instance();
    WorkedExampleScript script = worked_example_script();
    CHECK(inst.n == 4);
    CHECK(inst.m == 12);
    REQUIRE(script.expectedBundles.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(evaluate(inst, i, script.expectedBundles[static_cast<std::size_t>(i)]) >=
            Rational(1));
    }
    CHECK(script.expectedCloserLog == std::vector<int>{8, 1, 6});
    // Spot-check the share for the first and last agents; the full sweep
    // lives in the acceptance run.
    CHECK(exact_mms(inst, 0, 4).value == Rational(1));
    CHECK(exact_mms(inst, 3, 4).value == Rational(1));
  }

  TEST_CASE("non-simple fixtures have the advertised shapes") {
    auto [first, second] = picking_sequence_counterexamples();
    CHECK(first.instance.n == 3);
    CHECK(first.instance.m == 3);
    CHECK(first.orderedBundles.bundles.size() == 3);
    CHECK(second.orderedBundles.bundles[0] == std::vector<int>{0, 1, 2});
    CopyStats firstStats = copy_stats(first.orderedBundles, 3);
    CHECK(firstStats.totalExtraCopies == 3);  // every rank duplicated once
    CHECK(firstStats.maxPerGoodExtra == 1);
  }

  TEST_CASE("two-demand family: unit share, but the pool is worth barely more") {
    Rational eps(1, 10);
    Instance inst = two_demand_adversarial(3, eps);
    CHECK(inst.kind == ValuationKind::KDemand);
    CHECK(inst.n == 3);
    CHECK(inst.m == 6);
    CHECK(inst.demand == std::vector<int>{2, 2, 2});
    // Pairing each low good with a high good and keeping the two halves
    // together yields three bundles worth exactly 1 each.
    CHECK(exact_mms(inst, 0, 3).value == Rational(1));
    // Yet the whole pool is worth only 1 + eps to anyone (two best goods).
    CHECK(evaluate(inst, 0, all_goods(6)) == Rational(1) + eps);

    std::vector<int> order = two_demand_documented_order(3);
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == all_goods(6));
    CHECK(order[0] == 0);
    CHECK(order[2] == 4);  // goods 4 and 5 are the halves for n = 3
    CHECK(order[3] == 5);

    CHECK_THROWS_AS(two_demand_adversarial(1, eps), std::invalid_argument);
    CHECK_THROWS_AS(two_demand_adversarial(3, Rational(1)), std::invalid_argument);
  }
}
