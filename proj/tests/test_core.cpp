// SPDX-License-Identifier: MIT
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mmscopies/core.hpp"

using namespace mmscopies;

namespace {

Instance small_additive() {
  Instance inst;
  inst.kind = ValuationKind::Additive;
  inst.n = 2;
  inst.m = 4;
  inst.values = {{Rational(1), Rational(2), Rational(3), Rational(4)},
                 {Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5)}};
  return inst;
}

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("additive evaluation sums the bundle") {
    Instance inst = small_additive();
    CHECK(evaluate(inst, 0, {0, 2}) == Rational(4));
    CHECK(evaluate(inst, 1, {1, 3}) == Rational(8, 15));
    CHECK(evaluate(inst, 0, {}) == Rational(0));
  }

  TEST_CASE("k-demand evaluation keeps only the k best values") {
    Instance inst = small_additive();
    inst.kind = ValuationKind::KDemand;
    inst.demand = {2, 1};
    CHECK(evaluate(inst, 0, {0, 1, 2, 3}) == Rational(7));  // 3 + 4
    CHECK(evaluate(inst, 0, {0, 1}) == Rational(3));
    CHECK(evaluate(inst, 0, {0}) == Rational(1));
    CHECK(evaluate(inst, 1, {0, 1, 2, 3}) == Rational(1, 2));
    CHECK(evaluate(inst, 1, {}) == Rational(0));
  }

  TEST_CASE("oracle evaluation defers to the callback") {
    Instance inst;
    inst.kind = ValuationKind::MonotoneOracle;
    inst.n = 1;
    inst.m = 3;
    inst.oracle = [](int, const std::vector<int>& b) {
      return Rational(static_cast<std::int64_t>(b.size()));
    };
    CHECK(evaluate(inst, 0, {0, 2}) == Rational(2));
  }

  TEST_CASE("evaluation validates its inputs") {
    Instance inst = small_additive();
    CHECK_THROWS_AS(evaluate(inst, -1, {0}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, 2, {0}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, 0, {4}), std::invalid_argument);
    // Bundles are plain good lists; order is the allocation structures' concern.
    CHECK(evaluate(inst, 0, {2, 1}) == evaluate(inst, 0, {1, 2}));
  }

  TEST_CASE("copy statistics count extra holders") {
    CopyAllocation alloc;
    alloc.bundles = {{0, 1}, {1, 2}, {1, 3}};
    CopyStats stats = copy_stats(alloc, 5);
    CHECK(stats.totalExtraCopies == 2);  // good 1 held three times
    CHECK(stats.maxPerGoodExtra == 2);
    CHECK(stats.multiplicity == std::vector<int>{1, 3, 1, 1, 0});

    CopyAllocation clean;
    clean.bundles = {{0}, {1}, {2, 3, 4}};
    CopyStats none = copy_stats(clean, 5);
    CHECK(none.totalExtraCopies == 0);
    CHECK(none.maxPerGoodExtra == 0);
  }

  TEST_CASE("allocation shape validation") {
    CopyAllocation alloc;
    alloc.bundles = {{0, 1}, {2}};
    CHECK_NOTHROW(validate_allocation_shape(alloc, 2, 3));
    CHECK_THROWS_AS(validate_allocation_shape(alloc, 3, 3), std::invalid_argument);
    alloc.bundles = {{1, 0}, {2}};
    CHECK_THROWS_AS(validate_allocation_shape(alloc, 2, 3), std::invalid_argument);
    alloc.bundles = {{0, 3}, {2}};
    CHECK_THROWS_AS(validate_allocation_shape(alloc, 2, 3), std::invalid_argument);
  }

  TEST_CASE("guarantee report recomputes values and coverage") {
    Instance inst = small_additive();
    CopyAllocation alloc;
    alloc.bundles = {{2, 3}, {0, 1}};
    std::vector<Rational> targets = {Rational(7), Rational(5, 6)};
    GuaranteeReport rep = verify_guarantee(inst, alloc, targets);
    CHECK(rep.agents[0].value == Rational(7));
    CHECK(rep.agents[0].ok);
    CHECK(rep.agents[1].value == Rational(5, 6));
    CHECK(rep.agents[1].ok);
    CHECK(rep.coverage);
    CHECK(rep.allOk);

    targets[0] = Rational(8);
    rep = verify_guarantee(inst, alloc, targets);
    CHECK_FALSE(rep.agents[0].ok);
    CHECK_FALSE(rep.allOk);

    alloc.bundles = {{2, 3}, {0}};
    rep = verify_guarantee(inst, alloc, {Rational(7), Rational(1, 2)});
    CHECK_FALSE(rep.coverage);  // good 1 unheld
    CHECK(rep.allOk);           // coverage is informational
  }

  TEST_CASE("sorted-vector helpers") {
    CHECK(is_sorted_unique({0, 2, 5}));
    CHECK(is_sorted_unique({}));
    CHECK_FALSE(is_sorted_unique({0, 0}));
    CHECK_FALSE(is_sorted_unique({2, 1}));
    CHECK(sorted_union({0, 2}, {1, 2, 4}) == std::vector<int>{0, 1, 2, 4});
    CHECK(sorted_difference({0, 1, 2, 3}, {1, 3}) == std::vector<int>{0, 2});
    CHECK(all_goods(3) == std::vector<int>{0, 1, 2});
    CHECK(all_goods(0).empty());
  }

  TEST_CASE("deterministic rng repeats its stream") {
    Rng a(42), b(42), c(43);
    bool same = true, diff = false;
    for (int i = 0; i < 100; ++i) {
      auto x = a.next();
      same = same && (x == b.next());
      diff = diff || (x != c.next());
    }
    CHECK(same);
    CHECK(diff);

    Rng d(7);
    for (int i = 0; i < 1000; ++i) {
      auto v = d.below(13);
      CHECK(v < 13);
    }
    Rng e(7);
    std::vector<int> xs = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<int> ys = xs;
    e.shuffle(xs);
    Rng f(7);
    f.shuffle(ys);
    CHECK(xs == ys);
  }
}
