// SPDX-License-Identifier: MIT

#include "mmscopies/instances.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

Rational grid_value(Rng& rng, int maxDen) {
  // den in [1, maxDen], num in [1, den]: a positive value in (0, 1].
  int den = rng.range(1, maxDen);
  int num = rng.range(1, den);
  return Rational(num, den);
}

std::vector<std::vector<Rational>> grid_matrix(int n, int m, std::uint64_t seed, int maxDen) {
  Rng rng(seed);
  std::vector<std::vector<Rational>> values(static_cast<std::size_t>(n));
  for (auto& row : values) {
    row.reserve(static_cast<std::size_t>(m));
    for (int g = 0; g < m; ++g) row.push_back(grid_value(rng, maxDen));
  }
  return values;
}

}  // namespace

Instance gen_random_additive(int n, int m, std::uint64_t seed, int maxDen) {
  check(n >= 1 && m >= 0, "gen_random_additive: bad sizes");
  check(maxDen >= 1, "gen_random_additive: bad denominator bound");
  Instance inst;
  inst.kind = ValuationKind::Additive;
  inst.n = n;
  inst.m = m;
  inst.values = grid_matrix(n, m, seed, maxDen);
  return inst;
}

Instance gen_random_kdemand(int n, int m, int k, std::uint64_t seed, int maxDen) {
  check(n >= 1 && m >= 0 && k >= 1, "gen_random_kdemand: bad sizes");
  Instance inst;
  inst.kind = ValuationKind::KDemand;
  inst.n = n;
  inst.m = m;
  inst.values = grid_matrix(n, m, seed, maxDen);
  inst.demand.assign(static_cast<std::size_t>(n), k);
  return inst;
}

ChoreInstance gen_random_chores(int n, int m, std::uint64_t seed, int maxDen) {
  check(n >= 1 && m >= 0, "gen_random_chores: bad sizes");
  ChoreInstance inst;
  inst.n = n;
  inst.m = m;
  inst.costs = grid_matrix(n, m, seed, maxDen);
  return inst;
}

Instance gen_cube(int n) {
  check(n >= 2 && n <= 5, "gen_cube: n must be in [2, 5]");
  int m = 1;
  for (int i = 0; i < n; ++i) m *= n;  // n^n points
  int classSize = m / n;               // n^(n-1)

  Instance inst;
  inst.kind = ValuationKind::MonotoneOracle;
  inst.n = n;
  inst.m = m;
  inst.oraclePartitions.assign(static_cast<std::size_t>(n), {});
  // digit axis i of point g: (g / n^i) mod n
  std::vector<int> pow(static_cast<std::size_t>(n), 1);
  for (int i = 1; i < n; ++i) pow[static_cast<std::size_t>(i)] = pow[static_cast<std::size_t>(i - 1)] * n;
  for (int i = 0; i < n; ++i) {
    auto& classes = inst.oraclePartitions[static_cast<std::size_t>(i)];
    classes.assign(static_cast<std::size_t>(n), {});
    for (int g = 0; g < m; ++g)
      classes[static_cast<std::size_t>((g / pow[static_cast<std::size_t>(i)]) % n)].push_back(g);
  }
  inst.oracle = [n, m, classSize, pow](int agent, const std::vector<int>& bundle) -> Rational {
    std::vector<int> tally(static_cast<std::size_t>(n), 0);
    for (int g : bundle) {
      if (g < 0 || g >= m) throw std::invalid_argument("cube oracle: good out of range");
      ++tally[static_cast<std::size_t>((g / pow[static_cast<std::size_t>(agent)]) % n)];
    }
    for (int j = 0; j < n; ++j)
      if (tally[static_cast<std::size_t>(j)] == classSize) return Rational(1);
    return Rational(0);
  };
  return inst;
}

Instance worked_example_instance() {
  // 12 goods, 4 agents; entries are tenths. Every agent's maximin share over
  // 4 bundles is exactly 1 (witness partitions live in the tests).
  static const int tenths[12][4] = {
      {2, 3, 2, 1},  // good 0
      {2, 5, 3, 1},  // good 1
      {7, 3, 2, 8},  // good 2
      {3, 2, 3, 2},  // good 3
      {3, 8, 1, 2},  // good 4
      {5, 5, 1, 7},  // good 5
      {1, 1, 5, 1},  // good 6
      {1, 1, 7, 2},  // good 7
      {8, 3, 3, 8},  // good 8
      {2, 6, 3, 3},  // good 9
      {2, 2, 9, 3},  // good 10
      {7, 3, 1, 5},  // good 11
  };
  Instance inst;
  inst.kind = ValuationKind::Additive;
  inst.n = 4;
  inst.m = 12;
  inst.values.assign(4, std::vector<Rational>(12));
  for (int g = 0; g < 12; ++g)
    for (int i = 0; i < 4; ++i) inst.values[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)] = Rational(tenths[g][i], 10);
  return inst;
}

WorkedExampleScript worked_example_script() {
  WorkedExampleScript s;
  s.events = {
      {3, false}, {6, false}, {8, false}, {0, false}, {1, false}, {9, false},
      {11, false}, {6, true}, {4, false}, {2, false}, {7, false},
  };
  s.awardChoices = {0, 1, 3, 2};
  s.expectedBundles = {
      {3, 6, 8},
      {0, 1, 8},
      {2, 4, 5, 6, 7, 10},  // includes the completion-pass goods 5 and 10
      {1, 6, 9, 11},
  };
  s.expectedCloserLog = {8, 1, 6};
  return s;
}

std::pair<NonSimpleFixture, NonSimpleFixture> picking_sequence_counterexamples() {
  auto make = [](std::vector<std::vector<Rational>> values,
                 std::vector<std::vector<int>> bundles) {
    NonSimpleFixture f;
    f.instance.kind = ValuationKind::Additive;
    f.instance.n = 3;
    f.instance.m = 3;
    f.instance.values = std::move(values);
    f.orderedBundles.bundles = std::move(bundles);
    return f;
  };
  // First: two agents rank the goods one way, the third another; every rank
  // is duplicated once, but three duplicated ranks exceed n/2.
  NonSimpleFixture first = make(
      {{Rational(1, 2), Rational(1, 6), Rational(1, 3)},
       {Rational(1, 2), Rational(1, 6), Rational(1, 3)},
       {Rational(1, 2), Rational(1, 3), Rational(1, 6)}},
      {{0, 1}, {0, 2}, {1, 2}});
  // Second: one agent holds everything; one agent shows up in two of the
  // sharing pairs, so the holders cannot be pairwise distinct.
  NonSimpleFixture second = make(
      {{Rational(1, 2), Rational(1, 3), Rational(1, 6)},
       {Rational(1, 6), Rational(1, 3), Rational(1, 2)},
       {Rational(1, 6), Rational(1, 3), Rational(1, 2)}},
      {{0, 1, 2}, {0}, {1, 2}});
  return {first, second};
}

Instance two_demand_adversarial(int n, const Rational& eps) {
  check(n >= 2, "two_demand_adversarial: need n >= 2");
  check(eps.sign() > 0 && eps < Rational(1), "two_demand_adversarial: eps must be in (0, 1)");
  Instance inst;
  inst.kind = ValuationKind::KDemand;
  inst.n = n;
  inst.m = 2 * n;
  inst.demand.assign(static_cast<std::size_t>(n), 2);
  Rational low = (Rational(1) - eps) / 2;
  Rational high = (Rational(1) + eps) / 2;
  Rational half(1, 2);
  std::vector<Rational> row;
  for (int g = 0; g < n - 1; ++g) row.push_back(low);
  for (int g = 0; g < n - 1; ++g) row.push_back(high);
  row.push_back(half);
  row.push_back(half);
  inst.values.assign(static_cast<std::size_t>(n), row);
  return inst;
}

std::vector<int> two_demand_documented_order(int n) {
  check(n >= 2, "two_demand_documented_order: need n >= 2");
  std::vector<int> order;
  for (int g = 0; g < n - 1; ++g) order.push_back(g);          // low goods
  order.push_back(2 * n - 2);                                   // first half
  order.push_back(2 * n - 1);                                   // second half
  for (int g = n - 1; g < 2 * n - 2; ++g) order.push_back(g);  // high goods
  return order;
}

}  // namespace mmscopies
