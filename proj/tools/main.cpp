// SPDX-License-Identifier: MIT
//
// Command-line front end: generate instances, compute shares, run the
// solvers, verify allocations against recomputed targets, and benchmark.
//
// Exit codes: 0 when every checked guarantee holds, 1 when a solver reports
// failure or a recomputed guarantee is violated, 2 on usage or input errors.
//
// Everything the reports assert is recomputed here from the instance file
// and the raw allocation; solver-internal bookkeeping is never trusted.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mmscopies/core.hpp"
#include "mmscopies/instances.hpp"
#include "mmscopies/json_io.hpp"
#include "mmscopies/mms.hpp"
#include "mmscopies/ordered.hpp"
#include "mmscopies/rational.hpp"
#include "mmscopies/reduce.hpp"
#include "mmscopies/solve.hpp"
#include "mmscopies/variants.hpp"

namespace {

using mmscopies::ChoreInstance;
using mmscopies::CopyAllocation;
using mmscopies::GuaranteeReport;
using mmscopies::Instance;
using mmscopies::InsertionPlan;
using mmscopies::Json;
using mmscopies::ParsedInstance;
using mmscopies::Rational;
using mmscopies::SearchLimits;
using mmscopies::ValuationKind;

// ---------------------------------------------------------------------------
// small utilities

std::string digest_of(const Json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  return out;
}

int parse_int_token(const std::string& tok) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size()) throw std::invalid_argument("expected an integer, got '" + tok + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : split_commas(text)) out.push_back(parse_int_token(tok));
  return out;
}

// Insertion order for bag filling: "asc", "shuffle:<seed>", or a comma list
// of good indices where a "c" prefix marks the insertion of an extra copy
// (e.g. "3,6,8,c6,4").
InsertionPlan parse_plan(const std::string& order, const std::string& choices, int m) {
  InsertionPlan plan;
  if (order.empty() || order == "asc") {
    plan = mmscopies::default_plan(m);
  } else if (order.rfind("shuffle:", 0) == 0) {
    std::uint64_t seed = std::stoull(order.substr(8));
    std::vector<int> perm = mmscopies::all_goods(m);
    mmscopies::Rng rng(seed);
    rng.shuffle(perm);
    plan = mmscopies::plan_from_order(perm);
  } else {
    for (const auto& tok : split_commas(order)) {
      if (!tok.empty() && tok[0] == 'c') {
        plan.events.push_back({parse_int_token(tok.substr(1)), true});
      } else {
        plan.events.push_back({parse_int_token(tok), false});
      }
    }
  }
  if (!choices.empty()) plan.awardChoices = parse_int_list(choices);
  return plan;
}

// Good order for the k-demand filler: copies are not part of the input
// language there, only a permutation (or "asc"/"shuffle:<seed>").
std::optional<std::vector<int>> parse_permutation(const std::string& order, int m) {
  if (order.empty() || order == "asc") return std::nullopt;
  if (order.rfind("shuffle:", 0) == 0) {
    std::uint64_t seed = std::stoull(order.substr(8));
    std::vector<int> perm = mmscopies::all_goods(m);
    mmscopies::Rng rng(seed);
    rng.shuffle(perm);
    return perm;
  }
  for (const auto& tok : split_commas(order)) {
    if (!tok.empty() && tok[0] == 'c')
      throw std::invalid_argument("copy events are not valid in a k-demand order");
  }
  return parse_int_list(order);
}

// Exact per-agent share with n bundles. Oracle instances carry their own
// partition certificates; their share is the cheapest certified class.
std::vector<Rational> base_shares(const Instance& inst, const SearchLimits& limits) {
  std::vector<Rational> shares(static_cast<std::size_t>(inst.n));
  if (inst.kind == ValuationKind::MonotoneOracle) {
    for (int i = 0; i < inst.n; ++i) {
      Rational best;
      bool first = true;
      for (const auto& cls : inst.oraclePartitions[static_cast<std::size_t>(i)]) {
        Rational v = inst.oracle(i, cls);
        if (first || v < best) best = v;
        first = false;
      }
      shares[static_cast<std::size_t>(i)] = best;
    }
    return shares;
  }
  for (int i = 0; i < inst.n; ++i)
    shares[static_cast<std::size_t>(i)] = mmscopies::exact_mms(inst, i, inst.n, limits).value;
  return shares;
}

std::vector<Rational> chore_shares(const ChoreInstance& inst, const SearchLimits& limits) {
  std::vector<Rational> shares(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i)
    shares[static_cast<std::size_t>(i)] = mmscopies::chores_exact_mms(inst, i, inst.n, limits).value;
  return shares;
}

std::vector<Rational> scaled(const std::vector<Rational>& shares, const Rational& alpha) {
  std::vector<Rational> out = shares;
  for (auto& x : out) x = x * alpha;
  return out;
}

Json report_json(const GuaranteeReport& rep) {
  Json agents = Json::array();
  for (const auto& a : rep.agents) {
    agents.push_back(Json{{"value", a.value.str()}, {"target", a.target.str()}, {"ok", a.ok}});
  }
  return Json{{"agents", agents},
              {"copies",
               Json{{"total_extra", rep.stats.totalExtraCopies},
                    {"max_per_good_extra", rep.stats.maxPerGoodExtra}}},
              {"coverage", rep.coverage},
              {"all_ok", rep.allOk}};
}

Json chores_report_json(const mmscopies::ChoresReport& rep) {
  Json agents = Json::array();
  for (const auto& a : rep.agents) {
    agents.push_back(Json{{"cost", a.cost.str()}, {"target", a.target.str()}, {"ok", a.ok}});
  }
  return Json{{"agents", agents},
              {"disjoint", rep.disjoint},
              {"coverage", rep.coverage},
              {"all_ok", rep.allOk}};
}

Json int_vec(const std::vector<int>& xs) {
  Json out = Json::array();
  for (int x : xs) out.push_back(x);
  return out;
}

Json bundles_json(const std::vector<std::vector<int>>& bs) {
  Json out = Json::array();
  for (const auto& b : bs) out.push_back(int_vec(b));
  return out;
}

void emit(const Json& j, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    mmscopies::save_json_file(outPath, j);
  }
}

// ---------------------------------------------------------------------------
// algorithm table

struct AlgoEntry {
  std::string name;
  Rational cap;          // largest admissible alpha
  bool capExclusive;     // true: alpha must be strictly below the cap
  Rational defaultAlpha;
};

const std::vector<AlgoEntry>& algo_table() {
  static const std::vector<AlgoEntry> table = {
      {"match-n-fill", Rational(1), false, Rational(1)},
      {"bagfill", Rational(1), false, Rational(1)},
      {"rr67", Rational(6, 7), false, Rational(6, 7)},
      {"rr45", Rational(4, 5), false, Rational(4, 5)},
      {"one-out-of-d", Rational(1), true, Rational(1, 2)},
      {"randomized-monotone", Rational(1), false, Rational(1)},
      {"chores", Rational(1), false, Rational(1)},
      {"kdemand", Rational(1), false, Rational(1)},
  };
  return table;
}

const AlgoEntry& algo_entry(const std::string& name) {
  for (const auto& a : algo_table())
    if (a.name == name) return a;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

Rational resolve_alpha(const AlgoEntry& algo, const std::string& alphaText) {
  Rational alpha = alphaText.empty() ? algo.defaultAlpha : Rational::parse(alphaText);
  if (alpha <= Rational(0)) throw std::invalid_argument("alpha must be positive");
  if (algo.capExclusive ? !(alpha < algo.cap) : !(alpha <= algo.cap)) {
    throw std::invalid_argument("alpha " + alpha.str() + " exceeds the cap " + algo.cap.str() +
                                (algo.capExclusive ? " (exclusive)" : "") + " for " + algo.name);
  }
  return alpha;
}

// ---------------------------------------------------------------------------
// shared solver driver (used by `solve` and `bench`)

struct SolveOutcome {
  bool solverOk = true;
  std::string detail;
  CopyAllocation allocation;      // n bundles (possibly empty on failure)
  std::vector<int> discarded;     // chores only
  std::vector<Rational> targets;  // what the verdict compares against
  std::vector<Rational> shares;   // exact per-agent share (denominator of ratios)
  Json trace;                     // algorithm-specific breadcrumbs
};

SolveOutcome run_goods_algorithm(const Instance& inst, const std::string& algorithm,
                                 const Rational& alpha, std::uint64_t seed, int beta,
                                 const std::string& order, const std::string& choices,
                                 const SearchLimits& limits) {
  SolveOutcome out;
  if (algorithm == "match-n-fill") {
    out.shares = base_shares(inst, limits);
    out.targets = scaled(out.shares, alpha);
    auto res = mmscopies::match_n_fill(inst, limits);
    out.allocation = res.allocation;
    out.trace = Json{{"singleton_agents", int_vec(res.singletonAgents)},
                     {"matching_was_perfect", res.matchingWasPerfect},
                     {"copied_goods", int_vec(res.copiedGoods)}};
  } else if (algorithm == "bagfill") {
    out.shares = base_shares(inst, limits);
    out.targets = scaled(out.shares, alpha);
    InsertionPlan plan = parse_plan(order, choices, inst.m);
    auto res = mmscopies::bagfill_with_copies(inst, out.targets, &plan);
    out.solverOk = res.status == mmscopies::BagFillStatus::Ok;
    out.detail = res.detail;
    out.allocation = res.allocation;
    out.trace = Json{{"closer_log", int_vec(res.closerLog)},
                     {"bags_closed", res.bagsClosed},
                     {"last_allocated", res.lastAllocated}};
  } else if (algorithm == "rr67" || algorithm == "rr45") {
    auto res = algorithm == "rr67" ? mmscopies::pipeline_half_copies(inst, alpha, limits)
                                   : mmscopies::pipeline_third_copies(inst, alpha, limits);
    out.allocation = res.allocation;
    out.targets = res.targets;
    out.shares.assign(static_cast<std::size_t>(inst.n), Rational(0));
    for (std::size_t j = 0; j < res.normalization.agentMap.size(); ++j)
      out.shares[static_cast<std::size_t>(res.normalization.agentMap[j])] =
          res.normalization.mu[j];
    Json steps = Json::array();
    for (const auto& st : res.trace.steps) {
      const char* rule = st.rule == mmscopies::ReductionRule::Window  ? "window"
                         : st.rule == mmscopies::ReductionRule::Pair ? "pair"
                                                                     : "triple";
      steps.push_back(Json{{"rule", rule},
                           {"k", st.k},
                           {"removed_agents", int_vec(st.removedAgents)},
                           {"awarded_bundles", bundles_json(st.awardedBundles)},
                           {"copies_introduced", int_vec(st.copiesIntroduced)}});
    }
    Json pairs = Json::array();
    for (const auto& pr : res.witness.pairs) pairs.push_back(Json{pr.first, pr.second});
    out.trace = Json{{"steps", steps},
                     {"rank_allocation", bundles_json(res.rankAllocation.bundles)},
                     {"witness", Json{{"dup_ranks", int_vec(res.witness.dupRanks)},
                                      {"pairs", pairs}}}};
  } else if (algorithm == "one-out-of-d") {
    out.shares = base_shares(inst, limits);
    out.targets = out.shares;  // alpha shapes the rounds; the promise is the full share
    auto res = mmscopies::mms_via_one_out_of_d(inst, alpha, limits);
    out.allocation = res.allocation;
    out.trace = Json{{"kept_agents", int_vec(res.keptAgents)},
                     {"kept_goods_union", int_vec(res.keptGoodsUnion)},
                     {"first_round_d", res.firstRoundD},
                     {"second_round_d", res.secondRoundD}};
  } else if (algorithm == "randomized-monotone") {
    out.shares = base_shares(inst, limits);
    out.targets = scaled(out.shares, alpha);
    auto res = mmscopies::randomized_monotone(inst, beta, seed);
    out.solverOk = res.accepted;
    if (!res.accepted) out.detail = "no draw satisfied the duplication caps within the budget";
    out.allocation = res.allocation;
    out.trace = Json{{"accepted", res.accepted},
                     {"iterations", res.iterations},
                     {"total_extra_copies", res.totalExtraCopies},
                     {"max_per_good_extra", res.maxPerGoodExtra}};
  } else if (algorithm == "kdemand") {
    out.shares = base_shares(inst, limits);
    out.targets = scaled(out.shares, alpha);
    auto perm = parse_permutation(order, inst.m);
    auto res = mmscopies::kdemand_bagfill(inst, out.targets,
                                          perm.has_value() ? &*perm : nullptr);
    out.solverOk = res.status == mmscopies::BagFillStatus::Ok;
    out.detail = res.detail;
    out.allocation = res.allocation;
    out.trace = Json{{"copied_goods", int_vec(res.copiedGoods)},
                     {"last_allocated", res.lastAllocated}};
  } else {
    throw std::invalid_argument("algorithm '" + algorithm + "' does not apply to this instance");
  }
  return out;
}

SolveOutcome run_chores_algorithm(const ChoreInstance& inst, const Rational& alpha,
                                  const SearchLimits& limits) {
  SolveOutcome out;
  out.shares = chore_shares(inst, limits);
  out.targets = scaled(out.shares, alpha);
  auto res = mmscopies::match_n_fill_chores(inst, limits, &out.targets);
  out.allocation = res.allocation;
  out.discarded = res.discarded;
  out.trace = Json{{"matching_was_perfect", res.matchingWasPerfect},
                   {"discarded", int_vec(res.discarded)}};
  return out;
}

// ---------------------------------------------------------------------------
// subcommand bodies

struct GenArgs {
  std::string kind;
  int n = 3;
  int m = 8;
  int k = 2;
  std::uint64_t seed = 1;
  int maxDen = 10;
  std::string eps = "1/10";
  std::string out;
};

int do_gen(const GenArgs& a) {
  Json j;
  if (a.kind == "random-additive") {
    j = mmscopies::instance_to_json(mmscopies::gen_random_additive(a.n, a.m, a.seed, a.maxDen));
  } else if (a.kind == "random-kdemand") {
    j = mmscopies::instance_to_json(
        mmscopies::gen_random_kdemand(a.n, a.m, a.k, a.seed, a.maxDen));
  } else if (a.kind == "random-chores") {
    j = mmscopies::chores_to_json(mmscopies::gen_random_chores(a.n, a.m, a.seed, a.maxDen));
  } else if (a.kind == "cube") {
    j = mmscopies::instance_to_json(mmscopies::gen_cube(a.n));
  } else if (a.kind == "worked-example") {
    j = mmscopies::instance_to_json(mmscopies::worked_example_instance());
  } else if (a.kind == "two-demand") {
    j = mmscopies::instance_to_json(
        mmscopies::two_demand_adversarial(a.n, Rational::parse(a.eps)));
  } else {
    throw std::invalid_argument("unknown generator kind '" + a.kind + "'");
  }
  emit(j, a.out);
  return 0;
}

struct MmsArgs {
  std::string instancePath;
  int agent = 0;
  int d = 0;
  bool unpruned = false;
  int maxGoods = 16;
  int maxBundles = 8;
};

int do_mms(const MmsArgs& a) {
  ParsedInstance pi = mmscopies::load_instance_file(a.instancePath);
  SearchLimits limits{a.maxGoods, a.maxBundles};
  mmscopies::MmsResult res;
  if (pi.isChores) {
    res = a.unpruned ? mmscopies::chores_exact_mms_unpruned(pi.chores, a.agent, a.d)
                     : mmscopies::chores_exact_mms(pi.chores, a.agent, a.d, limits);
  } else {
    res = a.unpruned ? mmscopies::exact_mms_unpruned(pi.goods, a.agent, a.d)
                     : mmscopies::exact_mms(pi.goods, a.agent, a.d, limits);
  }
  Json j{{"value", res.value.str()}, {"partition", bundles_json(res.partition)}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

struct SolveArgs {
  std::string instancePath;
  std::string algorithm;
  std::string alpha;
  std::uint64_t seed = 1;
  int beta = 3;
  std::string order;
  std::string choices;
  bool emitTrace = false;
  std::string out;
  int maxGoods = 16;
  int maxBundles = 8;
};

int do_solve(const SolveArgs& a) {
  const AlgoEntry& algo = algo_entry(a.algorithm);
  Rational alpha = resolve_alpha(algo, a.alpha);
  ParsedInstance pi = mmscopies::load_instance_file(a.instancePath);
  SearchLimits limits{a.maxGoods, a.maxBundles};

  if (pi.isChores != (a.algorithm == "chores")) {
    throw std::invalid_argument(pi.isChores
                                    ? "a chore instance needs --algorithm chores"
                                    : "algorithm 'chores' needs a chore instance");
  }

  Json instanceJson = pi.isChores ? mmscopies::chores_to_json(pi.chores)
                                  : mmscopies::instance_to_json(pi.goods);

  auto t0 = std::chrono::steady_clock::now();
  SolveOutcome res = pi.isChores
                         ? run_chores_algorithm(pi.chores, alpha, limits)
                         : run_goods_algorithm(pi.goods, a.algorithm, alpha, a.seed, a.beta,
                                               a.order, a.choices, limits);
  auto t1 = std::chrono::steady_clock::now();
  long ms = static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());

  bool allOk = false;
  Json reportJson;
  if (pi.isChores) {
    auto rep = mmscopies::verify_chores_guarantee(pi.chores, res.allocation, res.discarded,
                                                  res.targets);
    allOk = rep.allOk;
    reportJson = chores_report_json(rep);
  } else {
    auto rep = mmscopies::verify_guarantee(pi.goods, res.allocation, res.targets);
    allOk = rep.allOk;
    reportJson = report_json(rep);
  }

  Json allocationJson = mmscopies::allocation_to_json(
      res.allocation, pi.isChores ? &res.discarded : nullptr);

  Json parameters{{"alpha", alpha.str()}};
  if (a.algorithm == "randomized-monotone") {
    parameters["seed"] = a.seed;
    parameters["beta"] = a.beta;
  }
  if (!a.order.empty()) parameters["order"] = a.order;
  if (!a.choices.empty()) parameters["choices"] = a.choices;

  Json outJson{{"instance_digest", digest_of(instanceJson)},
               {"algorithm", a.algorithm},
               {"parameters", parameters},
               {"solver_ok", res.solverOk},
               {"allocation", allocationJson},
               {"report", reportJson},
               {"ms", ms}};
  if (!res.detail.empty()) outJson["detail"] = res.detail;
  if (a.emitTrace) outJson["trace"] = res.trace;
  std::cout << outJson.dump(2) << "\n";

  if (!a.out.empty()) mmscopies::save_json_file(a.out, allocationJson);
  return (res.solverOk && allOk) ? 0 : 1;
}

struct VerifyArgs {
  std::string instancePath;
  std::string allocationPath;
  std::string alpha = "1";
  int maxGoods = 16;
  int maxBundles = 8;
};

int do_verify(const VerifyArgs& a) {
  Rational alpha = Rational::parse(a.alpha);
  if (alpha <= Rational(0)) throw std::invalid_argument("alpha must be positive");
  ParsedInstance pi = mmscopies::load_instance_file(a.instancePath);
  SearchLimits limits{a.maxGoods, a.maxBundles};
  std::vector<int> discarded;
  CopyAllocation alloc =
      mmscopies::allocation_from_json(mmscopies::load_json_file(a.allocationPath), &discarded);

  bool allOk = false;
  Json reportJson;
  if (pi.isChores) {
    auto targets = scaled(chore_shares(pi.chores, limits), alpha);
    auto rep = mmscopies::verify_chores_guarantee(pi.chores, alloc, discarded, targets);
    allOk = rep.allOk;
    reportJson = chores_report_json(rep);
  } else {
    auto targets = scaled(base_shares(pi.goods, limits), alpha);
    auto rep = mmscopies::verify_guarantee(pi.goods, alloc, targets);
    allOk = rep.allOk;
    reportJson = report_json(rep);
  }
  Json outJson{{"alpha", alpha.str()}, {"report", reportJson}, {"all_ok", allOk}};
  std::cout << outJson.dump(2) << "\n";
  return allOk ? 0 : 1;
}

struct BenchArgs {
  std::string family;
  int n = 0;
  int m = 0;
  int k = 2;
  int trials = 100;
  std::uint64_t seed = 1;
  std::string algorithm = "rr67";
  std::string alpha;
  int maxDen = 10;
  int maxGoods = 16;
  int maxBundles = 8;
};

int do_bench(const BenchArgs& a) {
  if (a.trials < 1) throw std::invalid_argument("--trials must be at least 1");
  if (a.n < 1 || a.m < a.n) throw std::invalid_argument("need n >= 1 and m >= n");
  const bool choresFamily = a.family == "random-chores";
  const bool kdemandFamily = a.family == "random-kdemand";
  if (a.family != "random-additive" && !choresFamily && !kdemandFamily)
    throw std::invalid_argument("unknown bench family '" + a.family + "'");
  if (choresFamily && a.algorithm != "chores")
    throw std::invalid_argument("family random-chores pairs with --algorithm chores");
  if (kdemandFamily && a.algorithm != "kdemand")
    throw std::invalid_argument("family random-kdemand pairs with --algorithm kdemand");
  if (!choresFamily && !kdemandFamily &&
      (a.algorithm == "chores" || a.algorithm == "kdemand"))
    throw std::invalid_argument("--algorithm " + a.algorithm +
                                " needs the matching random family");
  if (a.algorithm == "rr45" && a.n <= 5)
    throw std::invalid_argument("rr45 requires more than 5 agents");
  const AlgoEntry& algo = algo_entry(a.algorithm);
  Rational alpha = resolve_alpha(algo, a.alpha);
  SearchLimits limits{a.maxGoods, a.maxBundles};

  bool allOk = true;
  std::vector<std::pair<std::uint64_t, std::string>> rows;
  for (int t = 0; t < a.trials; ++t) {
    const std::uint64_t seed = a.seed + static_cast<std::uint64_t>(t);
    Rational minRatio(0);
    int copiesT = 0;
    int maxK = 0;
    long ms = 0;
    bool trialOk = false;
    try {
      auto t0 = std::chrono::steady_clock::now();
      SolveOutcome res;
      ChoreInstance chores;
      Instance goods;
      if (choresFamily) {
        chores = mmscopies::gen_random_chores(a.n, a.m, seed, a.maxDen);
        res = run_chores_algorithm(chores, alpha, limits);
      } else {
        goods = kdemandFamily
                    ? mmscopies::gen_random_kdemand(a.n, a.m, a.k, seed, a.maxDen)
                    : mmscopies::gen_random_additive(a.n, a.m, seed, a.maxDen);
        res = run_goods_algorithm(goods, a.algorithm, alpha, seed, 3, "", "", limits);
      }
      auto t1 = std::chrono::steady_clock::now();
      ms = static_cast<long>(
          std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());

      if (choresFamily) {
        auto rep = mmscopies::verify_chores_guarantee(chores, res.allocation, res.discarded,
                                                      res.targets);
        trialOk = rep.allOk;
        copiesT = static_cast<int>(res.discarded.size());
        maxK = 0;
        bool first = true;
        for (int i = 0; i < chores.n; ++i) {
          const auto& ai = rep.agents[static_cast<std::size_t>(i)];
          if (ai.cost == Rational(0)) continue;
          Rational ratio = res.shares[static_cast<std::size_t>(i)] / ai.cost;
          if (first || ratio < minRatio) minRatio = ratio;
          first = false;
        }
        if (first) minRatio = Rational(1);
      } else {
        auto rep = mmscopies::verify_guarantee(goods, res.allocation, res.targets);
        trialOk = res.solverOk && rep.allOk;
        copiesT = rep.stats.totalExtraCopies;
        maxK = rep.stats.maxPerGoodExtra;
        bool first = true;
        for (int i = 0; i < goods.n; ++i) {
          if (res.shares[static_cast<std::size_t>(i)] == Rational(0)) continue;
          Rational ratio = rep.agents[static_cast<std::size_t>(i)].value /
                           res.shares[static_cast<std::size_t>(i)];
          if (first || ratio < minRatio) minRatio = ratio;
          first = false;
        }
        if (first) minRatio = Rational(1);
      }
    } catch (const std::exception&) {
      trialOk = false;
      minRatio = Rational(0);
    }
    allOk = allOk && trialOk;
    std::ostringstream row;
    row << a.family << ',' << a.n << ',' << a.m << ',' << seed << ',' << a.algorithm << ','
        << alpha.str() << ',' << minRatio.str() << ',' << copiesT << ',' << maxK << ',' << ms;
    rows.emplace_back(seed, row.str());
  }
  std::sort(rows.begin(), rows.end());
  std::cout << "family,n,m,seed,algorithm,alpha,min_ratio,copies_t,max_k,ms\n";
  for (const auto& [seed, row] : rows) {
    (void)seed;
    std::cout << row << "\n";
  }
  return allOk ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maximin-share allocation with bounded duplication"};
  app.require_subcommand(1);

  GenArgs gen;
  CLI::App* genCmd = app.add_subcommand("gen", "generate an instance as JSON");
  genCmd->add_option("--kind", gen.kind,
                     "random-additive | random-kdemand | random-chores | cube | "
                     "worked-example | two-demand")
      ->required();
  genCmd->add_option("--n", gen.n, "agents");
  genCmd->add_option("--m", gen.m, "goods");
  genCmd->add_option("--k", gen.k, "per-agent demand (random-kdemand)");
  genCmd->add_option("--seed", gen.seed, "random seed");
  genCmd->add_option("--max-den", gen.maxDen, "largest denominator on the value grid");
  genCmd->add_option("--eps", gen.eps, "gap parameter for two-demand, a rational");
  genCmd->add_option("--out", gen.out, "write here instead of stdout");

  MmsArgs mmsA;
  CLI::App* mmsCmd = app.add_subcommand("mms", "exact maximin share of one agent");
  mmsCmd->add_option("--instance", mmsA.instancePath, "instance JSON file")->required();
  mmsCmd->add_option("--agent", mmsA.agent, "agent index");
  mmsCmd->add_option("--d", mmsA.d, "number of bundles")->required();
  mmsCmd->add_flag("--unpruned", mmsA.unpruned, "use the naive full enumeration");
  mmsCmd->add_option("--max-goods", mmsA.maxGoods, "search cap on goods");
  mmsCmd->add_option("--max-bundles", mmsA.maxBundles, "search cap on bundles");

  SolveArgs solveA;
  CLI::App* solveCmd = app.add_subcommand("solve", "run a solver and report the guarantees");
  solveCmd->add_option("--instance", solveA.instancePath, "instance JSON file")->required();
  solveCmd
      ->add_option("--algorithm", solveA.algorithm,
                   "match-n-fill | bagfill | rr67 | rr45 | one-out-of-d | "
                   "randomized-monotone | chores | kdemand")
      ->required();
  solveCmd->add_option("--alpha", solveA.alpha, "share fraction, a rational like 6/7");
  solveCmd->add_option("--seed", solveA.seed, "seed (randomized-monotone)");
  solveCmd->add_option("--beta", solveA.beta, "budget multiplier (randomized-monotone)");
  solveCmd->add_option("--order", solveA.order,
                       "insertion order: asc | shuffle:<seed> | comma list, cN = copy of N");
  solveCmd->add_option("--choices", solveA.choices, "comma list of per-bag recipients");
  solveCmd->add_flag("--emit-trace", solveA.emitTrace, "include solver breadcrumbs");
  solveCmd->add_option("--out", solveA.out, "also write the allocation JSON here");
  solveCmd->add_option("--max-goods", solveA.maxGoods, "search cap on goods");
  solveCmd->add_option("--max-bundles", solveA.maxBundles, "search cap on bundles");

  VerifyArgs verifyA;
  CLI::App* verifyCmd =
      app.add_subcommand("verify", "check an allocation file against recomputed shares");
  verifyCmd->add_option("--instance", verifyA.instancePath, "instance JSON file")->required();
  verifyCmd->add_option("--allocation", verifyA.allocationPath, "allocation JSON file")
      ->required();
  verifyCmd->add_option("--alpha", verifyA.alpha, "share fraction to check against");
  verifyCmd->add_option("--max-goods", verifyA.maxGoods, "search cap on goods");
  verifyCmd->add_option("--max-bundles", verifyA.maxBundles, "search cap on bundles");

  BenchArgs benchA;
  CLI::App* benchCmd = app.add_subcommand("bench", "seeded trials, CSV on stdout");
  benchCmd
      ->add_option("--family", benchA.family,
                   "random-additive | random-kdemand | random-chores")
      ->required();
  benchCmd->add_option("--n", benchA.n, "agents")->required();
  benchCmd->add_option("--m", benchA.m, "goods")->required();
  benchCmd->add_option("--k", benchA.k, "per-agent demand (random-kdemand)");
  benchCmd->add_option("--trials", benchA.trials, "number of seeded trials");
  benchCmd->add_option("--seed", benchA.seed, "base seed; trial t uses seed + t");
  benchCmd->add_option("--algorithm", benchA.algorithm, "algorithm to benchmark");
  benchCmd->add_option("--alpha", benchA.alpha, "share fraction");
  benchCmd->add_option("--max-den", benchA.maxDen, "largest denominator on the value grid");
  benchCmd->add_option("--max-goods", benchA.maxGoods, "search cap on goods");
  benchCmd->add_option("--max-bundles", benchA.maxBundles, "search cap on bundles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*genCmd) return do_gen(gen);
    if (*mmsCmd) return do_mms(mmsA);
    if (*solveCmd) return do_solve(solveA);
    if (*verifyCmd) return do_verify(verifyA);
    if (*benchCmd) return do_bench(benchA);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
