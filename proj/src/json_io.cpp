// SPDX-License-Identifier: MIT

#include "mmscopies/json_io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmscopies/instances.hpp"

namespace mmscopies {

namespace {

void check(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

int require_int(const Json& j, const char* key) {
  check(j.contains(key), std::string("instance JSON: missing \"") + key + "\"");
  const Json& v = j.at(key);
  check(v.is_number_integer(), std::string("instance JSON: \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::vector<Rational>> parse_values(const Json& j, int n, int m, bool allowZero) {
  check(j.contains("values"), "instance JSON: missing \"values\"");
  const Json& rows = j.at("values");
  check(rows.is_array() && static_cast<int>(rows.size()) == n,
        "instance JSON: \"values\" must hold one row per agent");
  std::vector<std::vector<Rational>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (const Json& row : rows) {
    check(row.is_array() && static_cast<int>(row.size()) == m,
          "instance JSON: every value row must hold one entry per good");
    std::vector<Rational> parsed;
    parsed.reserve(static_cast<std::size_t>(m));
    for (const Json& cell : row) {
      check(cell.is_string(), "instance JSON: values must be rational strings");
      Rational r = Rational::parse(cell.get<std::string>());
      check(r.sign() > 0 || (allowZero && r.sign() == 0),
            "instance JSON: values must be nonnegative");
      parsed.push_back(r);
    }
    out.push_back(std::move(parsed));
  }
  return out;
}

std::int64_t cube_good_count(int n) {
  std::int64_t m = 1;
  for (int i = 0; i < n; ++i) m *= n;
  return m;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  switch (inst.kind) {
    case ValuationKind::Additive:
      j["kind"] = "additive";
      break;
    case ValuationKind::KDemand:
      j["kind"] = "kdemand";
      break;
    case ValuationKind::MonotoneOracle:
      check(inst.n >= 1 && cube_good_count(inst.n) == inst.m,
            "instance JSON: only the cube family of oracle instances serializes");
      j["kind"] = "monotone-cube";
      j["n"] = inst.n;
      j["m"] = inst.m;
      return j;
  }
  j["n"] = inst.n;
  j["m"] = inst.m;
  if (inst.kind == ValuationKind::KDemand) {
    check(static_cast<int>(inst.demand.size()) == inst.n,
          "instance JSON: k-demand instance without per-agent demands");
    const bool uniform =
        std::all_of(inst.demand.begin(), inst.demand.end(),
                    [&](int k) { return k == inst.demand.front(); });
    if (uniform && !inst.demand.empty()) {
      j["k"] = inst.demand.front();
    } else {
      j["k"] = inst.demand;
    }
  }
  Json rows = Json::array();
  for (const auto& row : inst.values) {
    Json cells = Json::array();
    for (const Rational& v : row) cells.push_back(v.str());
    rows.push_back(std::move(cells));
  }
  j["values"] = std::move(rows);
  return j;
}

Json chores_to_json(const ChoreInstance& inst) {
  Json j;
  j["kind"] = "chores";
  j["n"] = inst.n;
  j["m"] = inst.m;
  Json rows = Json::array();
  for (const auto& row : inst.costs) {
    Json cells = Json::array();
    for (const Rational& c : row) cells.push_back(c.str());
    rows.push_back(std::move(cells));
  }
  j["values"] = std::move(rows);
  return j;
}

ParsedInstance instance_from_json(const Json& j) {
  check(j.is_object(), "instance JSON: top level must be an object");
  check(j.contains("kind") && j.at("kind").is_string(),
        "instance JSON: missing string \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const int n = require_int(j, "n");
  check(n >= 0, "instance JSON: negative agent count");

  ParsedInstance out;
  if (kind == "monotone-cube") {
    out.goods = gen_cube(n);
    if (j.contains("m"))
      check(require_int(j, "m") == out.goods.m,
            "instance JSON: cube good count does not match n^n");
    return out;
  }

  const int m = require_int(j, "m");
  check(m >= 0, "instance JSON: negative good count");

  if (kind == "chores") {
    out.isChores = true;
    out.chores.n = n;
    out.chores.m = m;
    out.chores.costs = parse_values(j, n, m, /*allowZero=*/true);
    return out;
  }

  if (kind == "additive") {
    out.goods.kind = ValuationKind::Additive;
  } else if (kind == "kdemand") {
    out.goods.kind = ValuationKind::KDemand;
  } else {
    throw std::invalid_argument("instance JSON: unknown kind \"" + kind + "\"");
  }
  out.goods.n = n;
  out.goods.m = m;
  out.goods.values = parse_values(j, n, m, /*allowZero=*/true);
  if (out.goods.kind == ValuationKind::KDemand) {
    check(j.contains("k"), "instance JSON: k-demand instance needs \"k\"");
    const Json& k = j.at("k");
    if (k.is_number_integer()) {
      out.goods.demand.assign(static_cast<std::size_t>(n), k.get<int>());
    } else if (k.is_array()) {
      check(static_cast<int>(k.size()) == n,
            "instance JSON: \"k\" array must hold one entry per agent");
      for (const Json& cell : k) {
        check(cell.is_number_integer(), "instance JSON: \"k\" entries must be integers");
        out.goods.demand.push_back(cell.get<int>());
      }
    } else {
      throw std::invalid_argument("instance JSON: \"k\" must be an integer or an array");
    }
    for (int kk : out.goods.demand)
      check(kk >= 1, "instance JSON: demands must be positive");
  }
  return out;
}

Json allocation_to_json(const CopyAllocation& alloc, const std::vector<int>* discarded) {
  Json j;
  Json bundles = Json::array();
  for (const auto& b : alloc.bundles) bundles.push_back(b);
  j["bundles"] = std::move(bundles);
  if (discarded != nullptr) j["discarded"] = *discarded;
  return j;
}

CopyAllocation allocation_from_json(const Json& j, std::vector<int>* discardedOut) {
  check(j.is_object() && j.contains("bundles"), "allocation JSON: missing \"bundles\"");
  const Json& bundles = j.at("bundles");
  check(bundles.is_array(), "allocation JSON: \"bundles\" must be an array");
  CopyAllocation out;
  for (const Json& b : bundles) {
    check(b.is_array(), "allocation JSON: every bundle must be an array");
    std::vector<int> bundle;
    for (const Json& cell : b) {
      check(cell.is_number_integer(), "allocation JSON: bundle entries must be integers");
      bundle.push_back(cell.get<int>());
    }
    out.bundles.push_back(std::move(bundle));
  }
  if (discardedOut != nullptr) {
    discardedOut->clear();
    if (j.contains("discarded")) {
      const Json& d = j.at("discarded");
      check(d.is_array(), "allocation JSON: \"discarded\" must be an array");
      for (const Json& cell : d) {
        check(cell.is_number_integer(), "allocation JSON: discarded entries must be integers");
        discardedOut->push_back(cell.get<int>());
      }
    }
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

ParsedInstance load_instance_file(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace mmscopies
