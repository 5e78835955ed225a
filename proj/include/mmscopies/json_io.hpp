// SPDX-License-Identifier: MIT
//
// JSON round-trips for instances and allocations. Values are exact rational
// strings ("p" or "p/q"); nothing ever goes through floating point. Key order
// is fixed so equal inputs serialize to identical bytes.
//
// Instance schema:
//   {"kind": "additive" | "kdemand" | "monotone-cube" | "chores",
//    "n": int, "m": int,
//    "k": int | [int, ...]          (kdemand only; scalar when uniform)
//    "values": [[rational-string, ...], ...]}  (costs for chores; absent for
//                                               the cube, which is rebuilt
//                                               from n)
// Allocation schema:
//   {"bundles": [[int, ...], ...], "discarded": [int, ...] (chores only)}

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mmscopies/core.hpp"
#include "mmscopies/variants_types.hpp"

namespace mmscopies {

using Json = nlohmann::ordered_json;

// A loaded instance is either a goods instance or a chores instance.
struct ParsedInstance {
  bool isChores = false;
  Instance goods;        // meaningful when !isChores
  ChoreInstance chores;  // meaningful when isChores
};

// Oracle instances serialize only for the cube family (identified by
// m == n^n); anything else throws std::invalid_argument.
Json instance_to_json(const Instance& inst);
Json chores_to_json(const ChoreInstance& inst);
ParsedInstance instance_from_json(const Json& j);

Json allocation_to_json(const CopyAllocation& alloc, const std::vector<int>* discarded = nullptr);
CopyAllocation allocation_from_json(const Json& j, std::vector<int>* discardedOut = nullptr);

Json load_json_file(const std::string& path);
ParsedInstance load_instance_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace mmscopies
