// SPDX-License-Identifier: MIT
//
// Shared type for chore division: additive costs instead of values. Kept in
// its own header so generators can produce chore instances without pulling in
// the chore algorithms.

#pragma once

#include <vector>

#include "mmscopies/rational.hpp"

namespace mmscopies {

struct ChoreInstance {
  int n = 0;
  int m = 0;
  std::vector<std::vector<Rational>> costs;  // n rows of m nonnegative costs
};

}  // namespace mmscopies
