// SPDX-License-Identifier: MIT

#include "mmscopies/matching.hpp"

#include <algorithm>
#include <stdexcept>

namespace mmscopies {

namespace {

bool augment(const std::vector<std::vector<int>>& adj, int left, std::vector<bool>& visited,
             std::vector<int>& matchLeft, std::vector<int>& matchRight) {
  for (int r : adj[static_cast<std::size_t>(left)]) {
    if (visited[static_cast<std::size_t>(r)]) continue;
    visited[static_cast<std::size_t>(r)] = true;
    if (matchRight[static_cast<std::size_t>(r)] < 0 ||
        augment(adj, matchRight[static_cast<std::size_t>(r)], visited, matchLeft, matchRight)) {
      matchLeft[static_cast<std::size_t>(left)] = r;
      matchRight[static_cast<std::size_t>(r)] = left;
      return true;
    }
  }
  return false;
}

int matching_size(const std::vector<std::vector<int>>& adj, int rightCount) {
  std::vector<int> matchLeft(adj.size(), -1), matchRight(static_cast<std::size_t>(rightCount), -1);
  int size = 0;
  for (std::size_t l = 0; l < adj.size(); ++l) {
    std::vector<bool> visited(static_cast<std::size_t>(rightCount), false);
    if (augment(adj, static_cast<int>(l), visited, matchLeft, matchRight)) ++size;
  }
  return size;
}

}  // namespace

std::vector<int> max_bipartite_matching(const std::vector<std::vector<int>>& adj, int rightCount) {
  std::vector<int> matchLeft(adj.size(), -1), matchRight(static_cast<std::size_t>(rightCount), -1);
  for (std::size_t l = 0; l < adj.size(); ++l) {
    std::vector<bool> visited(static_cast<std::size_t>(rightCount), false);
    augment(adj, static_cast<int>(l), visited, matchLeft, matchRight);
  }
  return matchLeft;
}

std::vector<int> minimal_violating_set(const std::vector<std::vector<int>>& adj, int rightCount) {
  std::vector<int> matchLeft = max_bipartite_matching(adj, rightCount);
  std::vector<int> matchRight(static_cast<std::size_t>(rightCount), -1);
  int unmatched = -1;
  for (std::size_t l = 0; l < adj.size(); ++l) {
    if (matchLeft[l] >= 0)
      matchRight[static_cast<std::size_t>(matchLeft[l])] = static_cast<int>(l);
    else if (unmatched < 0)
      unmatched = static_cast<int>(l);
  }
  if (unmatched < 0) throw std::invalid_argument("minimal_violating_set: matching is perfect");

  // Alternating reachability from the unmatched left vertex gives a set with
  // exactly one more vertex than it has neighbors.
  std::vector<bool> leftIn(adj.size(), false), rightSeen(static_cast<std::size_t>(rightCount), false);
  std::vector<int> queue = {unmatched};
  leftIn[static_cast<std::size_t>(unmatched)] = true;
  while (!queue.empty()) {
    int l = queue.back();
    queue.pop_back();
    for (int r : adj[static_cast<std::size_t>(l)]) {
      if (rightSeen[static_cast<std::size_t>(r)]) continue;
      rightSeen[static_cast<std::size_t>(r)] = true;
      int partner = matchRight[static_cast<std::size_t>(r)];
      if (partner < 0) throw std::logic_error("minimal_violating_set: augmenting path missed");
      if (!leftIn[static_cast<std::size_t>(partner)]) {
        leftIn[static_cast<std::size_t>(partner)] = true;
        queue.push_back(partner);
      }
    }
  }
  std::vector<int> violating;
  for (std::size_t l = 0; l < adj.size(); ++l)
    if (leftIn[l]) violating.push_back(static_cast<int>(l));

  // Matchability is closed under subsets, so pruning single vertices until
  // every one-smaller subset is matchable yields an inclusion-minimal
  // non-matchable (equivalently, violating) set.
  auto unmatchable = [&](const std::vector<int>& subset) {
    std::vector<std::vector<int>> sub;
    sub.reserve(subset.size());
    for (int l : subset) sub.push_back(adj[static_cast<std::size_t>(l)]);
    return matching_size(sub, rightCount) < static_cast<int>(subset.size());
  };
  bool pruned = true;
  while (pruned) {
    pruned = false;
    for (std::size_t i = 0; i < violating.size(); ++i) {
      std::vector<int> candidate = violating;
      candidate.erase(candidate.begin() + static_cast<long>(i));
      if (!candidate.empty() && unmatchable(candidate)) {
        violating = candidate;
        pruned = true;
        break;
      }
    }
  }
  return violating;
}

}  // namespace mmscopies
