#include "relfix/relation.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace relfix {

FiniteRelation::FiniteRelation(std::size_t ground_size, std::vector<IndexPair> pairs)
    : ground_size_(ground_size), pairs_(std::move(pairs)), adjacency_(ground_size * ground_size, false) {
  if (ground_size_ == 0) throw std::invalid_argument("relation ground set must be non-empty");
  for (const auto& [r, s] : pairs_) {
    if (r >= ground_size_ || s >= ground_size_) {
      throw std::invalid_argument("relation pair (" + std::to_string(r) + "," + std::to_string(s) +
                                  ") outside ground set of size " + std::to_string(ground_size_));
    }
  }
  std::sort(pairs_.begin(), pairs_.end());
  pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
  for (const auto& [r, s] : pairs_) adjacency_[r * ground_size_ + s] = true;
}

FiniteRelation FiniteRelation::empty(std::size_t ground_size) { return {ground_size, {}}; }

FiniteRelation FiniteRelation::universal(std::size_t ground_size) {
  std::vector<IndexPair> pairs;
  pairs.reserve(ground_size * ground_size);
  for (Index r = 0; r < ground_size; ++r)
    for (Index s = 0; s < ground_size; ++s) pairs.emplace_back(r, s);
  return {ground_size, std::move(pairs)};
}

bool FiniteRelation::contains(Index r, Index s) const {
  if (r >= ground_size_ || s >= ground_size_) return false;
  return adjacency_[r * ground_size_ + s];
}

std::vector<Index> FiniteRelation::successors(Index r) const {
  std::vector<Index> out;
  for (Index s = 0; s < ground_size_; ++s)
    if (contains(r, s)) out.push_back(s);
  return out;
}

FiniteRelation inverse(const FiniteRelation& rel) {
  std::vector<IndexPair> swapped;
  swapped.reserve(rel.size());
  for (const auto& [r, s] : rel.pairs()) swapped.emplace_back(s, r);
  return {rel.ground_size(), std::move(swapped)};
}

FiniteRelation symmetric_closure(const FiniteRelation& rel) {
  std::vector<IndexPair> all = rel.pairs();
  for (const auto& [r, s] : rel.pairs()) all.emplace_back(s, r);
  return {rel.ground_size(), std::move(all)};
}

std::optional<Path> find_path(const FiniteRelation& rel, Index from, Index to) {
  const std::size_t n = rel.ground_size();
  if (from >= n || to >= n) throw std::out_of_range("find_path: index outside ground set");

  // The search starts from a virtual source whose successors are those of
  // `from`, so reaching `to` always takes at least one edge.
  std::vector<bool> visited(n, false);
  std::vector<Index> parent(n, from);
  std::deque<Index> queue;
  for (Index s : rel.successors(from)) {
    visited[s] = true;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const Index cur = queue.front();
    queue.pop_front();
    if (cur == to) {
      std::vector<Index> reversed{to};
      Index node = to;
      do {
        node = parent[node];
        reversed.push_back(node);
      } while (node != from);
      return Path{{reversed.rbegin(), reversed.rend()}};
    }
    for (Index s : rel.successors(cur)) {
      if (!visited[s]) {
        visited[s] = true;
        parent[s] = cur;
        queue.push_back(s);
      }
    }
  }
  return std::nullopt;
}

bool is_connected(const FiniteRelation& rel, std::span<const Index> subset) {
  for (Index r : subset)
    for (Index s : subset)
      if (!find_path(rel, r, s)) return false;
  return true;
}

ClosureCheck is_T_closed(const FiniteRelation& rel, std::span<const Index> map) {
  if (map.size() != rel.ground_size()) throw std::invalid_argument("is_T_closed: map is not total on the ground set");
  for (const auto& [r, s] : rel.pairs()) {
    if (!rel.contains(map[r], map[s])) return {IndexPair{r, s}};
  }
  return {};
}

std::vector<Index> seed_set(const FiniteRelation& rel, std::span<const Index> map,
                            std::span<const Index> candidates) {
  if (map.size() != rel.ground_size()) throw std::invalid_argument("seed_set: map is not total on the ground set");
  return seed_set<Index>(rel, [&](Index u) { return map[u]; }, candidates);
}

}  // namespace relfix
