#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relfix {

using Index = std::size_t;
using IndexPair = std::pair<Index, Index>;

/// Explicit binary relation over the ground set {0, ..., n-1}.
///
/// Pairs are kept sorted and duplicate-free; membership is answered from a
/// dense adjacency table, which is fine for the small carriers this is meant
/// for.
class FiniteRelation {
 public:
  /// Throws std::invalid_argument if ground_size is zero or a pair index is
  /// out of range. Duplicate pairs are merged.
  FiniteRelation(std::size_t ground_size, std::vector<IndexPair> pairs);

  static FiniteRelation empty(std::size_t ground_size);
  static FiniteRelation universal(std::size_t ground_size);

  std::size_t ground_size() const { return ground_size_; }
  const std::vector<IndexPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  bool contains(Index r, Index s) const;
  bool operator()(Index r, Index s) const { return contains(r, s); }

  /// Successors of r in ascending order.
  std::vector<Index> successors(Index r) const;

  friend bool operator==(const FiniteRelation&, const FiniteRelation&) = default;

 private:
  std::size_t ground_size_;
  std::vector<IndexPair> pairs_;
  std::vector<bool> adjacency_;
};

/// Ordered element list whose consecutive pairs lie in some relation.
/// Always holds at least two nodes.
struct Path {
  std::vector<Index> nodes;

  std::size_t length() const { return nodes.size() - 1; }
};

FiniteRelation inverse(const FiniteRelation& rel);
FiniteRelation symmetric_closure(const FiniteRelation& rel);

/// Shortest path of length >= 1 from `from` to `to`, breadth-first with the
/// lower index explored first. A path from r to itself needs a cycle through
/// r (a self-loop at minimum); the empty path is never returned.
std::optional<Path> find_path(const FiniteRelation& rel, Index from, Index to);

/// True iff every ordered pair of `subset` (including (r, r)) is joined by a
/// path. An empty subset is vacuously connected.
bool is_connected(const FiniteRelation& rel, std::span<const Index> subset);

/// Result of a closedness check under a self-map.
struct ClosureCheck {
  std::optional<IndexPair> violation;  ///< first related pair whose image is unrelated

  bool closed() const { return !violation.has_value(); }
  explicit operator bool() const { return closed(); }
};

/// Checks (r,s) in R => (map[r], map[s]) in R. `map` must have one entry per
/// ground element.
ClosureCheck is_T_closed(const FiniteRelation& rel, std::span<const Index> map);

/// Elements u of `candidates` with (u, map[u]) in rel, in candidate order.
std::vector<Index> seed_set(const FiniteRelation& rel, std::span<const Index> map,
                            std::span<const Index> candidates);

/// Generic seed set over any carrier: keeps u with related(u, map(u)).
template <class Element, class Related, class Map>
std::vector<Element> seed_set(const Related& related, const Map& map,
                              std::span<const Element> candidates) {
  std::vector<Element> out;
  for (const auto& u : candidates) {
    if (related(u, map(u))) out.push_back(u);
  }
  return out;
}

/// True iff every consecutive pair of `seq` is related. Sequences of length
/// one are vacuously preserving.
template <class Element, class Related>
bool is_preserving_sequence(const Related& related, std::span<const Element> seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!related(seq[i], seq[i + 1])) return false;
  }
  return true;
}

inline bool is_preserving_sequence(const FiniteRelation& rel, std::span<const Index> seq) {
  return is_preserving_sequence<Index>(rel, seq);
}

}  // namespace relfix
