#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relfix/relation.hpp"

namespace relfix {

/// Positive rational num/den, used for contraction constants so the finite
/// checks stay in exact integer arithmetic.
struct Rational {
  int num = 1;
  int den = 2;

  double value() const { return static_cast<double>(num) / den; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Contraction constants tried when an instance does not fix one.
inline constexpr std::array<Rational, 3> kAlphaGrid{{{1, 4}, {1, 2}, {3, 4}}};

inline constexpr std::size_t kMaxOracleSize = 4;

/// A finite carrier {0..n-1} with an integer-valued g, a relation and a
/// self-map.
struct FiniteInstance {
  std::size_t n = 0;
  std::vector<int> g;              ///< row-major n x n, g[i*n + j] = g(i, j)
  FiniteRelation rel{1, {}};
  std::vector<Index> map;          ///< map[i] = S(i)
  std::optional<Rational> alpha;   ///< fixed constant; the grid is searched when absent

  int g_at(Index i, Index j) const { return g[i * n + j]; }

  /// Throws std::invalid_argument on inconsistent sizes, out-of-range map
  /// entries, |g| > g_max, or alpha outside (0,1).
  void validate(int g_max) const;
};

struct HypothesisVerdict {
  bool holds = false;
  std::string reason;              ///< first failing hypothesis, or the readings applied
  std::optional<Rational> alpha;   ///< constant that witnessed contraction

  explicit operator bool() const { return holds; }
};

/// Reading recorded for completeness and continuity on finite carriers.
inline constexpr const char* kDiscreteReading =
    "g-R-completeness and g-R-continuity taken as automatic (discrete reading: integer g forces |g| -> 0 to be eventually 0)";

/// Checks, in order: (g1)-(g3) on relation-constrained patterns, S-closedness,
/// non-empty seed set, and contraction on every related pair for some alpha.
HypothesisVerdict hypotheses_hold(const FiniteInstance& inst);

/// True iff S has a fixed point and every orbit started in the seed set
/// reaches one within n steps.
bool conclusion_holds(const FiniteInstance& inst);

std::vector<Index> fixed_points(const FiniteInstance& inst);

/// True iff the image S(carrier) is connected in the symmetric closure of the
/// relation (paths of length >= 1).
bool image_symmetric_connected(const FiniteInstance& inst);

struct EnumerationConfig {
  std::size_t n = 2;
  int g_max = 3;
  std::size_t rel_count_cap = 0;   ///< 0 means every relation
};

/// Deterministic, replayable enumeration of instances.
///
/// Canonical index = (relation slot * #g-matrices + g index) * #maps + map
/// index. When the relation count is capped, slot k takes relation mask
/// floor(k * 2^(n*n) / cap) so the sample spreads over the whole relation
/// lattice. Bit b of a relation mask stands for the pair (b / n, b % n).
class InstanceEnumerator {
 public:
  /// Throws std::invalid_argument("instance space too large") if n > 4, and
  /// std::invalid_argument for n < 1 or g_max < 0.
  explicit InstanceEnumerator(EnumerationConfig config);

  std::uint64_t map_count() const { return map_count_; }
  std::uint64_t relation_count() const { return relation_count_; }
  std::uint64_t g_count() const { return g_count_; }
  std::uint64_t size() const { return relation_count_ * g_count_ * map_count_; }
  const EnumerationConfig& config() const { return config_; }

  /// Relation mask occupying slot k.
  std::uint64_t relation_mask(std::uint64_t slot) const;

  FiniteInstance at(std::uint64_t index) const;

  /// Stream interface: fills `out` with the next instance, false when done.
  bool next(FiniteInstance& out);
  void rewind() { cursor_ = 0; }

 private:
  EnumerationConfig config_;
  std::uint64_t map_count_ = 0;
  std::uint64_t relation_count_ = 0;
  std::uint64_t total_relations_ = 0;
  std::uint64_t g_count_ = 0;
  std::uint64_t cursor_ = 0;
};

struct Counterexample {
  std::uint64_t index = 0;
  std::string kind;        ///< "existence" or "uniqueness"
  FiniteInstance instance;
};

inline constexpr std::size_t kMaxStoredCounterexamples = 100;

struct SweepReport {
  std::size_t n = 0;
  int g_max = 0;
  std::size_t rel_count_cap = 0;
  std::uint64_t relations_enumerated = 0;
  std::uint64_t instances_checked = 0;
  std::uint64_t hypotheses_satisfied = 0;
  std::uint64_t uniqueness_filtered = 0;  ///< hypotheses hold and the image is R^s-connected
  std::uint64_t counterexample_total = 0;
  std::vector<Counterexample> counterexamples;  ///< first kMaxStoredCounterexamples, sorted by canonical index
};

struct OracleConfig {
  std::size_t n_max = 3;
  int g_max = 3;
  std::size_t rel_count_cap = 0;  ///< applied to every size
  unsigned threads = 0;           ///< 0 means hardware concurrency
  /// g bound for carriers of size 3 and up, where [-3, 3]^(n*n) is out of
  /// reach. Negative means reuse g_max.
  int large_g_max = 1;
};

struct OracleReport {
  std::vector<SweepReport> sweeps;  ///< one per carrier size 2..n_max
  std::vector<std::string> readings;

  std::uint64_t instances_checked() const;
  std::size_t counterexample_count() const;
};

/// Exhaustive sweep of one carrier size.
SweepReport run_sweep(const EnumerationConfig& config, unsigned threads = 0);

/// Sweeps sizes 2..n_max and collects the per-size reports. Size 2 uses
/// g_max, larger sizes use large_g_max.
OracleReport run_oracle(const OracleConfig& config);

}  // namespace relfix
