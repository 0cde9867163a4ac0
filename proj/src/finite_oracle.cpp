#include "relfix/finite_oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace relfix {

namespace {

// Allocation-free mirror of FiniteInstance used by the sweeps.
struct Packed {
  unsigned n = 0;
  std::array<int, kMaxOracleSize * kMaxOracleSize> g{};
  std::uint32_t rel = 0;
  std::array<unsigned, kMaxOracleSize> map{};
  std::optional<Rational> alpha;

  bool related(unsigned i, unsigned j) const { return (rel >> (i * n + j)) & 1u; }
  int absg(unsigned i, unsigned j) const { return std::abs(g[i * n + j]); }
};

enum class Failure { none, g1, g2, g3, not_closed, seed_empty, no_contraction };

struct CoreVerdict {
  Failure failure = Failure::none;
  std::optional<Rational> alpha;
};

Packed pack(const FiniteInstance& inst) {
  Packed p;
  p.n = static_cast<unsigned>(inst.n);
  for (std::size_t k = 0; k < inst.n * inst.n; ++k) p.g[k] = inst.g[k];
  for (const auto& [r, s] : inst.rel.pairs()) p.rel |= 1u << (r * inst.n + s);
  for (std::size_t i = 0; i < inst.n; ++i) p.map[i] = static_cast<unsigned>(inst.map[i]);
  p.alpha = inst.alpha;
  return p;
}

bool contracts(const Packed& p, Rational a) {
  for (unsigned i = 0; i < p.n; ++i)
    for (unsigned j = 0; j < p.n; ++j)
      if (p.related(i, j) && a.den * p.absg(p.map[i], p.map[j]) > a.num * p.absg(i, j)) return false;
  return true;
}

CoreVerdict check_hypotheses(const Packed& p) {
  const unsigned n = p.n;
  for (unsigned r = 0; r < n; ++r) {
    for (unsigned u = 0; u < n; ++u) {
      if (!p.related(r, u)) continue;
      if (p.g[r * n + u] == 0 && r != u) return {Failure::g1, {}};
      if (p.absg(r, u) != p.absg(u, r)) return {Failure::g2, {}};
    }
  }
  for (unsigned r = 0; r < n; ++r)
    for (unsigned u = 0; u < n; ++u) {
      if (!p.related(r, u)) continue;
      for (unsigned t = 0; t < n; ++t)
        if (p.related(t, u) && p.absg(r, u) > p.absg(r, t) + p.absg(t, u)) return {Failure::g3, {}};
    }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (p.related(i, j) && !p.related(p.map[i], p.map[j])) return {Failure::not_closed, {}};
  bool seeded = false;
  for (unsigned u = 0; u < n && !seeded; ++u) seeded = p.related(u, p.map[u]);
  if (!seeded) return {Failure::seed_empty, {}};
  if (p.alpha) {
    if (contracts(p, *p.alpha)) return {Failure::none, p.alpha};
  } else {
    for (const auto& a : kAlphaGrid)
      if (contracts(p, a)) return {Failure::none, a};
  }
  return {Failure::no_contraction, {}};
}

bool check_conclusion(const Packed& p) {
  bool any_fixed = false;
  for (unsigned i = 0; i < p.n; ++i) any_fixed = any_fixed || p.map[i] == i;
  if (!any_fixed) return false;
  for (unsigned u = 0; u < p.n; ++u) {
    if (!p.related(u, p.map[u])) continue;
    unsigned x = u;
    bool reached = false;
    for (unsigned step = 0; step <= p.n; ++step) {
      if (p.map[x] == x) {
        reached = true;
        break;
      }
      x = p.map[x];
    }
    if (!reached) return false;
  }
  return true;
}

unsigned fixed_point_count(const Packed& p) {
  unsigned count = 0;
  for (unsigned i = 0; i < p.n; ++i) count += p.map[i] == i ? 1u : 0u;
  return count;
}

bool check_image_connected(const Packed& p) {
  std::array<std::uint32_t, kMaxOracleSize> adj{};
  for (unsigned i = 0; i < p.n; ++i)
    for (unsigned j = 0; j < p.n; ++j)
      if (p.related(i, j) || p.related(j, i)) adj[i] |= 1u << j;
  // reach[i]: nodes reachable from i by a walk of length >= 1.
  auto reach = adj;
  for (unsigned round = 0; round < p.n; ++round)
    for (unsigned i = 0; i < p.n; ++i)
      for (unsigned j = 0; j < p.n; ++j)
        if ((reach[i] >> j) & 1u) reach[i] |= adj[j];
  std::uint32_t image = 0;
  for (unsigned i = 0; i < p.n; ++i) image |= 1u << p.map[i];
  for (unsigned r = 0; r < p.n; ++r)
    if ((image >> r) & 1u && (reach[r] & image) != image) return false;
  return true;
}

std::string describe(Failure f) {
  switch (f) {
    case Failure::g1: return "(g1) fails: g vanishes on a related pair of distinct elements";
    case Failure::g2: return "(g2) fails: |g| is not symmetric on a related pair";
    case Failure::g3: return "(g3) fails on a relation-constrained triple";
    case Failure::not_closed: return "R is not S-closed";
    case Failure::seed_empty: return "Ω(S;R) empty";
    case Failure::no_contraction: return "no contraction constant works on the related pairs";
    case Failure::none: break;
  }
  return kDiscreteReading;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

}  // namespace

void FiniteInstance::validate(int g_max) const {
  if (n < 1) throw std::invalid_argument("instance: carrier must be non-empty");
  if (n > kMaxOracleSize) throw std::invalid_argument("instance space too large");
  if (g.size() != n * n) throw std::invalid_argument("instance: g matrix must be n x n");
  if (rel.ground_size() != n) throw std::invalid_argument("instance: relation ground set differs from carrier");
  if (map.size() != n) throw std::invalid_argument("instance: map must have n entries");
  for (Index v : map)
    if (v >= n) throw std::invalid_argument("instance: map leaves the carrier");
  for (int v : g)
    if (std::abs(v) > g_max) throw std::invalid_argument("instance: g entry exceeds g_max");
  if (alpha && !(alpha->den > 0 && alpha->num > 0 && alpha->num < alpha->den)) {
    throw std::invalid_argument("instance: alpha must lie in (0,1)");
  }
}

HypothesisVerdict hypotheses_hold(const FiniteInstance& inst) {
  inst.validate(std::numeric_limits<int>::max());
  const CoreVerdict v = check_hypotheses(pack(inst));
  return {v.failure == Failure::none, describe(v.failure), v.alpha};
}

bool conclusion_holds(const FiniteInstance& inst) {
  inst.validate(std::numeric_limits<int>::max());
  return check_conclusion(pack(inst));
}

std::vector<Index> fixed_points(const FiniteInstance& inst) {
  std::vector<Index> out;
  for (Index i = 0; i < inst.n; ++i)
    if (inst.map[i] == i) out.push_back(i);
  return out;
}

bool image_symmetric_connected(const FiniteInstance& inst) {
  inst.validate(std::numeric_limits<int>::max());
  return check_image_connected(pack(inst));
}

InstanceEnumerator::InstanceEnumerator(EnumerationConfig config) : config_(config) {
  if (config_.n > kMaxOracleSize) throw std::invalid_argument("instance space too large");
  if (config_.n < 1) throw std::invalid_argument("instance enumeration needs n >= 1");
  if (config_.g_max < 0) throw std::invalid_argument("instance enumeration needs g_max >= 0");
  const std::uint64_t n = config_.n;
  map_count_ = ipow(n, n);
  total_relations_ = std::uint64_t{1} << (n * n);
  relation_count_ = (config_.rel_count_cap == 0 || config_.rel_count_cap >= total_relations_)
                        ? total_relations_
                        : config_.rel_count_cap;
  g_count_ = ipow(2 * static_cast<std::uint64_t>(config_.g_max) + 1, n * n);
}

std::uint64_t InstanceEnumerator::relation_mask(std::uint64_t slot) const {
  if (relation_count_ == total_relations_) return slot;
  // slot * total / count without overflow: total is a power of two <= 2^16.
  return slot * total_relations_ / relation_count_;
}

FiniteInstance InstanceEnumerator::at(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("instance index beyond enumeration");
  const std::size_t n = config_.n;
  std::uint64_t map_idx = index % map_count_;
  std::uint64_t rest = index / map_count_;
  std::uint64_t g_idx = rest % g_count_;
  const std::uint64_t slot = rest / g_count_;

  FiniteInstance inst;
  inst.n = n;
  inst.map.assign(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    inst.map[k] = map_idx % n;
    map_idx /= n;
  }
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(config_.g_max) + 1;
  inst.g.assign(n * n, 0);
  for (std::size_t k = n * n; k-- > 0;) {
    inst.g[k] = static_cast<int>(g_idx % base) - config_.g_max;
    g_idx /= base;
  }
  const std::uint64_t mask = relation_mask(slot);
  std::vector<IndexPair> pairs;
  for (std::size_t b = 0; b < n * n; ++b)
    if ((mask >> b) & 1u) pairs.emplace_back(b / n, b % n);
  inst.rel = FiniteRelation(n, std::move(pairs));
  return inst;
}

bool InstanceEnumerator::next(FiniteInstance& out) {
  if (cursor_ >= size()) return false;
  out = at(cursor_++);
  return true;
}

std::uint64_t OracleReport::instances_checked() const {
  std::uint64_t total = 0;
  for (const auto& s : sweeps) total += s.instances_checked;
  return total;
}

std::size_t OracleReport::counterexample_count() const {
  std::size_t total = 0;
  for (const auto& s : sweeps) total += s.counterexample_total;
  return total;
}

namespace {

struct Tally {
  std::uint64_t checked = 0;
  std::uint64_t satisfied = 0;
  std::uint64_t filtered = 0;
  std::uint64_t bad = 0;
  std::vector<std::pair<std::uint64_t, std::string>> found;
};

// Walks relation slots [begin, end) with odometers over g matrices and maps;
// produces the same per-instance decisions as at() + hypotheses_hold().
void sweep_slots(const InstanceEnumerator& en, std::uint64_t begin, std::uint64_t end, Tally& tally) {
  const auto& cfg = en.config();
  const unsigned n = static_cast<unsigned>(cfg.n);
  const unsigned cells = n * n;
  for (std::uint64_t slot = begin; slot < end; ++slot) {
    Packed p;
    p.n = n;
    p.rel = static_cast<std::uint32_t>(en.relation_mask(slot));
    for (unsigned k = 0; k < cells; ++k) p.g[k] = -cfg.g_max;
    for (std::uint64_t gi = 0; gi < en.g_count(); ++gi) {
      p.map.fill(0);
      for (std::uint64_t mi = 0; mi < en.map_count(); ++mi) {
        ++tally.checked;
        const CoreVerdict v = check_hypotheses(p);
        if (v.failure == Failure::none) {
          ++tally.satisfied;
          const std::uint64_t index = (slot * en.g_count() + gi) * en.map_count() + mi;
          if (!check_conclusion(p)) {
            ++tally.bad;
            if (tally.found.size() < kMaxStoredCounterexamples) tally.found.emplace_back(index, "existence");
          }
          if (check_image_connected(p)) {
            ++tally.filtered;
            if (fixed_point_count(p) != 1) {
              ++tally.bad;
              if (tally.found.size() < kMaxStoredCounterexamples) tally.found.emplace_back(index, "uniqueness");
            }
          }
        }
        for (unsigned k = n; k-- > 0;) {
          if (++p.map[k] < n) break;
          p.map[k] = 0;
        }
      }
      for (unsigned k = cells; k-- > 0;) {
        if (++p.g[k] <= cfg.g_max) break;
        p.g[k] = -cfg.g_max;
      }
    }
  }
}

}  // namespace

SweepReport run_sweep(const EnumerationConfig& config, unsigned threads) {
  const InstanceEnumerator en(config);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, en.relation_count()));

  std::vector<Tally> tallies(threads);
  const std::uint64_t slots = en.relation_count();
  auto range = [&](unsigned t) { return std::pair{slots * t / threads, slots * (t + 1) / threads}; };
  if (threads == 1) {
    sweep_slots(en, 0, slots, tallies[0]);
  } else {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        const auto [b, e] = range(t);
        sweep_slots(en, b, e, tallies[t]);
      });
    }
  }

  SweepReport report;
  report.n = config.n;
  report.g_max = config.g_max;
  report.rel_count_cap = config.rel_count_cap;
  report.relations_enumerated = en.relation_count();
  std::vector<std::pair<std::uint64_t, std::string>> found;
  for (auto& t : tallies) {
    report.instances_checked += t.checked;
    report.hypotheses_satisfied += t.satisfied;
    report.uniqueness_filtered += t.filtered;
    report.counterexample_total += t.bad;
    found.insert(found.end(), t.found.begin(), t.found.end());
  }
  std::sort(found.begin(), found.end());
  if (found.size() > kMaxStoredCounterexamples) found.resize(kMaxStoredCounterexamples);
  for (auto& [index, kind] : found) report.counterexamples.push_back({index, kind, en.at(index)});
  return report;
}

OracleReport run_oracle(const OracleConfig& config) {
  if (config.n_max < 2) throw std::invalid_argument("oracle: n_max must be at least 2");
  if (config.n_max > kMaxOracleSize) throw std::invalid_argument("instance space too large");
  OracleReport report;
  report.readings.emplace_back(kDiscreteReading);
  report.readings.emplace_back("contraction constant searched over {1/4, 1/2, 3/4}");
  report.readings.emplace_back("(g1)-(g3) checked on pairs (r,u) in R and triples with (r,u), (t,u) in R");
  for (std::size_t n = 2; n <= config.n_max; ++n) {
    const int g_max = n > 2 && config.large_g_max >= 0 ? config.large_g_max : config.g_max;
    report.sweeps.push_back(run_sweep({n, g_max, config.rel_count_cap}, config.threads));
  }
  return report;
}

}  // namespace relfix
