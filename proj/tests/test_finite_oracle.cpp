#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "relfix/finite_oracle.hpp"
#include "relfix/gspace.hpp"
#include "relfix/relation.hpp"

using namespace relfix;

namespace {

// Definitional re-implementation built on the generic relation and g-space
// operations instead of the packed bitmask core.
bool reference_hypotheses(const FiniteInstance& inst) {
  std::vector<Index> carrier(inst.n);
  for (Index i = 0; i < inst.n; ++i) carrier[i] = i;
  const auto& rel = inst.rel;
  auto g = [&](Index a, Index b) { return std::abs(inst.g_at(a, b)); };

  for (Index r : carrier)
    for (Index u : carrier)
      if (rel(r, u) && ((g(r, u) == 0 && r != u) || g(r, u) != g(u, r))) return false;
  GFunctional<Index> gf{[&](const Index& a, const Index& b) { return double(inst.g_at(a, b)); },
                        DomainMode::relation_restricted};
  if (verify_g_properties(gf, rel, std::span<const Index>(carrier), 0.0).g3_witness) return false;
  if (!is_T_closed(rel, inst.map).closed()) return false;
  if (seed_set(rel, inst.map, carrier).empty()) return false;
  for (const auto& a : kAlphaGrid) {
    bool ok = true;
    for (const auto& [i, j] : rel.pairs()) ok = ok && g(inst.map[i], inst.map[j]) <= a.value() * g(i, j) + 1e-12;
    if (ok) return true;
  }
  return false;
}

bool reference_conclusion(const FiniteInstance& inst) {
  std::vector<Index> carrier(inst.n);
  for (Index i = 0; i < inst.n; ++i) carrier[i] = i;
  std::set<Index> fixed;
  for (Index i : carrier)
    if (inst.map[i] == i) fixed.insert(i);
  if (fixed.empty()) return false;
  for (Index r0 : seed_set(inst.rel, inst.map, carrier)) {
    Index x = r0;
    for (std::size_t k = 0; k < inst.n; ++k) x = inst.map[x];
    if (!fixed.count(x)) return false;
  }
  return true;
}

FiniteInstance random_instance(std::mt19937& rng, std::size_t n, int g_max) {
  std::uniform_int_distribution<int> gv(-g_max, g_max);
  std::bernoulli_distribution coin(0.5);
  FiniteInstance inst;
  inst.n = n;
  for (std::size_t k = 0; k < n * n; ++k) inst.g.push_back(gv(rng));
  // Bias toward metric-like g so some instances pass the g checks.
  if (coin(rng)) {
    for (Index i = 0; i < n; ++i) {
      inst.g[i * n + i] = 0;
      for (Index j = 0; j < i; ++j) inst.g[j * n + i] = inst.g[i * n + j] = 1 + std::abs(gv(rng)) % g_max;
    }
  }
  std::vector<IndexPair> pairs;
  for (Index r = 0; r < n; ++r)
    for (Index s = 0; s < n; ++s)
      if (coin(rng)) pairs.emplace_back(r, s);
  inst.rel = FiniteRelation(n, pairs);
  for (std::size_t i = 0; i < n; ++i) inst.map.push_back(rng() % n);
  return inst;
}

}  // namespace

TEST_CASE("enumeration sizes") {
  const InstanceEnumerator two({2, 1, 0});
  CHECK(two.map_count() == 4);
  CHECK(two.relation_count() == 16);
  CHECK(two.g_count() == 81);
  CHECK(two.size() == 4 * 16 * 81);
  CHECK_THROWS_WITH_AS(InstanceEnumerator({5, 1, 0}), "instance space too large", std::invalid_argument);

  const InstanceEnumerator capped({3, 1, 64});
  CHECK(capped.relation_count() == 64);
  CHECK(capped.relation_mask(0) == 0);
  CHECK(capped.relation_mask(1) == 8);
  CHECK(capped.relation_mask(63) == 504);
}

TEST_CASE("enumeration is replayable and canonical") {
  InstanceEnumerator a({2, 1, 0});
  InstanceEnumerator b({2, 1, 0});
  FiniteInstance x, y;
  std::set<std::vector<Index>> maps;
  std::uint64_t count = 0;
  while (a.next(x)) {
    REQUIRE(b.next(y));
    CHECK(x.g == y.g);
    CHECK(x.map == y.map);
    CHECK(x.rel == y.rel);
    maps.insert(x.map);
    ++count;
  }
  CHECK_FALSE(b.next(y));
  CHECK(count == a.size());
  CHECK(maps.size() == 4);

  const auto first = a.at(0);
  CHECK(first.rel.size() == 0);
  CHECK(first.map == std::vector<Index>{0, 0});
  CHECK(first.g == std::vector<int>{-1, -1, -1, -1});
  const auto second = a.at(1);
  CHECK(second.map == std::vector<Index>{0, 1});
  CHECK(a.at(4).g == std::vector<int>{-1, -1, -1, 0});
  CHECK(a.at(4 * 81).rel.pairs() == std::vector<IndexPair>{{0, 0}});
}

TEST_CASE("hypotheses_hold examples") {
  FiniteInstance empty_rel{2, {0, 1, 1, 0}, FiniteRelation::empty(2), {0, 1}, {}};
  const auto v = hypotheses_hold(empty_rel);
  CHECK_FALSE(v.holds);
  CHECK(v.reason == "Ω(S;R) empty");

  FiniteInstance identity{3, {0, 1, 1, 1, 0, 1, 1, 1, 0}, FiniteRelation::universal(3), {0, 1, 2}, {}};
  const auto vi = hypotheses_hold(identity);
  CHECK_FALSE(vi.holds);
  CHECK(vi.reason.find("contraction") != std::string::npos);

  FiniteInstance constant{3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, FiniteRelation(3, {{0, 0}, {1, 2}, {2, 0}}), {0, 0, 0},
                          Rational{1, 2}};
  const auto vc = hypotheses_hold(constant);
  CHECK(vc.holds);
  CHECK(vc.alpha == Rational{1, 2});
  CHECK(vc.reason == kDiscreteReading);

  FiniteInstance not_closed{2, {0, 1, 1, 0}, FiniteRelation(2, {{0, 1}}), {1, 0}, {}};
  CHECK(hypotheses_hold(not_closed).reason == "R is not S-closed");

  FiniteInstance bad_g1{2, {0, 0, 0, 0}, FiniteRelation(2, {{0, 1}}), {0, 0}, {}};
  CHECK(hypotheses_hold(bad_g1).reason.starts_with("(g1)"));

  FiniteInstance bad_size{2, {0, 1, 1}, FiniteRelation::empty(2), {0, 1}, {}};
  CHECK_THROWS_AS(hypotheses_hold(bad_size), std::invalid_argument);
}

TEST_CASE("conclusion_holds examples") {
  FiniteInstance constant{3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, FiniteRelation::universal(3), {2, 2, 2}, {}};
  CHECK(conclusion_holds(constant));
  FiniteInstance cycle{3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, FiniteRelation::universal(3), {1, 2, 0}, {}};
  CHECK_FALSE(conclusion_holds(cycle));
  CHECK(fixed_points(cycle).empty());
  // A fixed point exists but a seed orbits a 2-cycle.
  FiniteInstance mixed{3, {0, 1, 2, 1, 0, 1, 2, 1, 0}, FiniteRelation(3, {{1, 2}}), {0, 2, 1}, {}};
  CHECK_FALSE(conclusion_holds(mixed));
}

TEST_CASE("image connectivity") {
  FiniteInstance inst{3, std::vector<int>(9, 1), FiniteRelation(3, {{0, 1}}), {0, 1, 1}, {}};
  CHECK(image_symmetric_connected(inst));
  inst.rel = FiniteRelation(3, {{1, 2}});
  CHECK_FALSE(image_symmetric_connected(inst));
  inst.map = {2, 2, 2};
  CHECK(image_symmetric_connected(inst));
  inst.rel = FiniteRelation::empty(3);
  CHECK_FALSE(image_symmetric_connected(inst));  // no loop at 2
}

TEST_CASE("double entry: packed checks agree with the definitional scans") {
  std::mt19937 rng(1234);
  int satisfied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 2 + trial % 3, 3);
    const bool hyp = hypotheses_hold(inst).holds;
    CHECK(hyp == reference_hypotheses(inst));
    CHECK(conclusion_holds(inst) == reference_conclusion(inst));
    satisfied += hyp;
  }
  CHECK(satisfied > 0);
}

TEST_CASE("sweep decisions match instance-by-instance evaluation") {
  const EnumerationConfig cfg{2, 1, 0};
  InstanceEnumerator en(cfg);
  std::uint64_t satisfied = 0, filtered = 0;
  FiniteInstance inst;
  while (en.next(inst)) {
    if (!hypotheses_hold(inst)) continue;
    ++satisfied;
    CHECK(conclusion_holds(inst));
    if (image_symmetric_connected(inst)) {
      ++filtered;
      CHECK(fixed_points(inst).size() == 1);
    }
  }
  const auto report = run_sweep(cfg, 1);
  CHECK(report.instances_checked == en.size());
  CHECK(report.hypotheses_satisfied == satisfied);
  CHECK(report.uniqueness_filtered == filtered);
  CHECK(report.counterexample_total == 0);
  CHECK(satisfied > 0);
  CHECK(filtered > 0);
}

TEST_CASE("parallel sweeps are identical to sequential ones") {
  const EnumerationConfig cfg{3, 1, 8};
  const auto one = run_sweep(cfg, 1);
  const auto three = run_sweep(cfg, 3);
  CHECK(one.instances_checked == three.instances_checked);
  CHECK(one.hypotheses_satisfied == three.hypotheses_satisfied);
  CHECK(one.uniqueness_filtered == three.uniqueness_filtered);
  CHECK(one.counterexample_total == three.counterexample_total);
}

TEST_CASE("n = 2 full sweep with g_max = 2 has no counterexamples") {
  const auto report = run_oracle({2, 2, 0, 0});
  REQUIRE(report.sweeps.size() == 1);
  CHECK(report.sweeps[0].instances_checked == 4ull * 16 * 625);
  CHECK(report.counterexample_count() == 0);
  CHECK(report.sweeps[0].hypotheses_satisfied > 0);
  CHECK(report.readings.front() == kDiscreteReading);
}
