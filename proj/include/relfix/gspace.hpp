#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "relfix/types.hpp"

namespace relfix {

/// Absolute threshold below which |g| counts as zero in the (g1) check.
inline constexpr double kDefaultZeroTolerance = 1e-12;

/// Outcome of scanning a g-functional over a finite sample.
///
/// An absent witness only means no violation was seen among the samples.
template <class Element>
struct PropertyReport {
  /// (g1): a pair of distinct elements with |g| <= tol.
  std::optional<std::pair<Element, Element>> g1_witness;
  /// (g2): a pair with |g(r,u)| != |g(u,r)| beyond tol.
  std::optional<std::pair<Element, Element>> g2_witness;
  /// (g3): a triple (r, u, t) with |g(r,u)| > |g(r,t)| + |g(t,u)| + tol.
  std::optional<std::tuple<Element, Element, Element>> g3_witness;
  std::size_t samples_checked = 0;

  bool clean() const { return !g1_witness && !g2_witness && !g3_witness; }
};

/// Scans (g1) and (g2) over all ordered sample pairs and (g3) over sample
/// triples. In relation_restricted mode only triples with (r,u) and (t,u)
/// related are checked for (g3). Each witness is the first violation in
/// lexicographic index order.
template <class Element, class Related>
PropertyReport<Element> verify_g_properties(const GFunctional<Element>& g, const Related& related,
                                            std::span<const Element> samples,
                                            double tol = kDefaultZeroTolerance) {
  if (samples.empty()) throw std::invalid_argument("verify_g_properties: empty sample");
  if (tol < 0.0) throw std::invalid_argument("verify_g_properties: negative tolerance");

  PropertyReport<Element> report;
  report.samples_checked = samples.size();
  const std::size_t n = samples.size();

  for (std::size_t i = 0; i < n && !(report.g1_witness && report.g2_witness); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& r = samples[i];
      const auto& u = samples[j];
      const double gru = std::abs(g(r, u));
      if (!report.g1_witness && gru <= tol && !(r == u)) report.g1_witness.emplace(r, u);
      if (!report.g2_witness && std::abs(gru - std::abs(g(u, r))) > tol) report.g2_witness.emplace(r, u);
    }
  }

  const bool restricted = g.mode == DomainMode::relation_restricted;
  for (std::size_t i = 0; i < n && !report.g3_witness; ++i) {
    for (std::size_t j = 0; j < n && !report.g3_witness; ++j) {
      const auto& r = samples[i];
      const auto& u = samples[j];
      if (restricted && !related(r, u)) continue;
      const double gru = std::abs(g(r, u));
      for (std::size_t k = 0; k < n; ++k) {
        const auto& t = samples[k];
        if (restricted && !related(t, u)) continue;
        if (gru > std::abs(g(r, t)) + std::abs(g(t, u)) + tol) {
          report.g3_witness.emplace(r, u, t);
          break;
        }
      }
    }
  }
  return report;
}

template <class Element>
struct ContractionEstimate {
  double ratio = 0.0;                    ///< sup of |g(Sx,Sy)| / |g(x,y)|
  std::pair<Element, Element> worst;     ///< pair attaining the sup
  std::size_t informative_pairs = 0;     ///< pairs with |g(x,y)| > 0
};

/// Largest observed ratio |g(Sx,Sy)| / |g(x,y)| over related sample pairs.
/// A value below one is evidence of contraction, not a proof.
///
/// Throws std::invalid_argument if a supplied pair is not related and
/// std::runtime_error("no informative pairs") if every pair has g = 0.
template <class Element, class Related, class Map>
ContractionEstimate<Element> estimate_contraction_factor(const GFunctional<Element>& g, const Map& map,
                                                         const Related& related,
                                                         std::span<const std::pair<Element, Element>> pairs) {
  std::optional<ContractionEstimate<Element>> best;
  std::size_t informative = 0;
  for (const auto& [x, y] : pairs) {
    if (!related(x, y)) throw std::invalid_argument("estimate_contraction_factor: sample pair is not related");
    const double denom = std::abs(g(x, y));
    if (denom == 0.0) continue;
    ++informative;
    const double ratio = std::abs(g(map(x), map(y))) / denom;
    if (!best || ratio > best->ratio) best = ContractionEstimate<Element>{ratio, {x, y}, 0};
  }
  if (!best) throw std::runtime_error("no informative pairs");
  best->informative_pairs = informative;
  return *best;
}

/// All ordered pairs (p, q), p != q by position, of probe points that are
/// related. Feed the result to estimate_contraction_factor.
template <class Element, class Related>
std::vector<std::pair<Element, Element>> related_probe_pairs(std::span<const Element> probes, const Related& related) {
  std::vector<std::pair<Element, Element>> out;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j)
      if (i != j && related(probes[i], probes[j])) out.emplace_back(probes[i], probes[j]);
  return out;
}

/// Van der Corput radical inverse of `index` in `base`; the coordinates of
/// the Halton sequence used for deterministic sampling of bounding boxes.
inline double radical_inverse(std::size_t index, unsigned base) {
  double inv = 1.0 / base;
  double scale = inv;
  double value = 0.0;
  while (index > 0) {
    value += static_cast<double>(index % base) * scale;
    index /= base;
    scale *= inv;
  }
  return value;
}

/// Given a sequence that numerically g-converges to both candidates (tail
/// residual below tol), reports whether the two candidates coincide under g,
/// i.e. |g(a, b)| <= 2 tol as the triangle property demands.
///
/// Throws std::runtime_error("not a g-limit") if either candidate is not a
/// numerical g-limit of the sequence.
template <class Element>
bool check_limit_uniqueness(const GFunctional<Element>& g, std::span<const Element> seq, const Element& limit_a,
                            const Element& limit_b, double tol) {
  if (seq.empty()) throw std::invalid_argument("check_limit_uniqueness: empty sequence");
  const auto& tail = seq.back();
  if (!(std::abs(g(tail, limit_a)) < tol) || !(std::abs(g(tail, limit_b)) < tol)) {
    throw std::runtime_error("not a g-limit");
  }
  return std::abs(g(limit_a, limit_b)) <= 2.0 * tol;
}

}  // namespace relfix
