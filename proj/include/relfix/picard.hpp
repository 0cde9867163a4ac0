#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "relfix/relation.hpp"
#include "relfix/types.hpp"

namespace relfix {

/// When to stop a Picard run.
struct StoppingPolicy {
  double residual_tol = 1e-12;       ///< stop once |g(r_n, r_{n+1})| < residual_tol
  std::size_t max_iterations = 1000;

  /// Throws std::invalid_argument unless residual_tol > 0 and max_iterations >= 1.
  void validate() const;
};

/// Relative slack allowed when comparing measured residuals to certified bounds.
inline constexpr double kCertificateSlack = 1e-9;

/// Record of a Picard orbit r_0, S r_0, S^2 r_0, ...
template <class Element>
struct IterationTrace {
  std::vector<Element> iterates;
  std::vector<double> residuals;            ///< residuals[n] = |g(r_n, r_{n+1})|
  std::optional<double> alpha_used;
  std::vector<double> bound_certificates;   ///< alpha^n |g(r_0, r_1)|, filled when alpha_used is set
  bool preserved = false;                   ///< every consecutive pair is related
  bool converged = false;
  bool certified = false;                   ///< r_0 was in the seed set (r_0, S r_0) in R
  std::vector<std::string> warnings;

  /// The fixed point estimate: the last iterate.
  const Element& last() const { return iterates.back(); }
  std::size_t steps() const { return residuals.size(); }
};

/// Thrown when g stops returning finite values along an orbit.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Runs the Picard iteration r_{n+1} = S r_n from r0 until the residual
/// drops below the policy tolerance or the iteration budget is spent.
///
/// A start outside the seed set is not rejected; the trace is marked
/// uncertified and carries a warning. Throws DivergenceError("g diverged")
/// on a non-finite residual.
template <class Element, class Map, class Related>
IterationTrace<Element> iterate(const Map& map, const GFunctional<Element>& g, const Related& related,
                                const Element& r0, const StoppingPolicy& policy,
                                std::optional<double> alpha = std::nullopt) {
  policy.validate();
  IterationTrace<Element> trace;
  trace.alpha_used = alpha;
  trace.iterates.push_back(r0);
  trace.preserved = true;

  for (std::size_t n = 0; n < policy.max_iterations; ++n) {
    Element next = map(trace.iterates.back());
    const double residual = std::abs(g(trace.iterates.back(), next));
    if (!std::isfinite(residual)) {
      throw DivergenceError("g diverged at step " + std::to_string(n), n);
    }
    if (!related(trace.iterates.back(), next)) trace.preserved = false;
    if (n == 0) trace.certified = related(r0, next);
    trace.iterates.push_back(std::move(next));
    trace.residuals.push_back(residual);
    if (residual < policy.residual_tol) {
      trace.converged = true;
      break;
    }
  }

  if (!trace.certified) trace.warnings.emplace_back("initial point is outside the seed set; trace is not certified");
  if (alpha) {
    const double g01 = trace.residuals.front();
    double factor = 1.0;
    for (std::size_t n = 0; n < trace.residuals.size(); ++n) {
      trace.bound_certificates.push_back(factor * g01);
      factor *= *alpha;
    }
  }
  return trace;
}

/// Upper bound alpha^m / (1 - alpha) * g01 on |g(r_m, r_n)| for all n > m.
/// Throws std::domain_error unless 0 < alpha < 1 and g01 >= 0.
double a_priori_bound(double alpha, double g01, std::size_t m);

/// Count of steps where residual_n exceeds its certificate beyond the slack.
template <class Element>
std::size_t certificate_violations(const IterationTrace<Element>& trace, double slack = kCertificateSlack) {
  std::size_t bad = 0;
  for (std::size_t n = 0; n < trace.bound_certificates.size(); ++n) {
    if (trace.residuals[n] > trace.bound_certificates[n] * (1.0 + slack)) ++bad;
  }
  return bad;
}

/// Exhaustive comparison of |g(r_m, r_n)| against the a-priori bound over
/// all m < n <= horizon of a trace.
struct CauchyAudit {
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  ///< max of measured / bound over pairs with a positive bound
};

template <class Element>
CauchyAudit audit_cauchy_bound(const GFunctional<Element>& g, const IterationTrace<Element>& trace, double alpha,
                               std::size_t horizon, double slack = kCertificateSlack) {
  CauchyAudit audit;
  if (trace.residuals.empty()) return audit;
  const double g01 = trace.residuals.front();
  const std::size_t last = std::min(horizon, trace.iterates.size() - 1);
  for (std::size_t m = 0; m < last; ++m) {
    const double bound = a_priori_bound(alpha, g01, m);
    for (std::size_t n = m + 1; n <= last; ++n) {
      const double measured = std::abs(g(trace.iterates[m], trace.iterates[n]));
      ++audit.pairs_checked;
      if (measured > bound * (1.0 + slack)) ++audit.violations;
      if (bound > 0.0) audit.worst_ratio = std::max(audit.worst_ratio, measured / bound);
    }
  }
  return audit;
}

/// Decay report of the path argument for uniqueness of fixed points.
struct UniquenessReport {
  std::vector<double> bounds;         ///< alpha^n * sum_i |g(p_i, p_{i+1})|, n = 0..n_steps
  std::vector<double> iterated_sums;  ///< sum_i |g(S^n p_i, S^n p_{i+1})|, n = 0..n_steps
  double measured_gap = 0.0;          ///< |g(fp_a, fp_b)|
  bool coincide = false;              ///< final bound below tolerance
};

/// Pushes a path in the symmetric closure of the relation through n_steps
/// applications of the map and reports the geometric bound on |g(fp_a, fp_b)|.
///
/// Throws std::invalid_argument("not a path in R^s") if an edge is related in
/// neither direction, and std::invalid_argument if the path does not run from
/// fp_a to fp_b or either endpoint is not a fixed point within tol.
template <class Element, class Map, class Related>
UniquenessReport uniqueness_via_path(const Map& map, const GFunctional<Element>& g, const Related& related,
                                     const Element& fp_a, const Element& fp_b, std::span<const Element> path,
                                     double alpha, std::size_t n_steps, double tol = 1e-12) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("uniqueness_via_path: alpha must lie in (0,1)");
  if (path.size() < 2) throw std::invalid_argument("uniqueness_via_path: a path needs at least two nodes");
  if (!(path.front() == fp_a) || !(path.back() == fp_b)) {
    throw std::invalid_argument("uniqueness_via_path: path endpoints do not match the fixed points");
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!related(path[i], path[i + 1]) && !related(path[i + 1], path[i])) {
      throw std::invalid_argument("not a path in R^s");
    }
  }
  if (std::abs(g(fp_a, map(fp_a))) > tol || std::abs(g(fp_b, map(fp_b))) > tol) {
    throw std::invalid_argument("uniqueness_via_path: endpoint is not a fixed point");
  }

  auto edge_sum = [&](const std::vector<Element>& nodes) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) sum += std::abs(g(nodes[i], nodes[i + 1]));
    return sum;
  };

  UniquenessReport report;
  std::vector<Element> nodes(path.begin(), path.end());
  const double base = edge_sum(nodes);
  double factor = 1.0;
  for (std::size_t n = 0; n <= n_steps; ++n) {
    report.bounds.push_back(factor * base);
    report.iterated_sums.push_back(edge_sum(nodes));
    factor *= alpha;
    for (auto& node : nodes) node = map(node);
  }
  report.measured_gap = std::abs(g(fp_a, fp_b));
  report.coincide = report.bounds.back() <= tol;
  return report;
}

}  // namespace relfix
