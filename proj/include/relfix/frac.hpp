#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relfix/grid_fn.hpp"
#include "relfix/picard.hpp"

namespace relfix {

/// Gamma function for x > 0 (Lanczos approximation with reflection below
/// 1/2). Relative error stays below 1e-13 on [0.05, 20].
/// Throws std::domain_error for x <= 0 or non-finite x.
double gamma(double x);

/// Product-trapezoid weights for the Riemann-Liouville integral of order
/// zeta on a uniform grid with N intervals.
///
/// The integrand is replaced by its piecewise-linear interpolant and each
/// linear piece is integrated exactly against (t_n - s)^(zeta-1). At target
/// node n >= 1 the weights, up to the common factor h^zeta / Gamma(zeta+2),
/// are
///   j = 0:         (n-1)^(zeta+1) - (n-1-zeta) n^zeta
///   0 < j < n:     (k+1)^(zeta+1) - 2 k^(zeta+1) + (k-1)^(zeta+1),  k = n-j
///   j = n:         1
/// Interior weights depend only on the offset k and are stored once.
class QuadratureWeights {
 public:
  /// Throws std::invalid_argument unless zeta > 0 and n_intervals >= 1.
  QuadratureWeights(double zeta, std::size_t n_intervals);

  double order() const { return zeta_; }
  std::size_t n_intervals() const { return n_; }
  double step() const { return 1.0 / static_cast<double>(n_); }

  /// Full weight (including h^zeta / Gamma(zeta+2)) of node j at target n.
  double weight(std::size_t target, std::size_t j) const;

  /// sum_j weight(target, j) * f_j, accumulated in ascending j.
  double apply(std::span<const double> f, std::size_t target) const;

 private:
  double zeta_;
  std::size_t n_;
  double scale_;
  std::vector<double> interior_;  ///< interior_[k], k = 1..n-1
  std::vector<double> start_;     ///< start_[n], weight of node 0 at target n
};

/// Node values of I^zeta f by product-trapezoid quadrature; node 0 is 0.
GridFunction frac_integral(const GridFunction& f, double zeta);
GridFunction frac_integral(const GridFunction& f, const QuadratureWeights& weights);

/// Selects the constant in the Lipschitz condition on the right-hand side.
enum class GammaVariant {
  alpha_plus_one,  ///< alpha * Gamma(alpha + 1) / 4
  zeta_plus_one    ///< alpha * Gamma(zeta + 1) / 4
};

/// Integral boundary-value problem D^zeta f = h(t, f), f(0) = 0,
/// int_0^1 f = f'(0), solved through its fixed-point form
///   T u(r) = I^zeta[h(., u)](r) + 2 r int_0^1 I^zeta[h(., u)](s) ds.
struct FdeProblem {
  double zeta = 0.9;
  std::function<double(double, double)> rhs;  ///< h(t, u)
  std::size_t n_intervals = kDefaultGridIntervals;
  StoppingPolicy policy{};
  double lipschitz_alpha = 0.5;
  GammaVariant gamma_variant = GammaVariant::zeta_plus_one;

  /// Throws std::invalid_argument unless zeta > 0, N >= 8, rhs is set and
  /// lipschitz_alpha lies in (0,1).
  void validate() const;

  /// Whether zeta lies in (1, 2], the order range of the differential form.
  bool in_differential_regime() const { return zeta > 1.0 && zeta <= 2.0; }
};

/// h(t, u) = u / 16 + sin t with zeta = 0.9 on a 512-interval grid.
FdeProblem demo_problem();

/// Applies the fixed-point operator to u. Node 0 of the result is exactly 0.
/// Throws std::runtime_error("rhs diverged at node j") on a non-finite h.
GridFunction apply_T(const GridFunction& u, const FdeProblem& prob);
GridFunction apply_T(const GridFunction& u, const FdeProblem& prob, const QuadratureWeights& weights);

/// The Lipschitz constant the right-hand side must respect.
double lipschitz_bound(const FdeProblem& prob);

struct LipschitzReport {
  bool passes = false;
  double bound = 0.0;   ///< constant from lipschitz_bound
  double margin = 0.0;  ///< bound minus the worst observed |dh| / |du|
  std::size_t samples = 0;
};

/// Checks |h(mu, u(mu)) - h(mu, v(mu))| <= L |u(mu) - v(mu)| at every sample
/// time for every ordered pair (u <= v pointwise). Samples with u(mu) = v(mu)
/// only need equal h values. Throws std::invalid_argument if a pair is not
/// ordered.
LipschitzReport lipschitz_check(const FdeProblem& prob, std::span<const double> t_samples,
                                std::span<const std::pair<GridFunction, GridFunction>> ordered_pairs);

struct FdeSolution {
  IterationTrace<GridFunction> trace;
  GridFunction solution;
  LipschitzReport lipschitz;
  std::vector<std::string> notes;
};

/// Thrown when the iteration budget runs out; carries the partial trace.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, IterationTrace<GridFunction> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const IterationTrace<GridFunction>& trace() const { return trace_; }

 private:
  IterationTrace<GridFunction> trace_;
};

/// Picard iteration of apply_T from the zero function with sup-norm
/// residuals. A failed Lipschitz check is recorded as a note, not an error.
FdeSolution solve_fde(const FdeProblem& prob);

struct BoundaryResiduals {
  double at_origin = 0.0;    ///< |f(0)|
  double integral = 0.0;     ///< |int_0^1 f - f'(0)|, diagnostic only
};

/// Trapezoid rule for the integral, one-sided second-order difference for f'(0).
BoundaryResiduals boundary_residuals(const GridFunction& solution);

}  // namespace relfix
