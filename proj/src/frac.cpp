#include "relfix/frac.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "relfix/plot.hpp"

namespace relfix {

namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  const double t = x + kLanczosG + 0.5;
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// (k+1)^p - k^p without cancellation for large k.
double power_step(double k, double p) {
  if (k == 0.0) return 1.0;
  return std::pow(k, p) * std::expm1(p * std::log1p(1.0 / k));
}

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) throw std::domain_error("gamma: argument must be positive and finite");
  if (x < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos(1.0 - x));
  return lanczos(x);
}

QuadratureWeights::QuadratureWeights(double zeta, std::size_t n_intervals) : zeta_(zeta), n_(n_intervals) {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw std::invalid_argument("quadrature: order must be positive");
  if (n_intervals < 1) throw std::invalid_argument("quadrature: grid needs at least one interval");
  const double p = zeta + 1.0;
  scale_ = std::pow(step(), zeta) / gamma(zeta + 2.0);

  // steps[k] = (k+1)^p - k^p
  std::vector<double> steps(n_);
  for (std::size_t k = 0; k < n_; ++k) steps[k] = power_step(static_cast<double>(k), p);
  interior_.assign(n_, 0.0);
  for (std::size_t k = 1; k < n_; ++k) interior_[k] = steps[k] - steps[k - 1];
  start_.assign(n_ + 1, 0.0);
  for (std::size_t target = 1; target <= n_; ++target) {
    start_[target] = p * std::pow(static_cast<double>(target), zeta) - steps[target - 1];
  }
}

double QuadratureWeights::weight(std::size_t target, std::size_t j) const {
  if (target > n_ || j > target) throw std::out_of_range("quadrature weight index");
  if (target == 0) return 0.0;
  if (j == target) return scale_;
  if (j == 0) return scale_ * start_[target];
  return scale_ * interior_[target - j];
}

double QuadratureWeights::apply(std::span<const double> f, std::size_t target) const {
  if (f.size() != n_ + 1) throw std::invalid_argument("quadrature: grid mismatch");
  if (target == 0) return 0.0;
  double sum = start_[target] * f[0];
  for (std::size_t j = 1; j < target; ++j) sum += interior_[target - j] * f[j];
  sum += f[target];
  return scale_ * sum;
}

GridFunction frac_integral(const GridFunction& f, double zeta) {
  return frac_integral(f, QuadratureWeights(zeta, f.n_intervals()));
}

GridFunction frac_integral(const GridFunction& f, const QuadratureWeights& weights) {
  if (weights.n_intervals() != f.n_intervals()) throw std::invalid_argument("frac_integral: grid mismatch");
  std::vector<double> out(f.size(), 0.0);
  for (std::size_t n = 1; n < f.size(); ++n) out[n] = weights.apply(f.values(), n);
  return GridFunction(std::move(out));
}

void FdeProblem::validate() const {
  if (!(zeta > 0.0) || !std::isfinite(zeta)) throw std::invalid_argument("fde: zeta must be positive");
  if (n_intervals < 8) throw std::invalid_argument("fde: grid needs at least 8 intervals");
  if (!rhs) throw std::invalid_argument("fde: right-hand side not set");
  if (!(lipschitz_alpha > 0.0 && lipschitz_alpha < 1.0)) throw std::invalid_argument("fde: alpha must lie in (0,1)");
  policy.validate();
}

FdeProblem demo_problem() {
  FdeProblem prob;
  prob.zeta = 0.9;
  prob.rhs = [](double t, double u) { return u / 16.0 + std::sin(t); };
  prob.n_intervals = kDefaultGridIntervals;
  return prob;
}

GridFunction apply_T(const GridFunction& u, const FdeProblem& prob) {
  return apply_T(u, prob, QuadratureWeights(prob.zeta, u.n_intervals()));
}

GridFunction apply_T(const GridFunction& u, const FdeProblem& prob, const QuadratureWeights& weights) {
  if (weights.n_intervals() != u.n_intervals()) throw std::invalid_argument("apply_T: grid mismatch");
  std::vector<double> h(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    h[j] = prob.rhs(u.node(j), u[j]);
    if (!std::isfinite(h[j])) throw std::runtime_error("rhs diverged at node " + std::to_string(j));
  }
  const GridFunction inner = frac_integral(GridFunction(std::move(h)), weights);
  const double c = trapezoid(inner);
  std::vector<double> out(u.size());
  out[0] = 0.0;
  for (std::size_t j = 1; j < u.size(); ++j) out[j] = inner[j] + 2.0 * u.node(j) * c;
  return GridFunction(std::move(out));
}

double lipschitz_bound(const FdeProblem& prob) {
  const double a = prob.lipschitz_alpha;
  const double g = prob.gamma_variant == GammaVariant::alpha_plus_one ? gamma(a + 1.0) : gamma(prob.zeta + 1.0);
  return a * g / 4.0;
}

LipschitzReport lipschitz_check(const FdeProblem& prob, std::span<const double> t_samples,
                                std::span<const std::pair<GridFunction, GridFunction>> ordered_pairs) {
  LipschitzReport report;
  report.bound = lipschitz_bound(prob);
  double worst = 0.0;
  bool exact_violation = false;
  for (const auto& [u, v] : ordered_pairs) {
    if (!pointwise_leq(u, v)) throw std::invalid_argument("lipschitz_check: sample pair is not ordered");
    for (double mu : t_samples) {
      const double a = interpolate(u, mu);
      const double b = interpolate(v, mu);
      const double dh = std::abs(prob.rhs(mu, a) - prob.rhs(mu, b));
      ++report.samples;
      const double du = std::abs(a - b);
      if (du == 0.0) {
        exact_violation = exact_violation || dh > 0.0;
        continue;
      }
      worst = std::max(worst, dh / du);
    }
  }
  report.margin = report.bound - worst;
  report.passes = !exact_violation && report.margin >= 0.0;
  return report;
}

FdeSolution solve_fde(const FdeProblem& prob) {
  prob.validate();
  const std::size_t n = prob.n_intervals;
  const QuadratureWeights weights(prob.zeta, n);

  std::vector<double> t_samples;
  for (std::size_t j = 0; j <= 32; ++j) t_samples.push_back(static_cast<double>(j) / 32.0);
  std::vector<std::pair<GridFunction, GridFunction>> pairs;
  const GridFunction zero = GridFunction::constant(n, 0.0);
  pairs.emplace_back(zero, GridFunction::constant(n, 1.0));
  pairs.emplace_back(GridFunction::constant(n, -2.0), GridFunction::sample(n, [](double t) { return t * t; }));
  pairs.emplace_back(zero, GridFunction::sample(n, [](double t) { return 10.0 * t; }));

  FdeSolution result{{}, zero, lipschitz_check(prob, t_samples, pairs), {}};
  if (!prob.in_differential_regime()) {
    result.notes.emplace_back("zeta = " + format_real(prob.zeta) +
                              " lies outside (1,2]; the integral operator is iterated as given");
  }
  if (!result.lipschitz.passes) {
    result.notes.emplace_back("Lipschitz condition on the right-hand side not confirmed; convergence is not certified");
  }

  const GFunctional<GridFunction> g{[](const GridFunction& a, const GridFunction& b) { return sup_diff(a, b); },
                                    DomainMode::global};
  auto map = [&](const GridFunction& u) { return apply_T(u, prob, weights); };
  auto related = [](const GridFunction& a, const GridFunction& b) { return pointwise_leq(a, b); };
  result.trace = iterate(map, g, related, zero, prob.policy, prob.lipschitz_alpha);
  if (!result.trace.converged) {
    throw NonConvergenceError("fde: no convergence within " + std::to_string(prob.policy.max_iterations) + " iterations",
                              std::move(result.trace));
  }
  result.solution = result.trace.last();
  return result;
}

BoundaryResiduals boundary_residuals(const GridFunction& f) {
  if (f.n_intervals() < 2) throw std::invalid_argument("boundary_residuals: grid too coarse");
  const double h = f.step();
  const double slope = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  return {std::abs(f[0]), std::abs(trapezoid(f) - slope)};
}

}  // namespace relfix
