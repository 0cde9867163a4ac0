#include "relfix/picard.hpp"

namespace relfix {

void StoppingPolicy::validate() const {
  if (!(residual_tol > 0.0)) throw std::invalid_argument("stopping policy: residual_tol must be positive");
  if (max_iterations < 1) throw std::invalid_argument("stopping policy: max_iterations must be at least 1");
}

double a_priori_bound(double alpha, double g01, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("a_priori_bound: alpha must lie in (0,1)");
  if (!(g01 >= 0.0)) throw std::domain_error("a_priori_bound: |g(r0,r1)| must be nonnegative");
  return std::pow(alpha, static_cast<double>(m)) / (1.0 - alpha) * g01;
}

}  // namespace relfix
