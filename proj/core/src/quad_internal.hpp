#pragma once

#include <cmath>
#include <functional>

#include "cuspwave/numerics.hpp"

namespace cuspwave::detail {

// Integrate g(tau) over [0,1] where g may carry inverse-square-root
// singularities at the endpoints (lambda at or near lambda0). Substituting
// tau = u^2 on the left half and tau = 1 - u^2 on the right half makes the
// integrand bounded whenever the endpoint is a maximizer of Omega with
// nonvanishing omega there.
inline double integrate_endpoint_regularized(
    const std::function<double(double)>& g, double tol) {
  const double uMid = std::sqrt(0.5);
  auto left = [&](double u) { return 2.0 * u * g(u * u); };
  auto right = [&](double u) { return 2.0 * u * g(1.0 - u * u); };
  return integrate(left, 0.0, uMid, tol) + integrate(right, 0.0, uMid, tol);
}

}  // namespace cuspwave::detail
