#pragma once

#include <functional>
#include <vector>

namespace cuspwave {

// Adaptive Gauss-Kronrod 15(7) quadrature of f over [a,b].
// tol is a relative termination target on the accumulated estimate.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int maxDepth = 18);

// Bracketing Brent-type root solve of f on [a,b]; requires a sign change.
// Terminates when the bracket shrinks below absTol + relTol*|midpoint|.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double absTol = 1e-12, double relTol = 1e-12, int maxIter = 200);

// Golden-section minimizer on [a,b] for unimodal f; returns argmin.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol = 1e-12);

// Monotone cubic (Fritsch-Carlson) interpolant through (x_k, y_k).
// Shape-preserving: no overshoot between data points. The antiderivative
// is evaluated exactly per cubic piece from cached cumulative integrals.
class Pchip {
 public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;
  // Integral of the interpolant from x.front() to x.
  double integral(double x) const;
  // Largest |derivative| over the whole range (analytic per-piece extrema).
  double maxAbsDerivative() const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  int locate(double x) const;
  std::vector<double> x_, y_, d_;     // knots, values, node derivatives
  std::vector<double> cumInt_;        // integral from x_[0] to x_[k]
};

}  // namespace cuspwave
