#include "cuspwave/numerics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "cuspwave/errors.hpp"

namespace cuspwave {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int maxDepth) {
  if (a == b) return 0.0;
  double error = 0.0;
  double q = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, maxDepth, tol, &error);
  if (!std::isfinite(q)) {
    fail(ErrorKind::Numerical, "quadrature produced a non-finite value");
  }
  return q;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double absTol, double relTol, int maxIter) {
  if (a > b) std::swap(a, b);
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (std::signbit(fa) == std::signbit(fb)) {
    fail(ErrorKind::Numerical, "root bracket does not straddle a sign change");
  }
  auto done = [&](double lo, double hi) {
    return std::abs(hi - lo) <= absTol + relTol * 0.5 * std::abs(lo + hi);
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(maxIter);
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
  return 0.5 * (r.first + r.second);
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    fail(ErrorKind::Validation, "interpolant needs at least two (x,y) pairs");
  }
  for (size_t k = 0; k + 1 < n; ++k) {
    if (!(x_[k + 1] > x_[k])) {
      fail(ErrorKind::Validation, "interpolation knots must strictly increase");
    }
  }

  // Fritsch-Carlson derivatives: harmonic-mean limiting keeps the piecewise
  // cubic monotone wherever the data is.
  std::vector<double> dx(n - 1), slope(n - 1);
  for (size_t k = 0; k + 1 < n; ++k) {
    dx[k] = x_[k + 1] - x_[k];
    slope[k] = (y_[k + 1] - y_[k]) / dx[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = slope[0];
  } else {
    for (size_t k = 1; k + 1 < n; ++k) {
      if (slope[k - 1] * slope[k] <= 0.0) {
        d_[k] = 0.0;
      } else {
        double w1 = 2.0 * dx[k] + dx[k - 1];
        double w2 = dx[k] + 2.0 * dx[k - 1];
        d_[k] = (w1 + w2) / (w1 / slope[k - 1] + w2 / slope[k]);
      }
    }
    auto endpointSlope = [](double h0, double h1, double s0, double s1) {
      double d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
      if (d * s0 <= 0.0) return 0.0;
      if (s0 * s1 < 0.0 && std::abs(d) > 3.0 * std::abs(s0)) return 3.0 * s0;
      return d;
    };
    d_[0] = endpointSlope(dx[0], dx[1], slope[0], slope[1]);
    d_[n - 1] = endpointSlope(dx[n - 2], dx[n - 3], slope[n - 2], slope[n - 3]);
  }

  // Exact integral of each cubic piece, accumulated once.
  cumInt_.assign(n, 0.0);
  for (size_t k = 0; k + 1 < n; ++k) {
    double h = dx[k];
    // Hermite piece: integral = h/2*(y_k + y_{k+1}) + h^2/12*(d_k - d_{k+1}).
    cumInt_[k + 1] = cumInt_[k] + 0.5 * h * (y_[k] + y_[k + 1]) +
                     h * h / 12.0 * (d_[k] - d_[k + 1]);
  }
}

int Pchip::locate(double x) const {
  int lo = 0, hi = int(x_.size()) - 1;
  if (x <= x_.front()) return 0;
  if (x >= x_[hi - 1]) return hi - 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (x_[mid] <= x ? lo : hi) = mid;
  }
  return lo;
}

double Pchip::operator()(double x) const {
  int k = locate(x);
  double h = x_[k + 1] - x_[k];
  double t = (x - x_[k]) / h;
  double t2 = t * t, t3 = t2 * t;
  double h00 = 2 * t3 - 3 * t2 + 1;
  double h10 = t3 - 2 * t2 + t;
  double h01 = -2 * t3 + 3 * t2;
  double h11 = t3 - t2;
  return h00 * y_[k] + h * h10 * d_[k] + h01 * y_[k + 1] + h * h11 * d_[k + 1];
}

double Pchip::derivative(double x) const {
  int k = locate(x);
  double h = x_[k + 1] - x_[k];
  double t = (x - x_[k]) / h;
  double t2 = t * t;
  double g00 = (6 * t2 - 6 * t) / h;
  double g10 = 3 * t2 - 4 * t + 1;
  double g01 = (-6 * t2 + 6 * t) / h;
  double g11 = 3 * t2 - 2 * t;
  return g00 * y_[k] + g10 * d_[k] + g01 * y_[k + 1] + g11 * d_[k + 1];
}

double Pchip::integral(double x) const {
  x = std::clamp(x, x_.front(), x_.back());
  int k = locate(x);
  double h = x_[k + 1] - x_[k];
  double t = (x - x_[k]) / h;
  double t2 = t * t, t3 = t2 * t, t4 = t2 * t2;
  // Antiderivatives of the Hermite basis on [0,1], scaled by h.
  double H00 = t4 / 2 - t3 + t;
  double H10 = t4 / 4 - 2 * t3 / 3 + t2 / 2;
  double H01 = -t4 / 2 + t3;
  double H11 = t4 / 4 - t3 / 3;
  return cumInt_[k] + h * (H00 * y_[k] + h * H10 * d_[k] + H01 * y_[k + 1] +
                           h * H11 * d_[k + 1]);
}

double Pchip::maxAbsDerivative() const {
  // The derivative is quadratic on each piece: check endpoints and vertex.
  double best = 0.0;
  for (size_t k = 0; k + 1 < x_.size(); ++k) {
    double h = x_[k + 1] - x_[k];
    double s = (y_[k + 1] - y_[k]) / h;
    // p'(t) = a t^2 + b t + c in the local variable t.
    double a = 3.0 * (d_[k] + d_[k + 1] - 2.0 * s);
    double b = 2.0 * (-2.0 * d_[k] - d_[k + 1] + 3.0 * s);
    double c = d_[k];
    best = std::max({best, std::abs(d_[k]), std::abs(d_[k + 1])});
    if (std::abs(a) > 0) {
      double tv = -b / (2.0 * a);
      if (tv > 0.0 && tv < 1.0) {
        best = std::max(best, std::abs((a * tv + b) * tv + c));
      }
    }
  }
  return best;
}

}  // namespace cuspwave
