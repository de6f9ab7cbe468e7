#include <cmath>
#include <vector>

#include "doctest.h"

#include "cuspwave/errors.hpp"
#include "cuspwave/numerics.hpp"

using namespace cuspwave;

TEST_CASE("quadrature reproduces closed-form integrals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 30.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Oscillatory integrand forcing several subdivision levels.
  CHECK(integrate([](double x) { return std::sin(40.0 * x); }, 0.0, 1.0) ==
        doctest::Approx((1.0 - std::cos(40.0)) / 40.0).epsilon(1e-11));
}

TEST_CASE("quadrature handles an integrable endpoint spike") {
  // int_0^1 log(x) dx = -1; adaptive refinement reaches the endpoint. The
  // refinement tree doubles per level when the tolerance is unreachable, so
  // the depth stays well below the point where that blows up.
  double got = integrate([](double x) { return std::log(std::max(x, 1e-300)); },
                         0.0, 1.0, 1e-12, 26);
  CHECK(got == doctest::Approx(-1.0).epsilon(1e-8));
}

TEST_CASE("root solve converges and validates its bracket") {
  double root = find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  CHECK(root == doctest::Approx(0.7390851332151607).epsilon(1e-12));

  double cubic = find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  CHECK(cubic == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(
      find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), Error);
}

TEST_CASE("golden-section minimum of a unimodal function") {
  double xm = golden_min([](double x) { return (x - 0.3) * (x - 0.3); }, 0.0,
                         1.0, 1e-10);
  CHECK(xm == doctest::Approx(0.3).epsilon(1e-7));
  double xc = golden_min([](double x) { return std::cosh(x - 1.2); }, -2.0, 4.0,
                         1e-10);
  CHECK(xc == doctest::Approx(1.2).epsilon(1e-7));
}

TEST_CASE("monotone cubic interpolation is exact on linear data") {
  std::vector<double> x{0.0, 0.3, 0.7, 1.0};
  std::vector<double> y{1.0, 1.6, 2.4, 3.0};  // y = 1 + 2x
  Pchip f(x, y);
  for (double t : {0.0, 0.11, 0.35, 0.5, 0.99, 1.0}) {
    CHECK(f(t) == doctest::Approx(1.0 + 2.0 * t).epsilon(1e-14));
    CHECK(f.derivative(t) == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK(f.integral(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(f.maxAbsDerivative() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("monotone cubic interpolation preserves monotone shape") {
  std::vector<double> x{0.0, 0.1, 0.4, 0.6, 0.85, 1.0};
  std::vector<double> y{0.0, 0.02, 0.5, 0.52, 0.9, 1.0};
  Pchip f(x, y);
  double prev = f(0.0);
  for (int k = 1; k <= 500; ++k) {
    double t = double(k) / 500.0;
    double cur = f(t);
    CHECK(cur >= prev - 1e-14);
    prev = cur;
  }
  // No overshoot beyond the data range.
  CHECK(f(0.999) <= 1.0 + 1e-14);
  CHECK(f(0.001) >= -1e-14);
}

TEST_CASE("interpolant end slopes recover a smooth function") {
  // Sampled parabola: the one-sided three-point end slopes are exact for
  // quadratics, so derivative() at both ends must match 2x.
  std::vector<double> x, y;
  for (int k = 0; k <= 10; ++k) {
    double t = double(k) / 10.0;
    x.push_back(t);
    y.push_back(t * t);
  }
  Pchip f(x, y);
  CHECK(f.derivative(0.0) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::abs(f.derivative(0.0)) < 1e-12);
  CHECK(f.derivative(1.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("interpolant integral matches adaptive quadrature of itself") {
  std::vector<double> x{0.0, 0.2, 0.5, 0.8, 1.0};
  std::vector<double> y{0.3, 0.9, 1.1, 2.5, 2.6};
  Pchip f(x, y);
  for (double t : {0.2, 0.37, 0.64, 1.0}) {
    double viaQuad = integrate([&](double u) { return f(u); }, 0.0, t, 1e-13);
    CHECK(f.integral(t) == doctest::Approx(viaQuad).epsilon(1e-11));
  }
}

TEST_CASE("interpolant accessors and input validation") {
  std::vector<double> x{0.0, 0.5, 1.0};
  std::vector<double> y{1.0, 2.0, 4.0};
  Pchip f(x, y);
  CHECK(f.knots() == x);
  CHECK(f.values() == y);
  CHECK_THROWS_AS(Pchip({0.0, 0.5, 0.5, 1.0}, {0, 1, 2, 3}), Error);
  CHECK_THROWS_AS(Pchip({0.0, 1.0}, {0, 1, 2}), Error);
}
