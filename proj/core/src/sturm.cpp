#include "cuspwave/sturm.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "cuspwave/errors.hpp"
#include "cuspwave/numerics.hpp"

namespace cuspwave {

namespace {

using State = std::array<double, 2>;  // (V, W), W = Hp^{-3} V'

void requireAboveLambda0(const VorticityFn& v, double lambda,
                         const char* who) {
  if (!(lambda > v.lambda0())) {
    fail(ErrorKind::Domain, std::string(who) + ": lambda must exceed lambda0");
  }
}

// March the shooting system across [0,1], recording node values on the
// uniform np-grid. Hp is analytic in Omega, so the right-hand side is cheap.
ShootSolution integrateShoot(const VorticityFn& v, double lambda, double mu,
                             int np, double odeTol) {
  ShootSolution s;
  s.lambda = lambda;
  s.mu = mu;
  s.p.resize(np + 1);
  s.V.resize(np + 1);
  s.W.resize(np + 1);

  auto rhs = [&](const State& y, State& dydp, double p) {
    double arg = lambda * lambda - 2.0 * v.Omega(p);
    double rt = std::sqrt(arg);
    double hp3 = 1.0 / (arg * rt);        // Hp^3
    dydp[0] = hp3 * y[1];
    dydp[1] = -mu * rt * y[0];            // -mu Hp^{-1} V
  };

  double hp0 = stream_hp(v, lambda, 0.0);
  State y{0.0, 1.0 / (hp0 * hp0 * hp0)};  // V(0)=0, V'(0)=1
  s.p[0] = 0.0;
  s.V[0] = y[0];
  s.W[0] = y[1];

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(
      odeTol, odeTol, odeint::runge_kutta_dopri5<State>());
  double dp = 1.0 / np;
  for (int j = 0; j < np; ++j) {
    double a = double(j) / np, b = double(j + 1) / np;
    odeint::integrate_adaptive(stepper, rhs, y, a, b, dp / 8.0);
    s.p[j + 1] = b;
    s.V[j + 1] = y[0];
    s.W[j + 1] = y[1];
  }
  s.sigma = s.W[np] - s.V[np];
  return s;
}

}  // namespace

ShootSolution shoot(const VorticityFn& v, double lambda, double mu, int np,
                    double odeTol) {
  requireAboveLambda0(v, lambda, "shoot");
  if (np < 2) fail(ErrorKind::Validation, "shoot: np must be >= 2");
  return integrateShoot(v, lambda, mu, np, odeTol);
}

double dispersion_sigma(const VorticityFn& v, double lambda, double mu,
                        double odeTol) {
  requireAboveLambda0(v, lambda, "dispersion_sigma");
  return integrateShoot(v, lambda, mu, 4, odeTol).sigma;
}

namespace {

// Coefficient bounds of the vertical problem.
void coefficientBounds(const VorticityFn& v, double lambda, double* frakm,
                       double* frakM) {
  *frakM = 1.0 / std::sqrt(lambda * lambda - 2.0 * v.maxOmega());
  *frakm = 1.0 / std::sqrt(lambda * lambda - 2.0 * v.minOmega());
}

// First sign change of sigma scanning upward from a point where sigma > 0.
double firstCrossingAbove(const VorticityFn& v, double lambda, double start,
                          double sigmaStart, double step, double tol) {
  double prev = start, sPrev = sigmaStart;
  const int cap = 200000;
  for (int k = 0; k < cap; ++k) {
    double cur = prev + step;
    double sCur = dispersion_sigma(v, lambda, cur);
    if (sCur == 0.0) return cur;
    if (std::signbit(sCur) != std::signbit(sPrev)) {
      auto f = [&](double mu) { return dispersion_sigma(v, lambda, mu); };
      return find_root(f, prev, cur, 1e-12, tol);
    }
    prev = cur;
    sPrev = sCur;
  }
  fail(ErrorKind::Numerical, "eigenvalue scan exhausted its budget");
}

}  // namespace

double least_eigenvalue(const VorticityFn& v, double lambda, double tol) {
  requireAboveLambda0(v, lambda, "least_eigenvalue");
  double frakm, frakM;
  coefficientBounds(v, lambda, &frakm, &frakM);

  // Lower end: |mu0| <= kappa^2/frakM^2 where tanh(kappa)/kappa = frakM^{-3},
  // solvable when frakM > 1. Otherwise mu0 > 0 and a unit offset suffices.
  double lo = -1.0;
  double target = 1.0 / (frakM * frakM * frakM);
  if (target < 1.0) {
    auto f = [&](double k) { return std::tanh(k) / k - target; };
    double hi = 2.0;
    while (f(hi) > 0.0) hi *= 2.0;
    double kappa = find_root(f, 1e-8, hi, 1e-12, 1e-12);
    double bound = kappa * kappa / (frakM * frakM);
    lo = -bound - 0.1 * (1.0 + bound);
  }
  double sLo = dispersion_sigma(v, lambda, lo);
  for (int k = 0; k < 60 && !(sLo > 0.0); ++k) {
    lo *= 2.0;
    sLo = dispersion_sigma(v, lambda, lo);
  }
  if (!(sLo > 0.0)) {
    fail(ErrorKind::Numerical, "least_eigenvalue: no positive-sigma start");
  }

  double step = 0.5 * M_PI * M_PI * frakm / (frakM * frakM * frakM);
  return firstCrossingAbove(v, lambda, lo, sLo, step, tol);
}

double second_eigenvalue(const VorticityFn& v, double lambda, double mu0,
                         double tol) {
  requireAboveLambda0(v, lambda, "second_eigenvalue");
  double frakm, frakM;
  coefficientBounds(v, lambda, &frakm, &frakM);
  double bound = M_PI * M_PI * frakm / (frakM * frakM * frakM);
  double step = 0.5 * bound;

  // Step just past mu0 so the scan sees the post-root sign.
  double start = mu0 + 1e-3 * step;
  double sStart = dispersion_sigma(v, lambda, start);
  double mu1 = firstCrossingAbove(v, lambda, start, sStart, step, tol);
  if (mu1 < bound - 1e-10) {
    fail(ErrorKind::Numerical,
         "second_eigenvalue: located root violates the lower bound");
  }
  return mu1;
}

SpectralPoint spectral_point(const VorticityFn& v, double lambda, int np) {
  SpectralPoint sp;
  sp.lambda = lambda;
  coefficientBounds(v, lambda, &sp.frakm, &sp.frakM);
  sp.mu0 = least_eigenvalue(v, lambda);
  sp.mu1 = second_eigenvalue(v, lambda, sp.mu0);
  sp.kStar = sp.mu0 < 0.0 ? std::sqrt(-sp.mu0) : 0.0;
  ShootSolution sol = shoot(v, lambda, sp.mu0, np);
  sp.p = std::move(sol.p);
  sp.phi0 = std::move(sol.V);
  return sp;
}

double dispersion_identity_residual(const VorticityFn& v, double lambda) {
  requireAboveLambda0(v, lambda, "dispersion_identity_residual");
  double sigma0 = dispersion_sigma(v, lambda, 0.0);

  double delta = 1e-4 * (1.0 + lambda);
  double gap = lambda - v.lambda0();
  delta = std::min(delta, 0.25 * gap);
  auto D = [&](double d) {
    return (bernoulli_of_lambda(v, lambda + d) -
            bernoulli_of_lambda(v, lambda - d)) /
           (2.0 * d);
  };
  double rPrime = (4.0 * D(delta / 2.0) - D(delta)) / 3.0;  // Richardson
  double rhs = 1.5 * lambda * lambda * rPrime;
  double denom = std::max({std::abs(sigma0), std::abs(rhs), 1e-12});
  return std::abs(sigma0 - rhs) / denom;
}

BifurcationData bifurcation_wavenumber(const VorticityFn& v, double r,
                                       const CriticalData& cd) {
  ConjugatePair cj = conjugate_streams(v, r, cd);
  BifurcationData bd;
  bd.lambdaPlus = cj.lambdaPlus;
  bd.mu0 = least_eigenvalue(v, cj.lambdaPlus);
  if (!(bd.mu0 < 0.0)) {
    fail(ErrorKind::Numerical,
         "bifurcation_wavenumber: least eigenvalue is not negative on the "
         "thicker stream (dispersion inconsistency)");
  }
  bd.kStar = std::sqrt(-bd.mu0);
  bd.halfPeriod = M_PI / bd.kStar;
  return bd;
}

}  // namespace cuspwave
