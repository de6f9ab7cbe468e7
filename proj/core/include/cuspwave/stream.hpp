#pragma once

#include <vector>

#include "cuspwave/vorticity.hpp"

namespace cuspwave {

// Vertical derivative of the shear-flow height function,
// H_p(p; lambda) = (lambda^2 - 2 Omega(p))^(-1/2).
double stream_hp(const VorticityFn& v, double lambda, double p);

// Depth d(lambda) = int_0^1 H_p dp. At lambda = lambda0 the integrand is
// singular where Omega peaks; endpoint singularities are removed by the
// substitutions tau = u^2 / tau = 1 - u^2, interior ones diverge and the
// function returns +infinity (class I).
double depth(const VorticityFn& v, double lambda, double quadTol = 1e-12);

// Bernoulli constant of the laminar flow, R(lambda) = (lambda^2 - 2 Omega(1)
// + 2 d(lambda)) / 3.
double bernoulli_of_lambda(const VorticityFn& v, double lambda,
                           double quadTol = 1e-12);

struct StreamProfile {
  double lambda = 0;
  std::vector<double> p;   // uniform nodes, np+1 of them
  std::vector<double> H;   // cumulative quadrature of Hp, H[0] = 0
  std::vector<double> Hp;  // analytic values at the nodes
};

// H sampled on the uniform p-grid with np cells; H[np] matches depth()
// to quadrature accuracy.
StreamProfile stream_profile(const VorticityFn& v, double lambda, int np,
                             double quadTol = 1e-12);

struct CriticalData {
  double lambda0 = 0;
  double lambdaC = 0;  // unique root of int_0^1 (lambda^2-2Omega)^(-3/2) = 1
  double rC = 0;       // R(lambdaC): cusp of the parameter region
  double dC = 0;       // d(lambdaC)
  double d0 = 0;       // d(lambda0); +infinity for class I
  double r0 = 0;       // R(lambda0); +infinity for class I
};

CriticalData critical_data(const VorticityFn& v, double quadTol = 1e-12,
                           double rootTol = 1e-12);

struct ConjugatePair {
  double r = 0;
  double lambdaPlus = 0;   // on (lambda0, lambdaC): the thicker stream
  double lambdaMinus = 0;  // on (lambdaC, inf): the thinner stream
  double dPlus = 0, dMinus = 0;
  bool nearCritical = false;  // lambdaMinus - lambdaPlus below 1e-7
};

// Both laminar flows sharing the Bernoulli constant r > rC. Throws a Domain
// error for r <= rC ("subcritical parameter") and, for classes II/III, for
// r >= r0 ("beyond r0").
ConjugatePair conjugate_streams(const VorticityFn& v, double r,
                                const CriticalData& cd,
                                double quadTol = 1e-12, double rootTol = 1e-12,
                                double lambdaCap = 1e3);
ConjugatePair conjugate_streams(const VorticityFn& v, double r);

}  // namespace cuspwave
