#pragma once

#include <vector>

#include "cuspwave/stream.hpp"
#include "cuspwave/vorticity.hpp"

namespace cuspwave {

// Shooting solution of the vertical eigenvalue problem
//   -(Hp^{-3} V')' = mu Hp^{-1} V,  V(0) = 0, V'(0) = 1,
// integrated as (V, W) with W = Hp^{-3} V'. The boundary defect
//   sigma(lambda; mu) = W(1) - V(1)
// vanishes exactly at the eigenvalues of the Robin problem
// V'(1) = Hp(1)^3 V(1).
struct ShootSolution {
  double lambda = 0, mu = 0;
  std::vector<double> p;  // uniform nodes, np+1
  std::vector<double> V, W;
  double sigma = 0;
};

ShootSolution shoot(const VorticityFn& v, double lambda, double mu, int np,
                    double odeTol = 1e-12);

// Boundary defect only (np kept small internally).
double dispersion_sigma(const VorticityFn& v, double lambda, double mu,
                        double odeTol = 1e-12);

// Least eigenvalue. Negative iff lambda < lambdaC. The lower bracket comes
// from the coefficient bound |mu0| <= kappa^2/frakM^2 with
// tanh(kappa)/kappa = frakM^{-3}; the first sign change of sigma scanning
// upward isolates mu0.
double least_eigenvalue(const VorticityFn& v, double lambda,
                        double tol = 1e-10);

// Second eigenvalue, located by scanning sigma upward from mu0 in steps of
// half the lower bound pi^2 frakm / frakM^3 and bisecting the sign change.
double second_eigenvalue(const VorticityFn& v, double lambda, double mu0,
                         double tol = 1e-10);

struct SpectralPoint {
  double lambda = 0;
  double mu0 = 0, mu1 = 0;
  double frakm = 0, frakM = 0;  // min and max of Hp over [0,1]
  double kStar = 0;             // sqrt(-mu0) when mu0 < 0, else 0
  std::vector<double> p, phi0;  // eigenfunction at mu0 on the np-grid
};

SpectralPoint spectral_point(const VorticityFn& v, double lambda, int np);

// Relative defect of sigma(lambda, 0) against (3 lambda^2 / 2) R'(lambda),
// the Bernoulli-curve slope identity; R' by Richardson central differences.
double dispersion_identity_residual(const VorticityFn& v, double lambda);

struct BifurcationData {
  double lambdaPlus = 0;
  double mu0 = 0;
  double kStar = 0;       // sqrt(-mu0)
  double halfPeriod = 0;  // pi / kStar
};

// Wavenumber of the small-amplitude bifurcating wave on the thicker stream
// at Bernoulli constant r. Requires mu0(lambdaPlus) < 0.
BifurcationData bifurcation_wavenumber(const VorticityFn& v, double r,
                                       const CriticalData& cd);

}  // namespace cuspwave
