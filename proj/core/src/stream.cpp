#include "cuspwave/stream.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cuspwave/errors.hpp"
#include "cuspwave/numerics.hpp"
#include "quad_internal.hpp"

namespace cuspwave {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::integrate_endpoint_regularized;
}  // namespace

double stream_hp(const VorticityFn& v, double lambda, double p) {
  double arg = lambda * lambda - 2.0 * v.Omega(p);
  if (arg <= 0.0) return kInf;
  return 1.0 / std::sqrt(arg);
}

double depth(const VorticityFn& v, double lambda, double quadTol) {
  double l0 = v.lambda0();
  if (lambda < l0) {
    fail(ErrorKind::Domain, "depth: lambda " + std::to_string(lambda) +
                                " below lambda0 " + std::to_string(l0));
  }
  if (lambda == l0 && v.waveClass() == VorticityClass::I) {
    return kInf;  // interior singularity: d0 diverges
  }
  auto g = [&](double tau) { return stream_hp(v, lambda, tau); };
  return integrate_endpoint_regularized(g, quadTol);
}

double bernoulli_of_lambda(const VorticityFn& v, double lambda,
                           double quadTol) {
  double d = depth(v, lambda, quadTol);
  return (lambda * lambda - 2.0 * v.Omega(1.0) + 2.0 * d) / 3.0;
}

StreamProfile stream_profile(const VorticityFn& v, double lambda, int np,
                             double quadTol) {
  if (np < 2) fail(ErrorKind::Validation, "stream_profile: np must be >= 2");
  double l0 = v.lambda0();
  if (lambda < l0) {
    fail(ErrorKind::Domain, "stream_profile: lambda below lambda0");
  }
  StreamProfile sp;
  sp.lambda = lambda;
  sp.p.resize(np + 1);
  sp.H.resize(np + 1);
  sp.Hp.resize(np + 1);
  for (int j = 0; j <= np; ++j) {
    sp.p[j] = double(j) / np;
    sp.Hp[j] = stream_hp(v, lambda, sp.p[j]);
  }
  auto g = [&](double tau) { return stream_hp(v, lambda, tau); };
  sp.H[0] = 0.0;
  for (int j = 0; j < np; ++j) {
    double a = sp.p[j], b = sp.p[j + 1];
    double cell;
    if (j == 0 && lambda == l0) {
      // possible integrable singularity at tau = 0
      cell = integrate([&](double u) { return 2.0 * u * g(u * u); }, 0.0,
                       std::sqrt(b), quadTol);
    } else if (j == np - 1 && lambda == l0) {
      cell = integrate([&](double u) { return 2.0 * u * g(1.0 - u * u); }, 0.0,
                       std::sqrt(b - a), quadTol);
    } else {
      cell = integrate(g, a, b, quadTol);
    }
    sp.H[j + 1] = sp.H[j] + cell;
  }
  return sp;
}

namespace {
// int_0^1 (lambda^2 - 2 Omega)^{-3/2} dtau, the derivative kernel whose
// unit level set defines lambdaC.
double criticalKernel(const VorticityFn& v, double lambda, double tol) {
  auto g = [&](double tau) {
    double hp = stream_hp(v, lambda, tau);
    return hp * hp * hp;
  };
  return integrate_endpoint_regularized(g, tol);
}
}  // namespace

CriticalData critical_data(const VorticityFn& v, double quadTol,
                           double rootTol) {
  CriticalData cd;
  cd.lambda0 = v.lambda0();
  double l0 = cd.lambda0;

  auto g1 = [&](double lambda) {
    return criticalKernel(v, lambda, quadTol) - 1.0;
  };

  // Kernel decreases from +inf at lambda0 to 0: bracket and solve.
  double lo = l0 + 1e-8 * (1.0 + l0);
  for (int k = 0; k < 40 && !(g1(lo) > 0.0); ++k) {
    lo = l0 + (lo - l0) / 16.0;
  }
  if (!(g1(lo) > 0.0)) {
    fail(ErrorKind::Numerical, "critical_data: no lower bracket for lambdaC");
  }
  double hi = std::max(2.0 * lo, l0 + 1.0);
  int grow = 0;
  while (g1(hi) > 0.0) {
    hi *= 2.0;
    if (++grow > 60) {
      fail(ErrorKind::Numerical, "critical_data: no upper bracket for lambdaC");
    }
  }
  cd.lambdaC = find_root(g1, lo, hi, rootTol, rootTol);
  cd.dC = depth(v, cd.lambdaC, quadTol);
  cd.rC = (cd.lambdaC * cd.lambdaC - 2.0 * v.Omega(1.0) + 2.0 * cd.dC) / 3.0;

  if (v.waveClass() == VorticityClass::I) {
    cd.d0 = kInf;
    cd.r0 = kInf;
  } else {
    cd.d0 = depth(v, l0, quadTol);
    cd.r0 = (l0 * l0 - 2.0 * v.Omega(1.0) + 2.0 * cd.d0) / 3.0;
  }
  return cd;
}

ConjugatePair conjugate_streams(const VorticityFn& v, double r,
                                const CriticalData& cd, double quadTol,
                                double rootTol, double lambdaCap) {
  if (!(r > cd.rC)) {
    fail(ErrorKind::Domain,
         "conjugate_streams: subcritical parameter r = " + std::to_string(r) +
             " <= rC = " + std::to_string(cd.rC));
  }
  if (std::isfinite(cd.r0) && r >= cd.r0) {
    fail(ErrorKind::Domain,
         "conjugate_streams: r = " + std::to_string(r) +
             " beyond r0 = " + std::to_string(cd.r0) +
             " (no thicker conjugate stream)");
  }

  auto Rfun = [&](double lambda) {
    return bernoulli_of_lambda(v, lambda, quadTol) - r;
  };

  ConjugatePair cj;
  cj.r = r;

  // Left root: R decreases on (lambda0, lambdaC) from r0 (or +inf) to rC.
  double l0 = v.lambda0();
  double lo = 0.0;
  bool haveLo = false;
  for (int k = 1; k <= 60; ++k) {
    double cand = l0 + (cd.lambdaC - l0) * std::pow(0.5, k);
    if (Rfun(cand) > 0.0) {
      lo = cand;
      haveLo = true;
      break;
    }
  }
  if (!haveLo) {
    fail(ErrorKind::Numerical,
         "conjugate_streams: no bracket for lambdaPlus (r too close to rC?)");
  }
  cj.lambdaPlus = find_root(Rfun, lo, cd.lambdaC, rootTol, rootTol);

  // Right root: R increases on (lambdaC, inf).
  double hi = std::max(2.0 * cd.lambdaC, cd.lambdaC + 1.0);
  int grow = 0;
  while (Rfun(hi) < 0.0) {
    hi *= 2.0;
    if (hi > lambdaCap || ++grow > 60) {
      fail(ErrorKind::Numerical,
           "conjugate_streams: lambdaMinus bracket exceeded lambdaCap");
    }
  }
  cj.lambdaMinus = find_root(Rfun, cd.lambdaC, hi, rootTol, rootTol);

  cj.dPlus = depth(v, cj.lambdaPlus, quadTol);
  cj.dMinus = depth(v, cj.lambdaMinus, quadTol);
  cj.nearCritical = (cj.lambdaMinus - cj.lambdaPlus) < 1e-7;
  return cj;
}

ConjugatePair conjugate_streams(const VorticityFn& v, double r) {
  return conjugate_streams(v, r, critical_data(v));
}

}  // namespace cuspwave
