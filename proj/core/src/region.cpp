#include "cuspwave/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cuspwave/errors.hpp"
#include "quad_internal.hpp"

namespace cuspwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline int reflect(int i, int nq) {
  if (i < 0) return -i;
  if (i > nq) return 2 * nq - i;
  return i;
}

// Fourth-order nodal derivative in p of one grid column (monotone data, but
// no shape constraint needed here; plain 5-point stencils).
double hp4(const WaveGrid& g, int i, int j) {
  const double s = g.np / 12.0;  // 1/(12 dp)
  const int np = g.np;
  auto H = [&](int jj) { return g.at(i, jj); };
  if (j == 0) {
    return s * (-25.0 * H(0) + 48.0 * H(1) - 36.0 * H(2) + 16.0 * H(3) -
                3.0 * H(4));
  }
  if (j == 1) {
    return s * (-3.0 * H(0) - 10.0 * H(1) + 18.0 * H(2) - 6.0 * H(3) + H(4));
  }
  if (j == np - 1) {
    return s * (3.0 * H(np) + 10.0 * H(np - 1) - 18.0 * H(np - 2) +
                6.0 * H(np - 3) - H(np - 4));
  }
  if (j == np) {
    return s * (25.0 * H(np) - 48.0 * H(np - 1) + 36.0 * H(np - 2) -
                16.0 * H(np - 3) + 3.0 * H(np - 4));
  }
  return s * (-H(j + 2) + 8.0 * H(j + 1) - 8.0 * H(j - 1) + H(j - 2));
}

// Composite Simpson over the np cells (3/8 rule on the last three when np
// is odd).
double simpson(const std::vector<double>& F, double dp) {
  int n = int(F.size()) - 1;
  int nEven = (n % 2 == 0) ? n : n - 3;
  double acc = 0.0;
  for (int j = 0; j + 2 <= nEven; j += 2) {
    acc += dp / 3.0 * (F[j] + 4.0 * F[j + 1] + F[j + 2]);
  }
  if (nEven != n) {
    acc += 3.0 * dp / 8.0 *
           (F[nEven] + 3.0 * F[nEven + 1] + 3.0 * F[nEven + 2] + F[n]);
  }
  return acc;
}

// lambdaMinus(r): the root of R(lambda) = r above lambdaC. Local helper so
// the region can be evaluated at r = r0 where conjugate_streams refuses.
double lambdaMinusAt(const VorticityFn& v, double r, const CriticalData& cd,
                     double quadTol, double rootTol) {
  auto f = [&](double l) { return bernoulli_of_lambda(v, l, quadTol) - r; };
  double lo = cd.lambdaC;
  double hi = std::max(2.0 * cd.lambdaC, cd.lambdaC + 1.0);
  for (int k = 0; k < 60 && f(hi) <= 0.0; ++k) hi *= 2.0;
  return find_root(f, lo, hi, rootTol, rootTol);
}

}  // namespace

double flow_force_stream_lambda(const VorticityFn& v, double lambda,
                                double quadTol) {
  double d = depth(v, lambda, quadTol);
  if (!std::isfinite(d)) {
    fail(ErrorKind::Domain,
         "flow force: depth diverges at lambda = lambda0 for this vorticity");
  }
  double r = (lambda * lambda - 2.0 * v.Omega(1.0) + 2.0 * d) / 3.0;
  auto g = [&](double tau) {
    double arg = lambda * lambda - 2.0 * v.Omega(tau);
    if (arg <= 0.0) return kInf;
    double rt = std::sqrt(arg);
    return rt - 2.0 * v.Omega(tau) / rt;
  };
  double I = detail::integrate_endpoint_regularized(g, quadTol);
  return (r + 2.0 / 3.0 * v.Omega(1.0)) * d - (d * d - I) / 3.0;
}

double flow_force_stream(const VorticityFn& v, double r, StreamBranch branch,
                         const CriticalData& cd, double quadTol) {
  const double tol = 1e-12 * std::max(1.0, std::abs(r));
  if (r < cd.rC - tol) {
    fail(ErrorKind::Domain,
         "flow force: r " + std::to_string(r) + " below the critical value " +
             std::to_string(cd.rC));
  }
  if (std::abs(r - cd.rC) <= tol) {
    return flow_force_stream_lambda(v, cd.lambdaC, quadTol);
  }
  if (std::isfinite(cd.r0)) {
    if (r > cd.r0 + tol) {
      fail(ErrorKind::Domain,
           "flow force: r beyond r0 = " + std::to_string(cd.r0));
    }
    if (std::abs(r - cd.r0) <= tol) {
      if (branch == StreamBranch::Plus) {
        return flow_force_stream_lambda(v, v.lambda0(), quadTol);
      }
      return flow_force_stream_lambda(
          v, lambdaMinusAt(v, r, cd, quadTol, 1e-12), quadTol);
    }
  }
  ConjugatePair cj = conjugate_streams(v, r, cd, quadTol, 1e-12);
  double lambda =
      branch == StreamBranch::Plus ? cj.lambdaPlus : cj.lambdaMinus;
  return flow_force_stream_lambda(v, lambda, quadTol);
}

double flow_force_wave(const WaveGrid& g, const VorticityFn& v, int qIndex) {
  if (qIndex < 0 || qIndex > g.nq) {
    fail(ErrorKind::Validation, "flow_force_wave: column index out of range");
  }
  if (g.np < 4) {
    fail(ErrorKind::Validation, "flow_force_wave: np must be at least 4");
  }
  const int np = g.np, i = qIndex;
  const double dp = 1.0 / np;
  const double dqhat = 1.0 / g.nq;

  std::vector<double> F(np + 1);
  for (int j = 0; j <= np; ++j) {
    double hq = (g.at(reflect(i + 1, g.nq), j) -
                 g.at(reflect(i - 1, g.nq), j)) /
                (2.0 * dqhat * g.Lambda);
    double hp = hp4(g, i, j);
    F[j] = (1.0 - hq * hq) / hp - 2.0 * v.Omega(g.p(j)) * hp;
  }
  double I = simpson(F, dp);
  double eta = g.at(i, np);
  return (g.r + 2.0 / 3.0 * v.Omega(1.0)) * eta - (eta * eta - I) / 3.0;
}

BLRegion build_region(const VorticityFn& v, double rMax, int n,
                      double quadTol) {
  CriticalData cd = critical_data(v);
  if (!(rMax > cd.rC)) {
    fail(ErrorKind::Validation,
         "build_region: rMax must exceed the critical value " +
             std::to_string(cd.rC));
  }
  if (n < 2) fail(ErrorKind::Validation, "build_region: need n >= 2");

  BLRegion reg;
  reg.rC = cd.rC;
  reg.r0 = cd.r0;
  reg.truncated = std::isfinite(cd.r0) && cd.r0 <= rMax;
  double rEnd = reg.truncated ? cd.r0 : rMax;

  reg.r.resize(n);
  reg.sMinus.resize(n);
  reg.sPlus.resize(n);
  for (int k = 0; k < n; ++k) {
    // Quarter-cosine clustering: dense near the cusp at rC.
    double u = 1.0 - std::cos(M_PI * k / (2.0 * (n - 1)));
    reg.r[k] = cd.rC + (rEnd - cd.rC) * u;
  }
  reg.r.front() = cd.rC;
  reg.r.back() = rEnd;

  reg.sC = flow_force_stream_lambda(v, cd.lambdaC, quadTol);
  reg.sMinus[0] = reg.sPlus[0] = reg.sC;
  for (int k = 1; k < n; ++k) {
    reg.sMinus[k] =
        flow_force_stream(v, reg.r[k], StreamBranch::Minus, cd, quadTol);
    reg.sPlus[k] =
        flow_force_stream(v, reg.r[k], StreamBranch::Plus, cd, quadTol);
  }
  reg.lower = Pchip(reg.r, reg.sMinus);
  reg.upper = Pchip(reg.r, reg.sPlus);
  return reg;
}

RegionPosition contains(const BLRegion& reg, double r, double s,
                        double band) {
  double rLo = reg.r.front(), rHi = reg.r.back();
  if (r < rLo - band || r > rHi + band) {
    fail(ErrorKind::Domain,
         "region membership: r = " + std::to_string(r) +
             " outside the sampled range [" + std::to_string(rLo) + ", " +
             std::to_string(rHi) + "], extrapolation refused");
  }
  double rq = std::clamp(r, rLo, rHi);
  double sLo = reg.lower(rq), sHi = reg.upper(rq);
  if (std::abs(s - sLo) <= band) return RegionPosition::LowerBoundary;
  if (std::abs(s - sHi) <= band) return RegionPosition::UpperBoundary;
  bool between = s > sLo && s < sHi;
  if (reg.truncated && between &&
      std::abs(r - reg.r0) <= band * std::max(1.0, std::abs(reg.r0))) {
    return RegionPosition::TruncationEdge;
  }
  return between ? RegionPosition::Inside : RegionPosition::Outside;
}

const char* to_string(RegionPosition pos) {
  switch (pos) {
    case RegionPosition::Inside: return "inside";
    case RegionPosition::LowerBoundary: return "lower-boundary";
    case RegionPosition::UpperBoundary: return "upper-boundary";
    case RegionPosition::TruncationEdge: return "truncation-edge";
    default: return "outside";
  }
}

BranchFlowForce branch_flow_force(const VorticityFn& v, double r,
                                  const std::vector<WaveGrid>& waves,
                                  const CriticalData& cd) {
  if (waves.empty()) {
    fail(ErrorKind::Validation, "branch_flow_force: empty branch");
  }
  BranchFlowForce out;
  for (const WaveGrid& g : waves) {
    out.t.push_back(g.crest());
    out.s.push_back(flow_force_wave(g, v, 0));
  }
  out.strictlyDecreasing = true;
  for (size_t k = 1; k < out.s.size(); ++k) {
    if (!(out.s[k] < out.s[k - 1])) out.strictlyDecreasing = false;
  }
  double sPlus = flow_force_stream(v, r, StreamBranch::Plus, cd);
  double sMinus = flow_force_stream(v, r, StreamBranch::Minus, cd);
  out.sPlusGap = std::abs(out.s.front() - sPlus);
  out.sMinusGap = std::abs(out.s.back() - sMinus);
  return out;
}

IrrotationalShape irrotational_shape_check(const BLRegion& reg) {
  IrrotationalShape out;
  out.cuspRError = std::abs(reg.r.front() - 1.0);
  out.cuspSError = std::max(std::abs(reg.sMinus.front() - 1.0),
                            std::abs(reg.sPlus.front() - 1.0));
  double span = reg.r.back() - reg.r.front();
  out.ordered = true;
  out.increasing = true;
  for (size_t k = 0; k < reg.r.size(); ++k) {
    bool nearCusp = reg.r[k] - reg.r.front() <= 1e-4 * span;
    if (reg.sPlus[k] < reg.sMinus[k] - 1e-12) out.ordered = false;
    if (!nearCusp && !(reg.sPlus[k] > reg.sMinus[k])) out.ordered = false;
    if (k > 0) {
      if (reg.sMinus[k] < reg.sMinus[k - 1] - 1e-12) out.increasing = false;
      if (reg.sPlus[k] < reg.sPlus[k - 1] - 1e-12) out.increasing = false;
    }
  }
  return out;
}

}  // namespace cuspwave
