#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspwave/errors.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/wave.hpp"

namespace cuspwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline int reflect(int i, int nq) {
  if (i < 0) return -i;
  if (i > nq) return 2 * nq - i;
  return i;
}

// Nodal h_q in the physical q variable (central differences, even
// reflection at crest and trough).
double nodalHq(const WaveGrid& g, int i, int j) {
  double dqhat = 1.0 / g.nq;
  return (g.at(reflect(i + 1, g.nq), j) - g.at(reflect(i - 1, g.nq), j)) /
         (2.0 * dqhat * g.Lambda);
}

// Nodal h_p: central in the interior, one-sided second order at both ends
// (the top stencil matches the solver's Bernoulli row).
double nodalHp(const WaveGrid& g, int i, int j) {
  double dp = 1.0 / g.np;
  if (j == 0) {
    return (-3.0 * g.at(i, 0) + 4.0 * g.at(i, 1) - g.at(i, 2)) / (2.0 * dp);
  }
  if (j == g.np) {
    return (3.0 * g.at(i, g.np) - 4.0 * g.at(i, g.np - 1) +
            g.at(i, g.np - 2)) /
           (2.0 * dp);
  }
  return (g.at(i, j + 1) - g.at(i, j - 1)) / (2.0 * dp);
}

}  // namespace

PhysicalWave reconstruct_physical(const WaveGrid& g, const VorticityFn& v) {
  PhysicalWave out;
  const int nq = g.nq, np = g.np;
  out.x.resize(nq + 1);
  out.eta.resize(nq + 1);
  out.psiX.assign(size_t(nq + 1) * (np + 1), 0.0);
  out.psiY.assign(size_t(nq + 1) * (np + 1), 0.0);
  out.minPsiY = kInf;

  for (int i = 0; i <= nq; ++i) {
    out.x[i] = g.qhat(i) * g.Lambda;
    out.eta[i] = g.at(i, np);
    for (int j = 0; j <= np; ++j) {
      double hq = nodalHq(g, i, j);
      double hp = nodalHp(g, i, j);
      double py = 1.0 / hp;
      out.psiX[size_t(i) * (np + 1) + j] = -hq * py;
      out.psiY[size_t(i) * (np + 1) + j] = py;
      out.minPsiY = std::min(out.minPsiY, py);
    }
    out.maxSlope = std::max(out.maxSlope, std::abs(nodalHq(g, i, np)));
  }

  // Surface Bernoulli defect with the solver's own stencils.
  double alpha = 1.0 / (g.Lambda * g.Lambda);
  double dqhat = 1.0 / nq, dp = 1.0 / np;
  for (int i = 0; i <= nq; ++i) {
    double cq =
        (g.at(reflect(i + 1, nq), np) - g.at(reflect(i - 1, nq), np)) /
        (2.0 * dqhat);
    double os = (3.0 * g.at(i, np) - 4.0 * g.at(i, np - 1) +
                 g.at(i, np - 2)) /
                (2.0 * dp);
    double defect = (1.0 + alpha * cq * cq) / (os * os) -
                    (3.0 * g.r - 2.0 * g.at(i, np));
    out.bernoulliResidual = std::max(out.bernoulliResidual, std::abs(defect));
  }
  (void)v;
  return out;
}

SplitDiagnostics spectral_split(const WaveGrid& g, const VorticityFn& v,
                                const SpectralPoint& sp,
                                const std::vector<double>& streamColumn) {
  const int nq = g.nq, np = g.np;
  if (int(sp.phi0.size()) != np + 1 || int(streamColumn.size()) != np + 1) {
    fail(ErrorKind::Validation,
         "spectral_split: eigenfunction/column sampling does not match the "
         "wave grid");
  }

  const double dp = 1.0 / np;
  std::vector<double> hpStream(np + 1), wgt(np + 1, dp);
  wgt[0] = wgt[np] = 0.5 * dp;
  for (int j = 0; j <= np; ++j) {
    hpStream[j] = stream_hp(v, sp.lambda, g.p(j));
  }

  // Normalization of the projector: <phi0, phi0>_{Hp^{-1}} on the same
  // trapezoid rule, so the remainder is orthogonal by construction.
  double N = 0.0;
  for (int j = 0; j <= np; ++j) {
    N += wgt[j] * sp.phi0[j] * sp.phi0[j] / hpStream[j];
  }

  SplitDiagnostics out;
  out.w0.resize(nq + 1);
  out.f0.resize(nq + 1);

  std::vector<double> w(np + 1), f(np + 1), wt(np + 1), zt(np + 1);
  std::vector<std::vector<double>> fField(nq + 1,
                                          std::vector<double>(np + 1));
  for (int i = 0; i <= nq; ++i) {
    for (int j = 0; j <= np; ++j) {
      w[j] = g.at(i, j) - streamColumn[j];
      f[j] = nodalHq(g, i, j) / nodalHp(g, i, j);
      fField[i][j] = f[j];
      out.supW = std::max(out.supW, std::abs(w[j]));
      out.supF = std::max(out.supF, std::abs(f[j]));
    }

    double w0 = 0.0, f0 = 0.0;
    for (int j = 0; j <= np; ++j) {
      w0 += wgt[j] * w[j] * sp.phi0[j] / hpStream[j];
      f0 += wgt[j] * f[j] * sp.phi0[j];
    }
    out.w0[i] = w0;
    out.f0[i] = f0;

    double orthW = 0.0, orthF = 0.0, norm2 = 0.0;
    for (int j = 0; j <= np; ++j) {
      wt[j] = w[j] - (w0 / N) * sp.phi0[j];
      zt[j] = f[j] - (f0 / N) * sp.phi0[j] / hpStream[j];
      orthW += wgt[j] * wt[j] * sp.phi0[j] / hpStream[j];
      orthF += wgt[j] * zt[j] * sp.phi0[j];
      norm2 += wgt[j] * (wt[j] * wt[j] + zt[j] * zt[j]);
    }
    out.orthogonalityDefect = std::max(
        out.orthogonalityDefect, std::max(std::abs(orthW), std::abs(orthF)));
    out.remainderNorm = std::max(out.remainderNorm, std::sqrt(norm2));
  }

  // Divided-difference sup norms of the deviation w and of f, in the
  // physical variables.
  const double dq = g.Lambda / nq;
  for (int i = 0; i <= nq; ++i) {
    for (int j = 0; j <= np; ++j) {
      double wij = g.at(i, j) - streamColumn[j];
      double wq = (g.at(reflect(i + 1, nq), j) - streamColumn[j] -
                   (g.at(reflect(i - 1, nq), j) - streamColumn[j])) /
                  (2.0 * dq);
      double wqq = (g.at(reflect(i + 1, nq), j) - 2.0 * g.at(i, j) +
                    g.at(reflect(i - 1, nq), j)) /
                   (dq * dq);
      out.supDW = std::max(out.supDW, std::abs(wq));
      out.supD2W = std::max(out.supD2W, std::abs(wqq));
      if (j > 0 && j < np) {
        double wp = (g.at(i, j + 1) - streamColumn[j + 1] -
                     (g.at(i, j - 1) - streamColumn[j - 1])) *
                    0.5 * np;
        double wpp = (g.at(i, j + 1) - streamColumn[j + 1] -
                      2.0 * wij +
                      g.at(i, j - 1) - streamColumn[j - 1]) *
                     double(np) * np;
        out.supDW = std::max(out.supDW, std::abs(wp));
        out.supD2W = std::max(out.supD2W, std::abs(wpp));
        double fp = (fField[i][j + 1] - fField[i][j - 1]) * 0.5 * np;
        out.supDF = std::max(out.supDF, std::abs(fp));
      }
      double fq = (fField[reflect(i + 1, nq)][j] -
                   fField[reflect(i - 1, nq)][j]) /
                  (2.0 * dq);
      out.supDF = std::max(out.supDF, std::abs(fq));
    }
  }
  return out;
}

WaveChecks check_wave(const WaveGrid& g, const VorticityFn& v,
                      const ConjugatePair& cj) {
  WaveChecks out;
  const int nq = g.nq, np = g.np;

  out.minEta = kInf;
  out.maxEta = -kInf;
  for (int i = 0; i <= nq; ++i) {
    out.minEta = std::min(out.minEta, g.at(i, np));
    out.maxEta = std::max(out.maxEta, g.at(i, np));
  }
  out.minHp = min_discrete_hp(g);

  // Crest curvature in q at qhat = 0: even reflection gives
  // h_qq = 2 (h(1,j) - h(0,j)) / dq^2.
  double dq = g.Lambda / nq;
  out.maxCrestH_qq = -kInf;
  for (int j = 1; j < np; ++j) {
    double hqq = 2.0 * (g.at(1, j) - g.at(0, j)) / (dq * dq);
    out.maxCrestH_qq = std::max(out.maxCrestH_qq, hqq);
  }

  double w0 = v.omega0();
  out.etaFloor = std::min(1.0 / std::sqrt(6.0 * g.r),
                          w0 > 0.0 ? 1.0 / std::sqrt(2.0 * w0) : kInf);

  bool isStream = g.kind == WaveKind::Stream;
  if (!(out.minEta > cj.dMinus)) {
    out.violations.push_back("min eta does not exceed dMinus");
  }
  if (!isStream && !(out.minEta < cj.dPlus)) {
    out.violations.push_back("min eta is not below dPlus");
  }
  if (!isStream && !(out.maxEta >= cj.dPlus)) {
    out.violations.push_back("max eta is below dPlus");
  }
  if (!(out.maxEta < 1.5 * g.r)) {
    out.violations.push_back("max eta reaches 3r/2");
  }
  if (!(out.minEta >= out.etaFloor)) {
    out.violations.push_back("min eta below the admissible floor");
  }
  if (!(out.minHp > 0.0)) {
    out.violations.push_back("discrete h_p not positive (stagnation)");
  }
  if (!isStream && !(out.maxCrestH_qq < 0.0)) {
    out.violations.push_back("crest line not strictly concave");
  }
  return out;
}

}  // namespace cuspwave
