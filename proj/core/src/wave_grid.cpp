#include <cmath>
#include <string>

#include "cuspwave/errors.hpp"
#include "cuspwave/numerics.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/wave.hpp"
#include "wave_internal.hpp"

namespace cuspwave {

namespace detail {

namespace {

// q-index reflection implementing the even symmetry across the crest (i=0)
// and the trough (i=nq).
inline int reflect(int i, int nq) {
  if (i < 0) return -i;
  if (i > nq) return 2 * nq - i;
  return i;
}

struct Assembler {
  const WaveGrid& g;
  const VorticityFn& v;
  std::vector<double>* F;
  std::vector<Trip>* J;
  bool withLambda;

  int nq, np;
  double dq, dp, alpha, dAlpha;  // alpha = 1/Lambda^2

  inline int unknown(int i, int j) const { return i * np + (j - 1); }

  inline double H(int i, int j) const { return g.at(reflect(i, nq), j); }

  // Accumulate dRow/dh_{i,j}; row j=0 is pinned to zero and dropped.
  inline void add(int row, int i, int j, double val) {
    if (j == 0) return;
    (*J).push_back({row, unknown(reflect(i, nq), j), val});
  }

  inline void addLambda(int row, double val) {
    (*J).push_back({row, unknownCount(g), val});
  }

  double Cp(int i, int j) const {  // central p-derivative at a node
    return (H(i, j + 1) - H(i, j - 1)) / (2.0 * dp);
  }
  double Cq(int i, int j) const {  // central qhat-derivative at a node
    return (H(i + 1, j) - H(i - 1, j)) / (2.0 * dq);
  }

  void run() {
    const int K = unknownCount(g);
    F->assign(K, 0.0);
    if (J) {
      J->clear();
      J->reserve(size_t(K) * 12);
    }
    for (int i = 0; i <= nq; ++i) {
      for (int j = 1; j < np; ++j) interiorRow(i, j);
      bernoulliRow(i);
    }
  }

  // Divergence-form balance at node (i,j):
  //   alpha (Phi+ - Phi-)/dq - (G+ - G-)/(2 dp) = 0,
  // fluxes on the staggered half-nodes; Omega enters through the p-flux so
  // a column with (C - 2 Omega)^{-1/2} increments balances exactly.
  void interiorRow(int i, int j) {
    const int row = unknown(i, j);

    auto qflux = [&](int ii) {  // Phi at (ii+1/2, j)
      double Dq = (H(ii + 1, j) - H(ii, j)) / dq;
      double Pq = 0.5 * (Cp(ii, j) + Cp(ii + 1, j));
      return Dq / Pq;
    };
    auto pflux = [&](int jj) {  // G at (i, jj+1/2), Omega part included
      double Dp = (H(i, jj + 1) - H(i, jj)) / dp;
      double Qh = 0.5 * (Cq(i, jj) + Cq(i, jj + 1));
      double pm = (jj + 0.5) * dp;
      return (1.0 + alpha * Qh * Qh) / (Dp * Dp) + 2.0 * v.Omega(pm);
    };

    double PhiP = qflux(i), PhiM = qflux(i - 1);
    double Gp = pflux(j), Gm = pflux(j - 1);
    (*F)[row] = alpha * (PhiP - PhiM) / dq - (Gp - Gm) / (2.0 * dp);

    if (!J) return;

    // d(q-flux) terms
    auto qfluxDeriv = [&](int ii, double sgn) {
      double Dq = (H(ii + 1, j) - H(ii, j)) / dq;
      double Pq = 0.5 * (Cp(ii, j) + Cp(ii + 1, j));
      double c = sgn * alpha / dq;                // outer scaling
      add(row, ii + 1, j, c / (Pq * dq));
      add(row, ii, j, -c / (Pq * dq));
      double dPhidPq = -Dq / (Pq * Pq);
      double w = c * dPhidPq / (4.0 * dp);
      add(row, ii, j + 1, w);
      add(row, ii, j - 1, -w);
      add(row, ii + 1, j + 1, w);
      add(row, ii + 1, j - 1, -w);
    };
    qfluxDeriv(i, +1.0);
    qfluxDeriv(i - 1, -1.0);

    // d(p-flux) terms
    auto pfluxDeriv = [&](int jj, double sgn) {
      double Dp = (H(i, jj + 1) - H(i, jj)) / dp;
      double Qh = 0.5 * (Cq(i, jj) + Cq(i, jj + 1));
      double c = -sgn / (2.0 * dp);               // outer scaling
      double dGdDp = -2.0 * (1.0 + alpha * Qh * Qh) / (Dp * Dp * Dp);
      add(row, i, jj + 1, c * dGdDp / dp);
      add(row, i, jj, -c * dGdDp / dp);
      double dGdQh = 2.0 * alpha * Qh / (Dp * Dp);
      double w = c * dGdQh / (4.0 * dq);
      add(row, i + 1, jj, w);
      add(row, i - 1, jj, -w);
      add(row, i + 1, jj + 1, w);
      add(row, i - 1, jj + 1, -w);
    };
    pfluxDeriv(j, +1.0);
    pfluxDeriv(j - 1, -1.0);

    if (withLambda) {
      double QhP = 0.5 * (Cq(i, j) + Cq(i, j + 1));
      double QhM = 0.5 * (Cq(i, j - 1) + Cq(i, j));
      double DpP = (H(i, j + 1) - H(i, j)) / dp;
      double DpM = (H(i, j) - H(i, j - 1)) / dp;
      double dRdAlpha = (PhiP - PhiM) / dq -
                        (QhP * QhP / (DpP * DpP) - QhM * QhM / (DpM * DpM)) /
                            (2.0 * dp);
      addLambda(row, dAlpha * dRdAlpha);
    }
  }

  // Bernoulli row at the surface: (1 + alpha Cq^2)/OS^2 - (3r - 2h) with the
  // one-sided second-order p-derivative OS.
  void bernoulliRow(int i) {
    const int row = unknown(i, np);
    double OS =
        (3.0 * H(i, np) - 4.0 * H(i, np - 1) + H(i, np - 2)) / (2.0 * dp);
    double cq = Cq(i, np);
    double num = 1.0 + alpha * cq * cq;
    (*F)[row] = num / (OS * OS) - (3.0 * g.r - 2.0 * H(i, np));

    if (!J) return;
    double dBdOS = -2.0 * num / (OS * OS * OS);
    add(row, i, np, 2.0 + dBdOS * 3.0 / (2.0 * dp));
    add(row, i, np - 1, dBdOS * (-2.0) / dp);
    add(row, i, np - 2, dBdOS / (2.0 * dp));
    double dBdCq = 2.0 * alpha * cq / (OS * OS);
    add(row, i + 1, np, dBdCq / (2.0 * dq));
    add(row, i - 1, np, -dBdCq / (2.0 * dq));
    if (withLambda) addLambda(row, dAlpha * cq * cq / (OS * OS));
  }
};

}  // namespace

void assemble_system(const WaveGrid& g, const VorticityFn& v,
                     std::vector<double>* F, std::vector<Trip>* J,
                     bool withLambda) {
  if (g.np < 3 || g.nq < 2) {
    fail(ErrorKind::Validation, "wave grid needs np >= 3 and nq >= 2");
  }
  if (!(g.Lambda > 0.0)) {
    fail(ErrorKind::Validation, "wave grid needs a positive half period");
  }
  if (g.h.size() != size_t(g.nq + 1) * (g.np + 1)) {
    fail(ErrorKind::Validation, "wave grid storage size mismatch");
  }
  // Stagnation guard: the column-wise divided differences are the discrete
  // h_p; the formulation is meaningless if any of them is nonpositive.
  for (int i = 0; i <= g.nq; ++i) {
    for (int j = 0; j < g.np; ++j) {
      if (!(g.at(i, j + 1) - g.at(i, j) > 0.0)) {
        fail(ErrorKind::Numerical,
             "stagnation/fold: discrete h_p <= 0 at grid node (i=" +
                 std::to_string(i) + ", j+1/2=" + std::to_string(j) + "+1/2)");
      }
    }
  }

  Assembler a{g,    v,        F,
              J,    withLambda, g.nq,
              g.np, 1.0 / g.nq, 1.0 / g.np,
              1.0 / (g.Lambda * g.Lambda),
              -2.0 / (g.Lambda * g.Lambda * g.Lambda)};
  a.run();
}

}  // namespace detail

std::vector<double> assemble_residual(const WaveGrid& g,
                                      const VorticityFn& v) {
  std::vector<double> F;
  detail::assemble_system(g, v, &F, nullptr, false);
  return F;
}

double residual_norm(const WaveGrid& g, const VorticityFn& v) {
  std::vector<double> F = assemble_residual(g, v);
  double m = 0.0;
  for (double x : F) m = std::max(m, std::abs(x));
  return m;
}

double min_discrete_hp(const WaveGrid& g) {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= g.nq; ++i) {
    for (int j = 0; j < g.np; ++j) {
      m = std::min(m, (g.at(i, j + 1) - g.at(i, j)) * g.np);
    }
  }
  return m;
}

DiscreteStreamColumn discrete_stream_column(const VorticityFn& v, double r,
                                            double lambdaHint, int np) {
  if (np < 3) fail(ErrorKind::Validation, "discrete_stream_column: np >= 3");
  const double dp = 1.0 / np;

  // Half-node values of Omega; the column constant must clear all of them.
  std::vector<double> om(np);
  double omMax = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < np; ++j) {
    om[j] = v.Omega((j + 0.5) * dp);
    omMax = std::max(omMax, om[j]);
  }

  auto column = [&](double C, std::vector<double>* h) {
    h->assign(np + 1, 0.0);
    for (int j = 0; j < np; ++j) {
      (*h)[j + 1] = (*h)[j] + dp / std::sqrt(C - 2.0 * om[j]);
    }
  };
  // Discrete Bernoulli defect of the column built from constant C.
  auto defect = [&](double C) {
    std::vector<double> h;
    column(C, &h);
    double os = (3.0 * h[np] - 4.0 * h[np - 1] + h[np - 2]) / (2.0 * dp);
    return 1.0 / (os * os) + 2.0 * h[np] - 3.0 * r;
  };

  double C0 = lambdaHint * lambdaHint;
  double Cfloor = 2.0 * omMax;
  if (!(C0 > Cfloor)) {
    fail(ErrorKind::Domain,
         "discrete_stream_column: lambdaHint below the admissible floor");
  }

  // The defect matches 3(R(lambda) - r) to O(dp^2), so the root sits next to
  // lambdaHint^2; widen a window around it until the sign changes.
  double f0 = defect(C0);
  double lo = C0, hi = C0, flo = f0, fhi = f0;
  bool bracketed = false;
  for (double w = 1e-4; w <= 0.5; w *= 2.0) {
    lo = std::max(C0 * (1.0 - w), Cfloor + 1e-14 * (1.0 + Cfloor));
    hi = C0 * (1.0 + w);
    flo = defect(lo);
    fhi = defect(hi);
    if (std::signbit(flo) != std::signbit(f0)) {
      hi = C0;
      fhi = f0;
      bracketed = true;
      break;
    }
    if (std::signbit(fhi) != std::signbit(f0)) {
      lo = C0;
      flo = f0;
      bracketed = true;
      break;
    }
  }
  if (!bracketed) {
    fail(ErrorKind::Numerical,
         "discrete_stream_column: no bracket around lambdaHint (grid too "
         "coarse or r too close to critical)");
  }
  double C = find_root(defect, lo, hi, 1e-14, 1e-14);

  DiscreteStreamColumn col;
  col.r = r;
  col.lambda = std::sqrt(C);
  column(C, &col.h);
  return col;
}

WaveGrid replicate_column(const DiscreteStreamColumn& col, double Lambda,
                          int nq) {
  WaveGrid g;
  g.kind = WaveKind::Stream;
  g.r = col.r;
  g.Lambda = Lambda;
  g.nq = nq;
  g.np = int(col.h.size()) - 1;
  g.h.resize(size_t(nq + 1) * (g.np + 1));
  for (int i = 0; i <= nq; ++i) {
    for (int j = 0; j <= g.np; ++j) g.at(i, j) = col.h[j];
  }
  return g;
}

}  // namespace cuspwave
