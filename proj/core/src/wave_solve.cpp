#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "cuspwave/errors.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/sturm.hpp"
#include "cuspwave/wave.hpp"
#include "wave_internal.hpp"

namespace cuspwave {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Row-sum infinity norm straight from the triplets.
double matrixInfNorm(const std::vector<detail::Trip>& trips, int n) {
  std::vector<double> rowSum(n, 0.0);
  for (const auto& t : trips) rowSum[t.r] += std::abs(t.v);
  return *std::max_element(rowSum.begin(), rowSum.end());
}

// Lower bound on ||J^{-1}||_inf from a few fixed probe right-hand sides.
// Cheap and deterministic; good enough to flag a fold, where the estimate
// blows up by many orders of magnitude.
double inverseInfNormEstimate(Eigen::SparseLU<SpMat>& lu, int n) {
  Eigen::VectorXd b(n);
  double best = 0.0;
  for (int probe = 0; probe < 3; ++probe) {
    for (int i = 0; i < n; ++i) {
      switch (probe) {
        case 0: b[i] = 1.0; break;
        case 1: b[i] = (i % 2 == 0) ? 1.0 : -1.0; break;
        default: b[i] = std::sin(double(i) + 1.0); break;
      }
    }
    Eigen::VectorXd x = lu.solve(b);
    double bn = b.lpNorm<Eigen::Infinity>();
    double xn = x.lpNorm<Eigen::Infinity>();
    if (bn > 0.0) best = std::max(best, xn / bn);
  }
  return best;
}

double supNorm(const std::vector<double>& x) {
  double m = 0.0;
  for (double e : x) m = std::max(m, std::abs(e));
  return m;
}

// Diagnostic stderr traces, off unless the environment asks for them.
bool traceContinuation() {
  static const bool on = std::getenv("CUSPWAVE_TRACE") != nullptr;
  return on;
}
bool traceNewton() {
  static const bool on = std::getenv("CUSPWAVE_TRACE_NEWTON") != nullptr;
  return on;
}

struct NewtonSystem {
  std::vector<double> F;
  std::vector<detail::Trip> J;
};

// Residual + Jacobian incl. the crest constraint row when Lambda is free.
void buildSystem(const WaveGrid& g, const VorticityFn& v,
                 const NewtonOptions& opt, NewtonSystem* sys, bool wantJ) {
  detail::assemble_system(g, v, &sys->F, wantJ ? &sys->J : nullptr,
                          !opt.fixLambda);
  if (!opt.fixLambda) {
    const int K = detail::unknownCount(g);
    sys->F.push_back(g.crest() - opt.crestTarget);
    if (wantJ) sys->J.push_back({K, (g.np - 1) /*unknown(0,np)*/, 1.0});
  }
}

}  // namespace

NewtonReport newton_solve(WaveGrid& g, const VorticityFn& v,
                          const NewtonOptions& opt) {
  const int K = detail::unknownCount(g);
  const int n = opt.fixLambda ? K : K + 1;
  if (!opt.fixLambda && !std::isfinite(opt.crestTarget)) {
    fail(ErrorKind::Validation, "newton_solve: crest target not set");
  }

  NewtonReport rep;
  NewtonSystem sys;
  buildSystem(g, v, opt, &sys, true);
  double res = supNorm(sys.F);
  int frozen = 0;  // consecutive iterations with <1% residual reduction

  for (int iter = 0; iter < opt.maxIter; ++iter) {
    if (res <= opt.tol) {
      rep.residual = res;
      return rep;
    }
    const double resBefore = res;

    SpMat A(n, n);
    {
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(sys.J.size());
      for (const auto& t : sys.J) trips.emplace_back(t.r, t.c, t.v);
      A.setFromTriplets(trips.begin(), trips.end());
    }
    Eigen::SparseLU<SpMat> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success) {
      fail(ErrorKind::Solver,
           "newton_solve: Jacobian factorization failed at iteration " +
               std::to_string(iter));
    }
    rep.conditionEstimate = matrixInfNorm(sys.J, n) *
                            inverseInfNormEstimate(lu, n);
    if (rep.conditionEstimate > opt.condLimit) {
      fail(ErrorKind::Solver,
           "newton_solve: turning point suspected, Jacobian condition "
           "estimate " +
               std::to_string(rep.conditionEstimate));
    }

    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = -sys.F[i];
    Eigen::VectorXd delta = lu.solve(rhs);
    if (!delta.allFinite()) {
      fail(ErrorKind::Solver, "newton_solve: non-finite Newton step");
    }

    const double hpFloor = 0.1 * min_discrete_hp(g);
    WaveGrid trial = g;
    double step = 1.0;
    bool accepted = false;
    for (int bt = 0; bt <= opt.maxBacktrack; ++bt) {
      trial = g;
      for (int i = 0; i <= g.nq; ++i) {
        for (int j = 1; j <= g.np; ++j) {
          trial.at(i, j) += step * delta[i * g.np + (j - 1)];
        }
      }
      if (!opt.fixLambda) trial.Lambda = g.Lambda + step * delta[K];

      bool admissible = trial.Lambda > 0.0 && min_discrete_hp(trial) > hpFloor;
      if (admissible) {
        NewtonSystem trialSys;
        buildSystem(trial, v, opt, &trialSys, true);
        double trialRes = supNorm(trialSys.F);
        if (trialRes <= (1.0 - 1e-4 * step) * res) {
          g = std::move(trial);
          sys = std::move(trialSys);
          res = trialRes;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) {
      fail(ErrorKind::Solver,
           "newton_solve: line search failed at iteration " +
               std::to_string(iter) + ", residual " + std::to_string(res));
    }
    // A residual frozen across several iterations high above the tolerance
    // means the iterate sits against a fold (nearly singular Jacobian): the
    // line search only crawls, and burning the remaining iteration budget
    // cannot rescue the solve. Near the tolerance, slow progress is instead
    // the endgame of a soft mode and is allowed to finish.
    frozen = (res > 0.99 * resBefore) ? frozen + 1 : 0;
    if (frozen >= 3 && res > 1e5 * opt.tol) {
      fail(ErrorKind::Solver,
           "newton_solve: residual stagnated at " + std::to_string(res) +
               " (fold suspected)");
    }
    rep.iterations = iter + 1;
    if (traceNewton()) {
      std::fprintf(stderr, "  [nw] it=%d res=%.3e step=%.4f cond=%.2e\n",
                   iter + 1, res, step, rep.conditionEstimate);
    }
  }

  if (res <= opt.tol) {
    rep.residual = res;
    return rep;
  }
  fail(ErrorKind::Solver, "newton_solve: no convergence after " +
                              std::to_string(opt.maxIter) +
                              " iterations, residual " + std::to_string(res));
}

double jacobian_fd_deviation(const WaveGrid& g, const VorticityFn& v,
                             bool fixLambda, double step) {
  const int K = detail::unknownCount(g);
  const int n = fixLambda ? K : K + 1;

  std::vector<double> F;
  std::vector<detail::Trip> J;
  detail::assemble_system(g, v, &F, &J, !fixLambda);
  std::vector<double> dense(size_t(K) * n, 0.0);
  for (const auto& t : J) dense[size_t(t.r) * n + t.c] += t.v;

  double worst = 0.0;
  std::vector<double> Fp, Fm;
  for (int c = 0; c < n; ++c) {
    WaveGrid gp = g, gm = g;
    double base = (c < K) ? g.h[size_t(c / g.np) * (g.np + 1) + (c % g.np + 1)]
                          : g.Lambda;
    double d = step * std::max(1.0, std::abs(base));
    if (c < K) {
      int i = c / g.np, j = c % g.np + 1;
      gp.at(i, j) += d;
      gm.at(i, j) -= d;
    } else {
      gp.Lambda += d;
      gm.Lambda -= d;
    }
    detail::assemble_system(gp, v, &Fp, nullptr, false);
    detail::assemble_system(gm, v, &Fm, nullptr, false);
    for (int row = 0; row < K; ++row) {
      double fd = (Fp[row] - Fm[row]) / (2.0 * d);
      worst = std::max(worst, std::abs(fd - dense[size_t(row) * n + c]));
    }
  }
  return worst;
}

WaveGrid seed_stokes(const VorticityFn& v, double r, const CriticalData& cd,
                     const SeedOptions& opt) {
  ConjugatePair cj = conjugate_streams(v, r, cd, 1e-12, 1e-12, opt.lambdaCap);
  SpectralPoint sp = spectral_point(v, cj.lambdaPlus, opt.np);
  if (!(sp.mu0 < 0.0)) {
    fail(ErrorKind::Numerical,
         "seed_stokes: least eigenvalue at lambdaPlus is not negative; no "
         "oscillatory linear mode");
  }
  double halfPeriod = M_PI / sp.kStar;
  if (halfPeriod > opt.lambdaCap) {
    fail(ErrorKind::Validation,
         "seed_stokes: half period " + std::to_string(halfPeriod) +
             " exceeds cap " + std::to_string(opt.lambdaCap) +
             " (r too close to critical)");
  }

  DiscreteStreamColumn col =
      discrete_stream_column(v, r, cj.lambdaPlus, opt.np);
  double amp = opt.epsilon * cj.dPlus;

  WaveGrid g;
  g.kind = WaveKind::Stokes;
  g.r = r;
  g.Lambda = halfPeriod;
  g.nq = opt.nq;
  g.np = opt.np;
  g.h.resize(size_t(opt.nq + 1) * (opt.np + 1));
  for (int i = 0; i <= opt.nq; ++i) {
    double c = std::cos(M_PI * g.qhat(i));
    for (int j = 0; j <= opt.np; ++j) {
      g.at(i, j) = col.h[j] + amp * sp.phi0[j] * c;
    }
  }
  return g;
}

namespace {

// One continuation engine behind continue_branch and solitary_approx: walk
// the crest height upward with adaptive step halving, keeping the grid
// resolution in q proportional to the (growing) half period.
struct Continuation {
  const VorticityFn& v;
  double r;
  BranchOptions opt;
  ConjugatePair cj;
  DiscreteStreamColumn col;
  WaveGrid wave;       // current converged wave
  double tCur;         // its crest height
  int solves = 0;      // Newton solves spent
  double dqCap;        // physical q resolution to maintain

  Continuation(const VorticityFn& vv, double rr, const BranchOptions& o)
      : v(vv), r(rr), opt(o) {
    CriticalData cd = critical_data(v);
    cj = conjugate_streams(v, r, cd, 1e-12, 1e-12, opt.lambdaCap);

    SeedOptions so;
    so.epsilon = opt.seedEpsilon;
    so.nq = opt.nq;
    so.np = opt.np;
    so.lambdaCap = opt.lambdaCap;
    wave = seed_stokes(v, r, cd, so);
    col = discrete_stream_column(v, r, cj.lambdaPlus, opt.np);
    dqCap = wave.Lambda / opt.nq;

    // Converge the seed onto the branch at its own crest height.
    tCur = wave.crest();
    solveAt(tCur);
  }

  NewtonOptions newtonOptions(double t) const {
    NewtonOptions no;
    no.tol = opt.newtonTol;
    no.maxIter = opt.maxNewtonIters;
    no.fixLambda = false;
    no.crestTarget = t;
    return no;
  }

  void solveAt(double t) {
    ++solves;
    newton_solve(wave, v, newtonOptions(t));
    tCur = wave.crest();
    maybeRegrid();
  }

  // Keep dq = Lambda/nq at or below the seed resolution as Lambda grows.
  void maybeRegrid() {
    double dq = wave.Lambda / wave.nq;
    if (dq <= 1.25 * dqCap) return;
    int nqNew = int(std::ceil(wave.Lambda / dqCap / 8.0)) * 8;
    if (nqNew <= wave.nq) return;
    if (nqNew > 20000) {
      fail(ErrorKind::Numerical,
           "continuation: q grid would exceed 20000 columns (half period " +
               std::to_string(wave.Lambda) + ")");
    }

    WaveGrid g2;
    g2.kind = wave.kind;
    g2.r = wave.r;
    g2.Lambda = wave.Lambda;
    g2.nq = nqNew;
    g2.np = wave.np;
    g2.h.resize(size_t(nqNew + 1) * (wave.np + 1));
    // Row-wise cubic resampling in qhat; accuracy only matters as a Newton
    // starting point.
    std::vector<double> xs(wave.nq + 1), ys(wave.nq + 1);
    for (int i = 0; i <= wave.nq; ++i) xs[i] = wave.qhat(i);
    for (int j = 0; j <= wave.np; ++j) {
      for (int i = 0; i <= wave.nq; ++i) ys[i] = wave.at(i, j);
      Pchip row(xs, ys);
      for (int i = 0; i <= nqNew; ++i) g2.at(i, j) = row(g2.qhat(i));
    }
    wave = std::move(g2);
    ++solves;
    newton_solve(wave, v, newtonOptions(tCur));
  }

  DiscreteStreamColumn colMinus;  // thinner conjugate stream (far field)
  double kappaMinus = 0;          // linear decay rate onto it

  // The solitary tail relaxes onto the thinner conjugate stream like
  // exp(-kappa q) with kappa^2 the least Sturm-Liouville eigenvalue there
  // (positive on the supercritical side).
  void ensureTailModel() {
    if (kappaMinus > 0.0) return;
    colMinus = discrete_stream_column(v, r, cj.lambdaMinus, opt.np);
    SpectralPoint sp = spectral_point(v, cj.lambdaMinus, opt.np);
    if (!(sp.mu0 > 0.0)) {
      fail(ErrorKind::Numerical,
           "solitary_approx: thin conjugate stream is not spectrally "
           "supercritical");
    }
    kappaMinus = std::sqrt(sp.mu0);
  }

  // Grow the half period keeping the core at its physical width: sample the
  // old wave at the same physical q; past the old domain let the profile
  // decay from the old trough column onto the thin conjugate stream at the
  // linearized rate. A uniform horizontal stretch widens the core and throws
  // Newton out of its basin once the wave is long; this guess keeps the core
  // exact and already carries the tail settling the longer domain permits.
  void padTail(double LambdaNew) {
    ensureTailModel();
    WaveGrid g2 = wave;
    g2.Lambda = LambdaNew;
    std::vector<double> xs(wave.nq + 1), ys(wave.nq + 1);
    for (int i = 0; i <= wave.nq; ++i) xs[i] = wave.qhat(i);
    for (int j = 0; j <= wave.np; ++j) {
      for (int i = 0; i <= wave.nq; ++i) ys[i] = wave.at(i, j);
      Pchip row(xs, ys);
      const double edge = ys[wave.nq];  // old trough value in this row
      for (int i = 0; i <= wave.nq; ++i) {
        double q = g2.qhat(i) * LambdaNew;
        if (q <= wave.Lambda) {
          g2.at(i, j) = row(q / wave.Lambda);
        } else {
          g2.at(i, j) = colMinus.h[j] +
                        (edge - colMinus.h[j]) *
                            std::exp(-kappaMinus * (q - wave.Lambda));
        }
      }
    }
    wave = std::move(g2);
  }

  // Advance the crest height to tNext (either direction), halving the step
  // on Newton failures. Returns false when the step underflows, the budget
  // is exhausted, or more than maxHardCycles rounds needed halving (the
  // caller is probing past a fold and should re-plan from the progress made).
  bool advanceTo(double tNext, std::string* why, int maxHardCycles = 1 << 30) {
    const double scale = std::max(1.0, std::abs(tNext));
    const double arrive = 10.0 * opt.newtonTol * scale;
    int hardCycles = 0;
    while (std::abs(tNext - tCur) > arrive) {
      if (solves >= opt.maxContinuationSteps) {
        *why = "continuation budget exhausted";
        return false;
      }
      double step = tNext - tCur;
      WaveGrid saved = wave;
      bool moved = false;
      bool hard = false;
      while (std::abs(step) > 1e-12 * scale) {
        try {
          solveAt(tCur + step);
          moved = true;
          break;
        } catch (const Error&) {
          wave = saved;
          step *= 0.5;
          hard = true;
          if (solves >= opt.maxContinuationSteps) {
            *why = "continuation budget exhausted";
            return false;
          }
        }
      }
      if (!moved) {
        *why = "continuation step underflow (fold or branch end)";
        return false;
      }
      if (hard && ++hardCycles >= maxHardCycles &&
          std::abs(tNext - tCur) > arrive) {
        *why = "halving budget spent approaching " + std::to_string(tNext);
        return false;
      }
    }
    return true;
  }
};

}  // namespace

BranchResult continue_branch(const VorticityFn& v, double r,
                             const std::vector<double>& tTargets,
                             const BranchOptions& opt) {
  if (tTargets.empty()) {
    fail(ErrorKind::Validation, "continue_branch: empty target list");
  }
  for (size_t k = 1; k < tTargets.size(); ++k) {
    if (!(tTargets[k] > tTargets[k - 1])) {
      fail(ErrorKind::Validation,
           "continue_branch: crest targets must be strictly increasing");
    }
  }

  Continuation c(v, r, opt);
  if (!(tTargets.front() > std::max(c.cj.dPlus, c.col.h[c.wave.np]))) {
    fail(ErrorKind::Validation,
         "continue_branch: crest target " + std::to_string(tTargets.front()) +
             " does not exceed the subcritical stream height " +
             std::to_string(c.cj.dPlus));
  }

  BranchResult out;
  out.complete = true;
  std::string why;
  for (double target : tTargets) {
    if (!c.advanceTo(target, &why)) {
      out.complete = false;
      break;
    }
    out.waves.push_back(c.wave);
    out.t.push_back(c.tCur);
  }
  out.lastGoodT = c.tCur;
  return out;
}

SolitaryResult solitary_approx(const VorticityFn& v, double r, double tailTol,
                               const BranchOptions& opt) {
  if (!(tailTol > 0.0)) {
    fail(ErrorKind::Validation, "solitary_approx: tailTol must be positive");
  }

  Continuation c(v, r, opt);
  c.ensureTailModel();
  SolitaryResult out;

  // The trough of the discrete wave settles onto the discrete thin-stream
  // column, not the continuum depth; the two differ by the O(dp^2) surface
  // stencil error, which would otherwise put tight tolerances out of reach
  // of any period.
  WaveGrid bestWave;
  double bestGap = std::numeric_limits<double>::infinity();
  double bestSlope = bestGap;
  auto measure = [&]() {
    const WaveGrid& g = c.wave;
    out.tailGap = std::abs(g.trough() - c.colMinus.h[c.wave.np]);
    double dq = g.Lambda / g.nq;
    int span = std::max(2, g.nq / 20);
    double sl = 0.0;
    for (int i = g.nq - span + 1; i <= g.nq; ++i) {
      sl = std::max(sl, std::abs(g.at(i, g.np) - g.at(i - 1, g.np)) / dq);
    }
    out.tailSlope = sl;
    if (out.tailGap < bestGap) {
      bestWave = g;
      bestGap = out.tailGap;
      bestSlope = sl;
    }
    return out.tailGap <= tailTol && out.tailSlope <= tailTol;
  };

  const double depthGap = c.cj.dPlus - c.cj.dMinus;
  auto troughGap = [&]() { return c.wave.trough() - c.cj.dMinus; };

  // Phase 1: march the crest up until the trough has crossed half the
  // conjugate-depth gap. In this range the wave changes quickly with the
  // period, so the crest is the stable driving parameter; pushing further
  // only steepens the crest toward the peaked extreme wave, which is the
  // wrong end of the family.
  std::string why;
  bool done = measure();
  double step = std::max(1e-4 * c.cj.dPlus, 8.0 * (c.tCur - c.col.h[c.wave.np]));
  int blocked = 0;  // consecutive fold-blocked advances
  while (!done && troughGap() > 0.45 * depthGap) {
    if (c.solves >= opt.maxContinuationSteps) break;
    // The crest saturates near the solitary limit, so large steps probe past
    // the end of the reachable crest range; keep them a fraction of the
    // conjugate depth gap and re-plan after two halving-limited advances.
    step = std::min(step, 0.15 * depthGap);
    double tNext = c.tCur + step;
    if (tNext >= 1.5 * r) break;  // crest bound eta < 3r/2; branch must end
    double before = c.tCur;
    if (c.advanceTo(tNext, &why, 2)) {
      step *= 1.4;
      blocked = 0;
    } else {
      double gained = c.tCur - before;
      if (traceContinuation()) {
        std::fprintf(stderr,
                     "[p1] solves=%d t=%.8g gained=%.3g why=%s nq=%d\n",
                     c.solves, c.tCur, gained, why.c_str(), c.wave.nq);
      }
      if (gained <= 1e-12 * std::max(1.0, c.tCur)) break;
      if (++blocked >= 2) break;  // crest maxed out; grow the period instead
      step = std::max(gained, 1e-12);
    }
    done = measure();
    if (traceContinuation()) {
      std::fprintf(stderr,
                   "[p1] solves=%d t=%.8g trough/depthGap=%.3f gap=%.3g "
                   "slope=%.3g Lam=%.6g nq=%d\n",
                   c.solves, c.tCur, troughGap() / depthGap, out.tailGap,
                   out.tailSlope, c.wave.Lambda, c.wave.nq);
    }
  }

  // Phase 2: grow the half period at fixed Lambda per solve (crest free).
  // While the surface still bends at the trough the whole wave is cnoidal-
  // like and a uniform horizontal stretch is the natural neighbor; once the
  // tail has flattened, padding it (core kept at physical width, extension
  // relaxed onto the thin conjugate stream) is far better, and the trough
  // settles exponentially in Lambda. When a stretch is rejected, pushing the
  // crest a little is the complementary move, until crest continuation
  // itself folds.
  const double flatSlope = std::max(10.0 * tailTol, 3e-3);
  double growth = 1.20;
  bool crestAlive = true;
  while (!done) {
    if (c.solves >= opt.maxContinuationSteps) break;
    double lambdaNext = c.wave.Lambda * growth;
    if (lambdaNext > opt.lambdaCap) break;
    WaveGrid saved = c.wave;
    double tSaved = c.tCur;
    bool ok = true;
    try {
      ++c.solves;
      if (out.tailSlope <= flatSlope) {
        c.padTail(lambdaNext);
      } else {
        c.wave.Lambda = lambdaNext;  // uniform stretch
      }
      NewtonOptions no = c.newtonOptions(0.0);
      no.fixLambda = true;
      newton_solve(c.wave, v, no);
      c.tCur = c.wave.crest();
      // Falling back onto the trivial stream branch counts as a failure.
      if (c.tCur - c.col.h[c.wave.np] < 0.05 * depthGap) ok = false;
      if (ok) c.maybeRegrid();
      if (traceContinuation() && !ok) {
        std::fprintf(stderr, "[p2] solves=%d Lam->%.6g slid to stream\n",
                     c.solves, lambdaNext);
      }
    } catch (const Error& e) {
      ok = false;
      if (traceContinuation()) {
        std::fprintf(stderr, "[p2] solves=%d Lam->%.6g FAIL %s\n", c.solves,
                     lambdaNext, e.what());
      }
    }
    if (!ok) {
      c.wave = saved;
      c.tCur = tSaved;
      if (crestAlive && c.solves < opt.maxContinuationSteps) {
        double tNext = std::min(c.tCur + 0.1 * depthGap,
                                0.5 * (c.tCur + 1.5 * r));
        std::string why2;
        if (tNext > c.tCur && c.advanceTo(tNext, &why2, 1)) {
          done = measure();
          if (traceContinuation()) {
            std::fprintf(stderr,
                         "[p2] solves=%d crest push t=%.8g gap=%.3g "
                         "slope=%.3g Lam=%.6g\n",
                         c.solves, c.tCur, out.tailGap, out.tailSlope,
                         c.wave.Lambda);
          }
          continue;  // retry the same growth from the taller wave
        }
        crestAlive = false;  // crest is fold-blocked from here on
      }
      growth = 1.0 + 0.5 * (growth - 1.0);
      if (growth - 1.0 < 1e-3) break;
      continue;
    }
    growth = std::min(1.5, 1.0 + 1.3 * (growth - 1.0));
    done = measure();
    if (traceContinuation()) {
      std::fprintf(stderr,
                   "[p2] solves=%d Lam=%.6g gap=%.3g slope=%.3g nq=%d t=%.8g\n",
                   c.solves, c.wave.Lambda, out.tailGap, out.tailSlope,
                   c.wave.nq, c.tCur);
    }
  }

  // On failure hand back the closest approach, not the last iterate.
  if (!done && bestGap < out.tailGap) {
    c.wave = bestWave;
    out.tailGap = bestGap;
    out.tailSlope = bestSlope;
  }
  out.wave = c.wave;
  out.wave.kind = WaveKind::SolitaryApprox;
  out.achieved = done;
  out.steps = c.solves;
  return out;
}

}  // namespace cuspwave
