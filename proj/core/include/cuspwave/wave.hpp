#pragma once

#include <string>
#include <vector>

#include "cuspwave/stream.hpp"
#include "cuspwave/sturm.hpp"
#include "cuspwave/vorticity.hpp"

namespace cuspwave {

enum class WaveKind { Stream, Stokes, SolitaryApprox };

// Height function h(qhat, p) on the fixed strip, qhat = q / Lambda in [0,1]
// covering half a period (crest at qhat=0, trough at qhat=1), p in [0,1].
// h(.,0) = 0 is kept in storage for stencil uniformity.
struct WaveGrid {
  WaveKind kind = WaveKind::Stokes;
  double r = 0;       // Bernoulli constant
  double Lambda = 0;  // half period in the physical horizontal variable
  int nq = 0, np = 0; // cell counts
  std::vector<double> h;  // (nq+1)*(np+1), index i*(np+1)+j

  double& at(int i, int j) { return h[size_t(i) * (np + 1) + j]; }
  double at(int i, int j) const { return h[size_t(i) * (np + 1) + j]; }
  double qhat(int i) const { return double(i) / nq; }
  double p(int j) const { return double(j) / np; }
  double crest() const { return at(0, np); }
  double trough() const { return at(nq, np); }
};

// q-independent column solving the discrete equations exactly: increments
// follow (C - 2 Omega(p_{j+1/2}))^{-1/2} with the constant C pinned by the
// discrete Bernoulli row. sqrt(C) differs from the continuous lambda by
// O(dp^2). Replicated in q it gives a machine-zero residual and is the
// base state for seeding and diagnostics.
struct DiscreteStreamColumn {
  double r = 0;
  double lambda = 0;  // sqrt(C)
  std::vector<double> h;  // np+1 values, h[0] = 0
};

DiscreteStreamColumn discrete_stream_column(const VorticityFn& v, double r,
                                            double lambdaHint, int np);

WaveGrid replicate_column(const DiscreteStreamColumn& col, double Lambda,
                          int nq);

// Residual of the interior divergence-form equation and the top Bernoulli
// row, (nq+1)*np entries ordered like the unknowns (j = 1..np fastest is
// false: index k = i*np + (j-1)). Throws on nonpositive discrete h_p,
// naming the node.
std::vector<double> assemble_residual(const WaveGrid& g, const VorticityFn& v);

double residual_norm(const WaveGrid& g, const VorticityFn& v);

// Smallest column-wise divided difference of h in p (discrete h_p).
double min_discrete_hp(const WaveGrid& g);

struct NewtonOptions {
  double tol = 1e-10;
  int maxIter = 50;
  int maxBacktrack = 30;
  double condLimit = 1e14;   // conditioning estimate beyond this: turning point
  bool fixLambda = true;     // false: Lambda free, crest pinned to crestTarget
  double crestTarget = 0;
};

struct NewtonReport {
  int iterations = 0;
  double residual = 0;
  double conditionEstimate = 0;
};

// Damped Newton on the discrete system; updates g in place (and g.Lambda
// when the crest constraint is active). Analytic sparse Jacobian, with a
// dense Lambda column when Lambda is free. Steps are shortened so the
// discrete h_p never drops below 0.1x its current minimum.
NewtonReport newton_solve(WaveGrid& g, const VorticityFn& v,
                          const NewtonOptions& opt);

// Finite-difference probe of the analytic Jacobian; returns the largest
// absolute entry deviation. Debug/verification tool (cost ~ unknowns^2).
double jacobian_fd_deviation(const WaveGrid& g, const VorticityFn& v,
                             bool fixLambda, double step = 1e-6);

struct SeedOptions {
  double epsilon = 1e-3;  // amplitude, scaled by dPlus
  int nq = 256, np = 64;
  double lambdaCap = 1e3;
};

// Small-amplitude initial guess h = H + epsilon*dPlus*phi0(p)*cos(pi*qhat)
// on the half period Lambda = pi/kStar.
WaveGrid seed_stokes(const VorticityFn& v, double r, const CriticalData& cd,
                     const SeedOptions& opt);

struct BranchOptions {
  int nq = 256, np = 64;
  double newtonTol = 1e-10;
  int maxNewtonIters = 50;
  int maxContinuationSteps = 400;
  double seedEpsilon = 1e-3;
  double lambdaCap = 1e3;
};

struct BranchResult {
  std::vector<WaveGrid> waves;   // one per reached target, ascending t
  std::vector<double> t;         // crest heights actually reached
  bool complete = false;         // every requested target solved
  double lastGoodT = 0;
};

// Crest-height continuation: solve at each target t (ascending, all > dPlus)
// with Lambda free, warm-starting from the previous wave and inserting
// midpoints when Newton fails. Truncates with complete=false when the step
// underflows or the budget runs out.
BranchResult continue_branch(const VorticityFn& v, double r,
                             const std::vector<double>& tTargets,
                             const BranchOptions& opt);

struct SolitaryResult {
  WaveGrid wave;
  double tailGap = 0;    // |eta(Lambda) - discrete conjugate depth|
  double tailSlope = 0;  // max |eta'| near q = Lambda
  bool achieved = false;
  int steps = 0;
};

// Long-wave member of the branch approximating the solitary wave: raises the
// crest until the trough settles onto the thinner conjugate stream within
// tailTol, growing nq with Lambda to keep the physical q-step bounded.
SolitaryResult solitary_approx(const VorticityFn& v, double r, double tailTol,
                               const BranchOptions& opt);

struct PhysicalWave {
  std::vector<double> x;    // crest-to-trough abscissae, qhat*Lambda
  std::vector<double> eta;  // surface profile h(., 1)
  std::vector<double> psiX, psiY;  // velocity components on the grid nodes
  double maxSlope = 0;
  double minPsiY = 0;
  double bernoulliResidual = 0;  // top-row defect, same stencil as the solver
};

PhysicalWave reconstruct_physical(const WaveGrid& g, const VorticityFn& v);

// First-eigenfunction projection of the deviation from the stream column:
// w = h - hStream, f = h_q/h_p; w0/f0 are the raw projection coefficients
// per q node, the remainder is measured after the normalized projection.
struct SplitDiagnostics {
  std::vector<double> w0, f0;
  double remainderNorm = 0;        // sup_q of the joint L2 remainder norm
  double orthogonalityDefect = 0;  // max |<remainder, phi0/Hp>| over q
  double supW = 0, supDW = 0, supD2W = 0;  // w and divided differences
  double supF = 0, supDF = 0;
};

SplitDiagnostics spectral_split(const WaveGrid& g, const VorticityFn& v,
                                const SpectralPoint& sp,
                                const std::vector<double>& streamColumn);

struct WaveChecks {
  double minEta = 0, maxEta = 0, minHp = 0;
  double maxCrestH_qq = 0;  // max over interior p of discrete h_qq at qhat=0
  double etaFloor = 0;      // min{(6r)^{-1/2}, (2 omega0)^{-1/2}}
  std::vector<std::string> violations;
};

// Pointwise bounds every admissible wave must satisfy: dMinus < min eta,
// min eta < dPlus <= max eta < 3r/2, the eta floor, positive discrete h_p,
// and strictly concave crest line (h_qq(0,p) < 0).
WaveChecks check_wave(const WaveGrid& g, const VorticityFn& v,
                      const ConjugatePair& cj);

}  // namespace cuspwave
