#pragma once

#include <vector>

#include "cuspwave/numerics.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/vorticity.hpp"
#include "cuspwave/wave.hpp"

namespace cuspwave {

// Flow force of the laminar flow with given lambda, in hodograph variables:
//   s = (r + 2/3 Omega(1)) d - 1/3 (d^2 - int_0^1 [Hp^{-2} - 2 Omega] Hp dp),
// r = R(lambda). Improper at lambda = lambda0 (same endpoint substitutions
// as the depth integral).
double flow_force_stream_lambda(const VorticityFn& v, double lambda,
                                double quadTol = 1e-12);

enum class StreamBranch { Plus, Minus };  // lambdaPlus / lambdaMinus

// Flow force of the conjugate stream at Bernoulli constant r; Plus gives the
// upper region boundary sPlus(r), Minus the lower sMinus(r). One-sided
// evaluation is allowed at r = rC and (classes II/III) at r = r0.
double flow_force_stream(const VorticityFn& v, double r, StreamBranch branch,
                         const CriticalData& cd, double quadTol = 1e-12);

// Flow force of a computed wave evaluated on the grid column qIndex:
// the surface term uses h(q,1) and the depth integral
// int_0^1 [(1 - h_q^2)/h_p - 2 Omega h_p] dp with fourth-order stencils.
double flow_force_wave(const WaveGrid& g, const VorticityFn& v, int qIndex);

// Cuspidal parameter region between the conjugate-stream flow forces,
// sampled on a cosine-clustered r-grid (dense near the cusp rC) and clipped
// at r0 for vorticity classes II/III.
struct BLRegion {
  double rC = 0, sC = 0;  // cusp
  double r0 = 0;          // +infinity for class I
  bool truncated = false; // rMax exceeded r0 and the grid was clipped
  std::vector<double> r, sMinus, sPlus;
  Pchip lower, upper;     // monotone cubic interpolants of the boundaries
};

BLRegion build_region(const VorticityFn& v, double rMax, int n,
                      double quadTol = 1e-12);

// Membership of (r,s): the lower boundary belongs to the region, the upper
// does not (the region is the half-open band [sMinus, sPlus)). Positions are
// resolved within an absolute band of `band` around each curve. Queries
// outside the sampled r-range are refused (Domain error), no extrapolation.
enum class RegionPosition {
  Inside,
  LowerBoundary,
  UpperBoundary,
  TruncationEdge,
  Outside,
};

RegionPosition contains(const BLRegion& reg, double r, double s,
                        double band = 1e-8);

const char* to_string(RegionPosition pos);

struct BranchFlowForce {
  std::vector<double> t, s;   // crest heights and flow forces along a branch
  bool strictlyDecreasing = false;
  double sPlusGap = 0;   // |s.front() - sPlus(r)|: small-amplitude endpoint
  double sMinusGap = 0;  // |s.back() - sMinus(r)|: solitary endpoint
};

BranchFlowForce branch_flow_force(const VorticityFn& v, double r,
                                  const std::vector<WaveGrid>& waves,
                                  const CriticalData& cd);

// Qualitative comparison against the classical irrotational picture:
// cusp at (1,1), boundaries ordered and increasing away from the cusp.
struct IrrotationalShape {
  double cuspRError = 0, cuspSError = 0;
  bool ordered = false;     // sPlus >= sMinus with equality only at the cusp
  bool increasing = false;  // both boundaries nondecreasing in r
};

IrrotationalShape irrotational_shape_check(const BLRegion& reg);

}  // namespace cuspwave
