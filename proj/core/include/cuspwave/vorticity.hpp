#pragma once

#include <string>
#include <vector>

#include "cuspwave/numerics.hpp"

namespace cuspwave {

enum class VorticityKind { Zero, Constant, Affine, Samples };

// Prescription of the vorticity density omega on the stream-function
// variable p in [0,1]. Samples are interpolated with a monotone cubic.
struct VorticitySpec {
  VorticityKind kind = VorticityKind::Zero;
  double a = 0.0;                  // affine: omega(p) = a + b*p
  double b = 0.0;                  // constant: omega(p) = b
  std::vector<double> samplesP;    // strictly increasing, first 0, last 1
  std::vector<double> samplesW;

  static VorticitySpec zero();
  static VorticitySpec constant(double b);
  static VorticitySpec affine(double a, double b);
  static VorticitySpec samples(std::vector<double> p, std::vector<double> w);
};

// Shear-flow taxonomy by where Omega attains its maximum:
//   I   at an interior point, or at an endpoint with vanishing omega
//       (critical depth integral diverges, no finite r0),
//   II  only at p=0 with omega(0) < 0,
//   III at p=1 with omega(1) > 0 (p=0 may tie when omega(0) < 0).
enum class VorticityClass { I, II, III };

struct Classification {
  VorticityClass cls = VorticityClass::I;
  // Max of Omega attained both at a qualifying endpoint and elsewhere;
  // ties resolve to class I.
  bool tie = false;
};

// Vorticity together with Omega(tau) = int_0^tau omega and the constants
// derived from it. Immutable after construction; safe to share across threads.
class VorticityFn {
 public:
  double omega(double p) const;
  double Omega(double tau) const;

  double omega0() const { return omega0_; }    // max |omega|
  double omega1() const { return omega1_; }    // omega0 + ess sup |omega'|
  double lambda0() const { return lambda0_; }  // sqrt(2 max Omega)
  double maxOmega() const { return maxOmega_; }
  double minOmega() const { return minOmega_; }
  Classification classification() const { return cls_; }
  VorticityClass waveClass() const { return cls_.cls; }

  const VorticitySpec& spec() const { return spec_; }

 private:
  friend VorticityFn make_vorticity(const VorticitySpec&);
  VorticityFn() = default;

  VorticitySpec spec_;
  Pchip interp_;  // Samples kind only
  double omega0_ = 0, omega1_ = 0, lambda0_ = 0;
  double maxOmega_ = 0, minOmega_ = 0;
  Classification cls_;
};

// Validates the VorticitySpec (finite values, sample grid covering [0,1]
// strictly increasing) and precomputes Omega along with the derived constants.
VorticityFn make_vorticity(const VorticitySpec& spec);

Classification classify(const VorticityFn& v);

const char* to_string(VorticityClass c);

}  // namespace cuspwave
