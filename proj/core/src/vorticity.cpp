#include "cuspwave/vorticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuspwave/errors.hpp"

namespace cuspwave {

VorticitySpec VorticitySpec::zero() { return {}; }

VorticitySpec VorticitySpec::constant(double b) {
  VorticitySpec s;
  s.kind = VorticityKind::Constant;
  s.b = b;
  return s;
}

VorticitySpec VorticitySpec::affine(double a, double b) {
  VorticitySpec s;
  s.kind = VorticityKind::Affine;
  s.a = a;
  s.b = b;
  return s;
}

VorticitySpec VorticitySpec::samples(std::vector<double> p,
                                     std::vector<double> w) {
  VorticitySpec s;
  s.kind = VorticityKind::Samples;
  s.samplesP = std::move(p);
  s.samplesW = std::move(w);
  return s;
}

double VorticityFn::omega(double p) const {
  switch (spec_.kind) {
    case VorticityKind::Zero:
      return 0.0;
    case VorticityKind::Constant:
      return spec_.b;
    case VorticityKind::Affine:
      return spec_.a + spec_.b * p;
    case VorticityKind::Samples:
      return interp_(p);
  }
  return 0.0;
}

double VorticityFn::Omega(double tau) const {
  switch (spec_.kind) {
    case VorticityKind::Zero:
      return 0.0;
    case VorticityKind::Constant:
      return spec_.b * tau;
    case VorticityKind::Affine:
      return tau * (spec_.a + 0.5 * spec_.b * tau);
    case VorticityKind::Samples:
      return interp_.integral(tau);
  }
  return 0.0;
}

namespace {

// Scan on 1025 points, then golden-section refinement around the best cell.
// Returns {argext, extval} for the extremum of sign*f.
std::pair<double, double> refineExtremum(const std::function<double(double)>& f,
                                         double sign) {
  const int n = 1024;
  double bestX = 0.0, bestV = sign * f(0.0);
  for (int k = 1; k <= n; ++k) {
    double x = double(k) / n;
    double val = sign * f(x);
    if (val > bestV) {
      bestV = val;
      bestX = x;
    }
  }
  double lo = std::max(0.0, bestX - 1.0 / n);
  double hi = std::min(1.0, bestX + 1.0 / n);
  double x = golden_min([&](double t) { return -sign * f(t); }, lo, hi, 1e-14);
  double val = sign * f(x);
  if (val > bestV) {
    bestV = val;
    bestX = x;
  }
  return {bestX, sign * bestV};
}

}  // namespace

VorticityFn make_vorticity(const VorticitySpec& spec) {
  VorticityFn v;
  v.spec_ = spec;

  auto finite = [](double x) { return std::isfinite(x); };
  switch (spec.kind) {
    case VorticityKind::Zero:
      break;
    case VorticityKind::Constant:
      if (!finite(spec.b)) {
        fail(ErrorKind::Validation, "vorticity.b must be finite");
      }
      break;
    case VorticityKind::Affine:
      if (!finite(spec.a) || !finite(spec.b)) {
        fail(ErrorKind::Validation, "vorticity.a and vorticity.b must be finite");
      }
      break;
    case VorticityKind::Samples: {
      const auto& ps = spec.samplesP;
      const auto& ws = spec.samplesW;
      if (ps.size() < 2 || ps.size() != ws.size()) {
        fail(ErrorKind::Validation,
             "vorticity.samples needs matching p/omega arrays with >= 2 entries");
      }
      if (ps.front() != 0.0 || ps.back() != 1.0) {
        fail(ErrorKind::Validation,
             "vorticity.samples p-grid must start at 0 and end at 1");
      }
      for (size_t k = 0; k + 1 < ps.size(); ++k) {
        if (!(ps[k + 1] > ps[k])) {
          fail(ErrorKind::Validation,
               "vorticity.samples p-grid must strictly increase");
        }
      }
      for (double w : ws) {
        if (!finite(w)) {
          fail(ErrorKind::Validation, "vorticity.samples values must be finite");
        }
      }
      v.interp_ = Pchip(ps, ws);
      break;
    }
  }

  // Derived constants. Builtin kinds have closed forms; samples are scanned.
  double argMaxHint = 0.5;
  switch (spec.kind) {
    case VorticityKind::Zero:
      v.omega0_ = 0.0;
      v.omega1_ = 0.0;
      v.maxOmega_ = 0.0;
      v.minOmega_ = 0.0;
      break;
    case VorticityKind::Constant: {
      double b = spec.b;
      v.omega0_ = std::abs(b);
      v.omega1_ = std::abs(b);
      v.maxOmega_ = std::max(0.0, b);  // Omega = b*tau
      v.minOmega_ = std::min(0.0, b);
      argMaxHint = b > 0.0 ? 1.0 : 0.0;
      break;
    }
    case VorticityKind::Affine: {
      double a = spec.a, b = spec.b;
      v.omega0_ = std::max(std::abs(a), std::abs(a + b));
      v.omega1_ = v.omega0_ + std::abs(b);
      // Omega = a*tau + b*tau^2/2, stationary at tau* = -a/b.
      double candMax = std::max(0.0, v.Omega(1.0));
      double candMin = std::min(0.0, v.Omega(1.0));
      argMaxHint = v.Omega(1.0) > 0.0 ? 1.0 : 0.0;
      if (b != 0.0) {
        double ts = -a / b;
        if (ts > 0.0 && ts < 1.0) {
          if (v.Omega(ts) > candMax) {
            candMax = v.Omega(ts);
            argMaxHint = ts;
          }
          candMin = std::min(candMin, v.Omega(ts));
        }
      }
      v.maxOmega_ = candMax;
      v.minOmega_ = candMin;
      break;
    }
    case VorticityKind::Samples: {
      auto absw = [&](double p) { return std::abs(v.interp_(p)); };
      v.omega0_ = refineExtremum(absw, +1.0).second;
      v.omega1_ = v.omega0_ + v.interp_.maxAbsDerivative();
      auto Om = [&](double t) { return v.interp_.integral(t); };
      auto mx = refineExtremum(Om, +1.0);
      argMaxHint = mx.first;
      v.maxOmega_ = mx.second;
      v.minOmega_ = refineExtremum(Om, -1.0).second;
      break;
    }
  }
  v.lambda0_ = std::sqrt(2.0 * std::max(0.0, v.maxOmega_));

  // Classification: where does Omega attain its maximum, and does omega
  // point away from the interior there. Interior maximizers (or endpoint
  // maximizers with vanishing omega) make the critical depth integral
  // diverge: class I.
  const double tol = 1e-11 * (1.0 + std::abs(v.maxOmega_));
  bool maxAt0 = v.Omega(0.0) >= v.maxOmega_ - tol;  // Omega(0) = 0
  bool maxAt1 = v.Omega(1.0) >= v.maxOmega_ - tol;
  bool maxInterior =
      argMaxHint > 1e-9 && argMaxHint < 1.0 - 1e-9 &&
      v.Omega(argMaxHint) >= v.maxOmega_ - tol;
  if (!maxInterior) {
    const int n = 1024;
    for (int k = 1; k < n; ++k) {
      double t = double(k) / n;
      if (v.Omega(t) >= v.maxOmega_ - tol) {
        maxInterior = true;
        break;
      }
    }
  }
  if (!maxAt0 && !maxAt1 && !maxInterior) maxInterior = true;  // safety net
  double w0 = v.omega(0.0), w1 = v.omega(1.0);
  bool end0ok = maxAt0 && w0 < 0.0;
  bool end1ok = maxAt1 && w1 > 0.0;

  Classification cls;
  if (maxInterior || (maxAt0 && !(w0 < 0.0)) || (maxAt1 && !(w1 > 0.0))) {
    cls.cls = VorticityClass::I;
    cls.tie = maxInterior && (end0ok || end1ok);
  } else if (end1ok) {
    cls.cls = VorticityClass::III;  // covers the Omega(1)=0 double-end case
  } else if (end0ok) {
    cls.cls = VorticityClass::II;
  } else {
    cls.cls = VorticityClass::I;
  }
  v.cls_ = cls;
  return v;
}

Classification classify(const VorticityFn& v) { return v.classification(); }

const char* to_string(VorticityClass c) {
  switch (c) {
    case VorticityClass::I:
      return "I";
    case VorticityClass::II:
      return "II";
    case VorticityClass::III:
      return "III";
  }
  return "?";
}

}  // namespace cuspwave
