#include <cmath>
#include <vector>

#include "doctest.h"

#include "cuspwave/errors.hpp"
#include "cuspwave/numerics.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/vorticity.hpp"

using namespace cuspwave;

namespace {

const VorticityFn& still() {
  static VorticityFn v = make_vorticity(VorticitySpec::zero());
  return v;
}

const VorticityFn& shear() {
  static VorticityFn v = make_vorticity(VorticitySpec::constant(0.5));
  return v;
}

// For constant vorticity b: d(lambda) = (lambda - sqrt(lambda^2 - 2b)) / b.
double constantDepth(double b, double lambda) {
  return (lambda - std::sqrt(lambda * lambda - 2.0 * b)) / b;
}

}  // namespace

TEST_CASE("irrotational depth and Bernoulli constant are closed forms") {
  for (double lam : {0.5, 0.8, 1.0, 1.7, 2.4, 3.0}) {
    CHECK(std::abs(depth(still(), lam) - 1.0 / lam) < 1e-12);
    double R = (lam * lam * lam + 2.0) / (3.0 * lam);
    CHECK(std::abs(bernoulli_of_lambda(still(), lam) - R) < 1e-12);
    CHECK(stream_hp(still(), lam, 0.37) == doctest::Approx(1.0 / lam));
  }
}

TEST_CASE("constant-vorticity depth matches its closed form") {
  for (double lam : {1.01, 1.1, 1.5, 2.0, 3.0}) {
    CHECK(std::abs(depth(shear(), lam) - constantDepth(0.5, lam)) < 1e-8);
  }
  // At lambda = lambda0 = 1 the integrand has an endpoint singularity but
  // the depth is still finite: d = 2.
  CHECK(std::abs(depth(shear(), 1.0) - 2.0) < 1e-8);
}

TEST_CASE("critical data for the irrotational flow") {
  CriticalData cd = critical_data(still());
  CHECK(std::abs(cd.lambdaC - 1.0) < 1e-10);
  CHECK(std::abs(cd.rC - 1.0) < 1e-10);
  CHECK(std::abs(cd.dC - 1.0) < 1e-10);
  CHECK(cd.lambda0 == 0.0);
  CHECK(std::isinf(cd.d0));
  CHECK(std::isinf(cd.r0));
}

TEST_CASE("critical data for constant vorticity 0.5") {
  CriticalData cd = critical_data(shear());
  // lambdaC reduces to the root of 1/sqrt(lambda^2-1) - 1/lambda = 1/2,
  // solved here independently by bisection.
  double lo = 1.05, hi = 3.0;
  for (int k = 0; k < 200; ++k) {
    double mid = 0.5 * (lo + hi);
    double g = 1.0 / std::sqrt(mid * mid - 1.0) - 1.0 / mid - 0.5;
    (g > 0.0 ? lo : hi) = mid;
  }
  double lambdaCOracle = 0.5 * (lo + hi);
  CHECK(std::abs(cd.lambdaC - lambdaCOracle) < 1e-8);
  CHECK(cd.lambdaC == doctest::Approx(1.2651).epsilon(1e-4));

  CHECK(std::abs(cd.lambda0 - 1.0) < 1e-12);
  CHECK(std::abs(cd.d0 - 2.0) < 1e-8);
  CHECK(std::abs(cd.r0 - 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(cd.dC - constantDepth(0.5, cd.lambdaC)) < 1e-8);
}

TEST_CASE("conjugate streams at a supercritical Bernoulli constant") {
  // r = R(1.2) puts lambdaMinus at exactly 1.2; lambdaPlus is the positive
  // root of lambda^2 + 1.2 lambda - 5/3 (factoring the Bernoulli cubic).
  double r = (std::pow(1.2, 3) + 2.0) / (3.0 * 1.2);
  double lamPlus = 0.5 * (-1.2 + std::sqrt(1.44 + 4.0 * 5.0 / 3.0));
  CriticalData cd = critical_data(still());
  ConjugatePair cj = conjugate_streams(still(), r, cd);
  CHECK(std::abs(cj.lambdaPlus - lamPlus) < 1e-9);
  CHECK(std::abs(cj.lambdaMinus - 1.2) < 1e-9);
  CHECK(std::abs(cj.dPlus - 1.0 / lamPlus) < 1e-9);
  CHECK(std::abs(cj.dMinus - 1.0 / 1.2) < 1e-9);
  CHECK(cj.dMinus < cd.dC);
  CHECK(cd.dC < cj.dPlus);
  CHECK_FALSE(cj.nearCritical);
}

TEST_CASE("conjugate streams reject out-of-range Bernoulli constants") {
  CriticalData cd = critical_data(still());
  CHECK_THROWS_AS(conjugate_streams(still(), 0.9, cd), Error);
  try {
    conjugate_streams(still(), 0.9, cd);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }

  CriticalData cds = critical_data(shear());
  CHECK_THROWS_AS(conjugate_streams(shear(), 1.4, cds), Error);  // beyond r0
  try {
    conjugate_streams(shear(), 1.4, cds);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("depth decreases and Bernoulli has one interior minimum") {
  for (const VorticityFn* v : {&still(), &shear()}) {
    double lam0 = v->lambda0();
    std::vector<double> lams, Rs;
    for (int k = 0; k <= 60; ++k) {
      lams.push_back(lam0 + 0.05 + 0.05 * k);
    }
    double prevD = std::numeric_limits<double>::infinity();
    for (double lam : lams) {
      double d = depth(*v, lam);
      CHECK(d < prevD);
      prevD = d;
      Rs.push_back(bernoulli_of_lambda(*v, lam));
    }
    int argmin = 0;
    for (size_t k = 1; k < Rs.size(); ++k) {
      if (Rs[k] < Rs[argmin]) argmin = int(k);
    }
    CHECK(argmin > 0);
    CHECK(argmin < int(Rs.size()) - 1);
    for (int k = 0; k < argmin; ++k) CHECK(Rs[k] > Rs[k + 1] - 1e-12);
    for (size_t k = argmin; k + 1 < Rs.size(); ++k) {
      CHECK(Rs[k] < Rs[k + 1] + 1e-12);
    }
  }
}

TEST_CASE("stream profile accumulates to the depth") {
  for (const VorticityFn* v : {&still(), &shear()}) {
    double lam = v->lambda0() + 0.4;
    StreamProfile prof = stream_profile(*v, lam, 64);
    CHECK(prof.p.size() == 65);
    CHECK(prof.H.front() == 0.0);
    CHECK(std::abs(prof.H.back() - depth(*v, lam)) < 1e-10);
    for (int j = 0; j <= 64; ++j) {
      CHECK(prof.Hp[j] ==
            doctest::Approx(stream_hp(*v, lam, prof.p[j])).epsilon(1e-13));
    }
    // H is strictly increasing in p.
    for (int j = 0; j < 64; ++j) CHECK(prof.H[j + 1] > prof.H[j]);
  }
}

TEST_CASE("depth quadrature tolerance is honored near the singular edge") {
  // Trapezoid-style riff: compare adaptive result at loose and tight
  // tolerances; the tight one is the reference.
  double loose = depth(shear(), 1.002, 1e-6);
  double tight = depth(shear(), 1.002, 1e-13);
  CHECK(std::abs(loose - tight) < 1e-5);
  CHECK(std::abs(tight - constantDepth(0.5, 1.002)) < 1e-8);
}
