#pragma once

#include <string>

#include "cuspwave/vorticity.hpp"

namespace cuspwave {

struct GridConfig {
  int np = 64;
  int nq = 256;
};

struct TolConfig {
  double newton = 1e-10;
  double quadrature = 1e-12;
  double root = 1e-12;
};

struct BudgetConfig {
  int maxNewtonIters = 50;
  int maxContinuationSteps = 400;
  double lambdaCap = 1e3;
};

struct RunConfig {
  VorticitySpec vorticity;  // default: zero
  GridConfig grid;
  TolConfig tol;
  BudgetConfig budget;
  double slopeBoundM = 1.0;  // reporting threshold for the surface slope
};

// Strict JSON ingestion: unknown keys anywhere are rejected with the JSON
// pointer of the offender; missing keys take the defaults above.
RunConfig parse_config(const std::string& jsonText);
RunConfig load_config(const std::string& path);

// Canonical serialization: fixed key order, 17 significant digits;
// serialize(parse(x)) is byte-stable.
std::string serialize_config(const RunConfig& cfg);

}  // namespace cuspwave
