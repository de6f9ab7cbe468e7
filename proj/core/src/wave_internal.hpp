#pragma once

#include <vector>

#include "cuspwave/vorticity.hpp"
#include "cuspwave/wave.hpp"

namespace cuspwave::detail {

struct Trip {
  int r, c;
  double v;
};

inline int unknownCount(const WaveGrid& g) { return (g.nq + 1) * g.np; }

// Residual of the discrete system, K = (nq+1)*np entries: interior rows for
// j = 1..np-1 and the Bernoulli row at j = np, ordered k = i*np + (j-1).
// When J != nullptr also emits the analytic Jacobian with respect to the K
// height unknowns, plus (withLambda) a dense column K of Lambda derivatives.
void assemble_system(const WaveGrid& g, const VorticityFn& v,
                     std::vector<double>* F, std::vector<Trip>* J,
                     bool withLambda);

}  // namespace cuspwave::detail
