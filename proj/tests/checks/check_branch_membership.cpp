// Flow forces of computed waves against the cuspidal parameter region: for
// two vorticities and three Bernoulli constants near critical, every wave's
// (r, s) must classify inside the region or on its lower boundary, s must
// decrease strictly along the branch, the small-amplitude end must meet the
// upper boundary, and the long-wave end must meet the lower one.
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "cuspwave/region.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/vorticity.hpp"
#include "cuspwave/wave.hpp"

using namespace cuspwave;

namespace {
struct Gate {
  bool ok = true;
  std::ostringstream why;
  void req(bool cond, const std::string& what) {
    if (cond) return;
    if (!ok) why << "; ";
    why << what;
    ok = false;
  }
};
std::string num(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}
}  // namespace

int main() {
  Gate gate;
  double worstPlusGap = 0, worstMinusGap = 0;
  try {
    const VorticitySpec specs[] = {VorticitySpec::zero(),
                                   VorticitySpec::constant(0.5)};
    const double offsets[] = {0.002, 0.005, 0.01};

    BranchOptions bo;
    bo.np = 32;
    bo.nq = 128;

    for (const VorticitySpec& spec : specs) {
      VorticityFn v = make_vorticity(spec);
      CriticalData cd = critical_data(v);
      BLRegion reg = build_region(v, cd.rC + 0.02, 65);
      std::string vtag = spec.kind == VorticityKind::Zero ? "still" : "shear";

      for (double off : offsets) {
        double r = cd.rC + off;
        std::string tag = " (" + vtag + ", offset " + num(off) + ")";
        ConjugatePair cj = conjugate_streams(v, r, cd);
        double dd = cj.dPlus - cj.dMinus;

        BranchResult br = continue_branch(
            v, r,
            {cj.dPlus + 0.2 * dd, cj.dPlus + 0.3 * dd, cj.dPlus + 0.45 * dd},
            bo);
        gate.req(br.complete, "branch incomplete" + tag);
        if (!br.complete) continue;

        SolitaryResult sol = solitary_approx(v, r, 1e-3, bo);
        gate.req(sol.achieved, "solitary tail not settled" + tag);
        if (!sol.achieved) continue;

        std::vector<WaveGrid> waves = br.waves;
        waves.push_back(sol.wave);
        BranchFlowForce bf = branch_flow_force(v, r, waves, cd);

        gate.req(bf.strictlyDecreasing, "s not strictly decreasing" + tag);
        worstPlusGap = std::max(worstPlusGap, bf.sPlusGap);
        worstMinusGap = std::max(worstMinusGap, bf.sMinusGap);
        gate.req(bf.sPlusGap <= 1e-3,
                 "upper-boundary gap " + num(bf.sPlusGap) + tag);
        gate.req(bf.sMinusGap <= 1e-2,
                 "lower-boundary gap " + num(bf.sMinusGap) + tag);

        // Branch waves sit strictly below the upper boundary at this scale,
        // so a tight band resolves them; the solitary approximation hugs the
        // lower boundary within its tail tolerance, so its band is wider.
        for (size_t k = 0; k < bf.s.size(); ++k) {
          double band = k + 1 == bf.s.size() ? 2e-4 : 2e-6;
          RegionPosition pos = contains(reg, r, bf.s[k], band);
          gate.req(pos == RegionPosition::Inside ||
                       pos == RegionPosition::LowerBoundary,
                   std::string("wave ") + std::to_string(k) + " classified " +
                       to_string(pos) + tag);
        }
      }
    }
  } catch (const std::exception& e) {
    gate.req(false, std::string("exception: ") + e.what());
  }

  if (gate.ok) {
    std::printf(
        "check_branch_membership: PASS (6 branches in region, gaps %s / %s)\n",
        num(worstPlusGap).c_str(), num(worstMinusGap).c_str());
  } else {
    std::printf("check_branch_membership: FAIL (%s)\n", gate.why.str().c_str());
  }
  return gate.ok ? 0 : 1;
}
