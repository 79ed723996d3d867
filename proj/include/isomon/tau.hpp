#pragma once

// The isomonodromic tau 1-form sum H dp: accumulation along a trajectory and
// its closedness on solutions.

#include <vector>

#include "isomon/flows.hpp"

namespace isomon {

struct TauSample {
  cplx param = 0.0;
  cplx hamiltonian = 0.0;
  cplx log_tau = 0.0;
};

/// Integrates H dp over the trajectory samples (Simpson pairs, with a
/// quadratic rule on odd intervals; trapezoid when only two samples exist).
/// log tau at the first sample is 0; the branch is continued along the path.
std::vector<TauSample> tau_accumulate(const FlowTrajectory& traj);

/// d/dp of the Hamiltonian of q along the flow of p, fourth-order central
/// differences over integrated flows of length h and 2h.
cplx flow_derivative(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                     const FlowOptions& opts = {});

/// |dH_q/dp - dH_p/dq|.
double closedness_certificate(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h = 1e-3,
                              const FlowOptions& opts = {});

}  // namespace isomon
