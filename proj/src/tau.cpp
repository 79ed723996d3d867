#include "isomon/tau.hpp"

namespace isomon {

std::vector<TauSample> tau_accumulate(const FlowTrajectory& traj) {
  std::vector<TauSample> out;
  const auto& s = traj.samples;
  for (const auto& smp : s) out.push_back({smp.param, smp.hamiltonian, 0.0});
  if (s.size() < 2) return out;
  const cplx h = s[1].param - s[0].param;
  const auto f = [&](std::size_t k) { return out[k].hamiltonian; };
  if (s.size() == 2) {
    out[1].log_tau = 0.5 * h * (f(0) + f(1));
    return out;
  }
  for (std::size_t k = 1; k < s.size(); ++k) {
    if (k % 2 == 0) {
      out[k].log_tau = out[k - 2].log_tau + h / 3.0 * (f(k - 2) + 4.0 * f(k - 1) + f(k));
    } else if (k == 1) {
      out[1].log_tau = h / 12.0 * (5.0 * f(0) + 8.0 * f(1) - f(2));
    } else {
      out[k].log_tau = out[k - 1].log_tau + h / 12.0 * (-f(k - 2) + 8.0 * f(k - 1) + 5.0 * f(k));
    }
  }
  return out;
}

cplx flow_derivative(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                     const FlowOptions& opts) {
  FlowOptions o = opts;
  o.checkpoints = 2;
  const auto fwd = integrate_flow(L, p, 0.0, 2.0 * h, o);
  const auto bwd = integrate_flow(L, p, 0.0, -2.0 * h, o);
  const auto H = [&](const RationalLaxMatrix& M) { return direction_hamiltonian(M, q, opts.depth); };
  return (-H(fwd.samples[2].L) + 8.0 * H(fwd.samples[1].L) - 8.0 * H(bwd.samples[1].L) + H(bwd.samples[2].L)) /
         (12.0 * h);
}

double closedness_certificate(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                              const FlowOptions& opts) {
  return std::abs(flow_derivative(L, p, q, h, opts) - flow_derivative(L, q, p, h, opts));
}

}  // namespace isomon
