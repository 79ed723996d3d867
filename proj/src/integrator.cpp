#include "isomon/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include "isomon/errors.hpp"

namespace isomon {

namespace ode = boost::numeric::odeint;

namespace {

using RealState = Eigen::VectorXd;

// Complex states travel through odeint as interleaved (re, im) pairs.
RealState pack(const Eigen::VectorXcd& z) {
  RealState x(2 * z.size());
  for (int i = 0; i < z.size(); ++i) {
    x(2 * i) = z(i).real();
    x(2 * i + 1) = z(i).imag();
  }
  return x;
}

Eigen::VectorXcd unpack(const RealState& x) {
  Eigen::VectorXcd z(x.size() / 2);
  for (int i = 0; i < z.size(); ++i) z(i) = {x(2 * i), x(2 * i + 1)};
  return z;
}

}  // namespace

IntegrationResult integrate_complex(const ComplexRhs& rhs, const Eigen::VectorXcd& y0, double s0,
                                    const std::vector<double>& checkpoints, const IntegratorOptions& opts,
                                    const StateGuard& guard) {
  using Stepper = ode::runge_kutta_dopri5<RealState, double, RealState, double, ode::vector_space_algebra>;
  auto stepper = ode::make_controlled(opts.abs_tol, opts.rel_tol, Stepper());

  const auto system = [&rhs](const RealState& x, RealState& dxdt, double s) {
    Eigen::VectorXcd dz(x.size() / 2);
    rhs(s, unpack(x), dz);
    dxdt = pack(dz);
  };

  IntegrationResult res;
  RealState x = pack(y0);
  double s = s0;
  res.s.push_back(s);
  res.y.push_back(y0);
  if (guard) guard(s, y0);

  double dt = opts.initial_step;
  for (double target : checkpoints) {
    const double dir = target >= s ? 1.0 : -1.0;
    dt = dir * std::abs(dt);
    while (dir * (target - s) > 1e-15 * std::max(1.0, std::abs(target))) {
      if (dir * (s + dt - target) > 0.0) dt = target - s;
      const double attempted = dt;
      const auto outcome = stepper.try_step(system, x, s, dt);
      if (outcome == ode::success) {
        ++res.accepted;
        if (guard) guard(s, unpack(x));
        if (!std::isfinite(x.norm())) throw StiffnessError("integration produced a non-finite state");
      } else {
        ++res.rejected;
        if (std::abs(dt) < opts.min_step) {
          throw StiffnessError("step size underflow at s = " + std::to_string(s) + " (last attempt " +
                               std::to_string(attempted) + ")");
        }
      }
      if (res.accepted + res.rejected > opts.max_steps) {
        throw StiffnessError("step budget exhausted at s = " + std::to_string(s));
      }
    }
    s = target;
    res.s.push_back(s);
    res.y.push_back(unpack(x));
  }
  return res;
}

std::vector<double> uniform_checkpoints(double s0, double s1, int n) {
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(s0 + (s1 - s0) * k / n);
  return out;
}

}  // namespace isomon
