#pragma once

// Adaptive Dormand-Prince 4(5) integration of complex ODE systems along a real
// parameter, with exact stops at requested checkpoints.

#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace isomon {

struct IntegratorOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double initial_step = 1e-2;
  double min_step = 1e-13;
  long max_steps = 2000000;
};

using ComplexRhs = std::function<void(double s, const Eigen::VectorXcd& y, Eigen::VectorXcd& dyds)>;
/// Called on every accepted state; throws to abort the integration.
using StateGuard = std::function<void(double s, const Eigen::VectorXcd& y)>;

struct IntegrationResult {
  std::vector<double> s;
  std::vector<Eigen::VectorXcd> y;
  long accepted = 0;
  long rejected = 0;
};

/// Integrates dy/ds = rhs from s0 through each checkpoint in order (the
/// checkpoints must be monotone in the direction of travel). The result holds
/// the initial state followed by one state per checkpoint. Throws
/// StiffnessError on step underflow or when max_steps is exceeded.
IntegrationResult integrate_complex(const ComplexRhs& rhs, const Eigen::VectorXcd& y0, double s0,
                                    const std::vector<double>& checkpoints, const IntegratorOptions& opts = {},
                                    const StateGuard& guard = nullptr);

/// Evenly spaced checkpoints s0 + k (s1 - s0)/n, k = 1..n.
std::vector<double> uniform_checkpoints(double s0, double s1, int n);

}  // namespace isomon
