#pragma once

// Isomonodromic flows dL/dt = [U, L] + dU/dz along straight paths in the
// space of deformation parameters.

#include <string>
#include <utility>
#include <vector>

#include "isomon/integrator.hpp"
#include "isomon/lax.hpp"
#include "isomon/poisson.hpp"
#include "isomon/rational.hpp"
#include "isomon/spectral.hpp"

namespace isomon {

struct DeformationParameter {
  enum class Kind { Irregular, PoleLocation };
  Kind kind = Kind::PoleLocation;
  int nu = 0;  // pole index or kInf
  int j = 0;   // 1..d_nu for Irregular
  int a = 0;   // 0-based branch

  static DeformationParameter irregular(int nu, int j, int a) { return {Kind::Irregular, nu, j, a}; }
  static DeformationParameter pole_location(int nu) { return {Kind::PoleLocation, nu, 0, 0}; }
  std::string label() const;
};

/// Weighted combination of deformation parameters; moving the direction
/// coordinate by dp moves parameter p_k by w_k dp.
struct Direction {
  std::string name;
  std::vector<std::pair<DeformationParameter, cplx>> terms;

  static Direction single(const DeformationParameter& p);
};

/// Throws InputError for j = 0 (formal-monodromy exponents are not
/// deformation parameters) or out-of-range indices.
void check_parameter(const RationalLaxMatrix& L, const DeformationParameter& p);

/// Sum of w_k U_k (U^nu_{ja} or V^nu).
RationalMatrix deformation_matrix(const RationalLaxMatrix& L, const Direction& dir, int depth = 0);
/// Explicit derivative: d/dz of the deformation matrix.
RationalMatrix explicit_derivative(const RationalLaxMatrix& L, const Direction& dir, int depth = 0);
/// Sum of w_k H_k.
cplx direction_hamiltonian(const RationalLaxMatrix& L, const Direction& dir, int depth = 0);
/// Current value of one deformation parameter.
cplx parameter_value(const RationalLaxMatrix& L, const DeformationParameter& p, int depth = 0);

struct VectorField {
  Eigen::VectorXcd dx;     // PhaseSpace coordinates
  std::vector<cplx> dc;    // pole velocities
  RationalMatrix U;        // deformation matrix
  RationalMatrix F;        // [U, L] + dU/dz
  double non_tangent = 0;  // magnitude of the part outside the shape of L
};

/// Coordinatewise derivative of L along the direction. Throws NonTangentError
/// when the non-tangent part exceeds tangent_tol relative to the data scale.
VectorField vector_field(const RationalLaxMatrix& L, const Direction& dir, int depth = 0, double tangent_tol = 1e-9);

struct DeviationReport {
  std::string name;
  double max_deviation = 0.0;
};

/// Compares dU/dz with an expected rational matrix at sample points.
DeviationReport explicit_derivative_check(const RationalLaxMatrix& L, const Direction& dir,
                                          const RationalMatrix& expected, int depth = 0);

struct FlowOptions {
  double tol = 1e-11;
  int checkpoints = 20;
  int depth = 0;
  bool track_basepoint = false;  // carry C with dC/dp = U(base) C
  cplx basepoint = 0.0;
  bool frozen_residues = false;  // negative control: poles move, coefficients frozen
  double guard = 1e-6;           // minimum pole distance / eigenvalue gap
};

struct FlowSample {
  double s = 0.0;
  cplx param = 0.0;
  RationalLaxMatrix L;
  cplx hamiltonian = 0.0;  // direction Hamiltonian at this sample
  cplx log_tau = 0.0;      // integral of H dp from the start
  Mat C;                   // basepoint gauge (identity unless tracked)
};

struct FlowTrajectory {
  Direction direction;
  cplx p0 = 0.0;
  cplx target = 0.0;
  std::vector<FlowSample> samples;
  long steps = 0;
};

/// Integrates the flow along the straight segment p0 -> target of the direction
/// coordinate. Samples at `checkpoints` evenly spaced points (plus the start).
/// Throws PathAbortError near pole collisions or eigenvalue-gap collapse,
/// StiffnessError on step underflow.
FlowTrajectory integrate_flow(const RationalLaxMatrix& L0, const Direction& dir, cplx p0, cplx target,
                              const FlowOptions& opts = {});

/// Final Lax matrix after moving the direction coordinate by delta.
RationalLaxMatrix flow_by(const RationalLaxMatrix& L0, const Direction& dir, cplx delta, const FlowOptions& opts = {});

/// max over sample z of |dL/dp(z) - ([U,L] + U')(z)| / max(1, |[U,L] + U'|), with
/// dL/dp from a five-point stencil of short integrated flows of half-width 2h.
double zero_curvature_residual(const RationalLaxMatrix& L, const Direction& dir, const std::vector<cplx>& zs,
                               double h = 1e-2, const FlowOptions& opts = {});

/// max |L_{pq} - L_{qp}| over coordinates and pole locations after flowing by
/// h along p then q versus q then p.
double flow_commutation(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                        const FlowOptions& opts = {});

struct PIISample {
  double t;
  double u;
  double v;
  double H;
};

/// du/dt = v + u^2 + t/2, dv/dt = -2uv + a. Samples at n evenly spaced times.
/// Throws PainlevePoleError when |u| exceeds 1e8.
std::vector<PIISample> pII_hamilton_flow(double u0, double v0, double a, double t0, double t1, double tol, int n);

/// r(r-1)(d_inf + sum d_nu + N - 1).
int symplectic_dimension(const RationalLaxMatrix& L);

}  // namespace isomon
