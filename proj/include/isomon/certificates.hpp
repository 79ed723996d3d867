#pragma once

// Numerical certificates: each runs one property on a concrete system and
// reports the worst deviation against its tolerance. Suites group them for
// the CLI `check` verb; the acceptance binary composes them per criterion.

#include <random>
#include <string>
#include <vector>

#include "isomon/flows.hpp"
#include "isomon/lax.hpp"
#include "isomon/monodromy.hpp"
#include "isomon/poisson.hpp"

namespace isomon {

struct Certificate {
  std::string name;
  double value = 0.0;  // worst deviation found
  double tol = 0.0;
  bool pass = true;
  bool reported_only = false;  // informational, never fails a suite
  long samples = 0;
  std::string detail;
};

Certificate make_certificate(std::string name, double value, double tol, long samples = 1, std::string detail = {});
/// value >= tol passes (negative controls).
Certificate make_lower_bound(std::string name, double value, double tol, long samples = 1, std::string detail = {});
Certificate make_report(std::string name, double value, std::string detail = {});

struct SuiteReport {
  std::string suite;
  unsigned long seed = 0;
  std::vector<Certificate> certificates;
  bool pass() const;
};

using Rng = std::mt19937_64;

struct LaxShape {
  int r = 2;
  std::vector<int> pole_ranks;
  int d_inf = 0;
  std::string label() const;
};

/// r in {2, 3}, N in {0, 1, 2}, d in {0, 1, 2}, with at least one pole or d_inf >= 1.
LaxShape random_shape(Rng& rng);
/// Complex Gaussian coefficients (scale 0.5), poles at least 0.8 apart,
/// leading gaps at least 0.3, Fuchsian exponent gaps away from integers.
RationalLaxMatrix random_lax(const LaxShape& shape, Rng& rng);

// ---- Poisson engine

/// Coefficient-level brackets summed against the basis functions versus the
/// generating relation at random (a, b, z), (c, d, w).
Certificate bracket_tower_certificate(const RationalLaxMatrix& L, int samples, Rng& rng, double tol = 1e-10);
/// Antisymmetry, Leibniz (random quadratic observables) and Jacobi (random linear observables).
std::vector<Certificate> poisson_axiom_certificates(const RationalLaxMatrix& L, int samples, Rng& rng);

/// Gradients of every entry of the invariant table at one point.
struct InvariantGradients {
  std::vector<std::string> names;
  std::vector<bool> casimir;      // t^nu_{ja}, except the infinity exponents t^inf_{0a}
  std::vector<bool> hamiltonian;  // H_t and H_c entries
  Mat J;                          // row k = gradient of entry k
  Mat Pi;                         // Poisson matrix at L
};
InvariantGradients invariant_gradients(const RationalLaxMatrix& L, int depth = 0);

/// {t, f} for every Casimir and `nf` random linear f; {c_nu, f} vanishes identically.
Certificate casimir_certificate(const InvariantGradients& g, int nf, Rng& rng, double tol = 1e-8);
/// {H, K} over all Hamiltonian pairs.
Certificate commutation_certificate(const InvariantGradients& g, double tol = 1e-8);
/// {L, H} = Pi grad H against the coordinates of [U, L] (V for H_c);
/// V against minus the principal part (exact) and against the Y formula.
std::vector<Certificate> hamiltonian_field_certificates(const RationalLaxMatrix& L, const InvariantGradients& g,
                                                        int depth = 0);

// ---- Spectral invariants and formal solutions

/// Root residual, branch sum = tr L, both routes to H_c.
std::vector<Certificate> spectral_certificates(const RationalLaxMatrix& L, int depth = 0);
/// Gauge residual, T against the Casimirs, T' against the eigenvalue
/// principal parts, and the second route to the Hamiltonians.
std::vector<Certificate> formal_certificates(const RationalLaxMatrix& L, int depth = 0);

// ---- Flows, monodromy, tau

/// Natural directions of a system: every pole location and every t^nu_{ja}.
std::vector<Direction> all_directions(const RationalLaxMatrix& L);

/// Zero-curvature residual at sample points.
Certificate zero_curvature_certificate(const RationalLaxMatrix& L, const Direction& dir, const FlowOptions& opts = {},
                                       double tol = 1e-6);
/// Casimirs other than the flowed one stay constant along a short flow.
Certificate casimir_conservation_certificate(const RationalLaxMatrix& L, const Direction& dir, double delta,
                                             const FlowOptions& opts = {});
/// Mixed flows commute: |L_pq - L_qp| after steps h.
Certificate flow_commutation_certificate(const RationalLaxMatrix& L, const Direction& p, const Direction& q,
                                         double h = 0.05, const FlowOptions& opts = {}, double tol = 1e-5);

struct MonodromyFlowResult {
  Certificate invariance;
  Certificate negative_control;
  std::vector<Certificate> self_checks;  // det identity and product diagnostic
};
/// Flows the pole c_nu by delta, tracking the basepoint gauge, and compares
/// monodromy at checkpoints; the control repeats the move with frozen residues.
MonodromyFlowResult monodromy_flow_certificates(const RationalLaxMatrix& L, int nu, cplx delta, int checkpoints = 6,
                                                const TransportOptions& topts = {});

/// Simpson accumulation of H dp against the value carried by the integrator.
Certificate tau_consistency_certificate(const RationalLaxMatrix& L, const Direction& dir, cplx delta,
                                        int checkpoints = 40, double tol = 1e-7);
Certificate closedness_certificate_for(const RationalLaxMatrix& L, const Direction& p, const Direction& q,
                                       double h = 1e-3, double tol = 1e-5);

// ---- Suites for the CLI

/// Known suites: poisson, spectral, formal, flows, monodromy, tau, all.
SuiteReport run_suite(const std::string& suite, const RationalLaxMatrix& L, unsigned long seed, int depth = 0,
                      double tol = 1e-11);
std::vector<std::string> suite_names();

}  // namespace isomon
