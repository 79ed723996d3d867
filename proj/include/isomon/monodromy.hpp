#pragma once

// Transport of fundamental solutions of dPsi/dz = L Psi along polylines,
// monodromy around the finite poles, and the invariance certificate.

#include <vector>

#include "isomon/flows.hpp"
#include "isomon/lax.hpp"

namespace isomon {

struct TransportOptions {
  double tol = 1e-12;
  /// Minimum distance between any path segment and any pole.
  double clearance = 1e-2;
};

/// Psi(end) for Psi' = L Psi, Psi(first point) = I, along the polyline.
/// Throws ClearanceError when a segment passes closer than the clearance to a pole.
Mat transport(const RationalLaxMatrix& L, const std::vector<cplx>& polyline, const TransportOptions& opts = {});

/// Distance from p to the segment [a, b].
double segment_distance(cplx a, cplx b, cplx p);

/// Center of the poles shifted down by (spread + 1): below every pole, and
/// far enough that the circle through it about the center encloses all poles.
cplx default_basepoint(const RationalLaxMatrix& L);

/// Radial segment from the base to a regular 32-gon of radius
/// 0.4 x (distance to the nearest other pole, capped by the distance to the
/// base) about c_nu, once counterclockwise, then back.
std::vector<cplx> canonical_loop(const RationalLaxMatrix& L, int nu, cplx base, int sides = 32);
/// Circle through the base about the pole center, counterclockwise.
std::vector<cplx> enclosing_loop(const RationalLaxMatrix& L, cplx base, int sides = 64);

struct MonodromySet {
  cplx base = 0.0;
  /// M[nu]: Psi continued around c_nu becomes Psi M[nu].
  std::vector<Mat> M;
  /// Pole indices sorted by increasing Re c, ties by Im c.
  std::vector<int> order;
  /// Loop around all finite poles together.
  Mat enclosing;
  /// |M[k_1] M[k_2] ... M[k_N] - enclosing|, with k_i the poles sorted by
  /// decreasing angle of c - base measured from the direction of the pole
  /// center. With the base below the poles this is usually `order`.
  double product_deviation = 0.0;
  /// |det M[nu] - exp(2 pi i tr L^nu_1)| per pole.
  std::vector<double> det_deviation;
};

MonodromySet monodromy_set(const RationalLaxMatrix& L, cplx base, const TransportOptions& opts = {});

struct InvarianceReport {
  double max_deviation = 0.0;
  std::vector<double> per_sample;  // max over poles at each checkpoint
};

/// Monodromy of the isomonodromic normalization C^-1 M C at each checkpoint,
/// compared with the start. The trajectory must track C at `base`, except in
/// frozen-residue runs where C stays the identity.
InvarianceReport invariance_certificate(const FlowTrajectory& traj, cplx base, const TransportOptions& opts = {});

}  // namespace isomon
