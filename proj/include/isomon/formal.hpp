#pragma once

// Formal fundamental solutions Y(zeta) exp(T(zeta)) at each singular point and
// the deformation matrices U^nu_{ja}, V^nu built from them.

#include <vector>

#include "isomon/lax.hpp"
#include "isomon/rational.hpp"
#include "isomon/series.hpp"

namespace isomon {

struct FormalSolution {
  ChartId chart;
  int d = 0;
  int depth = 0;  // number of stored terms of Y, zeta^0 .. zeta^(depth-1)
  Mat G;
  /// Y(zeta) = G (I + sum_{j>=1} Y_coeffs[j-1] zeta^j).
  std::vector<Mat> Y_coeffs;
  /// T_coeffs[j] = diag(t_{j1}, ..., t_{jr}) of T(zeta) = sum_j T_j/(j zeta^j) + T_0 ln zeta.
  std::vector<Mat> T_coeffs;
  /// Diagonal gauge data Delta_n (zeta^(n-d-1) coefficient of T' + D'/D).
  std::vector<Mat> Delta;

  MatrixSeries Y() const;
  /// dT/dzeta as a principal part.
  MatrixSeries T_prime() const;
};

/// Default number of Y terms: d + 4.
int default_formal_depth(int d);

FormalSolution formal_solution(const RationalLaxMatrix& L, ChartId chart, int depth = 0);

/// R = Y^-1 A Y - Y^-1 Y' - T' in the chart variable (A includes the
/// infinity Jacobian). Every stored coefficient should vanish.
MatrixSeries gauge_residual(const RationalLaxMatrix& L, const FormalSolution& fs);

/// U^nu_{ja}: principal part at c_nu of Y E_a zeta^-j / j Y^-1 for finite
/// charts; at infinity the part polynomial in z (constants included). `a` is
/// 0-based.
RationalMatrix deformation_matrix_U(const RationalLaxMatrix& L, ChartId chart, int j, int a, int depth = 0);
RationalMatrix deformation_matrix_U(const RationalLaxMatrix& L, const FormalSolution& fs, int j, int a);

/// V^nu = -(principal part of L at c_nu).
RationalMatrix deformation_matrix_V(const RationalLaxMatrix& L, int nu);
/// The same matrix through -(Y T' Y^-1)_sing.
RationalMatrix deformation_matrix_V_from_Y(const RationalLaxMatrix& L, const FormalSolution& fs);

/// -res tr(Y^-1 dY/dz dT/dt^nu_{ja}) dz.
cplx hamiltonian_t_second_route(const FormalSolution& fs, int j, int a);
/// -res tr(Y^-1 dY/dz dT/dc_nu) dz = res tr(Y^-1 Y' T').
cplx hamiltonian_c_second_route(const FormalSolution& fs);

}  // namespace isomon
