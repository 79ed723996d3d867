#pragma once

// Named Lax systems: Schlesinger, Fuchsian plus a double pole at infinity,
// Painleve II and the second member of its hierarchy. Each comes with its
// printed deformation matrices and Hamiltonians in model coordinates.

#include <map>
#include <string>
#include <vector>

#include "isomon/flows.hpp"
#include "isomon/lax.hpp"
#include "isomon/rational.hpp"

namespace isomon {

// ---- Schlesinger: L = sum_nu L^nu / (z - c_nu)

RationalLaxMatrix schlesinger(const std::vector<cplx>& c, const std::vector<Mat>& residues);
/// sum_{mu != nu} tr(L^nu L^mu) / (c_nu - c_mu).
cplx schlesinger_hamiltonian(const RationalLaxMatrix& L, int nu);
/// dL^mu/dc_nu = [L^mu, L^nu] / (c_mu - c_nu), mu != nu.
Mat schlesinger_rhs(const RationalLaxMatrix& L, int mu, int nu);
Direction pole_direction(int nu);

// ---- Fuchsian plus double pole at infinity: L = B + sum_nu L^nu / (z - c_nu)

RationalLaxMatrix fuchsian_with_infinity(const Eigen::VectorXcd& b, const std::vector<cplx>& c,
                                         const std::vector<Mat>& residues);
/// z E_a + sum_nu sum_{b != a} (E_a L^nu E_b + E_b L^nu E_a) / (t_a - t_b).
RationalMatrix printed_dK(const RationalLaxMatrix& L, int a);
/// Moves the a-th diagonal entry of B.
Direction infinity_direction(int a);

// ---- Painleve II: N = 0, r = 2, d_inf = 3

struct PIICoordinates {
  cplx x1, x2, y1, y2, t;
};
struct PIIReduced {
  cplx u, v, a, w;
};

RationalLaxMatrix painleve2(const PIICoordinates& p);
/// Reads (x1, x2, y1, y2, t) back from the coefficients.
PIICoordinates painleve2_coordinates(const RationalLaxMatrix& L);
/// u = x1/x2, v = x2 y1, a = x1 y1 + x2 y2, w = ln x2. ChartError when x2 = 0.
PIIReduced painleve2_reduced(const PIICoordinates& p);
/// (z/2) sigma_3 + (1/2) [[0, -2 y1], [x2, 0]].
RationalMatrix painleve2_printed_U(const PIICoordinates& p);
/// (1/2)(x2^2 y1^2 + t x2 y1 - 2 x1 y2).
cplx painleve2_printed_H(const PIICoordinates& p);
/// (1/2) v^2 + (1/2)(t + 2u^2) v - a u.
cplx painleve2_reduced_H(cplx u, cplx v, cplx a, cplx t);
/// The time t = 2 t^inf_{1,1}: moves t^inf_{1,1} by dt/2 and t^inf_{1,2} by -dt/2.
Direction painleve2_t_direction();

// ---- Second member of the Painleve II hierarchy: N = 0, r = 2, d_inf = 4

struct PII2Coordinates {
  cplx x1, x2, x3, y1, y2, y3, t1, t2;
};
struct PII2Reduced {
  cplx u1, u2, v1, v2, a, w;
};

RationalLaxMatrix painleve2_2(const PII2Coordinates& p);
PII2Coordinates painleve2_2_coordinates(const RationalLaxMatrix& L);
/// u_i = x_i/x3, v_i = y_i x3, a = sum x_i y_i, w = ln x3. ChartError when x3 = 0.
PII2Reduced painleve2_2_reduced(const PII2Coordinates& p);
/// Inverse of the reduced map.
PII2Coordinates painleve2_2_from_reduced(const PII2Reduced& q, cplx t1, cplx t2);
RationalMatrix painleve2_2_printed_U1(const PII2Coordinates& p);
RationalMatrix painleve2_2_printed_U2(const PII2Coordinates& p);
/// The printed reduced Hamiltonians.
cplx painleve2_2_printed_H1(const PII2Reduced& q, cplx t1, cplx t2);
cplx painleve2_2_printed_H2(const PII2Reduced& q, cplx t1, cplx t2);
Direction painleve2_2_t1_direction();
Direction painleve2_2_t2_direction();

// ---- Registry

struct Preset {
  std::string name;
  std::map<std::string, cplx> coordinates;
  RationalLaxMatrix L;
  /// Deformation directions natural to the system, by name.
  std::map<std::string, Direction> directions;
};

/// Known names: schlesinger, fuchsian_inf, pII, pII2. Missing coordinates
/// take documented defaults; unknown names or coordinates throw InputError.
Preset make_preset(const std::string& name, const std::map<std::string, cplx>& coordinates = {});
std::vector<std::string> preset_names();

}  // namespace isomon
