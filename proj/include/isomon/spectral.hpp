#pragma once

// Local spectral curve, eigenvalue branches as Laurent series at each singular
// point, and the residue formulas for Casimirs and Hamiltonians.

#include <map>
#include <tuple>
#include <vector>

#include "isomon/lax.hpp"
#include "isomon/series.hpp"

namespace isomon {

/// Pole index used for the point at infinity in invariant keys.
inline constexpr int kInf = -1;

/// det(L - lambda I) in a chart: coeffs[k] multiplies lambda^k, k = 0..r.
struct CharPoly {
  ChartId chart;
  std::vector<LaurentSeries> coeffs;
};

CharPoly char_poly_local(const RationalLaxMatrix& L, ChartId chart, int depth);

struct EigenExpansion {
  ChartId chart;
  int label = 0;  // 0-based branch index
  LaurentSeries series;
};

/// Default number of terms for eigenvalue series: 2d + 4.
int default_spectral_depth(int d);

/// Eigenvalue branches lambda_a(zeta) of L in a chart. `depth` counts the
/// terms of zeta^s lambda, where s = d+1 (finite) or d-1 (infinity), so the
/// returned series start at zeta^-s. depth <= 0 selects the default.
std::vector<EigenExpansion> eigen_expansions(const RationalLaxMatrix& L, ChartId chart, int depth = 0);

/// Max over branches of |det(L - lambda_a I)| coefficients, relative to the
/// largest characteristic-polynomial coefficient.
double root_residual(const RationalLaxMatrix& L, ChartId chart, const std::vector<EigenExpansion>& branches);

/// Keys are (nu, j, a) with nu = pole index or kInf, a 0-based.
using InvariantKey = std::tuple<int, int, int>;

struct InvariantTable {
  std::map<InvariantKey, cplx> t;    // Casimirs t^nu_{ja}, j = 0..d_nu
  std::map<InvariantKey, cplx> H_t;  // Hamiltonians H_{t^nu_{ja}}, j = 1..d_nu
  std::vector<cplx> c;               // pole locations
  std::vector<cplx> H_c;             // H_{c_nu}
};

InvariantTable extract_casimirs(const RationalLaxMatrix& L, int depth = 0);
InvariantTable extract_hamiltonians(const RationalLaxMatrix& L, int depth = 0);
/// Casimirs and Hamiltonians from one set of expansions.
InvariantTable extract_invariants(const RationalLaxMatrix& L, int depth = 0);

/// Casimirs t^nu_{ja} read from one branch (j = 0..d).
std::vector<cplx> casimirs_from_branch(ChartId chart, int d, const LaurentSeries& lambda);
/// Hamiltonians H_{t^nu_{ja}} read from one branch (index j-1 for j = 1..d).
std::vector<cplx> hamiltonians_from_branch(ChartId chart, int d, const LaurentSeries& lambda);

/// H_{c_nu} = (1/2) res_{c_nu} tr L^2 dz.
cplx hamiltonian_c(const RationalLaxMatrix& L, int nu);
/// Same quantity through (1/2) sum_a res lambda_a^2.
cplx hamiltonian_c_from_branches(const std::vector<EigenExpansion>& branches);

/// Coefficient of z^k in the large-z expansion of tr L(z)^2.
cplx trace_square_coeff_at_infinity(const RationalLaxMatrix& L, int k);

}  // namespace isomon
