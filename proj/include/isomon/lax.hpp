#pragma once

// Rational Lax matrices
//   L(z) = -sum_{j=0}^{d_inf-1} L^inf_{j+2} z^j + sum_nu sum_{k=1}^{d_nu+1} L^nu_k (z - c_nu)^(-k)
// and their local expansions in the chart variables zeta = z - c_nu and zeta = 1/z.

#include <string>
#include <vector>

#include "isomon/rational.hpp"
#include "isomon/series.hpp"

namespace isomon {

struct PoleRecord {
  cplx c;
  int d = 0;
  /// coeffs[k-1] = L_k, multiplying (z - c)^(-k), k = 1 .. d+1.
  std::vector<Mat> coeffs;
};

struct InfinityRecord {
  int d = 0;
  /// coeffs[j] = L^inf_{j+2}, multiplying -z^j, j = 0 .. d-1.
  std::vector<Mat> coeffs;
};

struct ChartId {
  bool infinity = false;
  int index = 0;  // pole index for finite charts

  static ChartId finite(int nu) { return {false, nu}; }
  static ChartId at_infinity() { return {true, -1}; }
  bool operator==(const ChartId& o) const { return infinity == o.infinity && (infinity || index == o.index); }
  std::string label() const;
};

class RationalLaxMatrix {
 public:
  RationalLaxMatrix() = default;
  RationalLaxMatrix(int r, std::vector<PoleRecord> poles, InfinityRecord infinity);

  int dim() const { return r_; }
  const std::vector<PoleRecord>& poles() const { return poles_; }
  const InfinityRecord& infinity() const { return infinity_; }
  std::vector<PoleRecord>& mutable_poles() { return poles_; }
  InfinityRecord& mutable_infinity() { return infinity_; }

  /// Poincare rank in a chart.
  int rank(ChartId chart) const;
  /// Finite charts in pole order, then infinity when d_inf >= 1.
  std::vector<ChartId> charts() const;
  /// Leading coefficient of the chart connection matrix A(zeta): L_{d+1} or L^inf_{d_inf+1}.
  const Mat& leading(ChartId chart) const;

  /// Throws PoleEvaluationError when z is within 1e-12 of a pole.
  Mat eval_at(cplx z) const;
  RationalMatrix as_rational() const;

  /// L itself expanded in the chart variable; `depth` terms starting at the
  /// valuation -(d_nu+1) (finite) or -(d_inf-1) (infinity).
  MatrixSeries local_expansion(ChartId chart, int depth) const;
  /// Chart connection matrix: L(c + zeta) at finite poles, -zeta^-2 L(1/zeta)
  /// at infinity. Valuation -(d+1), `depth` terms.
  MatrixSeries chart_connection(ChartId chart, int depth) const;

 private:
  int r_ = 0;
  std::vector<PoleRecord> poles_;
  InfinityRecord infinity_;
};

struct ValidationCheck {
  std::string name;
  bool pass = true;
  double value = 0.0;  // offending gap or deviation
  std::string detail;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationCheck> checks;
};

/// Relative eigenvalue-gap tolerance for regular leading coefficients.
inline constexpr double kGapTol = 1e-8;

ValidationReport validate(const RationalLaxMatrix& L);
/// Throws InputError carrying the failing checks.
void require_valid(const RationalLaxMatrix& L);

struct LeadingEigensystem {
  Eigen::VectorXcd values;
  Mat vectors;  // columns matched to values
};

/// Eigen-decomposition of a leading coefficient. Diagonal input (or any input
/// when keep_diagonal_order is set) keeps its diagonal order with identity
/// eigenvectors; otherwise eigenvalues are sorted lexicographically (real
/// part, then imaginary part).
LeadingEigensystem leading_eigensystem(const Mat& m, bool keep_diagonal_order);

}  // namespace isomon
