#pragma once

// Truncated Laurent series over complex doubles, scalar and matrix valued.
//
// A series stores the coefficients of z^valuation ... z^(order-1). Everything
// at or beyond `order` is unknown, so arithmetic never pads: sums intersect
// windows and products keep only the exponents that both factors determine.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace isomon {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

/// Coefficients at or below this magnitude count as zero when normalizing
/// or inverting.
inline constexpr double kZeroThreshold = 1e-12;

class LaurentSeries {
 public:
  LaurentSeries() = default;
  /// Zero series on the window [valuation, order).
  LaurentSeries(int valuation, int order);
  LaurentSeries(int valuation, std::vector<cplx> coeffs);

  static LaurentSeries constant(cplx c, int order);
  static LaurentSeries monomial(cplx c, int exponent, int order);

  int valuation() const { return valuation_; }
  int order() const { return valuation_ + static_cast<int>(coeffs_.size()); }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  /// Coefficient of z^k; throws OutOfWindowError outside [valuation, order).
  cplx coeff(int k) const;
  void set_coeff(int k, cplx value);
  bool in_window(int k) const { return k >= valuation_ && k < order(); }

  /// True when the leading stored coefficient is above kZeroThreshold.
  bool is_normalized() const;
  /// Strips leading coefficients at or below kZeroThreshold. A series that is
  /// zero on its whole window keeps a single zero coefficient at order-1.
  LaurentSeries normalized() const;
  LaurentSeries truncated(int new_order) const;
  /// Multiplies by z^k.
  LaurentSeries shifted(int k) const;
  /// Window [v, o) restricted to exponents < 0 (empty windows give a zero at -1).
  LaurentSeries principal_part() const;

  double max_abs() const;
  cplx evaluate(cplx z) const;

  LaurentSeries& operator+=(const LaurentSeries& rhs);
  LaurentSeries& operator-=(const LaurentSeries& rhs);
  LaurentSeries& operator*=(cplx s);

 private:
  int valuation_ = 0;
  std::vector<cplx> coeffs_{cplx{0.0}};
};

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b);
LaurentSeries operator-(LaurentSeries a);
LaurentSeries operator*(LaurentSeries a, cplx s);
LaurentSeries operator*(cplx s, LaurentSeries a);
/// Cauchy product; window order = min(a.val + b.order, b.val + a.order).
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

/// Multiplicative inverse. The leading stored coefficient must exceed
/// kZeroThreshold in magnitude, otherwise SingularLeadingError.
LaurentSeries inverse(const LaurentSeries& a);
LaurentSeries derivative(const LaurentSeries& a);

/// r x r matrix of Laurent series sharing one window, stored as a list of
/// coefficient matrices.
class MatrixSeries {
 public:
  MatrixSeries() = default;
  MatrixSeries(int r, int valuation, int order);
  MatrixSeries(int valuation, std::vector<Mat> coeffs);

  static MatrixSeries constant(const Mat& m, int order);
  static MatrixSeries identity(int r, int order);

  int dim() const { return r_; }
  int valuation() const { return valuation_; }
  int order() const { return valuation_ + static_cast<int>(coeffs_.size()); }
  const std::vector<Mat>& coeffs() const { return coeffs_; }

  const Mat& coeff(int k) const;
  Mat& coeff_ref(int k);
  bool in_window(int k) const { return k >= valuation_ && k < order(); }

  LaurentSeries entry(int a, int b) const;
  LaurentSeries trace() const;
  MatrixSeries truncated(int new_order) const;
  MatrixSeries shifted(int k) const;
  /// Same series re-expressed on a window starting at new_valuation <=
  /// valuation (prepends explicit zeros, which are exact).
  MatrixSeries with_valuation(int new_valuation) const;
  /// Negative powers only.
  MatrixSeries principal_part() const;
  MatrixSeries diagonal() const;
  MatrixSeries transpose() const;

  double max_abs() const;
  Mat evaluate(cplx z) const;

  MatrixSeries& operator+=(const MatrixSeries& rhs);
  MatrixSeries& operator-=(const MatrixSeries& rhs);
  MatrixSeries& operator*=(cplx s);

 private:
  int r_ = 0;
  int valuation_ = 0;
  std::vector<Mat> coeffs_;
};

MatrixSeries operator+(MatrixSeries a, const MatrixSeries& b);
MatrixSeries operator-(MatrixSeries a, const MatrixSeries& b);
MatrixSeries operator*(MatrixSeries a, cplx s);
MatrixSeries operator*(cplx s, MatrixSeries a);
MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b);
MatrixSeries operator*(const Mat& m, const MatrixSeries& a);
MatrixSeries operator*(const MatrixSeries& a, const Mat& m);
MatrixSeries operator*(const LaurentSeries& s, const MatrixSeries& a);
MatrixSeries commutator(const MatrixSeries& a, const MatrixSeries& b);
/// Requires an invertible leading coefficient (smallest singular value above
/// kZeroThreshold times its norm).
MatrixSeries inverse(const MatrixSeries& a);
MatrixSeries derivative(const MatrixSeries& a);

}  // namespace isomon
