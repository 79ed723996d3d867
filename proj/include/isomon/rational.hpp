#pragma once

// Rational r x r matrix functions with poles at finitely many points: a
// polynomial part plus principal parts. Products and commutators are formed
// exactly by local expansion at each pole and at infinity.

#include <vector>

#include "isomon/series.hpp"

namespace isomon {

/// Points closer than this are treated as the same pole.
inline constexpr double kPointMergeTol = 1e-12;

struct PrincipalPart {
  cplx at;
  /// coeffs[k-1] multiplies (z - at)^(-k).
  std::vector<Mat> coeffs;
};

class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int r) : r_(r) {}

  int dim() const { return r_; }
  /// poly()[m] multiplies z^m.
  const std::vector<Mat>& poly() const { return poly_; }
  const std::vector<PrincipalPart>& parts() const { return parts_; }

  void set_poly(std::vector<Mat> poly) { poly_ = std::move(poly); }
  /// Adds coefficients to the principal part at `at`, merging with an existing one.
  void add_part(cplx at, const std::vector<Mat>& coeffs);
  void add_poly(int m, const Mat& c);

  /// Highest pole order at `p` (0 when regular there).
  int order_at(cplx p) const;
  /// Principal part at p, or nullptr.
  const PrincipalPart* part_at(cplx p) const;
  int degree() const { return static_cast<int>(poly_.size()) - 1; }

  Mat evaluate(cplx z) const;
  /// Laurent expansion in zeta = z - p on the window [-order_at(p), order).
  MatrixSeries expand_at(cplx p, int order) const;
  /// Expansion of the function itself in zeta = 1/z on [min(-degree, 0), order).
  MatrixSeries expand_at_infinity(int order) const;

  RationalMatrix derivative() const;
  /// Y_+ : polynomial part, constants included.
  RationalMatrix plus_part() const;
  /// Y_- : strictly proper part.
  RationalMatrix minus_part() const;
  /// Largest coefficient magnitude over all stored data.
  double max_abs() const;
  /// Drops trailing polynomial coefficients and principal-part tails with
  /// magnitude below tol.
  RationalMatrix trimmed(double tol) const;

  RationalMatrix& operator+=(const RationalMatrix& rhs);
  RationalMatrix& operator-=(const RationalMatrix& rhs);
  RationalMatrix& operator*=(cplx s);

 private:
  int r_ = 0;
  std::vector<Mat> poly_;
  std::vector<PrincipalPart> parts_;
};

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b);
RationalMatrix operator*(cplx s, RationalMatrix a);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Element of the loop algebra, split as Y = Y_+ + Y_-.
using LoopElement = RationalMatrix;

/// R_s(Y_+ + Y_-) = s Y_+ + (s - 1) Y_-.
LoopElement apply_R(cplx s, const LoopElement& y);

/// Trace-residue pairing -res_{z=inf} tr(X Y) dz, i.e. the sum of all finite residues.
cplx trace_residue_pairing(const RationalMatrix& x, const RationalMatrix& y);

}  // namespace isomon
