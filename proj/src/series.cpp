#include "isomon/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isomon/errors.hpp"

namespace isomon {

namespace {

void require_window(int valuation, int order, const char* op) {
  if (order <= valuation) {
    throw WindowError(std::string(op) + ": truncation window underflow (order " +
                      std::to_string(order) + " <= valuation " + std::to_string(valuation) +
                      "); increase the expansion depth");
  }
}

}  // namespace

LaurentSeries::LaurentSeries(int valuation, int order) : valuation_(valuation) {
  require_window(valuation, order, "LaurentSeries");
  coeffs_.assign(static_cast<std::size_t>(order - valuation), cplx{0.0});
}

LaurentSeries::LaurentSeries(int valuation, std::vector<cplx> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw WindowError("LaurentSeries: empty coefficient window");
}

LaurentSeries LaurentSeries::constant(cplx c, int order) { return monomial(c, 0, order); }

LaurentSeries LaurentSeries::monomial(cplx c, int exponent, int order) {
  LaurentSeries s(exponent, order);
  s.coeffs_[0] = c;
  return s;
}

cplx LaurentSeries::coeff(int k) const {
  if (!in_window(k)) {
    throw OutOfWindowError("coefficient z^" + std::to_string(k) + " outside window [" +
                           std::to_string(valuation_) + ", " + std::to_string(order()) + ")");
  }
  return coeffs_[static_cast<std::size_t>(k - valuation_)];
}

void LaurentSeries::set_coeff(int k, cplx value) {
  if (!in_window(k)) {
    throw OutOfWindowError("cannot set z^" + std::to_string(k) + " outside window [" +
                           std::to_string(valuation_) + ", " + std::to_string(order()) + ")");
  }
  coeffs_[static_cast<std::size_t>(k - valuation_)] = value;
}

bool LaurentSeries::is_normalized() const { return std::abs(coeffs_.front()) > kZeroThreshold; }

LaurentSeries LaurentSeries::normalized() const {
  std::size_t lead = 0;
  while (lead + 1 < coeffs_.size() && std::abs(coeffs_[lead]) <= kZeroThreshold) ++lead;
  return LaurentSeries(valuation_ + static_cast<int>(lead),
                       std::vector<cplx>(coeffs_.begin() + static_cast<std::ptrdiff_t>(lead),
                                         coeffs_.end()));
}

LaurentSeries LaurentSeries::truncated(int new_order) const {
  require_window(valuation_, new_order, "truncated");
  const int keep = std::min(new_order, order()) - valuation_;
  return LaurentSeries(valuation_, std::vector<cplx>(coeffs_.begin(), coeffs_.begin() + keep));
}

LaurentSeries LaurentSeries::shifted(int k) const { return LaurentSeries(valuation_ + k, coeffs_); }

LaurentSeries LaurentSeries::principal_part() const {
  if (valuation_ >= 0) return LaurentSeries(-1, 0);
  LaurentSeries out(valuation_, std::min(order(), 0));
  for (int k = valuation_; k < out.order(); ++k) out.set_coeff(k, coeff(k));
  return out;
}

double LaurentSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

cplx LaurentSeries::evaluate(cplx z) const {
  cplx acc{0.0};
  for (int k = order() - 1; k >= valuation_; --k) acc = acc * z + coeff(k);
  // Horner above produced sum c_k z^(k - valuation); restore the offset.
  return acc * std::pow(z, valuation_);
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& rhs) {
  const int v = std::min(valuation_, rhs.valuation_);
  const int o = std::min(order(), rhs.order());
  LaurentSeries out(v, o);
  for (int k = v; k < o; ++k) {
    cplx c{0.0};
    if (in_window(k)) c += coeff(k);
    if (rhs.in_window(k)) c += rhs.coeff(k);
    out.coeffs_[static_cast<std::size_t>(k - v)] = c;
  }
  *this = std::move(out);
  return *this;
}

LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& rhs) { return *this += -rhs; }

LaurentSeries& LaurentSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
LaurentSeries operator-(LaurentSeries a) { return a *= cplx{-1.0}; }
LaurentSeries operator*(LaurentSeries a, cplx s) { return a *= s; }
LaurentSeries operator*(cplx s, LaurentSeries a) { return a *= s; }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const int v = a.valuation() + b.valuation();
  const int o = std::min(a.valuation() + b.order(), b.valuation() + a.order());
  require_window(v, o, "product");
  std::vector<cplx> out(static_cast<std::size_t>(o - v), cplx{0.0});
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  for (std::size_t n = 0; n < out.size(); ++n) {
    cplx acc{0.0};
    const std::size_t imax = std::min(n, ac.size() - 1);
    for (std::size_t i = 0; i <= imax; ++i) {
      if (n - i < bc.size()) acc += ac[i] * bc[n - i];
    }
    out[n] = acc;
  }
  return LaurentSeries(v, std::move(out));
}

LaurentSeries inverse(const LaurentSeries& a) {
  const auto& ac = a.coeffs();
  if (std::abs(ac[0]) <= kZeroThreshold) {
    throw SingularLeadingError("inverse: leading coefficient of z^" + std::to_string(a.valuation()) +
                               " is below the zero threshold");
  }
  const std::size_t n = ac.size();
  std::vector<cplx> out(n);
  const cplx inv0 = 1.0 / ac[0];
  out[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    cplx acc{0.0};
    for (std::size_t i = 1; i <= k; ++i) acc += ac[i] * out[k - i];
    out[k] = -inv0 * acc;
  }
  return LaurentSeries(-a.valuation(), std::move(out));
}

LaurentSeries derivative(const LaurentSeries& a) {
  std::vector<cplx> out(a.coeffs().size());
  for (int k = a.valuation(); k < a.order(); ++k) {
    out[static_cast<std::size_t>(k - a.valuation())] = static_cast<double>(k) * a.coeff(k);
  }
  return LaurentSeries(a.valuation() - 1, std::move(out));
}

// ---------------------------------------------------------------------------

MatrixSeries::MatrixSeries(int r, int valuation, int order) : r_(r), valuation_(valuation) {
  require_window(valuation, order, "MatrixSeries");
  coeffs_.assign(static_cast<std::size_t>(order - valuation), Mat::Zero(r, r));
}

MatrixSeries::MatrixSeries(int valuation, std::vector<Mat> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw WindowError("MatrixSeries: empty coefficient window");
  r_ = static_cast<int>(coeffs_.front().rows());
}

MatrixSeries MatrixSeries::constant(const Mat& m, int order) {
  MatrixSeries s(static_cast<int>(m.rows()), 0, order);
  s.coeffs_[0] = m;
  return s;
}

MatrixSeries MatrixSeries::identity(int r, int order) { return constant(Mat::Identity(r, r), order); }

const Mat& MatrixSeries::coeff(int k) const {
  if (!in_window(k)) {
    throw OutOfWindowError("matrix coefficient z^" + std::to_string(k) + " outside window [" +
                           std::to_string(valuation_) + ", " + std::to_string(order()) + ")");
  }
  return coeffs_[static_cast<std::size_t>(k - valuation_)];
}

Mat& MatrixSeries::coeff_ref(int k) { return const_cast<Mat&>(std::as_const(*this).coeff(k)); }

LaurentSeries MatrixSeries::entry(int a, int b) const {
  std::vector<cplx> out;
  out.reserve(coeffs_.size());
  for (const auto& m : coeffs_) out.push_back(m(a, b));
  return LaurentSeries(valuation_, std::move(out));
}

LaurentSeries MatrixSeries::trace() const {
  std::vector<cplx> out;
  out.reserve(coeffs_.size());
  for (const auto& m : coeffs_) out.push_back(m.trace());
  return LaurentSeries(valuation_, std::move(out));
}

MatrixSeries MatrixSeries::truncated(int new_order) const {
  require_window(valuation_, new_order, "truncated");
  const int keep = std::min(new_order, order()) - valuation_;
  return MatrixSeries(valuation_, std::vector<Mat>(coeffs_.begin(), coeffs_.begin() + keep));
}

MatrixSeries MatrixSeries::shifted(int k) const { return MatrixSeries(valuation_ + k, coeffs_); }

MatrixSeries MatrixSeries::with_valuation(int new_valuation) const {
  if (new_valuation > valuation_) {
    throw WindowError("with_valuation: cannot raise the valuation without dropping data");
  }
  std::vector<Mat> out(static_cast<std::size_t>(valuation_ - new_valuation), Mat::Zero(r_, r_));
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return MatrixSeries(new_valuation, std::move(out));
}

MatrixSeries MatrixSeries::principal_part() const {
  if (valuation_ >= 0) return MatrixSeries(r_, -1, 0);
  MatrixSeries out(r_, valuation_, std::min(order(), 0));
  for (int k = valuation_; k < out.order(); ++k) out.coeff_ref(k) = coeff(k);
  return out;
}

MatrixSeries MatrixSeries::diagonal() const {
  MatrixSeries out = *this;
  for (auto& m : out.coeffs_) m = Mat(m.diagonal().asDiagonal());
  return out;
}

MatrixSeries MatrixSeries::transpose() const {
  MatrixSeries out = *this;
  for (auto& m : out.coeffs_) m.transposeInPlace();
  return out;
}

double MatrixSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
  return m;
}

Mat MatrixSeries::evaluate(cplx z) const {
  Mat acc = Mat::Zero(r_, r_);
  for (int k = order() - 1; k >= valuation_; --k) acc = acc * z + coeff(k);
  return acc * std::pow(z, valuation_);
}

MatrixSeries& MatrixSeries::operator+=(const MatrixSeries& rhs) {
  const int v = std::min(valuation_, rhs.valuation_);
  const int o = std::min(order(), rhs.order());
  MatrixSeries out(r_, v, o);
  for (int k = v; k < o; ++k) {
    Mat& c = out.coeff_ref(k);
    if (in_window(k)) c += coeff(k);
    if (rhs.in_window(k)) c += rhs.coeff(k);
  }
  *this = std::move(out);
  return *this;
}

MatrixSeries& MatrixSeries::operator-=(const MatrixSeries& rhs) {
  MatrixSeries neg = rhs;
  neg *= cplx{-1.0};
  return *this += neg;
}

MatrixSeries& MatrixSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

MatrixSeries operator+(MatrixSeries a, const MatrixSeries& b) { return a += b; }
MatrixSeries operator-(MatrixSeries a, const MatrixSeries& b) { return a -= b; }
MatrixSeries operator*(MatrixSeries a, cplx s) { return a *= s; }
MatrixSeries operator*(cplx s, MatrixSeries a) { return a *= s; }

MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
  const int v = a.valuation() + b.valuation();
  const int o = std::min(a.valuation() + b.order(), b.valuation() + a.order());
  require_window(v, o, "matrix product");
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<Mat> out(static_cast<std::size_t>(o - v), Mat::Zero(a.dim(), a.dim()));
  for (std::size_t n = 0; n < out.size(); ++n) {
    const std::size_t imax = std::min(n, ac.size() - 1);
    for (std::size_t i = 0; i <= imax; ++i) {
      if (n - i < bc.size()) out[n].noalias() += ac[i] * bc[n - i];
    }
  }
  return MatrixSeries(v, std::move(out));
}

MatrixSeries operator*(const Mat& m, const MatrixSeries& a) {
  MatrixSeries out = a;
  for (int k = a.valuation(); k < a.order(); ++k) out.coeff_ref(k) = m * a.coeff(k);
  return out;
}

MatrixSeries operator*(const MatrixSeries& a, const Mat& m) {
  MatrixSeries out = a;
  for (int k = a.valuation(); k < a.order(); ++k) out.coeff_ref(k) = a.coeff(k) * m;
  return out;
}

MatrixSeries operator*(const LaurentSeries& s, const MatrixSeries& a) {
  std::vector<Mat> sm;
  sm.reserve(s.coeffs().size());
  for (const auto& c : s.coeffs()) sm.push_back(c * Mat::Identity(a.dim(), a.dim()));
  return MatrixSeries(s.valuation(), std::move(sm)) * a;
}

MatrixSeries commutator(const MatrixSeries& a, const MatrixSeries& b) { return a * b - b * a; }

MatrixSeries inverse(const MatrixSeries& a) {
  const Mat& lead = a.coeffs().front();
  Eigen::JacobiSVD<Mat> svd(lead);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kZeroThreshold * std::max(1.0, sv(0))) {
    throw SingularLeadingError("matrix inverse: leading coefficient is singular");
  }
  const Mat inv0 = lead.inverse();
  const auto& ac = a.coeffs();
  std::vector<Mat> out(ac.size());
  out[0] = inv0;
  for (std::size_t k = 1; k < ac.size(); ++k) {
    Mat acc = Mat::Zero(a.dim(), a.dim());
    for (std::size_t i = 1; i <= k; ++i) acc.noalias() += ac[i] * out[k - i];
    out[k] = -inv0 * acc;
  }
  return MatrixSeries(-a.valuation(), std::move(out));
}

MatrixSeries derivative(const MatrixSeries& a) {
  std::vector<Mat> out(a.coeffs().size());
  for (int k = a.valuation(); k < a.order(); ++k) {
    out[static_cast<std::size_t>(k - a.valuation())] = static_cast<double>(k) * a.coeff(k);
  }
  return MatrixSeries(a.valuation() - 1, std::move(out));
}

}  // namespace isomon
