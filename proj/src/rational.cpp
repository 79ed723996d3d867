#include "isomon/rational.hpp"

#include <algorithm>
#include <cmath>

namespace isomon {

namespace {

bool same_point(cplx a, cplx b) { return std::abs(a - b) <= kPointMergeTol * std::max(1.0, std::abs(a)); }

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace

void RationalMatrix::add_part(cplx at, const std::vector<Mat>& coeffs) {
  for (auto& p : parts_) {
    if (same_point(p.at, at)) {
      if (p.coeffs.size() < coeffs.size()) p.coeffs.resize(coeffs.size(), Mat::Zero(r_, r_));
      for (std::size_t k = 0; k < coeffs.size(); ++k) p.coeffs[k] += coeffs[k];
      return;
    }
  }
  parts_.push_back({at, coeffs});
}

void RationalMatrix::add_poly(int m, const Mat& c) {
  if (static_cast<int>(poly_.size()) <= m) poly_.resize(static_cast<std::size_t>(m + 1), Mat::Zero(r_, r_));
  poly_[static_cast<std::size_t>(m)] += c;
}

const PrincipalPart* RationalMatrix::part_at(cplx p) const {
  for (const auto& part : parts_) {
    if (same_point(part.at, p)) return &part;
  }
  return nullptr;
}

int RationalMatrix::order_at(cplx p) const {
  const auto* part = part_at(p);
  return part ? static_cast<int>(part->coeffs.size()) : 0;
}

Mat RationalMatrix::evaluate(cplx z) const {
  Mat out = Mat::Zero(r_, r_);
  for (int m = degree(); m >= 0; --m) out = out * z + poly_[static_cast<std::size_t>(m)];
  for (const auto& part : parts_) {
    const cplx inv = 1.0 / (z - part.at);
    cplx pw = inv;
    for (const auto& c : part.coeffs) {
      out += pw * c;
      pw *= inv;
    }
  }
  return out;
}

MatrixSeries RationalMatrix::expand_at(cplx p, int order) const {
  const int v = -order_at(p);
  MatrixSeries out(r_, v, order);
  for (int j = 0; j <= degree(); ++j) {
    // z^j = (p + zeta)^j
    for (int m = 0; m <= j && m < order; ++m) {
      if (m < v) continue;
      out.coeff_ref(m) += binom(j, m) * std::pow(p, j - m) * poly_[static_cast<std::size_t>(j)];
    }
  }
  for (const auto& part : parts_) {
    if (same_point(part.at, p)) {
      for (std::size_t k = 1; k <= part.coeffs.size(); ++k) {
        const int e = -static_cast<int>(k);
        if (e < order) out.coeff_ref(e) += part.coeffs[k - 1];
      }
      continue;
    }
    const cplx delta = p - part.at;
    for (std::size_t k = 1; k <= part.coeffs.size(); ++k) {
      // (delta + zeta)^(-k) = sum_m binom(-k, m) delta^(-k-m) zeta^m
      cplx c = std::pow(delta, -static_cast<int>(k));
      for (int m = 0; m < order; ++m) {
        if (m >= v) out.coeff_ref(m) += c * part.coeffs[k - 1];
        c *= -static_cast<double>(static_cast<int>(k) + m) / (m + 1) / delta;
      }
    }
  }
  return out;
}

MatrixSeries RationalMatrix::expand_at_infinity(int order) const {
  const int v = std::min(-degree(), 0);
  MatrixSeries out(r_, v, order);
  for (int j = 0; j <= degree(); ++j) {
    if (-j < order) out.coeff_ref(-j) += poly_[static_cast<std::size_t>(j)];
  }
  for (const auto& part : parts_) {
    for (std::size_t k = 1; k <= part.coeffs.size(); ++k) {
      // (z - q)^(-k) = zeta^k (1 - q zeta)^(-k)
      const int kk = static_cast<int>(k);
      cplx c = 1.0;
      for (int m = 0; kk + m < order; ++m) {
        out.coeff_ref(kk + m) += c * part.coeffs[k - 1];
        c *= static_cast<double>(kk + m) / (m + 1) * part.at;
      }
    }
  }
  return out;
}

RationalMatrix RationalMatrix::derivative() const {
  RationalMatrix out(r_);
  for (int j = 1; j <= degree(); ++j) out.add_poly(j - 1, static_cast<double>(j) * poly_[static_cast<std::size_t>(j)]);
  for (const auto& part : parts_) {
    std::vector<Mat> c(part.coeffs.size() + 1, Mat::Zero(r_, r_));
    for (std::size_t k = 1; k <= part.coeffs.size(); ++k) c[k] = -static_cast<double>(k) * part.coeffs[k - 1];
    out.add_part(part.at, c);
  }
  return out;
}

RationalMatrix RationalMatrix::plus_part() const {
  RationalMatrix out(r_);
  out.poly_ = poly_;
  return out;
}

RationalMatrix RationalMatrix::minus_part() const {
  RationalMatrix out(r_);
  out.parts_ = parts_;
  return out;
}

double RationalMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& c : poly_) m = std::max(m, c.cwiseAbs().maxCoeff());
  for (const auto& p : parts_) {
    for (const auto& c : p.coeffs) m = std::max(m, c.cwiseAbs().maxCoeff());
  }
  return m;
}

RationalMatrix RationalMatrix::trimmed(double tol) const {
  RationalMatrix out = *this;
  while (!out.poly_.empty() && out.poly_.back().cwiseAbs().maxCoeff() <= tol) out.poly_.pop_back();
  for (auto& p : out.parts_) {
    while (!p.coeffs.empty() && p.coeffs.back().cwiseAbs().maxCoeff() <= tol) p.coeffs.pop_back();
  }
  out.parts_.erase(std::remove_if(out.parts_.begin(), out.parts_.end(),
                                  [](const PrincipalPart& p) { return p.coeffs.empty(); }),
                   out.parts_.end());
  return out;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
  if (r_ == 0) r_ = rhs.r_;
  for (int m = 0; m <= rhs.degree(); ++m) add_poly(m, rhs.poly_[static_cast<std::size_t>(m)]);
  for (const auto& p : rhs.parts_) add_part(p.at, p.coeffs);
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& rhs) { return *this += cplx{-1.0} * rhs; }

RationalMatrix& RationalMatrix::operator*=(cplx s) {
  for (auto& c : poly_) c *= s;
  for (auto& p : parts_) {
    for (auto& c : p.coeffs) c *= s;
  }
  return *this;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
RationalMatrix operator*(cplx s, RationalMatrix a) { return a *= s; }

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  const int r = std::max(a.dim(), b.dim());
  RationalMatrix out(r);
  std::vector<cplx> points;
  for (const auto& p : a.parts()) points.push_back(p.at);
  for (const auto& p : b.parts()) {
    if (!a.part_at(p.at)) points.push_back(p.at);
  }
  for (cplx p : points) {
    const int ka = a.order_at(p);
    const int kb = b.order_at(p);
    const MatrixSeries prod = a.expand_at(p, kb) * b.expand_at(p, ka);
    std::vector<Mat> c(static_cast<std::size_t>(ka + kb), Mat::Zero(r, r));
    for (int k = 1; k <= ka + kb; ++k) {
      if (prod.in_window(-k)) c[static_cast<std::size_t>(k - 1)] = prod.coeff(-k);
    }
    out.add_part(p, c);
  }
  if (!a.poly().empty() || !b.poly().empty()) {
    const int da = std::max(a.degree(), 0);
    const int db = std::max(b.degree(), 0);
    const MatrixSeries prod = a.expand_at_infinity(db + 1) * b.expand_at_infinity(da + 1);
    for (int m = 0; m <= da + db; ++m) {
      if (prod.in_window(-m)) out.add_poly(m, prod.coeff(-m));
    }
  }
  return out;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

LoopElement apply_R(cplx s, const LoopElement& y) {
  return s * y.plus_part() + (s - 1.0) * y.minus_part();
}

cplx trace_residue_pairing(const RationalMatrix& x, const RationalMatrix& y) {
  // Coefficient of z^-1 in the large-z expansion, i.e. of zeta^1.
  const int dx = std::max(x.degree(), 0);
  const int dy = std::max(y.degree(), 0);
  const MatrixSeries prod = x.expand_at_infinity(dy + 2) * y.expand_at_infinity(dx + 2);
  return prod.coeff(1).trace();
}

}  // namespace isomon
