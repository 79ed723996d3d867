#include "isomon/lax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "isomon/errors.hpp"

namespace isomon {

std::string ChartId::label() const { return infinity ? "inf" : std::to_string(index + 1); }

RationalLaxMatrix::RationalLaxMatrix(int r, std::vector<PoleRecord> poles, InfinityRecord infinity)
    : r_(r), poles_(std::move(poles)), infinity_(std::move(infinity)) {
  if (r < 1) throw InputError("Lax matrix dimension must be positive");
  for (std::size_t nu = 0; nu < poles_.size(); ++nu) {
    const auto& p = poles_[nu];
    if (p.d < 0 || static_cast<int>(p.coeffs.size()) != p.d + 1) {
      throw InputError("pole " + std::to_string(nu + 1) + ": expected d+1 coefficient matrices");
    }
    for (const auto& m : p.coeffs) {
      if (m.rows() != r || m.cols() != r) throw InputError("pole coefficient has wrong shape");
    }
  }
  if (infinity_.d < 0 || static_cast<int>(infinity_.coeffs.size()) != infinity_.d) {
    throw InputError("infinity: expected d_inf coefficient matrices");
  }
  for (const auto& m : infinity_.coeffs) {
    if (m.rows() != r || m.cols() != r) throw InputError("infinity coefficient has wrong shape");
  }
}

int RationalLaxMatrix::rank(ChartId chart) const {
  return chart.infinity ? infinity_.d : poles_.at(static_cast<std::size_t>(chart.index)).d;
}

std::vector<ChartId> RationalLaxMatrix::charts() const {
  std::vector<ChartId> out;
  for (std::size_t nu = 0; nu < poles_.size(); ++nu) out.push_back(ChartId::finite(static_cast<int>(nu)));
  if (infinity_.d >= 1) out.push_back(ChartId::at_infinity());
  return out;
}

const Mat& RationalLaxMatrix::leading(ChartId chart) const {
  if (chart.infinity) {
    if (infinity_.d < 1) throw ChartError("infinity chart requires d_inf >= 1");
    return infinity_.coeffs.back();
  }
  return poles_.at(static_cast<std::size_t>(chart.index)).coeffs.back();
}

Mat RationalLaxMatrix::eval_at(cplx z) const {
  for (std::size_t nu = 0; nu < poles_.size(); ++nu) {
    if (std::abs(z - poles_[nu].c) <= 1e-12) {
      throw PoleEvaluationError("evaluation at pole " + std::to_string(nu + 1));
    }
  }
  return as_rational().evaluate(z);
}

RationalMatrix RationalLaxMatrix::as_rational() const {
  RationalMatrix out(r_);
  for (int j = 0; j < infinity_.d; ++j) out.add_poly(j, -infinity_.coeffs[static_cast<std::size_t>(j)]);
  for (const auto& p : poles_) out.add_part(p.c, p.coeffs);
  return out;
}

MatrixSeries RationalLaxMatrix::local_expansion(ChartId chart, int depth) const {
  if (depth < 1) throw WindowError("local_expansion: depth must be >= 1");
  const RationalMatrix rm = as_rational();
  if (!chart.infinity) {
    const auto& p = poles_.at(static_cast<std::size_t>(chart.index));
    return rm.expand_at(p.c, -(p.d + 1) + depth);
  }
  const int v = std::min(-(infinity_.d - 1), 0);
  return rm.expand_at_infinity(v + depth);
}

MatrixSeries RationalLaxMatrix::chart_connection(ChartId chart, int depth) const {
  if (!chart.infinity) return local_expansion(chart, depth);
  if (infinity_.d < 1) throw ChartError("infinity chart requires d_inf >= 1");
  // -zeta^-2 L(1/zeta): L(1/zeta) starts at zeta^-(d-1).
  MatrixSeries l = local_expansion(chart, depth);
  l *= cplx{-1.0};
  return l.shifted(-2);
}

namespace {

double min_gap(const Eigen::VectorXcd& v) {
  double g = std::numeric_limits<double>::infinity();
  for (int a = 0; a < v.size(); ++a) {
    for (int b = a + 1; b < v.size(); ++b) g = std::min(g, std::abs(v(a) - v(b)));
  }
  return g;
}

}  // namespace

ValidationReport validate(const RationalLaxMatrix& L) {
  ValidationReport rep;
  const auto& poles = L.poles();
  {
    ValidationCheck c{"distinct_poles", true, std::numeric_limits<double>::infinity(), ""};
    for (std::size_t i = 0; i < poles.size(); ++i) {
      for (std::size_t j = i + 1; j < poles.size(); ++j) {
        const double dist = std::abs(poles[i].c - poles[j].c);
        c.value = std::min(c.value, dist);
        if (dist <= 1e-10) {
          c.pass = false;
          c.detail = "poles " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide";
        }
      }
    }
    if (poles.size() < 2) c.value = 0.0;
    rep.checks.push_back(c);
  }
  for (std::size_t nu = 0; nu < poles.size(); ++nu) {
    const Mat& lead = poles[nu].coeffs.back();
    ValidationCheck c{"regular_leading_" + std::to_string(nu + 1), true, 0.0, ""};
    if (L.dim() > 1) {
      const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Mat>(lead, false).eigenvalues();
      c.value = min_gap(ev);
      const double scale = std::max(lead.norm(), 1e-300);
      if (c.value < kGapTol * scale) {
        c.pass = false;
        c.detail = "leading coefficient at pole " + std::to_string(nu + 1) + " has a repeated eigenvalue";
      }
    }
    rep.checks.push_back(c);
  }
  if (L.infinity().d >= 1) {
    const Mat& lead = L.infinity().coeffs.back();
    Mat off = lead;
    off.diagonal().setZero();
    ValidationCheck diag{"diagonal_leading_inf", true, off.cwiseAbs().maxCoeff(), ""};
    if (diag.value > 1e-12 * std::max(1.0, lead.norm())) {
      diag.pass = false;
      diag.detail = "leading coefficient at infinity is not diagonal";
    }
    rep.checks.push_back(diag);
    ValidationCheck reg{"regular_leading_inf", true, 0.0, ""};
    if (L.dim() > 1) {
      reg.value = min_gap(lead.diagonal());
      if (reg.value < kGapTol * std::max(lead.norm(), 1e-300)) {
        reg.pass = false;
        reg.detail = "leading coefficient at infinity has repeated diagonal entries";
      }
    }
    rep.checks.push_back(reg);
  }
  for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

void require_valid(const RationalLaxMatrix& L) {
  const auto rep = validate(L);
  if (rep.pass) return;
  std::ostringstream os;
  os << "Lax matrix fails validation:";
  for (const auto& c : rep.checks) {
    if (!c.pass) os << " [" << c.name << ": " << c.detail << ", gap " << c.value << "]";
  }
  throw InputError(os.str());
}

LeadingEigensystem leading_eigensystem(const Mat& m, bool keep_diagonal_order) {
  const int r = static_cast<int>(m.rows());
  LeadingEigensystem out;
  const bool diagonal = (m - Mat(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (keep_diagonal_order || diagonal) {
    out.values = m.diagonal();
    out.vectors = Mat::Identity(r, r);
    return out;
  }
  Eigen::ComplexEigenSolver<Mat> es(m);
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double tie = 1e-9 * std::max(1.0, m.norm());
  std::vector<int> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (std::abs(ev(a).real() - ev(b).real()) > tie) return ev(a).real() < ev(b).real();
    return ev(a).imag() < ev(b).imag();
  });
  out.values.resize(r);
  out.vectors.resize(r, r);
  for (int k = 0; k < r; ++k) {
    out.values(k) = ev(idx[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = es.eigenvectors().col(idx[static_cast<std::size_t>(k)]);
  }
  return out;
}

}  // namespace isomon
