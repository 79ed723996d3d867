#include "isomon/formal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isomon/errors.hpp"

namespace isomon {

int default_formal_depth(int d) { return d + 4; }

MatrixSeries FormalSolution::Y() const {
  const int r = static_cast<int>(G.rows());
  MatrixSeries y(r, 0, depth);
  y.coeff_ref(0) = G;
  for (int j = 1; j < depth; ++j) y.coeff_ref(j) = G * Y_coeffs[static_cast<std::size_t>(j - 1)];
  return y;
}

MatrixSeries FormalSolution::T_prime() const {
  const int r = static_cast<int>(G.rows());
  // Exact principal part; the explicit zeros above it are exact as well.
  MatrixSeries tp(r, -(d + 1), depth);
  for (int k = 0; k <= d; ++k) tp.coeff_ref(k - d - 1) = Delta[static_cast<std::size_t>(k)];
  return tp;
}

FormalSolution formal_solution(const RationalLaxMatrix& L, ChartId chart, int depth) {
  require_valid(L);
  const int d = L.rank(chart);
  if (depth <= 0) depth = default_formal_depth(d);
  const int r = L.dim();
  const int nmax = d + depth - 1;

  const MatrixSeries A = L.chart_connection(chart, nmax + 1);
  const auto eig = leading_eigensystem(A.coeff(-(d + 1)), chart.infinity);
  const Mat G = eig.vectors;
  const Mat Ginv = G.inverse();
  const Eigen::VectorXcd theta = eig.values;
  const double scale = std::max(1.0, A.coeff(-(d + 1)).norm());

  std::vector<Mat> B(static_cast<std::size_t>(nmax + 1));
  for (int k = 0; k <= nmax; ++k) B[static_cast<std::size_t>(k)] = Ginv * A.coeff(k - d - 1) * G;

  std::vector<Mat> P(static_cast<std::size_t>(nmax + 1), Mat::Zero(r, r));
  std::vector<Mat> Delta(static_cast<std::size_t>(nmax + 1), Mat::Zero(r, r));
  P[0] = Mat::Identity(r, r);
  Delta[0] = Mat(theta.asDiagonal());

  for (int n = 1; n <= nmax; ++n) {
    Mat S = B[static_cast<std::size_t>(n)];
    for (int k = 1; k < n; ++k) S += B[static_cast<std::size_t>(k)] * P[static_cast<std::size_t>(n - k)];
    Delta[static_cast<std::size_t>(n)] = Mat(S.diagonal().asDiagonal());
    Mat rhs = S;
    for (int k = 1; k < n; ++k) rhs -= P[static_cast<std::size_t>(n - k)] * Delta[static_cast<std::size_t>(k)];
    rhs = -rhs;
    if (d >= 1 && n > d) rhs += static_cast<double>(n - d) * P[static_cast<std::size_t>(n - d)];
    Mat& Pn = P[static_cast<std::size_t>(n)];
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        if (a == b) continue;
        cplx denom = theta(a) - theta(b);
        if (d == 0) denom -= static_cast<double>(n);
        if (std::abs(denom) < kGapTol * scale) {
          throw ResonanceError("formal solution at chart " + chart.label() + ": resonance at order " +
                               std::to_string(n) + " for pair (" + std::to_string(a + 1) + ", " +
                               std::to_string(b + 1) + ")");
        }
        Pn(a, b) = rhs(a, b) / denom;
      }
    }
  }

  // D = exp(int of the analytic part of Delta).
  std::vector<Eigen::VectorXcd> f(static_cast<std::size_t>(depth), Eigen::VectorXcd::Zero(r));
  for (int m = 1; m < depth; ++m) f[static_cast<std::size_t>(m)] = Delta[static_cast<std::size_t>(d + m)].diagonal() / static_cast<double>(m);
  std::vector<Eigen::VectorXcd> D(static_cast<std::size_t>(depth), Eigen::VectorXcd::Zero(r));
  D[0].setOnes();
  for (int n = 1; n < depth; ++n) {
    for (int k = 1; k <= n; ++k) {
      D[static_cast<std::size_t>(n)] +=
          (static_cast<double>(k) * f[static_cast<std::size_t>(k)]).cwiseProduct(D[static_cast<std::size_t>(n - k)]);
    }
    D[static_cast<std::size_t>(n)] /= static_cast<double>(n);
  }

  FormalSolution fs;
  fs.chart = chart;
  fs.d = d;
  fs.depth = depth;
  fs.G = G;
  for (int n = 1; n < depth; ++n) {
    Mat y = Mat::Zero(r, r);
    for (int k = 0; k <= n; ++k) y += P[static_cast<std::size_t>(k)] * D[static_cast<std::size_t>(n - k)].asDiagonal();
    fs.Y_coeffs.push_back(y);
  }
  fs.T_coeffs.resize(static_cast<std::size_t>(d + 1));
  fs.T_coeffs[0] = Delta[static_cast<std::size_t>(d)];
  for (int j = 1; j <= d; ++j) fs.T_coeffs[static_cast<std::size_t>(j)] = -Delta[static_cast<std::size_t>(d - j)];
  fs.Delta = std::move(Delta);
  return fs;
}

MatrixSeries gauge_residual(const RationalLaxMatrix& L, const FormalSolution& fs) {
  const MatrixSeries A = L.chart_connection(fs.chart, fs.depth);
  const MatrixSeries Y = fs.Y();
  const MatrixSeries Yinv = inverse(Y);
  return Yinv * A * Y - Yinv * derivative(Y) - fs.T_prime();
}

RationalMatrix deformation_matrix_U(const RationalLaxMatrix& L, const FormalSolution& fs, int j, int a) {
  const int r = L.dim();
  if (j < 1 || j > fs.d) throw InputError("deformation_matrix_U: j must lie in 1..d");
  if (fs.depth < j + 1) throw WindowError("deformation_matrix_U: formal solution depth too small");
  Mat Ea = Mat::Zero(r, r);
  Ea(a, a) = 1.0;
  const MatrixSeries Y = fs.Y();
  MatrixSeries prod = (Y * Ea).shifted(-j) * inverse(Y);
  prod *= cplx(1.0 / j);
  RationalMatrix out(r);
  if (fs.chart.infinity) {
    for (int m = 0; m <= j; ++m) out.add_poly(m, prod.coeff(-m));
  } else {
    std::vector<Mat> c;
    for (int k = 1; k <= j; ++k) c.push_back(prod.coeff(-k));
    out.add_part(L.poles()[static_cast<std::size_t>(fs.chart.index)].c, c);
  }
  return out;
}

RationalMatrix deformation_matrix_U(const RationalLaxMatrix& L, ChartId chart, int j, int a, int depth) {
  const int d = L.rank(chart);
  if (depth <= 0) depth = default_formal_depth(d);
  return deformation_matrix_U(L, formal_solution(L, chart, std::max(depth, j + 1)), j, a);
}

RationalMatrix deformation_matrix_V(const RationalLaxMatrix& L, int nu) {
  const auto& p = L.poles().at(static_cast<std::size_t>(nu));
  RationalMatrix out(L.dim());
  std::vector<Mat> c;
  for (const auto& m : p.coeffs) c.push_back(-m);
  out.add_part(p.c, c);
  return out;
}

RationalMatrix deformation_matrix_V_from_Y(const RationalLaxMatrix& L, const FormalSolution& fs) {
  if (fs.chart.infinity) throw ChartError("V is defined at finite poles only");
  const MatrixSeries Y = fs.Y();
  const MatrixSeries prod = Y * fs.T_prime() * inverse(Y);
  std::vector<Mat> c;
  for (int k = 1; k <= fs.d + 1; ++k) c.push_back(-prod.coeff(-k));
  RationalMatrix out(L.dim());
  out.add_part(L.poles()[static_cast<std::size_t>(fs.chart.index)].c, c);
  return out;
}

cplx hamiltonian_t_second_route(const FormalSolution& fs, int j, int a) {
  const MatrixSeries Y = fs.Y();
  const MatrixSeries K = inverse(Y) * derivative(Y);
  return -K.entry(a, a).coeff(j - 1) / static_cast<double>(j);
}

cplx hamiltonian_c_second_route(const FormalSolution& fs) {
  const MatrixSeries Y = fs.Y();
  const MatrixSeries K = inverse(Y) * derivative(Y);
  return (K * fs.T_prime()).trace().coeff(-1);
}

}  // namespace isomon
