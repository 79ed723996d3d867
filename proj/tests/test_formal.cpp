#include <doctest.h>

#include "isomon/certificates.hpp"
#include "isomon/flows.hpp"
#include "isomon/formal.hpp"
#include "isomon/presets.hpp"
#include "oracles.hpp"

using namespace isomon;
using oracle::diag2;
using oracle::m2;

namespace {

double rational_gap(const RationalMatrix& a, const RationalMatrix& b) {
  double worst = 0.0;
  for (cplx z : {cplx(0.37, 0.81), cplx(-1.3, 0.4), cplx(2.2, -1.7), cplx(0.05, -0.6)}) {
    worst = std::max(worst, oracle::dist(a.evaluate(z), b.evaluate(z)));
  }
  return worst;
}

}  // namespace

TEST_CASE("diagonal system: Y is trivial") {
  const auto L = oracle::fuchsian({0.0}, {diag2(0.3, -0.45)});
  const auto fs = formal_solution(L, ChartId::finite(0), 6);
  for (const Mat& y : fs.Y_coeffs) CHECK(y.cwiseAbs().maxCoeff() < 1e-15);
  CHECK(oracle::dist(fs.T_coeffs[0], diag2(0.3, -0.45)) < 1e-15);
  CHECK(gauge_residual(L, fs).max_abs() < 1e-15);
}

TEST_CASE("gauge residual vanishes on random systems") {
  Rng rng(8);
  for (int trial = 0; trial < 6; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    for (const ChartId& ch : L.charts()) {
      const auto fs = formal_solution(L, ch);
      CHECK(gauge_residual(L, fs).max_abs() < 1e-9);
    }
  }
}

TEST_CASE("T' reproduces the eigenvalue principal parts for PII") {
  const auto P = painleve2({0.3, 1.0, -0.2, 0.4, 0.7});
  const auto fs = formal_solution(P, ChartId::at_infinity(), 6);
  const auto br = eigen_expansions(P, ChartId::at_infinity(), 8);
  const MatrixSeries tp = fs.T_prime();
  // in zeta = 1/z, A = -zeta^-2 L, so T' = -zeta^-2 diag(lambda) up to the regular part
  for (int a = 0; a < 2; ++a) {
    for (int k = tp.valuation(); k < 0; ++k) {
      CHECK(std::abs(tp.coeff(k)(a, a) + br[a].series.coeff(k + 2)) < 1e-12);
    }
  }
}

TEST_CASE("V is minus the principal part") {
  const auto S = schlesinger({0.0, 1.0}, {m2(0.2, 0.5, -0.1, 0.4), m2(-0.3, 0.1, 0.6, 0.2)});
  const auto V = deformation_matrix_V(S, 0);
  RationalMatrix expected(2);
  expected.add_part(0.0, {-S.poles()[0].coeffs[0]});
  CHECK(rational_gap(V, expected) == 0.0);

  PoleRecord p{0.5, 1, {m2(0.2, 0.1, 0.3, -0.2), m2(1.0, 0.2, 0.0, -1.0)}};
  const RationalLaxMatrix L(2, {p}, {});
  RationalMatrix e2(2);
  e2.add_part(0.5, {-p.coeffs[0], -p.coeffs[1]});
  CHECK(rational_gap(deformation_matrix_V(L, 0), e2) == 0.0);
  const auto fs = formal_solution(L, ChartId::finite(0));
  CHECK(rational_gap(deformation_matrix_V_from_Y(L, fs), e2) < 1e-10);
}

TEST_CASE("PII deformation matrix is the printed U") {
  const PIICoordinates c{0.3, 1.0, -0.2, 0.4, 0.7};
  const auto P = painleve2(c);
  const auto U = deformation_matrix(P, painleve2_t_direction());
  CHECK(rational_gap(U, painleve2_printed_U(c)) < 1e-12);
  const auto dU = explicit_derivative(P, painleve2_t_direction());
  RationalMatrix half(2);
  half.add_poly(0, 0.5 * diag2(1.0, -1.0));
  CHECK(rational_gap(dU, half) < 1e-12);
}

TEST_CASE("Fuchsian with infinity: printed dK_a") {
  const auto pre = make_preset("fuchsian_inf");
  for (int a = 0; a < 2; ++a) {
    const auto U = deformation_matrix(pre.L, infinity_direction(a));
    CHECK(rational_gap(U, printed_dK(pre.L, a)) < 1e-10);
    const auto dU = explicit_derivative(pre.L, infinity_direction(a));
    RationalMatrix Ea(2);
    Mat e = Mat::Zero(2, 2);
    e(a, a) = 1.0;
    Ea.add_poly(0, e);
    CHECK(rational_gap(dU, Ea) < 1e-12);
  }
}

TEST_CASE("PII2: t1 deformation matrix") {
  const auto pre = make_preset("pII2");
  const auto c = painleve2_2_coordinates(pre.L);
  const auto U1 = deformation_matrix(pre.L, painleve2_2_t1_direction());
  CHECK(rational_gap(U1, painleve2_2_printed_U1(c)) < 1e-10);
  const auto dU = explicit_derivative(pre.L, painleve2_2_t1_direction());
  RationalMatrix s3(2);
  s3.add_poly(0, diag2(1.0, -1.0));
  CHECK(rational_gap(dU, s3) < 1e-12);
}

TEST_CASE("second route to the Hamiltonians") {
  Rng rng(13);
  for (int trial = 0; trial < 4; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    const auto tab = extract_invariants(L);
    for (const ChartId& ch : L.charts()) {
      const auto fs = formal_solution(L, ch);
      const int nu = ch.infinity ? kInf : ch.index;
      for (int j = 1; j <= fs.d; ++j) {
        for (int a = 0; a < L.dim(); ++a) {
          CHECK(std::abs(hamiltonian_t_second_route(fs, j, a) - tab.H_t.at({nu, j, a})) < 1e-9);
        }
      }
      if (!ch.infinity) CHECK(std::abs(hamiltonian_c_second_route(fs) - tab.H_c[ch.index]) < 1e-9);
    }
  }
}
