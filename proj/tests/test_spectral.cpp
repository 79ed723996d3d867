#include <doctest.h>

#include <random>

#include "isomon/certificates.hpp"
#include "isomon/presets.hpp"
#include "isomon/spectral.hpp"
#include "oracles.hpp"

using namespace isomon;
using oracle::diag2;
using oracle::m2;

namespace {

const InvariantKey inf_key(int j, int a) { return {kInf, j, a}; }

}  // namespace

TEST_CASE("characteristic polynomial, r = 1") {
  const auto L = RationalLaxMatrix(1, {{0.0, 0, {Mat::Constant(1, 1, 0.7)}}}, {});
  const auto cp = char_poly_local(L, ChartId::finite(0), 4);
  REQUIRE(cp.coeffs.size() == 2);
  CHECK(std::abs(cp.coeffs[1].coeff(0) + 1.0) < 1e-15);
  CHECK(std::abs(cp.coeffs[0].coeff(-1) - 0.7) < 1e-15);
}

TEST_CASE("PII: -det L = z^4 + t z^2 + ...") {
  const double t = 0.6;
  const auto P = painleve2({0.3, 1.0, -0.2, 0.4, t});
  const auto cp = char_poly_local(P, ChartId::at_infinity(), 8);
  // zeta = 1/z; det(L - lambda) has lambda^0 coefficient det L
  CHECK(std::abs(cp.coeffs[0].coeff(-4) + 1.0) < 1e-14);
  CHECK(std::abs(cp.coeffs[0].coeff(-3)) < 1e-14);
  CHECK(std::abs(cp.coeffs[0].coeff(-2) + t) < 1e-14);
  for (cplx z : {cplx(0.4, 0.2), cplx(-1.0, 0.5)}) {
    const Mat m = P.eval_at(z);
    CHECK(std::abs(cp.coeffs[0].evaluate(1.0 / z) - m.determinant()) < 1e-6 * std::abs(m.determinant()) + 1e-6);
  }
}

TEST_CASE("diagonal branches are verbatim") {
  const auto L = oracle::fuchsian({0.0, 1.0}, {diag2(0.3, -0.2), diag2(0.5, 0.1)});
  const auto br = eigen_expansions(L, ChartId::finite(0), 6);
  REQUIRE(br.size() == 2);
  // lambda_1 = 0.3/zeta + 0.5/(zeta - 1) expanded at 0
  CHECK(std::abs(br[0].series.coeff(-1) - 0.3) < 1e-14);
  for (int k = 0; k < br[0].series.order(); ++k) CHECK(std::abs(br[0].series.coeff(k) + 0.5) < 1e-13);
  CHECK(std::abs(br[1].series.coeff(-1) + 0.2) < 1e-14);
  for (int k = 0; k < br[1].series.order(); ++k) CHECK(std::abs(br[1].series.coeff(k) + 0.1) < 1e-13);
}

TEST_CASE("PII eigenvalue at infinity") {
  const PIICoordinates c{0.3, 1.0, -0.2, 0.4, 0.7};
  const auto P = painleve2(c);
  const auto br = eigen_expansions(P, ChartId::at_infinity(), 8);
  const cplx a = c.x1 * c.y1 + c.x2 * c.y2;
  const auto& l = br[0].series;
  CHECK(std::abs(l.coeff(-2) - 1.0) < 1e-14);
  CHECK(std::abs(l.coeff(-1)) < 1e-14);
  CHECK(std::abs(l.coeff(0) - c.t / 2.0) < 1e-14);
  CHECK(std::abs(l.coeff(1) + a) < 1e-14);
  CHECK(std::abs(l.coeff(2) - painleve2_printed_H(c)) < 1e-13);
}

TEST_CASE("branches against pointwise eigenvalues") {
  Rng rng(11);
  std::normal_distribution<double> n(0.0, 0.5);
  for (int trial = 0; trial < 5; ++trial) {
    Mat A(2, 2), B(2, 2);
    for (int i = 0; i < 4; ++i) {
      A(i / 2, i % 2) = {n(rng), n(rng)};
      B(i / 2, i % 2) = {n(rng), n(rng)};
    }
    A(0, 0) += 0.6;
    A(1, 1) -= 0.6;
    const auto L = oracle::fuchsian({0.0, 2.0}, {A, B});
    const auto br = eigen_expansions(L, ChartId::finite(0), 24);
    for (int k = 0; k < 8; ++k) {
      const cplx zeta = std::polar(0.1, 0.7 * k);
      const auto ev = oracle::pointwise_eigenvalues(L, zeta);
      for (const auto& b : br) {
        const cplx lam = b.series.evaluate(zeta);
        const double best = std::min(std::abs(lam - ev[0]), std::abs(lam - ev[1]));
        CHECK(best < 1e-9 * std::abs(lam));
      }
    }
  }
}

TEST_CASE("Casimirs") {
  const PIICoordinates c{0.3, 1.0, -0.2, 0.4, 0.7};
  const auto tab = extract_casimirs(painleve2(c));
  CHECK(std::abs(2.0 * tab.t.at(inf_key(1, 0)) - c.t) < 1e-14);
  CHECK(std::abs(tab.t.at(inf_key(0, 0)) + (c.x1 * c.y1 + c.x2 * c.y2)) < 1e-14);

  const auto F = oracle::fuchsian({0.0}, {diag2(0.35, -0.15)});
  const auto tf = extract_casimirs(F);
  CHECK(std::abs(tf.t.at({0, 0, 0}) - 0.35) < 1e-15);
  CHECK(std::abs(tf.t.at({0, 0, 1}) + 0.15) < 1e-15);
}

TEST_CASE("PII autonomous invariant") {
  const PIICoordinates c{0.3, 1.0, -0.2, 0.4, 0.7};
  const auto P = painleve2(c);
  const cplx a = c.x1 * c.y1 + c.x2 * c.y2;
  CHECK(std::abs(-0.25 * trace_square_coeff_at_infinity(P, 1) - a) < 1e-14);
}

TEST_CASE("Hamiltonians") {
  const PIICoordinates c{1.0, 1.0, 1.0, 1.0, 0.0};
  const auto tab = extract_hamiltonians(painleve2(c));
  CHECK(std::abs(tab.H_t.at(inf_key(1, 0)) + 0.5) < 1e-13);

  const PIICoordinates c2{0.3, 1.0, -0.2, 0.4, 0.7};
  const auto tab2 = extract_hamiltonians(painleve2(c2));
  CHECK(std::abs(tab2.H_t.at(inf_key(1, 0)) - painleve2_printed_H(c2)) < 1e-13);

  const auto S = schlesinger({0.0, 1.0}, {diag2(1.0, 0.0), diag2(2.0, 3.0)});
  const auto ts = extract_hamiltonians(S);
  CHECK(std::abs(ts.H_c[0] + 2.0) < 1e-14);
  CHECK(std::abs(ts.H_c[1] - 2.0) < 1e-14);

  // tr(L1 L2) = 0 with non-commuting residues
  const auto S0 = schlesinger({0.0, 1.0}, {diag2(1.0, -1.0), m2(0.0, 1.0, 1.0, 0.0)});
  CHECK(std::abs(extract_hamiltonians(S0).H_c[0]) < 1e-15);
}

TEST_CASE("H_c against contour quadrature") {
  Rng rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    LaxShape shape;
    shape.r = 2 + trial % 2;
    shape.pole_ranks = {trial % 3, 1};
    shape.d_inf = trial % 2;
    const auto L = random_lax(shape, rng);
    const cplx c0 = L.poles()[0].c;
    const double rho = 0.3;
    const cplx quad = oracle::contour_residue(
        [&](cplx z) {
          const Mat m = L.eval_at(z);
          return 0.5 * (m * m).trace();
        },
        c0, rho, 512);
    CHECK(std::abs(hamiltonian_c(L, 0) - quad) < 1e-10 * std::max(1.0, std::abs(quad)));
    const auto br = eigen_expansions(L, ChartId::finite(0));
    CHECK(std::abs(hamiltonian_c_from_branches(br) - hamiltonian_c(L, 0)) < 1e-10);
  }
}

TEST_CASE("root residual is small") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    for (const ChartId& ch : L.charts()) CHECK(root_residual(L, ch, eigen_expansions(L, ch)) < 1e-10);
  }
}
