#include <doctest.h>

#include "isomon/errors.hpp"
#include "isomon/lax.hpp"
#include "isomon/presets.hpp"
#include "oracles.hpp"

using namespace isomon;
using oracle::diag2;
using oracle::dist;
using oracle::m2;

TEST_CASE("evaluation") {
  const auto L1 = oracle::fuchsian({0.0}, {diag2(1.0, 0.0)});
  CHECK(dist(L1.eval_at(2.0), diag2(0.5, 0.0)) < 1e-15);

  const Mat B = diag2(1.0, -1.0);
  const auto L2 = oracle::fuchsian({1.0}, {m2(0.0, 1.0, 1.0, 0.0)}, &B);
  CHECK(dist(L2.eval_at(2.0), m2(1.0, 1.0, 1.0, -1.0)) < 1e-15);

  const auto P = painleve2({1.0, 1.0, 1.0, 1.0, 0.0});
  CHECK(dist(P.eval_at(0.0), m2(1.0, -2.0, 1.0, -1.0)) < 1e-15);

  CHECK_THROWS_AS(L1.eval_at(1e-14), PoleEvaluationError);
}

TEST_CASE("local expansions") {
  const Mat A = m2(0.2, 1.0, -0.5, 0.3);
  const auto L1 = oracle::fuchsian({0.0}, {A});
  const auto s1 = L1.local_expansion(ChartId::finite(0), 5);
  CHECK(s1.valuation() == -1);
  CHECK(dist(s1.coeff(-1), A) == 0.0);
  for (int k = 0; k < s1.order(); ++k) CHECK(s1.coeff(k).cwiseAbs().maxCoeff() == 0.0);

  const Mat A2 = m2(1.0, 0.0, 2.0, -1.0);
  const auto L2 = oracle::fuchsian({0.0, 1.0}, {A, A2});
  const auto s2 = L2.local_expansion(ChartId::finite(0), 5);
  CHECK(dist(s2.coeff(-1), A) < 1e-15);
  for (int k = 0; k < s2.order(); ++k) CHECK(dist(s2.coeff(k), -A2) < 1e-15);

  const Mat B = m2(1.0, 2.0, 3.0, 4.0);
  const auto L3 = oracle::fuchsian({0.5}, {Mat::Zero(2, 2)}, &B);
  const auto s3 = L3.local_expansion(ChartId::at_infinity(), 3);
  CHECK(dist(s3.coeff(0), B) < 1e-15);
}

TEST_CASE("local expansion agrees with pointwise evaluation") {
  const auto P = painleve2({0.3, 1.0, -0.2, 0.4, 0.7});
  const auto s = P.local_expansion(ChartId::at_infinity(), 8);
  for (cplx z : {cplx(3.0, 1.0), cplx(-4.0, 2.0)}) {
    CHECK(dist(s.evaluate(1.0 / z), P.eval_at(z)) < 1e-12);
  }
  const Mat B = diag2(1.0, -0.5);
  const auto L = oracle::fuchsian({0.0, 1.5}, {m2(0.2, 0.3, -0.4, 0.15), m2(0.1, 0.0, 0.2, -0.3)}, &B);
  const auto e = L.local_expansion(ChartId::finite(0), 30);
  CHECK(dist(e.evaluate(0.2), L.eval_at(0.2)) < 1e-12);
}

TEST_CASE("validation") {
  const auto bad_gap = RationalLaxMatrix(2, {{0.0, 1, {Mat::Identity(2, 2), Mat::Identity(2, 2)}}}, {});
  CHECK_FALSE(validate(bad_gap).pass);

  CHECK(validate(painleve2({0.3, 1.0, -0.2, 0.4, 0.0})).pass);
  const auto P = painleve2({0.3, 1.0, -0.2, 0.4, 0.0});
  // top polynomial coefficient z^2 diag(1, -1); the chart connection carries the minus sign
  CHECK(dist(-P.infinity().coeffs.back(), diag2(1.0, -1.0)) < 1e-15);
  CHECK(dist(P.leading(ChartId::at_infinity()), diag2(-1.0, 1.0)) < 1e-15);

  const auto coincident = oracle::fuchsian({0.0, 0.0}, {diag2(0.5, -0.5), diag2(0.25, -0.25)});
  const auto rep = validate(coincident);
  CHECK_FALSE(rep.pass);
  CHECK_THROWS_AS(require_valid(coincident), InputError);

  CHECK_THROWS_AS(RationalLaxMatrix(2, {{0.0, 1, {Mat::Identity(2, 2)}}}, {}), InputError);
}

TEST_CASE("charts") {
  const auto L = oracle::fuchsian({0.0, 1.0}, {diag2(0.5, -0.5), diag2(0.25, -0.25)});
  CHECK(L.charts().size() == 2);  // d_inf = 0: no chart at infinity
  const auto P = painleve2({0.3, 1.0, -0.2, 0.4, 0.0});
  REQUIRE(P.charts().size() == 1);
  CHECK(P.charts()[0].infinity);
  CHECK(P.rank(ChartId::at_infinity()) == 3);
}
