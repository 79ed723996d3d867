#include <doctest.h>

#include "isomon/certificates.hpp"
#include "isomon/errors.hpp"
#include "isomon/flows.hpp"
#include "isomon/presets.hpp"
#include "oracles.hpp"

using namespace isomon;
using oracle::diag2;
using oracle::dist;
using oracle::m2;

namespace {

Mat residue_after(const RationalLaxMatrix& L, int nu) { return L.poles()[static_cast<std::size_t>(nu)].coeffs[0]; }

}  // namespace

TEST_CASE("parameters") {
  const auto S = make_preset("schlesinger").L;
  CHECK_THROWS_AS(check_parameter(S, DeformationParameter::irregular(0, 0, 0)), InputError);
  CHECK_THROWS_AS(check_parameter(S, DeformationParameter::irregular(kInf, 1, 0)), ChartError);
  CHECK_THROWS_AS(check_parameter(S, DeformationParameter::pole_location(5)), InputError);
  CHECK(DeformationParameter::irregular(kInf, 2, 1).label() == "t[inf][2][2]");
  CHECK(DeformationParameter::pole_location(0).label() == "c[1]");
}

TEST_CASE("Schlesinger vector field") {
  const auto S = schlesinger({0.0, 1.0}, {diag2(1.0, 0.0), m2(0.0, 1.0, 1.0, 0.0)});
  const auto vf = vector_field(S, pole_direction(1));
  const PhaseSpace space(S);
  Mat d1(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) d1(a, b) = vf.dx(space.index_of(CoefficientIndex::finite_pole(0, 1, a, b)));
  }
  CHECK(dist(d1, m2(0.0, -1.0, 1.0, 0.0)) < 1e-13);
  CHECK(dist(d1, schlesinger_rhs(S, 0, 1)) < 1e-13);
  CHECK(std::abs(vf.dc[1] - 1.0) < 1e-15);
  CHECK(std::abs(vf.dc[0]) == 0.0);

  const auto C = schlesinger({0.0, 1.0}, {diag2(1.0, 0.0), diag2(0.3, 2.0)});
  CHECK(vector_field(C, pole_direction(0)).dx.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("commuting residues: the trajectory is constant") {
  const auto C = schlesinger({0.0, 1.0}, {diag2(0.4, 0.0), diag2(0.3, -0.2)});
  const auto traj = integrate_flow(C, pole_direction(0), 0.0, 0.3);
  const auto& last = traj.samples.back().L;
  CHECK(dist(residue_after(last, 0), diag2(0.4, 0.0)) < 1e-14);
  CHECK(std::abs(last.poles()[0].c - 0.3) < 1e-12);
}

TEST_CASE("Schlesinger conservation laws") {
  const auto S = make_preset("schlesinger").L;
  FlowOptions fo;
  const auto traj = integrate_flow(S, pole_direction(0), 0.0, 0.3, fo);
  const Mat A0 = residue_after(S, 0), B0 = residue_after(S, 1);
  for (const auto& smp : traj.samples) {
    const Mat A = residue_after(smp.L, 0), B = residue_after(smp.L, 1);
    CHECK(std::abs((A * B).trace() - (A0 * B0).trace()) < 10 * fo.tol + 1e-12);
    CHECK(std::abs(A.trace() - A0.trace()) < 10 * fo.tol);
    CHECK(std::abs(B.determinant() - B0.determinant()) < 10 * fo.tol + 1e-12);
    CHECK(std::abs(A.determinant() - A0.determinant()) < 10 * fo.tol + 1e-12);
  }
}

TEST_CASE("explicit derivatives of the deformation matrices") {
  const auto P = make_preset("pII").L;
  RationalMatrix half(2);
  half.add_poly(0, 0.5 * diag2(1.0, -1.0));
  CHECK(explicit_derivative_check(P, painleve2_t_direction(), half).max_deviation < 1e-12);

  const auto E = make_preset("fuchsian_inf").L;
  RationalMatrix e1(2);
  e1.add_poly(0, diag2(1.0, 0.0));
  CHECK(explicit_derivative_check(E, infinity_direction(0), e1).max_deviation < 1e-12);

  const auto Q = make_preset("pII2").L;
  RationalMatrix s3(2);
  s3.add_poly(0, diag2(1.0, -1.0));
  CHECK(explicit_derivative_check(Q, painleve2_2_t1_direction(), s3).max_deviation < 1e-12);
}

TEST_CASE("PII: the Lax flow matches the Hamilton equations") {
  const auto pre = make_preset("pII");
  const auto c0 = painleve2_coordinates(pre.L);
  const auto r0 = painleve2_reduced(c0);
  FlowOptions fo;
  fo.checkpoints = 10;
  const auto traj = integrate_flow(pre.L, painleve2_t_direction(), c0.t, c0.t + 1.0, fo);
  const auto ref = pII_hamilton_flow(r0.u.real(), r0.v.real(), r0.a.real(), c0.t.real(), c0.t.real() + 1.0, 1e-12, 10);
  REQUIRE(ref.size() == traj.samples.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    const auto red = painleve2_reduced(painleve2_coordinates(traj.samples[k].L));
    CHECK(std::abs(red.u - ref[k].u) < 1e-6);
    CHECK(std::abs(red.v - ref[k].v) < 1e-6);
    CHECK(std::abs(red.a - r0.a) < 1e-9);
  }
}

TEST_CASE("PII Hamilton flow detects poles") {
  // u' = u^2 + ... blows up in finite time from a large start
  CHECK_THROWS_AS(pII_hamilton_flow(5.0, 0.0, 0.0, 0.0, 2.0, 1e-10, 5), PainlevePoleError);
}

TEST_CASE("autonomous invariants along the PII flow") {
  const auto pre = make_preset("pII");
  const auto traj = integrate_flow(pre.L, painleve2_t_direction(), 0.0, 0.5);
  for (const auto& smp : traj.samples) {
    const auto c = painleve2_coordinates(smp.L);
    const cplx a = c.x1 * c.y1 + c.x2 * c.y2;
    CHECK(std::abs(-0.25 * trace_square_coeff_at_infinity(smp.L, 1) - a) < 1e-12);
    CHECK(std::abs(a - (pre.coordinates.at("x1") * pre.coordinates.at("y1") +
                        pre.coordinates.at("x2") * pre.coordinates.at("y2"))) < 1e-9);
  }
}

TEST_CASE("PII2: t^inf_0 is the sum x_i y_i") {
  const auto pre = make_preset("pII2");
  const auto c = painleve2_2_coordinates(pre.L);
  const auto tab = extract_casimirs(pre.L);
  const cplx a = c.x1 * c.y1 + c.x2 * c.y2 + c.x3 * c.y3;
  CHECK(std::abs(tab.t.at({kInf, 0, 0}) - a) < 1e-13);
  CHECK(std::abs(tab.t.at({kInf, 0, 1}) + a) < 1e-13);
}

TEST_CASE("zero curvature") {
  const FlowOptions fo;
  CHECK(zero_curvature_certificate(make_preset("schlesinger").L, pole_direction(0), fo).pass);
  CHECK(zero_curvature_certificate(make_preset("pII").L, painleve2_t_direction(), fo).pass);
  CHECK(zero_curvature_certificate(make_preset("fuchsian_inf").L, infinity_direction(1), fo).pass);
}

TEST_CASE("flows commute") {
  const auto E = make_preset("fuchsian_inf").L;
  CHECK(flow_commutation_certificate(E, pole_direction(0), infinity_direction(0)).pass);
  const auto Q = make_preset("pII2").L;
  CHECK(flow_commutation_certificate(Q, painleve2_2_t1_direction(), painleve2_2_t2_direction()).pass);
}

TEST_CASE("path abort near a pole collision") {
  const auto S = make_preset("schlesinger").L;
  CHECK_THROWS_AS(integrate_flow(S, pole_direction(0), 0.0, 1.0), PathAbortError);
}

TEST_CASE("symplectic dimension") {
  CHECK(symplectic_dimension(make_preset("pII").L) == 4);
  CHECK(symplectic_dimension(make_preset("pII2").L) == 6);
  CHECK(symplectic_dimension(make_preset("fuchsian_inf").L) == 2);
}
