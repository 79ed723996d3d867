#include "isomon/presets.hpp"

#include <cmath>

#include "isomon/errors.hpp"

namespace isomon {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Mat m2(cplx a, cplx b, cplx c, cplx d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat unit(int r, int a) {
  Mat e = Mat::Zero(r, r);
  e(a, a) = 1.0;
  return e;
}

Mat sigma3() { return m2(1.0, 0.0, 0.0, -1.0); }

// Builds the infinity record from polynomial coefficients P_j (z^j), j = 0..d-1.
InfinityRecord from_polynomial(const std::vector<Mat>& P) {
  InfinityRecord inf;
  inf.d = static_cast<int>(P.size());
  for (const Mat& p : P) inf.coeffs.push_back(-p);
  return inf;
}

// P_j = -L^inf_{j+2}.
Mat poly_coeff(const RationalLaxMatrix& L, int j) { return -L.infinity().coeffs.at(static_cast<std::size_t>(j)); }

}  // namespace

RationalLaxMatrix schlesinger(const std::vector<cplx>& c, const std::vector<Mat>& residues) {
  if (c.size() != residues.size() || c.empty()) throw InputError("schlesinger: need one residue per pole");
  const int r = static_cast<int>(residues[0].rows());
  std::vector<PoleRecord> poles;
  for (std::size_t k = 0; k < c.size(); ++k) poles.push_back({c[k], 0, {residues[k]}});
  return RationalLaxMatrix(r, std::move(poles), InfinityRecord{});
}

cplx schlesinger_hamiltonian(const RationalLaxMatrix& L, int nu) {
  const auto& P = L.poles();
  cplx h = 0.0;
  for (std::size_t mu = 0; mu < P.size(); ++mu) {
    if (static_cast<int>(mu) == nu) continue;
    h += (P[static_cast<std::size_t>(nu)].coeffs[0] * P[mu].coeffs[0]).trace() / (P[static_cast<std::size_t>(nu)].c - P[mu].c);
  }
  return h;
}

Mat schlesinger_rhs(const RationalLaxMatrix& L, int mu, int nu) {
  const auto& A = L.poles()[static_cast<std::size_t>(mu)];
  const auto& B = L.poles()[static_cast<std::size_t>(nu)];
  return (A.coeffs[0] * B.coeffs[0] - B.coeffs[0] * A.coeffs[0]) / (A.c - B.c);
}

Direction pole_direction(int nu) { return Direction::single(DeformationParameter::pole_location(nu)); }

RationalLaxMatrix fuchsian_with_infinity(const Eigen::VectorXcd& b, const std::vector<cplx>& c,
                                         const std::vector<Mat>& residues) {
  if (c.size() != residues.size()) throw InputError("fuchsian_with_infinity: need one residue per pole");
  const int r = static_cast<int>(b.size());
  std::vector<PoleRecord> poles;
  for (std::size_t k = 0; k < c.size(); ++k) poles.push_back({c[k], 0, {residues[k]}});
  return RationalLaxMatrix(r, std::move(poles), from_polynomial({Mat(b.asDiagonal())}));
}

RationalMatrix printed_dK(const RationalLaxMatrix& L, int a) {
  const int r = L.dim();
  const Mat B = poly_coeff(L, 0);
  Mat c0 = Mat::Zero(r, r);
  for (const auto& p : L.poles()) {
    const Mat& Ln = p.coeffs[0];
    for (int b = 0; b < r; ++b) {
      if (b == a) continue;
      const cplx gap = B(a, a) - B(b, b);
      c0 += (unit(r, a) * Ln * unit(r, b) + unit(r, b) * Ln * unit(r, a)) / gap;
    }
  }
  RationalMatrix out(r);
  out.set_poly({c0, unit(r, a)});
  return out;
}

Direction infinity_direction(int a) { return Direction::single(DeformationParameter::irregular(kInf, 1, a)); }

RationalLaxMatrix painleve2(const PIICoordinates& p) {
  const Mat P2 = sigma3();
  const Mat P1 = m2(0.0, -2.0 * p.y1, p.x2, 0.0);
  const cplx d = p.x2 * p.y1 + p.t / 2.0;
  const Mat P0 = m2(d, -2.0 * p.y2, p.x1, -d);
  return RationalLaxMatrix(2, {}, from_polynomial({P0, P1, P2}));
}

PIICoordinates painleve2_coordinates(const RationalLaxMatrix& L) {
  if (L.dim() != 2 || !L.poles().empty() || L.infinity().d != 3) throw InputError("not a Painleve II Lax matrix");
  const Mat P0 = poly_coeff(L, 0);
  const Mat P1 = poly_coeff(L, 1);
  PIICoordinates c;
  c.x2 = P1(1, 0);
  c.y1 = -P1(0, 1) / 2.0;
  c.x1 = P0(1, 0);
  c.y2 = -P0(0, 1) / 2.0;
  c.t = 2.0 * (P0(0, 0) - c.x2 * c.y1);
  return c;
}

PIIReduced painleve2_reduced(const PIICoordinates& p) {
  if (std::abs(p.x2) < 1e-14) throw ChartError("reduced Painleve II coordinates need x2 != 0");
  return {p.x1 / p.x2, p.x2 * p.y1, p.x1 * p.y1 + p.x2 * p.y2, std::log(p.x2)};
}

RationalMatrix painleve2_printed_U(const PIICoordinates& p) {
  RationalMatrix U(2);
  U.set_poly({0.5 * m2(0.0, -2.0 * p.y1, p.x2, 0.0), 0.5 * sigma3()});
  return U;
}

cplx painleve2_printed_H(const PIICoordinates& p) {
  return 0.5 * (p.x2 * p.x2 * p.y1 * p.y1 + p.t * p.x2 * p.y1 - 2.0 * p.x1 * p.y2);
}

cplx painleve2_reduced_H(cplx u, cplx v, cplx a, cplx t) { return 0.5 * v * v + 0.5 * (t + 2.0 * u * u) * v - a * u; }

Direction painleve2_t_direction() {
  return {"t",
          {{DeformationParameter::irregular(kInf, 1, 0), 0.5}, {DeformationParameter::irregular(kInf, 1, 1), -0.5}}};
}

RationalLaxMatrix painleve2_2(const PII2Coordinates& p) {
  const Mat s3 = sigma3();
  const Mat sp = m2(0.0, 1.0, 0.0, 0.0);
  const Mat sm = m2(0.0, 0.0, 1.0, 0.0);
  const Mat P3 = s3;
  const Mat P2 = -kSqrt2 * (p.x1 * sp + p.y2 * sm);
  const Mat P1 = (p.t2 - p.x1 * p.y2) * s3 - kSqrt2 * (p.x3 * sp + p.y3 * sm);
  const Mat P0 = (-p.x1 * p.y3 - p.x3 * p.y2 + p.t1) * s3 -
                 kSqrt2 * (p.x1 * p.t2 / 2.0 + p.x2 - 0.25 * p.y2 * p.x1 * p.x1) * sp -
                 kSqrt2 * (p.y2 * p.t2 / 2.0 + p.y1 - 0.25 * p.x1 * p.y2 * p.y2) * sm;
  return RationalLaxMatrix(2, {}, from_polynomial({P0, P1, P2, P3}));
}

PII2Coordinates painleve2_2_coordinates(const RationalLaxMatrix& L) {
  if (L.dim() != 2 || !L.poles().empty() || L.infinity().d != 4) {
    throw InputError("not a Lax matrix of the second Painleve II hierarchy member");
  }
  const Mat P0 = poly_coeff(L, 0);
  const Mat P1 = poly_coeff(L, 1);
  const Mat P2 = poly_coeff(L, 2);
  PII2Coordinates c;
  c.x1 = -P2(0, 1) / kSqrt2;
  c.y2 = -P2(1, 0) / kSqrt2;
  c.x3 = -P1(0, 1) / kSqrt2;
  c.y3 = -P1(1, 0) / kSqrt2;
  c.t2 = P1(0, 0) + c.x1 * c.y2;
  c.t1 = P0(0, 0) + c.x1 * c.y3 + c.x3 * c.y2;
  c.x2 = -P0(0, 1) / kSqrt2 - c.x1 * c.t2 / 2.0 + 0.25 * c.y2 * c.x1 * c.x1;
  c.y1 = -P0(1, 0) / kSqrt2 - c.y2 * c.t2 / 2.0 + 0.25 * c.x1 * c.y2 * c.y2;
  return c;
}

PII2Reduced painleve2_2_reduced(const PII2Coordinates& p) {
  if (std::abs(p.x3) < 1e-14) throw ChartError("reduced coordinates need x3 != 0");
  return {p.x1 / p.x3, p.x2 / p.x3, p.y1 * p.x3, p.y2 * p.x3, p.x1 * p.y1 + p.x2 * p.y2 + p.x3 * p.y3, std::log(p.x3)};
}

PII2Coordinates painleve2_2_from_reduced(const PII2Reduced& q, cplx t1, cplx t2) {
  const cplx e = std::exp(q.w);
  return {q.u1 * e, q.u2 * e, e, q.v1 / e, q.v2 / e, (q.a - q.u1 * q.v1 - q.u2 * q.v2) / e, t1, t2};
}

RationalMatrix painleve2_2_printed_U1(const PII2Coordinates& p) {
  RationalMatrix U(2);
  U.set_poly({m2(0.0, -kSqrt2 * p.x1, -kSqrt2 * p.y2, 0.0), sigma3()});
  return U;
}

RationalMatrix painleve2_2_printed_U2(const PII2Coordinates& p) {
  RationalMatrix U(2);
  const cplx q = p.x1 * p.y2;
  U.set_poly({0.5 * m2(-q, -kSqrt2 * p.x3, -kSqrt2 * p.y3, q), 0.5 * m2(0.0, -kSqrt2 * p.x1, -kSqrt2 * p.y2, 0.0),
              0.5 * sigma3()});
  return U;
}

cplx painleve2_2_printed_H1(const PII2Reduced& q, cplx t1, cplx t2) {
  const cplx u1 = q.u1, u2 = q.u2, v1 = q.v1, v2 = q.v2, a = q.a;
  return (1.5 * v2 * u1 * u1 - t2 * u1 + 2.0 * u2) * a - 2.0 * t1 * u1 * v2 +
         (u1 * u1 * v1 + u1 * u2 * v2 - v2) * t2 - 1.5 * u1 * u1 * u1 * v1 * v2 - 1.5 * u1 * u1 * u2 * v2 * v2 -
         2.0 * u1 * u2 * v1 + 1.5 * u1 * v2 * v2 - 2.0 * u2 * u2 * v2 + 2.0 * v1;
}

cplx painleve2_2_printed_H2(const PII2Reduced& q, cplx t1, cplx t2) {
  const cplx u1 = q.u1, u2 = q.u2, v1 = q.v1, v2 = q.v2, a = q.a;
  const cplx s = u1 * u1 * v1 + u1 * u2 * v2 - v2;
  return 0.5 * a * a * u1 * u1 + (-u1 * t1 - t2 - u1 * s) * a + s * t1 + 0.25 * t2 * t2 * u1 * v2 +
         (-0.25 * v2 * v2 * u1 * u1 + 0.5 * u1 * v1 + 0.5 * u2 * v2) * t2 + 0.5 * std::pow(u1, 4) * v1 * v1 +
         u1 * u1 * u1 * u2 * v1 * v2 + (1.0 / 16.0) * v2 * v2 * v2 * u1 * u1 * u1 + 0.5 * u1 * u1 * u2 * u2 * v2 * v2 -
         1.25 * u1 * u1 * v1 * v2 - 1.25 * u1 * u2 * v2 * v2 + 0.5 * v2 * v2 + u2 * v1;
}

Direction painleve2_2_t1_direction() {
  return {"t1",
          {{DeformationParameter::irregular(kInf, 1, 0), 1.0}, {DeformationParameter::irregular(kInf, 1, 1), -1.0}}};
}

Direction painleve2_2_t2_direction() {
  return {"t2",
          {{DeformationParameter::irregular(kInf, 2, 0), 1.0}, {DeformationParameter::irregular(kInf, 2, 1), -1.0}}};
}

namespace {

cplx take(std::map<std::string, cplx>& rest, const std::string& key, cplx fallback) {
  auto it = rest.find(key);
  if (it == rest.end()) return fallback;
  const cplx v = it->second;
  rest.erase(it);
  return v;
}

Mat take_residue(std::map<std::string, cplx>& rest, const std::string& prefix, const Mat& fallback) {
  Mat m = fallback;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      m(a, b) = take(rest, prefix + "_" + std::to_string(a + 1) + std::to_string(b + 1), fallback(a, b));
    }
  }
  return m;
}

std::map<std::string, cplx> coordinates_of(const PIICoordinates& p) {
  return {{"x1", p.x1}, {"x2", p.x2}, {"y1", p.y1}, {"y2", p.y2}, {"t", p.t}};
}

std::map<std::string, cplx> coordinates_of(const PII2Coordinates& p) {
  return {{"x1", p.x1}, {"x2", p.x2}, {"x3", p.x3}, {"y1", p.y1},
          {"y2", p.y2}, {"y3", p.y3}, {"t1", p.t1}, {"t2", p.t2}};
}

}  // namespace

std::vector<std::string> preset_names() { return {"schlesinger", "fuchsian_inf", "pII", "pII2"}; }

Preset make_preset(const std::string& name, const std::map<std::string, cplx>& coordinates) {
  std::map<std::string, cplx> rest = coordinates;
  Preset p;
  p.name = name;
  if (name == "schlesinger") {
    const cplx c1 = take(rest, "c1", 0.0);
    const cplx c2 = take(rest, "c2", 1.0);
    const Mat L1 = take_residue(rest, "L1", m2(0.3, 0.2, 0.5, -0.1));
    const Mat L2 = take_residue(rest, "L2", m2(0.1, -0.4, 0.25, 0.2));
    p.L = schlesinger({c1, c2}, {L1, L2});
    p.coordinates = {{"c1", c1}, {"c2", c2}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const std::string ab = "_" + std::to_string(a + 1) + std::to_string(b + 1);
        p.coordinates["L1" + ab] = L1(a, b);
        p.coordinates["L2" + ab] = L2(a, b);
      }
    }
    p.directions = {{"c1", pole_direction(0)}, {"c2", pole_direction(1)}};
  } else if (name == "fuchsian_inf") {
    Eigen::VectorXcd b(2);
    b << take(rest, "b1", 1.0), take(rest, "b2", -0.5);
    const cplx c1 = take(rest, "c1", 0.0);
    const Mat L1 = take_residue(rest, "L1", m2(0.2, 0.3, -0.4, 0.15));
    p.L = fuchsian_with_infinity(b, {c1}, {L1});
    p.coordinates = {{"b1", b(0)}, {"b2", b(1)}, {"c1", c1}};
    for (int a = 0; a < 2; ++a) {
      for (int k = 0; k < 2; ++k) p.coordinates["L1_" + std::to_string(a + 1) + std::to_string(k + 1)] = L1(a, k);
    }
    p.directions = {{"c1", pole_direction(0)}, {"b1", infinity_direction(0)}, {"b2", infinity_direction(1)}};
  } else if (name == "pII") {
    PIICoordinates c{take(rest, "x1", 0.3), take(rest, "x2", 1.0), take(rest, "y1", -0.2), take(rest, "y2", 0.4),
                     take(rest, "t", 0.0)};
    p.L = painleve2(c);
    p.coordinates = coordinates_of(c);
    p.directions = {{"t", painleve2_t_direction()}};
  } else if (name == "pII2") {
    PII2Coordinates c{take(rest, "x1", 0.3),  take(rest, "x2", -0.2), take(rest, "x3", 1.0), take(rest, "y1", 0.25),
                      take(rest, "y2", -0.15), take(rest, "y3", 0.1), take(rest, "t1", 0.0), take(rest, "t2", 0.0)};
    p.L = painleve2_2(c);
    p.coordinates = coordinates_of(c);
    p.directions = {{"t1", painleve2_2_t1_direction()}, {"t2", painleve2_2_t2_direction()}};
  } else {
    throw InputError("unknown preset '" + name + "'");
  }
  if (!rest.empty()) throw InputError("unknown coordinate '" + rest.begin()->first + "' for preset " + name);
  return p;
}

}  // namespace isomon
