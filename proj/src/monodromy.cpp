#include "isomon/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isomon/errors.hpp"
#include "isomon/integrator.hpp"

namespace isomon {

double segment_distance(cplx a, cplx b, cplx p) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * ab));
}

Mat transport(const RationalLaxMatrix& L, const std::vector<cplx>& polyline, const TransportOptions& opts) {
  const int r = L.dim();
  Mat psi = Mat::Identity(r, r);
  IntegratorOptions io;
  io.abs_tol = opts.tol;
  io.rel_tol = opts.tol;
  io.initial_step = 0.05;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
    const cplx a = polyline[k];
    const cplx b = polyline[k + 1];
    for (const auto& p : L.poles()) {
      const double dist = segment_distance(a, b, p.c);
      if (dist < opts.clearance) {
        throw ClearanceError("path segment passes within " + std::to_string(dist) + " of a pole");
      }
    }
    if (a == b) continue;
    const ComplexRhs rhs = [&](double s, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
      const Mat P = Eigen::Map<const Mat>(y.data(), r, r);
      const Mat dP = (b - a) * L.eval_at(a + s * (b - a)) * P;
      dy = Eigen::Map<const Eigen::VectorXcd>(dP.data(), r * r);
    };
    const Eigen::VectorXcd y0 = Eigen::Map<const Eigen::VectorXcd>(psi.data(), r * r);
    const auto res = integrate_complex(rhs, y0, 0.0, {1.0}, io);
    psi = Eigen::Map<const Mat>(res.y.back().data(), r, r);
  }
  return psi;
}

namespace {

cplx pole_center(const RationalLaxMatrix& L) {
  cplx c = 0.0;
  for (const auto& p : L.poles()) c += p.c;
  return L.poles().empty() ? c : c / static_cast<double>(L.poles().size());
}

double pole_spread(const RationalLaxMatrix& L, cplx center) {
  double s = 0.0;
  for (const auto& p : L.poles()) s = std::max(s, std::abs(p.c - center));
  return s;
}

}  // namespace

cplx default_basepoint(const RationalLaxMatrix& L) {
  const cplx center = pole_center(L);
  return center - cplx(0.0, pole_spread(L, center) + 1.0);
}

std::vector<cplx> canonical_loop(const RationalLaxMatrix& L, int nu, cplx base, int sides) {
  const auto& poles = L.poles();
  const cplx c = poles.at(static_cast<std::size_t>(nu)).c;
  double R = std::abs(base - c);
  for (std::size_t mu = 0; mu < poles.size(); ++mu) {
    if (static_cast<int>(mu) != nu) R = std::min(R, std::abs(poles[mu].c - c));
  }
  const double rho = 0.4 * R;
  const double phi = std::arg(base - c);
  std::vector<cplx> path{base};
  for (int k = 0; k <= sides; ++k) {
    path.push_back(c + std::polar(rho, phi + 2.0 * std::numbers::pi * k / sides));
  }
  path.push_back(base);
  return path;
}

std::vector<cplx> enclosing_loop(const RationalLaxMatrix& L, cplx base, int sides) {
  const cplx center = pole_center(L);
  const double R = std::abs(base - center);
  const double phi = std::arg(base - center);
  std::vector<cplx> path;
  for (int k = 0; k <= sides; ++k) path.push_back(center + std::polar(R, phi + 2.0 * std::numbers::pi * k / sides));
  path.back() = base;
  path.front() = base;
  return path;
}

MonodromySet monodromy_set(const RationalLaxMatrix& L, cplx base, const TransportOptions& opts) {
  MonodromySet ms;
  ms.base = base;
  const auto& poles = L.poles();
  const int N = static_cast<int>(poles.size());
  for (int nu = 0; nu < N; ++nu) {
    ms.M.push_back(transport(L, canonical_loop(L, nu, base), opts));
    const cplx expected = std::exp(cplx(0.0, 2.0 * std::numbers::pi) * poles[static_cast<std::size_t>(nu)].coeffs[0].trace());
    ms.det_deviation.push_back(std::abs(ms.M.back().determinant() - expected));
    ms.order.push_back(nu);
  }
  std::sort(ms.order.begin(), ms.order.end(), [&](int a, int b) {
    const cplx ca = poles[static_cast<std::size_t>(a)].c, cb = poles[static_cast<std::size_t>(b)].c;
    return ca.real() != cb.real() ? ca.real() < cb.real() : ca.imag() < cb.imag();
  });
  if (N > 0) {
    ms.enclosing = transport(L, enclosing_loop(L, base), opts);
    // The loops factor the enclosing loop in the order their rays leave the
    // base, clockwise; this agrees with `order` unless rays fan out unevenly.
    const cplx inward = pole_center(L) - base;
    const auto angle = [&](int nu) { return std::arg((poles[static_cast<std::size_t>(nu)].c - base) / inward); };
    std::vector<int> rays = ms.order;
    std::stable_sort(rays.begin(), rays.end(), [&](int a, int b) { return angle(a) > angle(b); });
    Mat prod = Mat::Identity(L.dim(), L.dim());
    for (int nu : rays) prod = prod * ms.M[static_cast<std::size_t>(nu)];
    ms.product_deviation = (prod - ms.enclosing).cwiseAbs().maxCoeff();
  }
  return ms;
}

InvarianceReport invariance_certificate(const FlowTrajectory& traj, cplx base, const TransportOptions& opts) {
  InvarianceReport rep;
  std::vector<Mat> ref;
  for (const auto& smp : traj.samples) {
    const MonodromySet ms = monodromy_set(smp.L, base, opts);
    const Mat Cinv = smp.C.inverse();
    double worst = 0.0;
    for (std::size_t nu = 0; nu < ms.M.size(); ++nu) {
      const Mat Miso = Cinv * ms.M[nu] * smp.C;
      if (ref.size() < ms.M.size()) {
        ref.push_back(Miso);
      } else {
        worst = std::max(worst, (Miso - ref[nu]).cwiseAbs().maxCoeff());
      }
    }
    rep.per_sample.push_back(worst);
    rep.max_deviation = std::max(rep.max_deviation, worst);
  }
  return rep;
}

}  // namespace isomon
