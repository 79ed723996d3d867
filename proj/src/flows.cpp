#include "isomon/flows.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>

#include "isomon/errors.hpp"
#include "isomon/formal.hpp"

namespace isomon {

std::string DeformationParameter::label() const {
  const std::string n = nu == kInf ? "inf" : std::to_string(nu + 1);
  if (kind == Kind::PoleLocation) return "c[" + n + "]";
  return "t[" + n + "][" + std::to_string(j) + "][" + std::to_string(a + 1) + "]";
}

Direction Direction::single(const DeformationParameter& p) { return {p.label(), {{p, 1.0}}}; }

namespace {

ChartId chart_of(int nu) { return nu == kInf ? ChartId::at_infinity() : ChartId::finite(nu); }

}  // namespace

void check_parameter(const RationalLaxMatrix& L, const DeformationParameter& p) {
  const int npoles = static_cast<int>(L.poles().size());
  if (p.kind == DeformationParameter::Kind::PoleLocation) {
    if (p.nu < 0 || p.nu >= npoles) throw InputError("pole index out of range in " + p.label());
    return;
  }
  if (p.nu != kInf && (p.nu < 0 || p.nu >= npoles)) throw InputError("pole index out of range in " + p.label());
  if (p.nu == kInf && L.infinity().d < 1) throw ChartError("no irregular data at infinity for " + p.label());
  if (p.j == 0) {
    throw InputError(p.label() + " is an exponent of formal monodromy, not a deformation parameter");
  }
  const int d = L.rank(chart_of(p.nu));
  if (p.j < 1 || p.j > d) throw InputError("j out of range in " + p.label());
  if (p.a < 0 || p.a >= L.dim()) throw InputError("branch index out of range in " + p.label());
}

RationalMatrix deformation_matrix(const RationalLaxMatrix& L, const Direction& dir, int depth) {
  RationalMatrix U(L.dim());
  std::map<int, FormalSolution> cache;
  for (const auto& [p, w] : dir.terms) {
    check_parameter(L, p);
    if (p.kind == DeformationParameter::Kind::PoleLocation) {
      U += w * deformation_matrix_V(L, p.nu);
      continue;
    }
    auto it = cache.find(p.nu);
    if (it == cache.end()) {
      const ChartId chart = chart_of(p.nu);
      const int d = L.rank(chart);
      const int dep = depth > 0 ? std::max(depth, d + 1) : default_formal_depth(d);
      it = cache.emplace(p.nu, formal_solution(L, chart, dep)).first;
    }
    U += w * deformation_matrix_U(L, it->second, p.j, p.a);
  }
  return U;
}

RationalMatrix explicit_derivative(const RationalLaxMatrix& L, const Direction& dir, int depth) {
  return deformation_matrix(L, dir, depth).derivative();
}

cplx direction_hamiltonian(const RationalLaxMatrix& L, const Direction& dir, int depth) {
  cplx acc = 0.0;
  std::map<int, std::vector<EigenExpansion>> cache;
  for (const auto& [p, w] : dir.terms) {
    check_parameter(L, p);
    if (p.kind == DeformationParameter::Kind::PoleLocation) {
      acc += w * hamiltonian_c(L, p.nu);
      continue;
    }
    const ChartId chart = chart_of(p.nu);
    auto it = cache.find(p.nu);
    if (it == cache.end()) it = cache.emplace(p.nu, eigen_expansions(L, chart, depth)).first;
    const auto h = hamiltonians_from_branch(chart, L.rank(chart), it->second[static_cast<std::size_t>(p.a)].series);
    acc += w * h[static_cast<std::size_t>(p.j - 1)];
  }
  return acc;
}

cplx parameter_value(const RationalLaxMatrix& L, const DeformationParameter& p, int depth) {
  check_parameter(L, p);
  if (p.kind == DeformationParameter::Kind::PoleLocation) return L.poles()[static_cast<std::size_t>(p.nu)].c;
  const ChartId chart = chart_of(p.nu);
  const auto branches = eigen_expansions(L, chart, depth);
  return casimirs_from_branch(chart, L.rank(chart), branches[static_cast<std::size_t>(p.a)].series)[static_cast<std::size_t>(p.j)];
}

namespace {

double lax_scale(const RationalLaxMatrix& L) { return std::max(1.0, L.as_rational().max_abs()); }

std::vector<cplx> pole_velocities(const RationalLaxMatrix& L, const Direction& dir) {
  std::vector<cplx> dc(L.poles().size(), 0.0);
  for (const auto& [p, w] : dir.terms) {
    if (p.kind == DeformationParameter::Kind::PoleLocation) dc[static_cast<std::size_t>(p.nu)] += w;
  }
  return dc;
}

}  // namespace

VectorField vector_field(const RationalLaxMatrix& L, const Direction& dir, int depth, double tangent_tol) {
  VectorField vf;
  const RationalMatrix Lr = L.as_rational();
  vf.U = deformation_matrix(L, dir, depth);
  vf.F = commutator(vf.U, Lr) + vf.U.derivative();
  vf.dc = pole_velocities(L, dir);

  // At fixed z, a moving pole contributes (k-1) A_{k-1} c' to the (z-c)^-k coefficient.
  RationalMatrix adjusted = vf.F;
  for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
    if (vf.dc[nu] == cplx(0.0)) continue;
    const auto& pole = L.poles()[nu];
    std::vector<Mat> corr(static_cast<std::size_t>(pole.d + 2), Mat::Zero(L.dim(), L.dim()));
    for (int k = 2; k <= pole.d + 2; ++k) {
      corr[static_cast<std::size_t>(k - 1)] = -vf.dc[nu] * static_cast<double>(k - 1) * pole.coeffs[static_cast<std::size_t>(k - 2)];
    }
    adjusted.add_part(pole.c, corr);
  }
  const PhaseSpace space(L);
  vf.dx = space.coords_of(adjusted, &vf.non_tangent);
  const double scale = std::max(lax_scale(L), vf.F.max_abs());
  if (vf.non_tangent > tangent_tol * scale) {
    throw NonTangentError("vector field for " + dir.name + " leaves the shape of L (non-tangent part " +
                          std::to_string(vf.non_tangent) + ")");
  }
  return vf;
}

DeviationReport explicit_derivative_check(const RationalLaxMatrix& L, const Direction& dir,
                                          const RationalMatrix& expected, int depth) {
  const RationalMatrix got = explicit_derivative(L, dir, depth);
  DeviationReport rep{"explicit_derivative[" + dir.name + "]", 0.0};
  const cplx zs[] = {{0.37, 0.81}, {-1.3, 0.4}, {2.1, -0.7}, {0.05, -1.9}, {3.3, 2.2}};
  for (cplx z : zs) {
    rep.max_deviation = std::max(rep.max_deviation, (got.evaluate(z) - expected.evaluate(z)).cwiseAbs().maxCoeff());
  }
  return rep;
}

namespace {

double min_leading_gap(const RationalLaxMatrix& L) {
  double g = std::numeric_limits<double>::infinity();
  for (ChartId chart : L.charts()) {
    const Mat& lead = L.leading(chart);
    const Eigen::VectorXcd ev =
        chart.infinity ? Eigen::VectorXcd(lead.diagonal()) : Eigen::ComplexEigenSolver<Mat>(lead, false).eigenvalues();
    for (int a = 0; a < ev.size(); ++a) {
      for (int b = a + 1; b < ev.size(); ++b) g = std::min(g, std::abs(ev(a) - ev(b)));
    }
  }
  return g;
}

double min_pole_distance(const std::vector<cplx>& c) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) g = std::min(g, std::abs(c[i] - c[j]));
  }
  return g;
}

}  // namespace

FlowTrajectory integrate_flow(const RationalLaxMatrix& L0, const Direction& dir, cplx p0, cplx target,
                              const FlowOptions& opts) {
  require_valid(L0);
  for (const auto& term : dir.terms) check_parameter(L0, term.first);
  const PhaseSpace space(L0);
  const int n = space.size();
  const int npoles = static_cast<int>(L0.poles().size());
  const int r = L0.dim();
  const cplx delta = target - p0;

  Eigen::VectorXcd y0(n + npoles + 1 + (opts.track_basepoint ? r * r : 0));
  y0.head(n) = space.flatten(L0);
  for (int nu = 0; nu < npoles; ++nu) y0(n + nu) = L0.poles()[static_cast<std::size_t>(nu)].c;
  y0(n + npoles) = 0.0;
  if (opts.track_basepoint) {
    const Mat I = Mat::Identity(r, r);
    y0.tail(r * r) = Eigen::Map<const Eigen::VectorXcd>(I.data(), r * r);
  }

  const auto lax_of = [&](const Eigen::VectorXcd& y) {
    std::vector<cplx> c(static_cast<std::size_t>(npoles));
    for (int nu = 0; nu < npoles; ++nu) c[static_cast<std::size_t>(nu)] = y(n + nu);
    return space.unflatten(y.head(n), c);
  };

  const ComplexRhs rhs = [&](double, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    const RationalLaxMatrix L = lax_of(y);
    dy = Eigen::VectorXcd::Zero(y.size());
    const std::vector<cplx> dc = pole_velocities(L, dir);
    for (int nu = 0; nu < npoles; ++nu) dy(n + nu) = delta * dc[static_cast<std::size_t>(nu)];
    if (opts.frozen_residues) return;
    const VectorField vf = vector_field(L, dir, opts.depth);
    dy.head(n) = delta * vf.dx;
    dy(n + npoles) = delta * direction_hamiltonian(L, dir, opts.depth);
    if (opts.track_basepoint) {
      const Mat Ub = vf.U.evaluate(opts.basepoint);
      const Mat C = Eigen::Map<const Mat>(y.tail(r * r).data(), r, r);
      const Mat dC = delta * Ub * C;
      dy.tail(r * r) = Eigen::Map<const Eigen::VectorXcd>(dC.data(), r * r);
    }
  };

  Eigen::VectorXcd last_good = y0;
  double last_s = 0.0;
  const StateGuard guard = [&](double s, const Eigen::VectorXcd& y) {
    const RationalLaxMatrix L = lax_of(y);
    std::vector<cplx> c(static_cast<std::size_t>(npoles));
    for (int nu = 0; nu < npoles; ++nu) c[static_cast<std::size_t>(nu)] = y(n + nu);
    const double pd = min_pole_distance(c);
    const double gap = min_leading_gap(L);
    if (pd < opts.guard || gap < opts.guard) {
      throw PathAbortError("flow " + dir.name + " aborted near s = " + std::to_string(s) + " (pole distance " +
                           std::to_string(pd) + ", eigenvalue gap " + std::to_string(gap) +
                           "); last good s = " + std::to_string(last_s));
    }
    last_good = y;
    last_s = s;
  };

  IntegratorOptions io;
  io.abs_tol = opts.tol;
  io.rel_tol = opts.tol;
  io.initial_step = 1.0 / std::max(opts.checkpoints, 1) / 4.0;
  const auto res = integrate_complex(rhs, y0, 0.0, uniform_checkpoints(0.0, 1.0, std::max(opts.checkpoints, 1)), io, guard);

  FlowTrajectory traj;
  traj.direction = dir;
  traj.p0 = p0;
  traj.target = target;
  traj.steps = res.accepted;
  for (std::size_t k = 0; k < res.s.size(); ++k) {
    FlowSample smp;
    smp.s = res.s[k];
    smp.param = p0 + smp.s * delta;
    smp.L = lax_of(res.y[k]);
    smp.hamiltonian = direction_hamiltonian(smp.L, dir, opts.depth);
    smp.log_tau = res.y[k](n + npoles);
    smp.C = opts.track_basepoint ? Mat(Eigen::Map<const Mat>(res.y[k].tail(r * r).data(), r, r)) : Mat::Identity(r, r);
    traj.samples.push_back(std::move(smp));
  }
  return traj;
}

RationalLaxMatrix flow_by(const RationalLaxMatrix& L0, const Direction& dir, cplx delta, const FlowOptions& opts) {
  FlowOptions o = opts;
  o.checkpoints = 1;
  return integrate_flow(L0, dir, 0.0, delta, o).samples.back().L;
}

double zero_curvature_residual(const RationalLaxMatrix& L, const Direction& dir, const std::vector<cplx>& zs,
                               double h, const FlowOptions& opts) {
  FlowOptions o = opts;
  o.checkpoints = 2;
  const auto fwd = integrate_flow(L, dir, 0.0, 2.0 * h, o);
  const auto bwd = integrate_flow(L, dir, 0.0, -2.0 * h, o);
  const VectorField vf = vector_field(L, dir, opts.depth);
  double worst = 0.0;
  for (cplx z : zs) {
    const Mat dL = (-fwd.samples[2].L.eval_at(z) + 8.0 * fwd.samples[1].L.eval_at(z) -
                    8.0 * bwd.samples[1].L.eval_at(z) + bwd.samples[2].L.eval_at(z)) /
                   (12.0 * h);
    const Mat F = vf.F.evaluate(z);
    const double scale = std::max(1.0, F.cwiseAbs().maxCoeff());
    worst = std::max(worst, (dL - F).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

double flow_commutation(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                        const FlowOptions& opts) {
  const RationalLaxMatrix Lpq = flow_by(flow_by(L, p, h, opts), q, h, opts);
  const RationalLaxMatrix Lqp = flow_by(flow_by(L, q, h, opts), p, h, opts);
  const PhaseSpace space(L);
  double worst = (space.flatten(Lpq) - space.flatten(Lqp)).cwiseAbs().maxCoeff();
  for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
    worst = std::max(worst, std::abs(Lpq.poles()[nu].c - Lqp.poles()[nu].c));
  }
  return worst;
}

std::vector<PIISample> pII_hamilton_flow(double u0, double v0, double a, double t0, double t1, double tol, int n) {
  const ComplexRhs rhs = [a](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    dy.resize(2);
    dy(0) = y(1) + y(0) * y(0) + t / 2.0;
    dy(1) = -2.0 * y(0) * y(1) + a;
  };
  const StateGuard guard = [](double t, const Eigen::VectorXcd& y) {
    if (std::abs(y(0)) > 1e8) throw PainlevePoleError("movable pole of u near t = " + std::to_string(t), t);
  };
  IntegratorOptions io;
  io.abs_tol = tol;
  io.rel_tol = tol;
  io.initial_step = (t1 - t0) / std::max(n, 1) / 4.0;
  Eigen::VectorXcd y0(2);
  y0 << u0, v0;
  const auto res = integrate_complex(rhs, y0, t0, uniform_checkpoints(t0, t1, n), io, guard);
  std::vector<PIISample> out;
  for (std::size_t k = 0; k < res.s.size(); ++k) {
    const double t = res.s[k];
    const double u = res.y[k](0).real();
    const double v = res.y[k](1).real();
    out.push_back({t, u, v, 0.5 * v * v + 0.5 * (t + 2.0 * u * u) * v - a * u});
  }
  return out;
}

int symplectic_dimension(const RationalLaxMatrix& L) {
  const int r = L.dim();
  int sum_d = 0;
  for (const auto& p : L.poles()) sum_d += p.d;
  const int N = static_cast<int>(L.poles().size());
  return r * (r - 1) * (L.infinity().d + sum_d + N - 1);
}

}  // namespace isomon
