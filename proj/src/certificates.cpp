#include "isomon/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <map>

#include <Eigen/Eigenvalues>

#include "isomon/errors.hpp"
#include "isomon/formal.hpp"
#include "isomon/spectral.hpp"
#include "isomon/tau.hpp"

namespace isomon {

Certificate make_certificate(std::string name, double value, double tol, long samples, std::string detail) {
  Certificate c;
  c.name = std::move(name);
  c.value = value;
  c.tol = tol;
  c.pass = std::isfinite(value) && value <= tol;
  c.samples = samples;
  c.detail = std::move(detail);
  return c;
}

Certificate make_lower_bound(std::string name, double value, double tol, long samples, std::string detail) {
  Certificate c = make_certificate(std::move(name), value, tol, samples, std::move(detail));
  c.pass = std::isfinite(value) && value >= tol;
  return c;
}

Certificate make_report(std::string name, double value, std::string detail) {
  Certificate c = make_certificate(std::move(name), value, 0.0, 1, std::move(detail));
  c.pass = true;
  c.reported_only = true;
  return c;
}

bool SuiteReport::pass() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.pass; });
}

std::string LaxShape::label() const {
  std::string s = "r=" + std::to_string(r) + " d=[";
  for (std::size_t k = 0; k < pole_ranks.size(); ++k) s += (k ? "," : "") + std::to_string(pole_ranks[k]);
  return s + "] d_inf=" + std::to_string(d_inf);
}

namespace {

cplx cnormal(Rng& rng, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  return {nd(rng), nd(rng)};
}

Mat cmatrix(Rng& rng, int r, double scale) {
  Mat m(r, r);
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) m(a, b) = cnormal(rng, scale);
  }
  return m;
}

double min_gap(const Eigen::VectorXcd& ev) {
  double g = std::numeric_limits<double>::infinity();
  for (int a = 0; a < ev.size(); ++a) {
    for (int b = a + 1; b < ev.size(); ++b) g = std::min(g, std::abs(ev(a) - ev(b)));
  }
  return g;
}

double min_integer_distance(const Eigen::VectorXcd& ev) {
  double g = std::numeric_limits<double>::infinity();
  for (int a = 0; a < ev.size(); ++a) {
    for (int b = 0; b < ev.size(); ++b) {
      if (a == b) continue;
      const cplx d = ev(a) - ev(b);
      g = std::min(g, std::abs(d - std::round(d.real())));
    }
  }
  return g;
}


std::string key_name(const char* kind, const InvariantKey& k) {
  const auto [nu, j, a] = k;
  return std::string(kind) + "[" + (nu == kInf ? std::string("inf") : std::to_string(nu + 1)) + "][" +
         std::to_string(j) + "][" + std::to_string(a + 1) + "]";
}

// A point at least `margin` from every pole, inside the box |Re|, |Im| <= 2.5 about the pole center.
cplx random_regular_point(const RationalLaxMatrix& L, Rng& rng, double margin) {
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  for (;;) {
    const cplx z(u(rng), u(rng));
    bool ok = true;
    for (const auto& p : L.poles()) ok = ok && std::abs(z - p.c) >= margin;
    if (ok) return z;
  }
}

std::vector<cplx> sample_points(const RationalLaxMatrix& L, int n) {
  std::vector<cplx> zs;
  double radius = 1.7;
  for (const auto& p : L.poles()) radius = std::max(radius, std::abs(p.c) + 0.9);
  for (int k = 0; k < n; ++k) {
    cplx z = std::polar(radius - 0.35 * (k % 3), 0.3 + 2.0 * std::numbers::pi * k / n);
    for (const auto& p : L.poles()) {
      if (std::abs(z - p.c) < 0.3) z += 0.5;
    }
    zs.push_back(z);
  }
  return zs;
}

}  // namespace

LaxShape random_shape(Rng& rng) {
  std::uniform_int_distribution<int> r(2, 3), n(0, 2), d(0, 2);
  LaxShape s;
  s.r = r(rng);
  const int N = n(rng);
  for (int k = 0; k < N; ++k) s.pole_ranks.push_back(d(rng));
  s.d_inf = d(rng);
  if (N == 0 && s.d_inf == 0) s.d_inf = 1 + d(rng) % 2;
  return s;
}

RationalLaxMatrix random_lax(const LaxShape& shape, Rng& rng) {
  const int r = shape.r;
  std::vector<PoleRecord> poles;
  for (int d : shape.pole_ranks) {
    PoleRecord p;
    p.d = d;
    for (;;) {
      p.c = cnormal(rng, 1.0);
      bool ok = std::abs(p.c) < 2.0;
      for (const auto& q : poles) ok = ok && std::abs(p.c - q.c) >= 0.8;
      if (ok) break;
    }
    for (;;) {
      p.coeffs.clear();
      for (int k = 0; k <= d; ++k) p.coeffs.push_back(cmatrix(rng, r, 0.5));
      const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Mat>(p.coeffs.back(), false).eigenvalues();
      if (min_gap(ev) < 0.3) continue;
      if (d == 0 && min_integer_distance(ev) < 0.05) continue;
      break;
    }
    poles.push_back(std::move(p));
  }
  InfinityRecord inf;
  inf.d = shape.d_inf;
  for (int j = 0; j + 1 < shape.d_inf; ++j) inf.coeffs.push_back(cmatrix(rng, r, 0.5));
  if (shape.d_inf >= 1) {
    Eigen::VectorXcd diag(r);
    do {
      for (int a = 0; a < r; ++a) diag(a) = cnormal(rng, 1.0);
    } while (min_gap(diag) < 0.3);
    inf.coeffs.push_back(Mat(diag.asDiagonal()));
  }
  RationalLaxMatrix L(r, std::move(poles), std::move(inf));
  require_valid(L);
  return L;
}

// ---------------------------------------------------------------------------

Certificate bracket_tower_certificate(const RationalLaxMatrix& L, int samples, Rng& rng, double tol) {
  const PoissonStructure ps(L);
  const PhaseSpace& space = ps.space();
  const Eigen::VectorXcd x = space.flatten(L);
  const int r = L.dim();
  std::uniform_int_distribution<int> idx(0, r - 1);

  struct Term {
    int i;
    cplx phi;
  };
  const auto terms_for = [&](int a, int b, cplx z) {
    std::vector<Term> out;
    for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
      const auto& p = L.poles()[nu];
      for (int j = 1; j <= p.d + 1; ++j) {
        const int i = space.index_of(CoefficientIndex::finite_pole(static_cast<int>(nu), j, a, b));
        if (i >= 0) out.push_back({i, std::pow(z - p.c, -j)});
      }
    }
    for (int j = 2; j <= L.infinity().d + 1; ++j) {
      const int i = space.index_of(CoefficientIndex::infinity_part(j, a, b));
      if (i >= 0) out.push_back({i, -std::pow(z, j - 2)});
    }
    return out;
  };

  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int a = idx(rng), b = idx(rng), c = idx(rng), d = idx(rng);
    const cplx z = random_regular_point(L, rng, 0.3);
    cplx w;
    do {
      w = random_regular_point(L, rng, 0.3);
    } while (std::abs(z - w) < 0.2);
    const cplx gen = bracket_generating(L, a, b, z, c, d, w);
    cplx sum = 0.0;
    for (const auto& ti : terms_for(a, b, z)) {
      for (const auto& tk : terms_for(c, d, w)) sum += ti.phi * tk.phi * ps.bracket(x, ti.i, tk.i);
    }
    worst = std::max(worst, std::abs(gen - sum) / std::max(1.0, std::abs(gen)));
  }
  return make_certificate("bracket_tower", worst, tol, samples);
}

std::vector<Certificate> poisson_axiom_certificates(const RationalLaxMatrix& L, int samples, Rng& rng) {
  const PoissonStructure ps(L);
  const PhaseSpace& space = ps.space();
  const int n = space.size();
  const Eigen::VectorXcd x0 = space.flatten(L);
  const Mat Pi = ps.matrix(x0);
  const auto rvec = [&] {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal(rng, 1.0);
    return v;
  };
  // f(x) = alpha.x + (beta.x)(gamma.x)
  struct Quad {
    Eigen::VectorXcd alpha, beta, gamma;
    cplx value(const Eigen::VectorXcd& x) const {
      return (alpha.transpose() * x)(0, 0) +
             (beta.transpose() * x)(0, 0) * (gamma.transpose() * x)(0, 0);
    }
    Eigen::VectorXcd grad(const Eigen::VectorXcd& x) const {
      return alpha + beta * (gamma.transpose() * x)(0, 0) + gamma * (beta.transpose() * x)(0, 0);
    }
  };
  const auto br = [&](const Eigen::VectorXcd& gf, const Eigen::VectorXcd& gg) { return (gf.transpose() * Pi * gg)(0, 0); };

  double anti = 0.0, leib = 0.0, jac = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Quad f{rvec(), rvec(), rvec()}, g{rvec(), rvec(), rvec()}, h{rvec(), rvec(), rvec()};
    const Eigen::VectorXcd gf = f.grad(x0), gg = g.grad(x0), gh = h.grad(x0);
    const cplx fg = br(gf, gg), gf_ = br(gg, gf);
    anti = std::max(anti, std::abs(fg + gf_) / std::max(1.0, std::abs(fg)));

    // Leibniz with the product's gradient taken numerically through the Lax matrix.
    const ScalarObservable prod{"fg", [&](const RationalLaxMatrix& M) {
                                  const Eigen::VectorXcd y = space.flatten(M);
                                  return f.value(y) * g.value(y);
                                },
                                nullptr};
    const Eigen::VectorXcd gprod = observable_gradient(L, prod);
    const cplx lhs = br(gprod, gh);
    const cplx rhs = f.value(x0) * br(gg, gh) + g.value(x0) * br(gf, gh);
    leib = std::max(leib, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));

    // Jacobi on linear observables: {a,b}(x) = a^T Pi(x) b is linear in x.
    const Eigen::VectorXcd a = rvec(), b = rvec(), c = rvec();
    const auto grad_bracket = [&](const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) {
      Eigen::VectorXcd out(n);
      for (int m = 0; m < n; ++m) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e(m) = 1.0;
        out(m) = (u.transpose() * ps.matrix(e) * v)(0, 0);
      }
      return out;
    };
    const cplx j1 = br(a, grad_bracket(b, c)), j2 = br(b, grad_bracket(c, a)), j3 = br(c, grad_bracket(a, b));
    const double scale = std::max({1.0, std::abs(j1), std::abs(j2), std::abs(j3)});
    jac = std::max(jac, std::abs(j1 + j2 + j3) / scale);
  }
  return {make_certificate("antisymmetry", anti, 1e-10, samples), make_certificate("leibniz", leib, 1e-10, samples),
          make_certificate("jacobi", jac, 1e-9, samples)};
}

// ---------------------------------------------------------------------------

InvariantGradients invariant_gradients(const RationalLaxMatrix& L, int depth) {
  InvariantGradients out;
  const InvariantTable tab = extract_invariants(L, depth);
  for (const auto& [k, v] : tab.t) {
    out.names.push_back(key_name("t", k));
    out.casimir.push_back(!(std::get<0>(k) == kInf && std::get<1>(k) == 0));
    out.hamiltonian.push_back(false);
  }
  for (const auto& [k, v] : tab.H_t) {
    out.names.push_back(key_name("H_t", k));
    out.casimir.push_back(false);
    out.hamiltonian.push_back(true);
  }
  for (std::size_t nu = 0; nu < tab.H_c.size(); ++nu) {
    out.names.push_back("H_c[" + std::to_string(nu + 1) + "]");
    out.casimir.push_back(false);
    out.hamiltonian.push_back(true);
  }
  out.J = observable_jacobian(L, [depth](const RationalLaxMatrix& M) {
    const InvariantTable t = extract_invariants(M, depth);
    Eigen::VectorXcd v(static_cast<int>(t.t.size() + t.H_t.size() + t.H_c.size()));
    int k = 0;
    for (const auto& e : t.t) v(k++) = e.second;
    for (const auto& e : t.H_t) v(k++) = e.second;
    for (cplx h : t.H_c) v(k++) = h;
    return v;
  });
  const PoissonStructure ps(L);
  out.Pi = ps.matrix(ps.space().flatten(L));
  return out;
}

Certificate casimir_certificate(const InvariantGradients& g, int nf, Rng& rng, double tol) {
  const int n = static_cast<int>(g.Pi.rows());
  double worst = 0.0;
  long count = 0;
  for (int f = 0; f < nf; ++f) {
    Eigen::VectorXcd a(n);
    for (int i = 0; i < n; ++i) a(i) = cnormal(rng, 1.0);
    const Eigen::VectorXcd Pa = g.Pi * a;
    for (std::size_t k = 0; k < g.names.size(); ++k) {
      if (!g.casimir[k]) continue;
      worst = std::max(worst, std::abs((g.J.row(static_cast<int>(k)) * Pa)(0, 0)));
      ++count;
    }
  }
  // Pole locations are parameters: their gradient over the coordinates is zero.
  return make_certificate("casimir", worst, tol, count, "c_nu brackets vanish identically");
}

Certificate commutation_certificate(const InvariantGradients& g, double tol) {
  double worst = 0.0;
  long count = 0;
  std::string arg;
  for (std::size_t i = 0; i < g.names.size(); ++i) {
    for (std::size_t k = i + 1; k < g.names.size(); ++k) {
      if (!g.hamiltonian[i] || !g.hamiltonian[k]) continue;
      const double v = std::abs((g.J.row(static_cast<int>(i)) * g.Pi * g.J.row(static_cast<int>(k)).transpose())(0, 0));
      if (v >= worst) {
        worst = v;
        arg = g.names[i] + " vs " + g.names[k];
      }
      ++count;
    }
  }
  return make_certificate("commutation", worst, tol, count, arg);
}

std::vector<Certificate> hamiltonian_field_certificates(const RationalLaxMatrix& L, const InvariantGradients& g,
                                                        int depth) {
  const PhaseSpace space(L);
  const RationalMatrix Lr = L.as_rational();
  double worst = 0.0, worst_nt = 0.0;
  long count = 0;
  std::string arg;
  std::size_t row = 0;
  const InvariantTable tab = extract_invariants(L, depth);
  row = tab.t.size();
  const auto compare = [&](const RationalMatrix& U, const std::string& name) {
    double nt = 0.0;
    const Eigen::VectorXcd expected = space.coords_of(commutator(U, Lr), &nt);
    const Eigen::VectorXcd got = g.Pi * g.J.row(static_cast<int>(row)).transpose();
    const double dev = (got - expected).cwiseAbs().maxCoeff();
    if (dev >= worst) {
      worst = dev;
      arg = name;
    }
    worst_nt = std::max(worst_nt, nt);
    ++count;
    ++row;
  };
  std::map<int, FormalSolution> cache;
  for (const auto& [k, v] : tab.H_t) {
    const auto [nu, j, a] = k;
    const ChartId chart = nu == kInf ? ChartId::at_infinity() : ChartId::finite(nu);
    auto it = cache.find(nu);
    if (it == cache.end()) it = cache.emplace(nu, formal_solution(L, chart, depth)).first;
    compare(deformation_matrix_U(L, it->second, j, a), key_name("H_t", k));
  }
  double v_exact = 0.0, v_route = 0.0;
  for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
    const int n = static_cast<int>(nu);
    const RationalMatrix V = deformation_matrix_V(L, n);
    compare(V, "H_c[" + std::to_string(nu + 1) + "]");
    const auto& pole = L.poles()[nu];
    const PrincipalPart* part = V.part_at(pole.c);
    for (int k = 0; k <= pole.d; ++k) {
      v_exact = std::max(v_exact, (part->coeffs[static_cast<std::size_t>(k)] + pole.coeffs[static_cast<std::size_t>(k)])
                                      .cwiseAbs()
                                      .maxCoeff());
    }
    const FormalSolution fs = formal_solution(L, ChartId::finite(n), depth);
    const RationalMatrix VY = deformation_matrix_V_from_Y(L, fs);
    v_route = std::max(v_route, (VY - V).max_abs());
  }
  std::vector<Certificate> out{make_certificate("hamiltonian_vector_field", worst, 1e-7, count, arg),
                               make_report("hamiltonian_vector_field_non_tangent", worst_nt)};
  if (!L.poles().empty()) {
    out.push_back(make_certificate("V_principal_part_exact", v_exact, 0.0, static_cast<long>(L.poles().size())));
    out.push_back(make_certificate("V_from_Y", v_route, 1e-8, static_cast<long>(L.poles().size())));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Certificate> spectral_certificates(const RationalLaxMatrix& L, int depth) {
  double root = 0.0, sum = 0.0, hc = 0.0;
  for (ChartId chart : L.charts()) {
    const auto br = eigen_expansions(L, chart, depth);
    root = std::max(root, root_residual(L, chart, br));
    LaurentSeries s = br[0].series;
    for (std::size_t a = 1; a < br.size(); ++a) s = s + br[a].series;
    const MatrixSeries loc = L.local_expansion(chart, s.order() - s.valuation());
    const LaurentSeries tr = loc.trace();
    for (int k = std::max(s.valuation(), tr.valuation()); k < std::min(s.order(), tr.order()); ++k) {
      sum = std::max(sum, std::abs(s.coeff(k) - tr.coeff(k)));
    }
    if (!chart.infinity) hc = std::max(hc, std::abs(hamiltonian_c(L, chart.index) - hamiltonian_c_from_branches(br)));
  }
  std::vector<Certificate> out{make_certificate("root_residual", root, 1e-9),
                               make_certificate("branch_sum_trace", sum, 1e-10)};
  if (!L.poles().empty()) out.push_back(make_certificate("H_c_two_routes", hc, 1e-9));
  return out;
}

std::vector<Certificate> formal_certificates(const RationalLaxMatrix& L, int depth) {
  const InvariantTable tab = extract_invariants(L);
  double gauge = 0.0, tcas = 0.0, tprime = 0.0, route = 0.0, window = 0.0;
  for (ChartId chart : L.charts()) {
    const int d = L.rank(chart);
    const int nu = chart.infinity ? kInf : chart.index;
    const FormalSolution fs = formal_solution(L, chart, depth);
    const MatrixSeries R = gauge_residual(L, fs);
    gauge = std::max(gauge, R.max_abs());
    // The residual must be stored at least through zeta^(depth - d - 2).
    window = std::max(window, static_cast<double>(std::max(0, (fs.depth - d - 1) - R.order())));
    for (int j = 0; j <= d; ++j) {
      for (int a = 0; a < L.dim(); ++a) {
        const double sign = (chart.infinity && j == 0) ? -1.0 : 1.0;
        tcas = std::max(tcas, std::abs(sign * fs.T_coeffs[static_cast<std::size_t>(j)](a, a) - tab.t.at({nu, j, a})));
      }
    }
    const auto br = eigen_expansions(L, chart, depth);
    const MatrixSeries tp = fs.T_prime();
    for (int a = 0; a < L.dim(); ++a) {
      for (int k = -(d + 1); k <= -1; ++k) {
        const LaurentSeries& lam = br[static_cast<std::size_t>(a)].series;
        const cplx mu = chart.infinity ? -lam.coeff(k + 2) : lam.coeff(k);
        tprime = std::max(tprime, std::abs(tp.coeff(k)(a, a) - mu));
      }
      for (int j = 1; j <= d; ++j) {
        route = std::max(route, std::abs(hamiltonian_t_second_route(fs, j, a) - tab.H_t.at({nu, j, a})));
      }
    }
    if (!chart.infinity) {
      route = std::max(route, std::abs(hamiltonian_c_second_route(fs) - tab.H_c[static_cast<std::size_t>(chart.index)]));
    }
  }
  return {make_certificate("gauge_residual", gauge, 1e-9), make_certificate("gauge_residual_window", window, 0.0),
          make_certificate("T_vs_casimirs", tcas, 1e-9), make_certificate("T_prime_vs_eigenvalues", tprime, 1e-9),
          make_certificate("hamiltonian_second_route", route, 1e-8)};
}

// ---------------------------------------------------------------------------

std::vector<Direction> all_directions(const RationalLaxMatrix& L) {
  std::vector<Direction> out;
  for (std::size_t nu = 0; nu < L.poles().size(); ++nu) {
    out.push_back(Direction::single(DeformationParameter::pole_location(static_cast<int>(nu))));
  }
  for (ChartId chart : L.charts()) {
    const int nu = chart.infinity ? kInf : chart.index;
    for (int j = 1; j <= L.rank(chart); ++j) {
      for (int a = 0; a < L.dim(); ++a) out.push_back(Direction::single(DeformationParameter::irregular(nu, j, a)));
    }
  }
  return out;
}

Certificate zero_curvature_certificate(const RationalLaxMatrix& L, const Direction& dir, const FlowOptions& opts,
                                       double tol) {
  const auto zs = sample_points(L, 10);
  return make_certificate("zero_curvature[" + dir.name + "]", zero_curvature_residual(L, dir, zs, 1e-2, opts), tol,
                          static_cast<long>(zs.size()));
}

Certificate casimir_conservation_certificate(const RationalLaxMatrix& L, const Direction& dir, double delta,
                                             const FlowOptions& opts) {
  FlowOptions o = opts;
  o.checkpoints = 4;
  const auto traj = integrate_flow(L, dir, 0.0, delta, o);
  const InvariantTable t0 = extract_casimirs(L, opts.depth);
  std::map<InvariantKey, cplx> moved;
  for (const auto& [p, w] : dir.terms) {
    if (p.kind == DeformationParameter::Kind::Irregular) moved[{p.nu, p.j, p.a}] += w;
  }
  double worst = 0.0;
  for (const auto& smp : traj.samples) {
    const InvariantTable t = extract_casimirs(smp.L, opts.depth);
    const cplx dp = smp.param - traj.p0;
    for (const auto& [k, v] : t0.t) {
      auto it = moved.find(k);
      const cplx expected = v + (it == moved.end() ? cplx(0.0) : it->second * dp);
      worst = std::max(worst, std::abs(t.t.at(k) - expected));
    }
  }
  return make_certificate("casimir_conservation[" + dir.name + "]", worst, std::max(10.0 * opts.tol, 1e-9),
                          static_cast<long>(traj.samples.size()));
}

Certificate flow_commutation_certificate(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                                         const FlowOptions& opts, double tol) {
  return make_certificate("flow_commutation[" + p.name + "," + q.name + "]", flow_commutation(L, p, q, h, opts), tol);
}

MonodromyFlowResult monodromy_flow_certificates(const RationalLaxMatrix& L, int nu, cplx delta, int checkpoints,
                                                const TransportOptions& topts) {
  const cplx base = default_basepoint(L);
  const Direction dir = Direction::single(DeformationParameter::pole_location(nu));
  const cplx c0 = L.poles().at(static_cast<std::size_t>(nu)).c;
  FlowOptions o;
  o.checkpoints = checkpoints;
  o.track_basepoint = true;
  o.basepoint = base;
  const auto traj = integrate_flow(L, dir, c0, c0 + delta, o);
  FlowOptions frozen = o;
  frozen.frozen_residues = true;
  const auto control = integrate_flow(L, dir, c0, c0 + delta, frozen);

  MonodromyFlowResult res;
  res.invariance = make_certificate("monodromy_invariance[" + dir.name + "]",
                                    invariance_certificate(traj, base, topts).max_deviation, 1e-6,
                                    static_cast<long>(traj.samples.size()));
  res.negative_control = make_lower_bound("monodromy_negative_control[" + dir.name + "]",
                                          invariance_certificate(control, base, topts).max_deviation, 1e-3,
                                          static_cast<long>(control.samples.size()), "frozen residues");
  const MonodromySet ms = monodromy_set(L, base, topts);
  double det = 0.0;
  for (double v : ms.det_deviation) det = std::max(det, v);
  res.self_checks.push_back(make_certificate("monodromy_det_identity", det, 1e-8, static_cast<long>(ms.M.size())));
  res.self_checks.push_back(make_certificate("monodromy_product", ms.product_deviation, 1e-8));
  return res;
}

Certificate tau_consistency_certificate(const RationalLaxMatrix& L, const Direction& dir, cplx delta, int checkpoints,
                                        double tol) {
  FlowOptions o;
  o.checkpoints = checkpoints;
  const auto traj = integrate_flow(L, dir, 0.0, delta, o);
  const auto tau = tau_accumulate(traj);
  double worst = 0.0;
  for (std::size_t k = 0; k < tau.size(); ++k) worst = std::max(worst, std::abs(tau[k].log_tau - traj.samples[k].log_tau));
  return make_certificate("tau_quadrature[" + dir.name + "]", worst, tol, static_cast<long>(tau.size()));
}

Certificate closedness_certificate_for(const RationalLaxMatrix& L, const Direction& p, const Direction& q, double h,
                                       double tol) {
  return make_certificate("tau_closedness[" + p.name + "," + q.name + "]", closedness_certificate(L, p, q, h), tol);
}

// ---------------------------------------------------------------------------

std::vector<std::string> suite_names() { return {"poisson", "spectral", "formal", "flows", "monodromy", "tau", "all"}; }

SuiteReport run_suite(const std::string& suite, const RationalLaxMatrix& L, unsigned long seed, int depth,
                      double tol) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw InputError("unknown suite '" + suite + "'");
  require_valid(L);
  SuiteReport rep;
  rep.suite = suite;
  rep.seed = seed;
  Rng rng(seed);
  const bool all = suite == "all";
  auto& out = rep.certificates;
  const auto append = [&](const std::vector<Certificate>& v) { out.insert(out.end(), v.begin(), v.end()); };

  if (all || suite == "poisson") {
    out.push_back(bracket_tower_certificate(L, 100, rng));
    append(poisson_axiom_certificates(L, 10, rng));
    const InvariantGradients g = invariant_gradients(L, depth);
    out.push_back(casimir_certificate(g, 20, rng));
    out.push_back(commutation_certificate(g));
    append(hamiltonian_field_certificates(L, g, depth));
  }
  if (all || suite == "spectral") append(spectral_certificates(L, depth));
  if (all || suite == "formal") append(formal_certificates(L, depth));

  FlowOptions fo;
  fo.tol = tol;
  fo.depth = depth;
  const auto dirs = all_directions(L);
  if (all || suite == "flows") {
    for (const auto& d : dirs) {
      out.push_back(zero_curvature_certificate(L, d, fo));
      out.push_back(casimir_conservation_certificate(L, d, 0.05, fo));
    }
    for (std::size_t i = 0; i + 1 < dirs.size() && i < 3; ++i) {
      out.push_back(flow_commutation_certificate(L, dirs[i], dirs[i + 1], 0.05, fo));
    }
  }
  if ((all || suite == "monodromy") && !L.poles().empty()) {
    double sep = 1.0;
    for (std::size_t mu = 1; mu < L.poles().size(); ++mu) sep = std::min(sep, std::abs(L.poles()[mu].c - L.poles()[0].c));
    const auto m = monodromy_flow_certificates(L, 0, 0.3 * sep);
    out.push_back(m.invariance);
    out.push_back(m.negative_control);
    append(m.self_checks);
  }
  if (all || suite == "tau") {
    if (!dirs.empty()) out.push_back(tau_consistency_certificate(L, dirs[0], 0.1));
    for (std::size_t i = 0; i + 1 < dirs.size() && i < 3; ++i) out.push_back(closedness_certificate_for(L, dirs[i], dirs[i + 1]));
  }
  return rep;
}

}  // namespace isomon
