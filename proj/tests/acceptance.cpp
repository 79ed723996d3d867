// Runs every acceptance criterion at its tolerance and prints one PASS/FAIL
// line per criterion. Exit status is 0 iff the set of failing criteria equals
// the set given with --expect-fail (empty by default).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isomon/certificates.hpp"
#include "isomon/cli.hpp"
#include "isomon/formal.hpp"
#include "isomon/monodromy.hpp"
#include "isomon/presets.hpp"
#include "isomon/tau.hpp"

using namespace isomon;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(const std::string& what, double value, double tol) {
    const bool ok = value <= tol;
    pass = pass && ok;
    detail << " " << what << "=" << fmt(value) << (ok ? "<=" : ">") << fmt(tol) << ";";
  }
  void require_at_least(const std::string& what, double value, double bound) {
    const bool ok = value >= bound;
    pass = pass && ok;
    detail << " " << what << "=" << fmt(value) << (ok ? ">=" : "<") << fmt(bound) << ";";
  }
  void report(const std::string& what, double value) { detail << " " << what << "=" << fmt(value) << " (reported);"; }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
  }
};

double rational_gap(const RationalMatrix& a, const RationalMatrix& b) {
  double worst = 0.0;
  for (cplx z : {cplx(0.37, 0.81), cplx(-1.3, 0.4), cplx(2.2, -1.7), cplx(0.05, -0.6), cplx(3.1, 2.9)}) {
    worst = std::max(worst, (a.evaluate(z) - b.evaluate(z)).cwiseAbs().maxCoeff());
  }
  return worst;
}

/// The five random systems shared by criteria 2-5 and 10.
std::vector<RationalLaxMatrix> random_systems(unsigned long seed, int count) {
  Rng rng(seed);
  std::vector<RationalLaxMatrix> out;
  while (static_cast<int>(out.size()) < count) out.push_back(random_lax(random_shape(rng), rng));
  return out;
}

// 1
void bracket_tower(Outcome& o) {
  Rng rng(101);
  std::set<std::string> shapes;
  double worst = 0.0;
  long samples = 0;
  while (shapes.size() < 5) {
    const LaxShape s = random_shape(rng);
    if (!shapes.insert(s.label()).second) continue;
    const Certificate c = bracket_tower_certificate(random_lax(s, rng), 20, rng, 1e-10);
    worst = std::max(worst, c.value);
    samples += c.samples;
  }
  o.detail << " shapes=" << shapes.size() << " samples=" << samples << ";";
  o.require("relative_error", worst, 1e-10);
}

// 2
void poisson_axioms(Outcome& o) {
  Rng rng(202);
  double anti = 0.0, leib = 0.0, jac = 0.0;
  for (const auto& L : random_systems(2, 5)) {
    for (const auto& c : poisson_axiom_certificates(L, 10, rng)) {
      if (c.name == "antisymmetry") anti = std::max(anti, c.value);
      if (c.name == "leibniz") leib = std::max(leib, c.value);
      if (c.name == "jacobi") jac = std::max(jac, c.value);
    }
  }
  o.require("antisymmetry", anti, 1e-10);
  o.require("leibniz", leib, 1e-10);
  o.require("jacobi", jac, 1e-9);
}

// 3 and 4 share the gradients
std::vector<InvariantGradients>& gradients() {
  static std::vector<InvariantGradients> g = [] {
    std::vector<InvariantGradients> out;
    for (const auto& L : random_systems(34, 5)) out.push_back(invariant_gradients(L));
    return out;
  }();
  return g;
}

void casimirs(Outcome& o) {
  Rng rng(303);
  double worst = 0.0;
  for (const auto& g : gradients()) worst = std::max(worst, casimir_certificate(g, 20, rng).value);
  o.detail << " systems=5 f_per_system=20;";
  o.require("casimir_bracket", worst, 1e-8);
}

void commutation(Outcome& o) {
  double worst = 0.0;
  for (const auto& g : gradients()) worst = std::max(worst, commutation_certificate(g).value);
  o.require("hamiltonian_pairs", worst, 1e-8);
}

// 5
void hamiltonian_fields(Outcome& o) {
  double hvf = 0.0, vexact = 0.0;
  auto systems = random_systems(34, 5);
  for (const char* name : {"schlesinger", "fuchsian_inf", "pII", "pII2"}) systems.push_back(make_preset(name).L);
  for (const auto& L : systems) {
    const auto g = invariant_gradients(L);
    for (const auto& c : hamiltonian_field_certificates(L, g)) {
      if (c.name == "hamiltonian_vector_field") hvf = std::max(hvf, c.value);
      if (c.name == "V_principal_part_exact") vexact = std::max(vexact, c.value);
    }
  }
  o.require("hvf_entry_deviation", hvf, 1e-7);
  o.require("V_minus_principal_part", vexact, 0.0);
}

// 6
void painleve2_battery(Outcome& o) {
  Rng rng(606);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double dt = 0.0, da = 0.0, dh = 0.0;
  for (int k = 0; k < 50; ++k) {
    const PIICoordinates c{u(rng), u(rng), u(rng), u(rng), u(rng)};
    const auto L = painleve2(c);
    const auto tab = extract_invariants(L);
    const cplx a_res = -tab.t.at({kInf, 0, 0});
    const cplx a = c.x1 * c.y1 + c.x2 * c.y2;
    dt = std::max(dt, std::abs(2.0 * tab.t.at({kInf, 1, 0}) - c.t));
    da = std::max(da, std::abs(-0.25 * trace_square_coeff_at_infinity(L, 1) - a));
    da = std::max(da, std::abs(a_res - a));
    const cplx H = painleve2_printed_H(c);
    dh = std::max(dh, std::abs(tab.H_t.at({kInf, 1, 0}) - H) / std::max(1.0, std::abs(H)));
  }
  o.detail << " points=50;";
  o.require("t_vs_2t1", dt, 1e-10);
  o.require("a_vs_trace_residue", da, 1e-10);
  o.require("H_vs_printed", dh, 1e-10);
}

// 7
void painleve2_dynamics(Outcome& o) {
  const auto pre = make_preset("pII");
  const auto c0 = painleve2_coordinates(pre.L);
  const auto r0 = painleve2_reduced(c0);
  FlowOptions fo;
  fo.checkpoints = 200;
  fo.tol = 1e-12;
  const auto traj = integrate_flow(pre.L, painleve2_t_direction(), c0.t, c0.t + 1.0, fo);
  std::vector<cplx> t, u;
  for (const auto& smp : traj.samples) {
    const auto c = painleve2_coordinates(smp.L);
    t.push_back(c.t);
    u.push_back(painleve2_reduced(c).u);
  }
  const auto ref = pII_hamilton_flow(r0.u.real(), r0.v.real(), r0.a.real(), c0.t.real(), c0.t.real() + 1.0, 1e-12,
                                     static_cast<int>(traj.samples.size()) - 1);
  double route = 0.0;
  for (std::size_t k = 0; k < ref.size(); ++k) route = std::max(route, std::abs(u[k] - ref[k].u));
  o.require("residual_alpha=a-1/2", painleve2_residual(t, u, r0.a - 0.5), 1e-6);
  o.report("residual_alpha=a+1/2", painleve2_residual(t, u, r0.a + 0.5));
  o.require("lax_vs_reduced_route", route, 1e-6);
}

// 8
void schlesinger_monodromy(Outcome& o) {
  std::vector<RationalLaxMatrix> systems{make_preset("schlesinger").L};
  Rng rng(808);
  for (int k = 0; k < 2; ++k) systems.push_back(random_lax({2, {0, 0}, 0}, rng));
  double drift = 0.0, control = 1e300;
  for (const auto& L : systems) {
    const auto res = monodromy_flow_certificates(L, 0, 0.3);
    drift = std::max(drift, res.invariance.value);
    control = std::min(control, res.negative_control.value);
  }
  o.detail << " systems=" << systems.size() << " delta_c1=0.3;";
  o.require("monodromy_drift", drift, 1e-6);
  o.require_at_least("frozen_control_drift", control, 1e-3);
}

// 9
void tau_function(Outcome& o) {
  const auto S = make_preset("schlesinger").L;
  const cplx c1 = S.poles()[0].c, c2 = S.poles()[1].c;
  const cplx k = (S.poles()[0].coeffs[0] * S.poles()[1].coeffs[0]).trace();
  FlowOptions fo;
  fo.checkpoints = 40;
  const auto traj = integrate_flow(S, pole_direction(0), c1, c1 + 0.3, fo);
  const auto tau = tau_accumulate(traj);
  double closed = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const cplx c = traj.samples[i].L.poles()[0].c;
    closed = std::max(closed, std::abs(tau[i].log_tau - k * std::log((c - c2) / (c1 - c2))));
  }
  o.require("log_tau_closed_form", closed, 1e-7);

  double asym = 0.0;
  const auto ex2 = make_preset("fuchsian_inf");
  const std::vector<std::pair<std::string, std::string>> pairs{{"c1", "b1"}, {"c1", "b2"}, {"b1", "b2"}};
  for (const auto& [p, q] : pairs) {
    asym = std::max(asym, closedness_certificate(ex2.L, ex2.directions.at(p), ex2.directions.at(q)));
  }
  o.require("closedness_example2", asym, 1e-5);
  const auto p22 = make_preset("pII2");
  o.require("closedness_pII2",
            closedness_certificate(p22.L, p22.directions.at("t1"), p22.directions.at("t2")), 1e-5);
}

// 10
void formal_solutions(Outcome& o) {
  auto systems = random_systems(10, 5);
  for (const char* name : {"fuchsian_inf", "pII", "pII2"}) systems.push_back(make_preset(name).L);
  double gauge = 0.0, window = 0.0, tprime = 0.0, route = 0.0;
  for (const auto& L : systems) {
    for (const auto& c : formal_certificates(L)) {
      if (c.name == "gauge_residual") gauge = std::max(gauge, c.value);
      if (c.name == "gauge_residual_window") window = std::max(window, c.value);
      if (c.name == "T_prime_vs_eigenvalues") tprime = std::max(tprime, c.value);
      if (c.name == "hamiltonian_second_route") route = std::max(route, c.value);
    }
  }
  o.require("gauge_residual", gauge, 1e-9);
  o.require("missing_window_terms", window, 0.0);
  o.require("T_prime_vs_eigenvalues", tprime, 1e-9);
  o.require("two_hamiltonian_routes", route, 1e-8);
}

// 11
void example2(Outcome& o) {
  const auto pre = make_preset("fuchsian_inf");
  double dk = 0.0, ea = 0.0, zc = 0.0;
  for (int a = 0; a < 2; ++a) {
    const Direction dir = infinity_direction(a);
    dk = std::max(dk, rational_gap(deformation_matrix(pre.L, dir), printed_dK(pre.L, a)));
    RationalMatrix E(2);
    Mat e = Mat::Zero(2, 2);
    e(a, a) = 1.0;
    E.add_poly(0, e);
    ea = std::max(ea, explicit_derivative_check(pre.L, dir, E).max_deviation);
    zc = std::max(zc, zero_curvature_certificate(pre.L, dir).value);
  }
  o.require("dK_vs_printed", dk, 1e-10);
  o.require("explicit_derivative_vs_E_a", ea, 1e-12);
  o.require("zero_curvature_K_a", zc, 1e-6);
}

// 12
void pII2_diagnostic(Outcome& o) {
  const auto pre = make_preset("pII2");
  const auto c = painleve2_2_coordinates(pre.L);
  const auto red = painleve2_2_reduced(c);
  double zc = 0.0;
  for (const char* d : {"t1", "t2"}) zc = std::max(zc, zero_curvature_certificate(pre.L, pre.directions.at(d)).value);
  o.require("zero_curvature_U1_U2", zc, 1e-6);
  const auto tab = extract_casimirs(pre.L);
  const cplx a = c.x1 * c.y1 + c.x2 * c.y2 + c.x3 * c.y3;
  o.require("t_inf_0_vs_sum_xy", std::abs(tab.t.at({kInf, 0, 0}) - a), 1e-10);
  const cplx H1 = direction_hamiltonian(pre.L, pre.directions.at("t1"));
  const cplx H2 = direction_hamiltonian(pre.L, pre.directions.at("t2"));
  o.report("H1_vs_printed", std::abs(H1 - painleve2_2_printed_H1(red, c.t1, c.t2)));
  o.report("H2_vs_printed", std::abs(H2 - painleve2_2_printed_H2(red, c.t1, c.t2)));
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Outcome&)> run;
};

std::set<int> parse_ids(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected, only;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected = parse_ids(argv[++i]);
    } else if (arg == "--only" && i + 1 < argc) {
      only = parse_ids(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--expect-fail 7,...] [--only 1,2,...]\n";
      return 2;
    }
  }

  const std::vector<Criterion> criteria{
      {1, "bracket tower consistency", bracket_tower},
      {2, "Poisson axioms", poisson_axioms},
      {3, "Casimir certificate", casimirs},
      {4, "commutation certificate", commutation},
      {5, "Hamiltonian vector fields", hamiltonian_fields},
      {6, "Painleve II closed forms", painleve2_battery},
      {7, "Painleve II dynamics", painleve2_dynamics},
      {8, "Schlesinger monodromy invariance", schlesinger_monodromy},
      {9, "tau function", tau_function},
      {10, "formal solutions", formal_solutions},
      {11, "Fuchsian system with irregular infinity", example2},
      {12, "second Painleve II hierarchy member", pII2_diagnostic},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what() << ";";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " |" << o.detail.str()
              << " [" << Outcome::fmt(secs) << " s]" << (!o.pass && expected.count(c.id) ? " (expected)" : "")
              << std::endl;
  }

  std::set<int> expected_run;
  for (int id : expected) {
    if (only.empty() || only.count(id)) expected_run.insert(id);
  }
  const bool ok = failed == expected_run;
  std::cout << (ok ? "acceptance: failing set matches expectation" : "acceptance: unexpected outcome") << " (failed:";
  for (int id : failed) std::cout << " " << id;
  std::cout << "; expected:";
  for (int id : expected_run) std::cout << " " << id;
  std::cout << ")" << std::endl;
  return ok ? 0 : 1;
}
