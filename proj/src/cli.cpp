#include "isomon/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "isomon/certificates.hpp"
#include "isomon/errors.hpp"
#include "isomon/io.hpp"
#include "isomon/monodromy.hpp"
#include "isomon/presets.hpp"
#include "isomon/spectral.hpp"
#include "isomon/tau.hpp"

namespace isomon {

cplx parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '[' && ch != ']') s += ch;
  }
  const auto num = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw InputError("not a complex number: '" + text + "'");
    }
    if (used != part.size()) throw InputError("not a complex number: '" + text + "'");
    return v;
  };
  if (s.empty()) throw InputError("empty complex number");
  const auto comma = s.find(',');
  if (comma != std::string::npos) return {num(s.substr(0, comma)), num(s.substr(comma + 1))};
  if (s.back() == 'i' || s.back() == 'j') {
    s.pop_back();
    // split at the last sign that is not an exponent sign
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
      if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string::npos) {
      if (s.empty() || s == "+" || s == "-") return {0.0, s == "-" ? -1.0 : 1.0};
      return {0.0, num(s)};
    }
    const std::string im = s.substr(split);
    return {num(s.substr(0, split)), im == "+" ? 1.0 : im == "-" ? -1.0 : num(im)};
  }
  return {num(s), 0.0};
}

DeformationParameter parse_parameter(const std::string& text) {
  static const std::regex pole(R"(c\[(\d+)\])");
  static const std::regex irr(R"(t\[(\d+|inf)\]\[(\d+)\]\[(\d+)\])");
  std::smatch m;
  if (std::regex_match(text, m, pole)) {
    const int n = std::stoi(m[1]);
    if (n < 1) throw InputError("pole indices are 1-based: " + text);
    return DeformationParameter::pole_location(n - 1);
  }
  if (std::regex_match(text, m, irr)) {
    const int nu = m[1] == "inf" ? kInf : std::stoi(m[1]) - 1;
    const int j = std::stoi(m[2]);
    const int a = std::stoi(m[3]) - 1;
    if (nu < kInf || a < 0) throw InputError("indices are 1-based: " + text);
    return DeformationParameter::irregular(nu, j, a);
  }
  throw InputError("unknown deformation parameter '" + text + "' (expected c[n] or t[n][j][a])");
}

double painleve2_residual(const std::vector<cplx>& t, const std::vector<cplx>& u, cplx alpha) {
  if (t.size() != u.size() || t.size() < 5) throw InputError("need at least 5 evenly spaced samples");
  const cplx h = t[1] - t[0];
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < u.size(); ++k) {
    const cplx upp = (-u[k - 2] + 16.0 * u[k - 1] - 30.0 * u[k] + 16.0 * u[k + 1] - u[k + 2]) / (12.0 * h * h);
    worst = std::max(worst, std::abs(upp - 2.0 * u[k] * u[k] * u[k] - t[k] * u[k] - alpha));
  }
  return worst;
}

namespace {

struct Options {
  std::string descriptor;
  std::string preset;
  std::vector<std::string> coords;
  int depth = 0;
  double tol = 1e-11;
  unsigned long seed = 12345;
  std::string out;
  std::string timestamp;
  std::string param;
  std::string from;
  std::string to;
  std::string chart;
  std::string suite = "all";
  std::string base;
  int checkpoints = 40;
};

struct System {
  RationalLaxMatrix L;
  std::optional<Preset> preset;
  std::string source;
};

int log_level() {
  const char* v = std::getenv("ISOMON_LOG");
  if (v == nullptr) return 0;
  const std::string s(v);
  if (s == "debug" || s == "2") return 2;
  if (s == "info" || s == "1") return 1;
  return 0;
}

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level()) {}
  void info(const std::string& msg) const {
    if (level_ >= 1) err_ << "[isomon] " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (level_ >= 2) err_ << "[isomon:debug] " << msg << "\n";
  }

 private:
  std::ostream& err_;
  int level_;
};

std::map<std::string, cplx> parse_coords(const std::vector<std::string>& items) {
  std::map<std::string, cplx> out;
  for (const auto& it : items) {
    const auto eq = it.find('=');
    if (eq == std::string::npos) throw InputError("--coord expects key=value, got '" + it + "'");
    out[it.substr(0, eq)] = parse_complex(it.substr(eq + 1));
  }
  return out;
}

System load_system(const Options& o) {
  if (!o.preset.empty()) {
    if (!o.descriptor.empty()) throw InputError("give either a descriptor or --preset, not both");
    Preset p = make_preset(o.preset, parse_coords(o.coords));
    return {p.L, p, "preset:" + o.preset};
  }
  if (o.descriptor.empty()) throw InputError("no system given (descriptor path or --preset)");
  std::ifstream in(o.descriptor);
  if (!in) throw InputError("cannot open descriptor '" + o.descriptor + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = parse_json_text(ss.str(), o.descriptor);
  if (j.is_object() && j.contains("preset")) {
    const json& pj = j["preset"];
    if (!pj.is_object() || !pj.contains("name") || !pj["name"].is_string()) throw InputError("preset needs a name");
    std::map<std::string, cplx> coords;
    if (pj.contains("coordinates")) {
      for (const auto& [k, v] : pj["coordinates"].items()) coords[k] = complex_from_json(v);
    }
    Preset p = make_preset(pj["name"].get<std::string>(), coords);
    return {p.L, p, o.descriptor};
  }
  return {lax_from_json(j), std::nullopt, o.descriptor};
}

RunManifest manifest_for(const std::string& command, const Options& o, const System& sys) {
  RunManifest m;
  m.command = command;
  m.tol = o.tol;
  m.depth = o.depth;
  m.seed = o.seed;
  m.path = sys.source;
  m.timestamp = o.timestamp.empty() ? current_timestamp() : o.timestamp;
  if (!o.out.empty()) m.extra["out"] = o.out;
  return m;
}

void emit(const json& report, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << report.dump(2) << "\n";
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << report.dump(2) << "\n";
}

Direction resolve_direction(const System& sys, const std::string& name) {
  if (name.empty()) throw InputError("--param is required");
  if (sys.preset) {
    const auto it = sys.preset->directions.find(name);
    if (it != sys.preset->directions.end()) return it->second;
  }
  const DeformationParameter p = parse_parameter(name);
  check_parameter(sys.L, p);
  return Direction::single(p);
}

cplx direction_start(const System& sys, const Direction& dir, const Options& o) {
  if (!o.from.empty()) return parse_complex(o.from);
  if (dir.terms.size() == 1 && dir.terms.front().second == cplx(1.0)) {
    return parameter_value(sys.L, dir.terms.front().first, o.depth);
  }
  // composite preset directions: the preset time coordinate when there is one
  if (sys.preset) {
    const auto it = sys.preset->coordinates.find(dir.name);
    if (it != sys.preset->coordinates.end()) return it->second;
  }
  return 0.0;
}

bool is_pII(const System& sys) { return sys.preset && sys.preset->name == "pII"; }

int cmd_validate(const Options& o, const System& sys, std::ostream& out) {
  const ValidationReport rep = validate(sys.L);
  json j;
  j["manifest"] = manifest_to_json(manifest_for("validate", o, sys));
  j["system"] = lax_to_json(sys.L);
  j["validation"] = validation_to_json(rep);
  emit(j, o, out);
  return rep.pass ? 0 : 1;
}

int cmd_invariants(const Options& o, const System& sys, std::ostream& out) {
  require_valid(sys.L);
  const InvariantTable tab = extract_invariants(sys.L, o.depth);
  json roots = json::object();
  double worst = 0.0;
  for (const ChartId& ch : sys.L.charts()) {
    const double r = root_residual(sys.L, ch, eigen_expansions(sys.L, ch, o.depth));
    roots[ch.label()] = r;
    worst = std::max(worst, r);
  }
  json j;
  j["manifest"] = manifest_to_json(manifest_for("invariants", o, sys));
  j["invariants"] = invariants_to_json(tab);
  j["root_residual"] = roots;
  const double tol = std::max(o.tol, 1e-10);
  j["pass"] = worst <= tol;
  if (is_pII(sys)) {
    const PIICoordinates c = painleve2_coordinates(sys.L);
    j["printed_H"] = complex_to_json(painleve2_printed_H(c));
  }
  emit(j, o, out);
  return worst <= tol ? 0 : 1;
}

ChartId parse_chart(const RationalLaxMatrix& L, const std::string& text) {
  if (text == "inf") {
    if (L.infinity().d < 1) throw ChartError("no irregular singularity at infinity (d_inf = 0)");
    return ChartId::at_infinity();
  }
  int n = 0;
  try {
    n = std::stoi(text);
  } catch (const std::exception&) {
    throw InputError("--chart expects a 1-based pole index or 'inf'");
  }
  if (n < 1 || n > static_cast<int>(L.poles().size())) throw ChartError("no pole " + text);
  return ChartId::finite(n - 1);
}

int cmd_expand(const Options& o, const System& sys, std::ostream& out) {
  require_valid(sys.L);
  std::vector<ChartId> charts;
  if (o.chart.empty()) {
    charts = sys.L.charts();
  } else {
    charts.push_back(parse_chart(sys.L, o.chart));
  }
  json expansions = json::object();
  double worst = 0.0;
  for (const ChartId& ch : charts) {
    const auto branches = eigen_expansions(sys.L, ch, o.depth);
    json arr = json::array();
    for (const auto& b : branches) arr.push_back({{"branch", b.label + 1}, {"lambda", series_to_json(b.series)}});
    const double r = root_residual(sys.L, ch, branches);
    worst = std::max(worst, r);
    expansions[ch.label()] = {{"branches", arr}, {"root_residual", r}};
  }
  json j;
  j["manifest"] = manifest_to_json(manifest_for("expand", o, sys));
  j["expansions"] = expansions;
  const double tol = std::max(o.tol, 1e-10);
  j["pass"] = worst <= tol;
  emit(j, o, out);
  return worst <= tol ? 0 : 1;
}

FlowTrajectory run_flow(const Options& o, const System& sys, const Direction& dir, const Logger& log) {
  require_valid(sys.L);
  if (o.to.empty()) throw InputError("--to is required");
  const cplx p0 = direction_start(sys, dir, o);
  const cplx p1 = parse_complex(o.to);
  FlowOptions fo;
  fo.tol = o.tol;
  fo.depth = o.depth;
  fo.checkpoints = o.checkpoints;
  log.info("flow " + dir.name + " from " + std::to_string(p0.real()) + " to " + std::to_string(p1.real()));
  FlowTrajectory traj = integrate_flow(sys.L, dir, p0, p1, fo);
  log.debug("integrator steps: " + std::to_string(traj.steps));
  return traj;
}

int cmd_flow(const Options& o, const System& sys, std::ostream& out, const Logger& log) {
  const Direction dir = resolve_direction(sys, o.param);
  const FlowTrajectory traj = run_flow(o, sys, dir, log);
  RunManifest m = manifest_for("flow", o, sys);
  m.extra["param"] = dir.name;
  m.extra["to"] = o.to;

  // conservation of the Casimirs not moved by the flow
  const InvariantTable first = extract_invariants(traj.samples.front().L, o.depth);
  const InvariantTable last = extract_invariants(traj.samples.back().L, o.depth);
  json summary;
  summary["steps"] = traj.steps;
  summary["final_log_tau"] = complex_to_json(traj.samples.back().log_tau);
  json drift = json::object();
  for (const auto& [k, v] : first.t) {
    const auto [nu, jj, a] = k;
    bool moved = false;
    for (const auto& [p, w] : dir.terms) {
      if (p.kind == DeformationParameter::Kind::Irregular && p.nu == nu && p.j == jj && p.a == a) moved = true;
    }
    if (moved) continue;
    const std::string name = "t[" + (nu == kInf ? std::string("inf") : std::to_string(nu + 1)) + "][" +
                             std::to_string(jj) + "][" + std::to_string(a + 1) + "]";
    drift[name] = std::abs(last.t.at(k) - v);
  }
  summary["casimir_drift"] = drift;

  if (is_pII(sys)) {
    std::vector<cplx> t, u;
    cplx a = 0.0;
    for (const auto& smp : traj.samples) {
      const PIICoordinates c = painleve2_coordinates(smp.L);
      const PIIReduced red = painleve2_reduced(c);
      t.push_back(c.t);
      u.push_back(red.u);
      a = red.a;
    }
    summary["pII"] = {{"a", complex_to_json(a)},
                      {"residual_alpha_a_minus_half", painleve2_residual(t, u, a - 0.5)},
                      {"residual_alpha_a_plus_half", painleve2_residual(t, u, a + 0.5)}};
  }

  json j;
  j["manifest"] = manifest_to_json(m);
  j["summary"] = summary;
  if (o.out.empty()) {
    out << "# " << j.dump() << "\n";
    write_trajectory_csv(out, traj, o.depth);
  } else {
    std::ofstream f(o.out);
    if (!f) throw InputError("cannot write '" + o.out + "'");
    f << "# " << j.dump() << "\n";
    write_trajectory_csv(f, traj, o.depth);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_monodromy(const Options& o, const System& sys, std::ostream& out) {
  require_valid(sys.L);
  const cplx base = o.base.empty() ? default_basepoint(sys.L) : parse_complex(o.base);
  TransportOptions to;
  to.tol = std::max(o.tol, 1e-13);
  const MonodromySet ms = monodromy_set(sys.L, base, to);
  double det_worst = 0.0;
  for (double d : ms.det_deviation) det_worst = std::max(det_worst, d);
  const double tol = 1e-8;
  json j;
  j["manifest"] = manifest_to_json(manifest_for("monodromy", o, sys));
  j["monodromy"] = monodromy_to_json(ms);
  j["pass"] = det_worst <= tol && ms.product_deviation <= tol;
  emit(j, o, out);
  return det_worst <= tol && ms.product_deviation <= tol ? 0 : 1;
}

int cmd_tau(const Options& o, const System& sys, std::ostream& out, const Logger& log) {
  const Direction dir = resolve_direction(sys, o.param);
  const FlowTrajectory traj = run_flow(o, sys, dir, log);
  const auto tau = tau_accumulate(traj);
  double worst = 0.0;
  for (std::size_t k = 0; k < tau.size(); ++k) worst = std::max(worst, std::abs(tau[k].log_tau - traj.samples[k].log_tau));
  RunManifest m = manifest_for("tau", o, sys);
  m.extra["param"] = dir.name;
  m.extra["to"] = o.to;
  const double tol = 1e-7;
  json j;
  j["manifest"] = manifest_to_json(m);
  j["tau"] = tau_to_json(tau);
  j["quadrature_vs_integrator"] = worst;
  j["pass"] = worst <= tol;
  emit(j, o, out);
  return worst <= tol ? 0 : 1;
}

int cmd_check(const Options& o, const System& sys, std::ostream& out, const Logger& log) {
  require_valid(sys.L);
  log.info("suite " + o.suite);
  const SuiteReport rep = run_suite(o.suite, sys.L, o.seed, o.depth, o.tol);
  RunManifest m = manifest_for("check", o, sys);
  m.extra["suite"] = o.suite;
  json j;
  j["manifest"] = manifest_to_json(m);
  j["report"] = suite_to_json(rep);
  emit(j, o, out);
  return rep.pass() ? 0 : 1;
}

void add_system_options(CLI::App* sub, Options& o) {
  sub->add_option("descriptor", o.descriptor, "JSON system descriptor");
  sub->add_option("--path", o.descriptor, "JSON system descriptor (same as the positional argument)");
  sub->add_option("--preset", o.preset, "Built-in system: schlesinger, fuchsian_inf, pII, pII2");
  sub->add_option("--coord", o.coords, "Preset coordinate key=value (repeatable)");
  sub->add_option("--depth", o.depth, "Series truncation depth (0 = automatic)");
  sub->add_option("--tol", o.tol, "Integrator / certificate tolerance");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--out", o.out, "Write the report to this file");
  sub->add_option("--timestamp", o.timestamp, "Timestamp recorded in the manifest (default: now)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"isomon: rational isomonodromic deformation systems"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a system descriptor");
  auto* invariants_cmd = app.add_subcommand("invariants", "Casimirs and Hamiltonians");
  auto* expand_cmd = app.add_subcommand("expand", "Eigenvalue expansions in each chart");
  auto* flow_cmd = app.add_subcommand("flow", "Integrate a deformation flow, CSV trajectory");
  auto* monodromy_cmd = app.add_subcommand("monodromy", "Monodromy around the finite poles");
  auto* tau_cmd = app.add_subcommand("tau", "Accumulate log tau along a flow");
  auto* check_cmd = app.add_subcommand("check", "Run a certificate suite");
  for (auto* s : {validate_cmd, invariants_cmd, expand_cmd, flow_cmd, monodromy_cmd, tau_cmd, check_cmd}) {
    add_system_options(s, o);
  }
  expand_cmd->add_option("--chart", o.chart, "1-based pole index or 'inf'");
  for (auto* s : {flow_cmd, tau_cmd}) {
    s->add_option("--param", o.param, "c[n], t[n][j][a], t[inf][j][a] or a preset direction")->required();
    s->add_option("--from", o.from, "Start value (default: current value)");
    s->add_option("--to", o.to, "Target value")->required();
    s->add_option("--checkpoints", o.checkpoints, "Number of output samples");
  }
  monodromy_cmd->add_option("--base", o.base, "Base point (default below all poles)");
  check_cmd->add_option("--suite", o.suite, "poisson, spectral, formal, flows, monodromy, tau or all");

  std::vector<std::string> argv_store{"isomon"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const Logger log(err);
  try {
    const System sys = load_system(o);
    log.info("loaded " + sys.source);
    if (*validate_cmd) return cmd_validate(o, sys, out);
    if (*invariants_cmd) return cmd_invariants(o, sys, out);
    if (*expand_cmd) return cmd_expand(o, sys, out);
    if (*flow_cmd) return cmd_flow(o, sys, out, log);
    if (*monodromy_cmd) return cmd_monodromy(o, sys, out);
    if (*tau_cmd) return cmd_tau(o, sys, out, log);
    if (*check_cmd) return cmd_check(o, sys, out, log);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace isomon
