#include "isomon/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "isomon/errors.hpp"
#include "isomon/presets.hpp"

namespace isomon {

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("expected a complex number [re, im], got " + j.dump());
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (int a = 0; a < m.rows(); ++a) {
    json row = json::array();
    for (int b = 0; b < m.cols(); ++b) row.push_back(complex_to_json(m(a, b)));
    rows.push_back(row);
  }
  return rows;
}

Mat matrix_from_json(const json& j, int r) {
  if (!j.is_array() || static_cast<int>(j.size()) != r) throw InputError("expected an r x r matrix, got " + j.dump());
  Mat m(r, r);
  for (int a = 0; a < r; ++a) {
    if (!j[a].is_array() || static_cast<int>(j[a].size()) != r) throw InputError("matrix row has the wrong length");
    for (int b = 0; b < r; ++b) m(a, b) = complex_from_json(j[a][b]);
  }
  return m;
}

namespace {

std::vector<Mat> coeff_list(const json& j, int r, std::size_t expected, const std::string& what) {
  if (!j.is_array() || j.size() != expected) {
    throw InputError(what + ": expected " + std::to_string(expected) + " coefficient matrices");
  }
  std::vector<Mat> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m, r));
  return out;
}

int get_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw InputError(where + ": missing integer '" + key + "'");
  return j[key].get<int>();
}

}  // namespace

RationalLaxMatrix lax_from_json(const json& j) {
  if (!j.is_object()) throw InputError("descriptor must be a JSON object");
  if (j.contains("preset")) {
    const json& p = j["preset"];
    if (!p.is_object() || !p.contains("name") || !p["name"].is_string()) throw InputError("preset needs a name");
    std::map<std::string, cplx> coords;
    if (p.contains("coordinates")) {
      for (const auto& [k, v] : p["coordinates"].items()) coords[k] = complex_from_json(v);
    }
    return make_preset(p["name"].get<std::string>(), coords).L;
  }
  const int r = get_int(j, "r", "descriptor");
  if (r < 1) throw InputError("descriptor: r must be positive");
  std::vector<PoleRecord> poles;
  if (j.contains("poles")) {
    for (const auto& pj : j["poles"]) {
      PoleRecord p;
      if (!pj.contains("c")) throw InputError("pole: missing 'c'");
      p.c = complex_from_json(pj["c"]);
      p.d = get_int(pj, "d", "pole");
      if (p.d < 0) throw InputError("pole: d must be >= 0");
      if (!pj.contains("coeffs")) throw InputError("pole: missing 'coeffs'");
      p.coeffs = coeff_list(pj["coeffs"], r, static_cast<std::size_t>(p.d + 1), "pole");
      poles.push_back(std::move(p));
    }
  }
  InfinityRecord inf;
  if (j.contains("infinity")) {
    const json& ij = j["infinity"];
    inf.d = get_int(ij, "d", "infinity");
    if (inf.d < 0) throw InputError("infinity: d must be >= 0");
    inf.coeffs = inf.d == 0 && !ij.contains("coeffs")
                     ? std::vector<Mat>{}
                     : coeff_list(ij.value("coeffs", json::array()), r, static_cast<std::size_t>(inf.d), "infinity");
  }
  return RationalLaxMatrix(r, std::move(poles), std::move(inf));
}

json lax_to_json(const RationalLaxMatrix& L) {
  json j;
  j["r"] = L.dim();
  json poles = json::array();
  for (const auto& p : L.poles()) {
    json pj;
    pj["c"] = complex_to_json(p.c);
    pj["d"] = p.d;
    json cs = json::array();
    for (const Mat& m : p.coeffs) cs.push_back(matrix_to_json(m));
    pj["coeffs"] = cs;
    poles.push_back(pj);
  }
  j["poles"] = poles;
  json inf;
  inf["d"] = L.infinity().d;
  json cs = json::array();
  for (const Mat& m : L.infinity().coeffs) cs.push_back(matrix_to_json(m));
  inf["coeffs"] = cs;
  j["infinity"] = inf;
  return j;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

RationalLaxMatrix load_descriptor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open descriptor '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return lax_from_json(parse_json_text(ss.str(), path));
}

json validation_to_json(const ValidationReport& rep) {
  json j;
  j["pass"] = rep.pass;
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"detail", c.detail}});
  }
  j["checks"] = checks;
  return j;
}

namespace {

std::string nu_label(int nu) { return nu == kInf ? "inf" : std::to_string(nu + 1); }

std::string key_label(const char* kind, const InvariantKey& k) {
  const auto [nu, j, a] = k;
  return std::string(kind) + "[" + nu_label(nu) + "][" + std::to_string(j) + "][" + std::to_string(a + 1) + "]";
}

}  // namespace

json invariants_to_json(const InvariantTable& tab) {
  json j = json::object();
  for (std::size_t nu = 0; nu < tab.c.size(); ++nu) j["c[" + std::to_string(nu + 1) + "]"] = complex_to_json(tab.c[nu]);
  for (const auto& [k, v] : tab.t) j[key_label("t", k)] = complex_to_json(v);
  for (const auto& [k, v] : tab.H_t) j[key_label("H_t", k)] = complex_to_json(v);
  for (std::size_t nu = 0; nu < tab.H_c.size(); ++nu) j["H_c[" + std::to_string(nu + 1) + "]"] = complex_to_json(tab.H_c[nu]);
  return j;
}

json series_to_json(const LaurentSeries& s) {
  json coeffs = json::array();
  for (int k = s.valuation(); k < s.order(); ++k) coeffs.push_back(complex_to_json(s.coeff(k)));
  return {{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", coeffs}};
}

json monodromy_to_json(const MonodromySet& ms) {
  json j;
  j["base"] = complex_to_json(ms.base);
  json mats = json::array();
  for (const Mat& m : ms.M) mats.push_back(matrix_to_json(m));
  j["M"] = mats;
  json order = json::array();
  for (int nu : ms.order) order.push_back(nu + 1);
  j["order"] = order;
  if (!ms.M.empty()) j["enclosing"] = matrix_to_json(ms.enclosing);
  j["product_deviation"] = ms.product_deviation;
  j["det_deviation"] = ms.det_deviation;
  return j;
}

json certificate_to_json(const Certificate& c) {
  json j{{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass}, {"samples", c.samples}};
  if (c.reported_only) j["reported_only"] = true;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

json suite_to_json(const SuiteReport& rep) {
  json certs = json::array();
  for (const auto& c : rep.certificates) certs.push_back(certificate_to_json(c));
  return {{"suite", rep.suite}, {"seed", rep.seed}, {"pass", rep.pass()}, {"certificates", certs}};
}

json tau_to_json(const std::vector<TauSample>& samples) {
  json arr = json::array();
  for (const auto& s : samples) {
    arr.push_back({{"param", complex_to_json(s.param)},
                   {"hamiltonian", complex_to_json(s.hamiltonian)},
                   {"log_tau", complex_to_json(s.log_tau)}});
  }
  return arr;
}

json manifest_to_json(const RunManifest& m) {
  json j{{"command", m.command}, {"tol", m.tol},         {"depth", m.depth},
         {"seed", m.seed},       {"path", m.path},       {"timestamp", m.timestamp},
         {"version", kVersion}};
  for (const auto& [k, v] : m.extra) j[k] = v;
  return j;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj, int depth) {
  if (traj.samples.empty()) return;
  const PhaseSpace space(traj.samples.front().L);
  const auto name_of = [](const CoefficientIndex& i) {
    return std::string(i.infinity ? "Linf" : "L" + std::to_string(i.pole + 1)) + "_" + std::to_string(i.j) + "_" +
           std::to_string(i.a + 1) + std::to_string(i.b + 1);
  };
  const auto pair = [](const std::string& n) { return n + "_re," + n + "_im"; };

  const InvariantTable t0 = extract_invariants(traj.samples.front().L, depth);
  os << "s," << pair("param");
  for (std::size_t nu = 0; nu < traj.samples.front().L.poles().size(); ++nu) os << "," << pair("c" + std::to_string(nu + 1));
  for (const auto& c : space.coords()) os << "," << pair(name_of(c));
  for (const auto& [k, v] : t0.t) os << "," << pair(key_label("t", k));
  for (const auto& [k, v] : t0.H_t) os << "," << pair(key_label("H_t", k));
  for (std::size_t nu = 0; nu < t0.H_c.size(); ++nu) os << "," << pair("H_c[" + std::to_string(nu + 1) + "]");
  os << "," << pair("log_tau") << "\n";

  os << std::setprecision(17);
  const auto put = [&](cplx z) { os << "," << z.real() << "," << z.imag(); };
  for (const auto& smp : traj.samples) {
    os << smp.s;
    put(smp.param);
    for (const auto& p : smp.L.poles()) put(p.c);
    const Eigen::VectorXcd x = space.flatten(smp.L);
    for (int i = 0; i < x.size(); ++i) put(x(i));
    const InvariantTable tab = extract_invariants(smp.L, depth);
    for (const auto& [k, v] : tab.t) put(v);
    for (const auto& [k, v] : tab.H_t) put(v);
    for (cplx h : tab.H_c) put(h);
    put(smp.log_tau);
    os << "\n";
  }
}

}  // namespace isomon
