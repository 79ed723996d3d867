#pragma once

// JSON descriptors, reports and run manifests; CSV trajectories.

#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

#include "isomon/certificates.hpp"
#include "isomon/flows.hpp"
#include "isomon/lax.hpp"
#include "isomon/monodromy.hpp"
#include "isomon/spectral.hpp"
#include "isomon/tau.hpp"

namespace isomon {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "1.0.0";

json complex_to_json(cplx z);
/// Accepts [re, im] or a plain number.
cplx complex_from_json(const json& j);
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j, int r);

/// {"r", "poles": [{"c", "d", "coeffs"}], "infinity": {"d", "coeffs"}} or
/// {"preset": {"name", "coordinates"}}. Throws InputError.
RationalLaxMatrix lax_from_json(const json& j);
json lax_to_json(const RationalLaxMatrix& L);
/// Parses text; syntax errors are reported with line and column.
json parse_json_text(const std::string& text, const std::string& source = "<input>");
RationalLaxMatrix load_descriptor(const std::string& path);

json validation_to_json(const ValidationReport& rep);
/// Keys "t[nu][j][a]", "H_t[nu][j][a]", "H_c[nu]", "c[nu]"; nu 1-based or "inf", a 1-based.
json invariants_to_json(const InvariantTable& tab);
json series_to_json(const LaurentSeries& s);
json monodromy_to_json(const MonodromySet& ms);
json certificate_to_json(const Certificate& c);
json suite_to_json(const SuiteReport& rep);
json tau_to_json(const std::vector<TauSample>& samples);

struct RunManifest {
  std::string command;
  double tol = 0.0;
  int depth = 0;
  unsigned long seed = 0;
  std::string path;
  std::string timestamp;
  std::map<std::string, std::string> extra;
};
json manifest_to_json(const RunManifest& m);
/// ISO-8601 UTC time of the call.
std::string current_timestamp();

/// Columns: s, param, coordinates, Casimirs, Hamiltonians, log_tau; complex
/// values as _re/_im column pairs.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj, int depth = 0);

}  // namespace isomon
