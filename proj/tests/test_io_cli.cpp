#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "isomon/certificates.hpp"
#include "isomon/cli.hpp"
#include "isomon/errors.hpp"
#include "isomon/io.hpp"
#include "isomon/presets.hpp"

using namespace isomon;

namespace {

std::string data(const std::string& name) {
  const char* dir = std::getenv("ISOMON_TEST_DATA");
  return std::string(dir ? dir : "tests/data") + "/" + name;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("complex parsing") {
  CHECK(parse_complex("3") == cplx(3.0, 0.0));
  CHECK(parse_complex("0.5,-1") == cplx(0.5, -1.0));
  CHECK(parse_complex("[0.5, -1]") == cplx(0.5, -1.0));
  CHECK(parse_complex("0.5-1i") == cplx(0.5, -1.0));
  CHECK(parse_complex("2i") == cplx(0.0, 2.0));
  CHECK(parse_complex("1e-3+2e-2i") == cplx(1e-3, 2e-2));
  CHECK_THROWS_AS(parse_complex("abc"), InputError);
}

TEST_CASE("parameter parsing") {
  const auto p = parse_parameter("t[inf][2][1]");
  CHECK(p.nu == kInf);
  CHECK(p.j == 2);
  CHECK(p.a == 0);
  CHECK(parse_parameter("c[2]").nu == 1);
  CHECK_THROWS_AS(parse_parameter("c[0]"), InputError);
  CHECK_THROWS_AS(parse_parameter("x"), InputError);
}

TEST_CASE("descriptor round trip") {
  Rng rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto L = random_lax(random_shape(rng), rng);
    const json j = lax_to_json(L);
    const auto back = lax_from_json(parse_json_text(j.dump()));
    CHECK(lax_to_json(back) == j);
  }
  const auto pre = lax_from_json(parse_json_text(R"({"preset": {"name": "pII2"}})"));
  CHECK(lax_to_json(pre) == lax_to_json(make_preset("pII2").L));
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(parse_json_text("{\"r\": 2,\n  \"poles\": [}"), InputError);
  try {
    parse_json_text("{\"r\": 2,\n  \"poles\": [}", "x.json");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("x.json:2:") == 0);
  }
  CHECK_THROWS_AS(lax_from_json(parse_json_text(R"({"r": 2, "poles": [{"c": [0,0], "d": 1, "coeffs": []}]})")),
                  InputError);
  CHECK_THROWS_AS(lax_from_json(parse_json_text(R"({"preset": {"name": "nope"}})")), InputError);
  CHECK_THROWS_AS(lax_from_json(parse_json_text(R"({"preset": {"name": "pII", "coordinates": {"q": 1}}})")),
                  InputError);
}

TEST_CASE("validate verb") {
  CHECK(run({"validate", data("pII.json"), "--timestamp", "T"}).code == 0);
  const auto bad = run({"validate", data("coincident.json"), "--timestamp", "T"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("coincide") != std::string::npos);
  const auto mal = run({"validate", data("malformed.json")});
  CHECK(mal.code == 2);
  CHECK(mal.err.find("malformed.json:4:20") != std::string::npos);
  CHECK(run({"validate", data("missing.json")}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
}

TEST_CASE("invariants verb: PII Hamiltonian") {
  const auto r = run({"invariants", data("pII.json"), "--timestamp", "T"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["manifest"]["command"] == "invariants");
  CHECK(j["manifest"]["version"] == kVersion);
  CHECK(j["invariants"]["H_t[inf][1][1]"][0].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(j["root_residual"]["inf"].get<double>() < 1e-10);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args{"check", "--preset", "schlesinger", "--suite", "poisson", "--seed", "9",
                                      "--timestamp", "T"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("flow verb") {
  const auto r = run({"flow", "--preset", "pII", "--param", "t", "--to", "0.5", "--checkpoints", "50", "--timestamp",
                      "T"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# {", 0) == 0);
  const auto nl = r.out.find('\n');
  const json head = json::parse(r.out.substr(2, nl - 2));
  CHECK(head["summary"]["pII"].contains("residual_alpha_a_minus_half"));
  std::istringstream csv(r.out.substr(nl + 1));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 52);  // header + start + 50 checkpoints

  CHECK(run({"flow", "--preset", "schlesinger", "--param", "t[inf][1][1]", "--to", "1"}).code == 2);
  CHECK(run({"flow", "--preset", "schlesinger", "--param", "t[1][0][1]", "--to", "1"}).code == 2);
  CHECK(run({"flow", "--preset", "schlesinger", "--param", "c[1]", "--to", "1"}).code == 3);
}

TEST_CASE("expand, monodromy and tau verbs") {
  CHECK(run({"expand", "--preset", "pII", "--chart", "inf"}).code == 0);
  CHECK(run({"expand", "--preset", "schlesinger", "--chart", "inf"}).code == 2);
  CHECK(run({"monodromy", "--preset", "schlesinger"}).code == 0);
  CHECK(run({"tau", "--preset", "schlesinger", "--param", "c[1]", "--to", "0.3"}).code == 0);
}

TEST_CASE("check verb on the presets") {
  CHECK(run({"check", "--preset", "fuchsian_inf", "--suite", "tau"}).code == 0);
  CHECK(run({"check", "--preset", "schlesinger", "--suite", "monodromy"}).code == 0);
  CHECK(run({"check", "--preset", "pII", "--suite", "formal"}).code == 0);
  CHECK(run({"check", "--preset", "pII", "--suite", "nope"}).code == 2);
}

TEST_CASE("trajectory csv columns") {
  const auto S = make_preset("schlesinger").L;
  FlowOptions fo;
  fo.checkpoints = 3;
  const auto traj = integrate_flow(S, pole_direction(0), 0.0, 0.1, fo);
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  std::istringstream is(os.str());
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  const auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
  CHECK(count(header) == count(row));
  CHECK(header.find("log_tau_re") != std::string::npos);
}
