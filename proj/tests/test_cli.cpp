#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <sstream>

#include "pudq/commands.hpp"
#include "pudq/verify.hpp"

using namespace pudq;

TEST_CASE("config parses, validates, and round-trips") {
  nlohmann::json j = {
      {"params", {{"omega1", "2"}, {"omega2", "1"}, {"hbar", "1"}}},
      {"spectrum", {{"n_max", 3}, {"m_max", 2}}},
      {"grid",
       {{"object", "pu-wigner"},
        {"n", 1},
        {"m", 0},
        {"axes", nlohmann::json::array({{{"var", "q"}, {"min", -1.0}, {"max", 1.0}, {"steps", 3}}})}}},
      {"format", "csv"}};
  RunConfig cfg = RunConfig::from_json(j);
  CHECK(cfg.params.omega1 == rat(2));
  CHECK(cfg.n_max == 3);
  CHECK(cfg.axes.size() == 1);
  // round trip
  RunConfig cfg2 = RunConfig::from_json(cfg.to_json());
  CHECK(cfg2.to_json() == cfg.to_json());
}

TEST_CASE("config errors name the offending field") {
  nlohmann::json bad = {{"params", {{"omega1", "zebra"}, {"omega2", "1"}}}};
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad), doctest::Contains("omega1"), ConfigError);

  nlohmann::json bad2 = {{"grid", {{"object", "unknown-thing"}}}};
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad2), doctest::Contains("grid.object"), ConfigError);

  nlohmann::json bad3 = {{"spectrum", {{"n_max", -2}}}};
  CHECK_THROWS_WITH_AS(RunConfig::from_json(bad3), doctest::Contains("n_max"), ConfigError);

  RunConfig c;
  CHECK_THROWS_WITH_AS(c.apply_params_override("2"), doctest::Contains("--params"), ConfigError);
  CHECK_THROWS_AS(c.apply_params_override("2,0"), ConfigError);
  CHECK_NOTHROW(c.apply_params_override("5,3,1/2"));
  CHECK(c.params.hbar == rat(1, 2));
}

TEST_CASE("spectrum command emits exact rationals") {
  RunConfig cfg;
  cfg.params = PUParams(rat(2), rat(1), rat(1));
  cfg.n_max = 1;
  cfg.m_max = 1;
  CommandResult r = cmd_spectrum(cfg);
  CHECK(r.exit_code == 0);
  CHECK(r.payload ==
        "n,m,energy\n0,0,1/2\n0,1,-1/2\n1,0,5/2\n1,1,3/2\n");

  cfg.n_max = 0;
  cfg.m_max = 0;
  CHECK(cmd_spectrum(cfg).payload == "n,m,energy\n0,0,1/2\n");

  // equal-frequency mode uses the E_mk formula
  cfg.params = PUParams(rat(1), rat(1), rat(1));
  cfg.equal_frequency = true;
  cfg.m_max = 1;
  cfg.k_steps = 2;
  cfg.k_max = 2.0;
  CommandResult ek = cmd_spectrum(cfg);
  CHECK(ek.payload.find("m,k,energy") == 0);
  CHECK(ek.payload.find("-1") != std::string::npos);  // E_{0,2} = -1
}

TEST_CASE("grid command counts points and hits known values") {
  RunConfig cfg;
  cfg.params = PUParams(rat(2), rat(1), rat(1));
  cfg.object = "pu-wigner";
  cfg.axes = {{"q", 0.0, 0.0, 1}, {"p_q", 0.0, 0.0, 1}, {"x", 0.0, 0.0, 1}, {"p_x", 0.0, 0.0, 1}};
  CommandResult r = cmd_grid(cfg);
  CHECK(r.exit_code == 0);
  // single row with the origin value 1/pi^2
  std::istringstream is(r.payload);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  CHECK(header == "q,p_q,x,p_x,value");
  double value = std::stod(row.substr(row.rfind(',') + 1));
  CHECK(value == doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)).epsilon(1e-15));

  // 3x3 grid over (q, x): 9 rows plus header
  cfg.axes = {{"q", -1.0, 1.0, 3}, {"x", -1.0, 1.0, 3}};
  CommandResult r9 = cmd_grid(cfg);
  int lines = 0;
  for (char ch : r9.payload)
    if (ch == '\n') ++lines;
  CHECK(lines == 10);

  // deterministic output
  CHECK(cmd_grid(cfg).payload == r9.payload);

  // pu-frame selector refuses equal frequencies with a structured error
  cfg.params = PUParams(rat(1), rat(1), rat(1));
  CHECK_THROWS_AS(cmd_grid(cfg), SingularParamsError);
}

TEST_CASE("psi grids carry re and im columns") {
  RunConfig cfg;
  cfg.params = PUParams(rat(4), rat(1), rat(1));
  cfg.object = "pu-psi";
  cfg.quad_order = 48;
  cfg.axes = {{"q", -1.0, 1.0, 3}, {"x", -1.0, 1.0, 3}};
  CommandResult r = cmd_grid(cfg);
  CHECK(r.payload.find("re(value),im(value)") != std::string::npos);

  // non-normalizable at equal frequencies
  cfg.params = PUParams(rat(1), rat(1), rat(1));
  CHECK_THROWS_AS(cmd_grid(cfg), NonNormalizableError);
}

TEST_CASE("transform command emits the map and pullback") {
  RunConfig cfg;
  cfg.params = PUParams(rat(5), rat(3), rat(1));
  cfg.transform_kind = "diagonalize";
  CommandResult r = cmd_transform(cfg);
  nlohmann::json j = nlohmann::json::parse(r.payload);
  CHECK(j["symplectic"] == true);
  std::string pulled = j["pullback_hamiltonian"];
  CHECK(pulled.find("P1^2") != std::string::npos);
  CHECK(pulled.find("X1^2") != std::string::npos);

  cfg.params = PUParams(rat(1), rat(1), rat(1));
  cfg.transform_kind = "equal-frequency";
  nlohmann::json je = nlohmann::json::parse(cmd_transform(cfg).payload);
  CHECK(je["symplectic"] == true);
  std::string hpull = je["pullback_hamiltonian"];
  CHECK(hpull.find("P2*Q1") != std::string::npos);

  // diagonalize at equal frequencies is a singular request
  cfg.transform_kind = "diagonalize";
  CHECK_THROWS_AS(cmd_transform(cfg), SingularParamsError);
}

TEST_CASE("json format carries grid metadata") {
  RunConfig cfg;
  cfg.params = PUParams(rat(2), rat(1), rat(1));
  cfg.object = "osc-wigner";
  cfg.format = "json";
  cfg.axes = {{"X1", -1.0, 1.0, 3}, {"P1", 0.0, 0.0, 1}};
  nlohmann::json j = nlohmann::json::parse(cmd_grid(cfg).payload);
  CHECK(j["meta"]["object"] == "osc-wigner");
  CHECK(j["meta"]["params"]["omega1"] == "2");
  CHECK(j["rows"].size() == 3);
}

TEST_CASE("deliver writes whole files or stdout and maps exit codes") {
  RunConfig cfg;
  CommandResult ok{0, "payload\n", "note"};
  std::ostringstream out, err;
  CHECK(deliver(ok, cfg, out, err) == 0);
  CHECK(out.str() == "payload\n");
  CHECK(err.str() == "note\n");

  CommandResult fail{1, "report\n", "failed"};
  std::ostringstream out2, err2;
  CHECK(deliver(fail, cfg, out2, err2) == 1);
  CHECK(out2.str() == "report\n");  // report still delivered on check failure
}

TEST_CASE("negative control wiring flips the verify exit code") {
  // exercised through the report structure rather than the full (slow) suite
  VerifyReport rep;
  rep.checks.push_back({"a", true, true, 0.0, ""});
  CHECK(rep.all_pass());
  rep.checks.push_back({"b", false, false, 0.5, ""});
  CHECK(!rep.all_pass());
  CHECK(rep.failing() == std::vector<std::string>{"b"});
  nlohmann::json j = rep.to_json();
  CHECK(j["pass"] == false);
  CHECK(j["checks"].size() == 2);
  CHECK(j["checks"][1]["status"] == "fail");
}
