#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pudq/grid_io.hpp"
#include "pudq/pu_model.hpp"

namespace pudq {

// Parsed and validated run configuration for the command-line surface.
// Invalid configs throw ConfigError naming the field; valid configs
// round-trip through to_json()/parse.
struct RunConfig {
  PUParams params{rat(2), rat(1), rat(1)};

  // spectrum
  int n_max = 5;
  int m_max = 5;
  bool equal_frequency = false;   // E_mk formula mode
  int k_steps = 9;
  double k_max = 2.0;

  // grid
  std::string object = "pu-wigner";  // pu-wigner | osc-wigner | pu-psi | osc-psi
  int state_n = 0;
  int state_m = 0;
  std::vector<AxisSpec> axes;

  // transform
  std::string transform_kind = "diagonalize";  // diagonalize | equal-frequency

  // verify
  int verify_nmax = 3;
  bool negative_control = false;  // deliberately inject a wrong genvalue

  // io
  std::string format = "csv";  // csv | json
  std::optional<std::string> output;

  // quadrature
  int quad_order = 48;
  double quad_radius = 12.0;

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_json_checked(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);

  void apply_params_override(const std::string& spec);  // "omega1,omega2,hbar"
  void validate() const;
};

}  // namespace pudq
