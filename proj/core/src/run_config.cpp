#include "pudq/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pudq {

namespace {

Rational field_rational(const nlohmann::json& j, const std::string& field) {
  if (!j.contains(field)) throw ConfigError(field + ": missing");
  const auto& v = j.at(field);
  try {
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_integer()) return rat(v.get<long>());
  } catch (const ConfigError&) {
    throw ConfigError(field + ": not a rational: " + v.dump());
  }
  throw ConfigError(field + ": expected rational string or integer, got " + v.dump());
}

int field_int(const nlohmann::json& j, const std::string& field, int fallback, int lo, int hi) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_number_integer())
    throw ConfigError(field + ": expected integer, got " + j.at(field).dump());
  int v = j.at(field).get<int>();
  if (v < lo || v > hi)
    throw ConfigError(field + ": " + std::to_string(v) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  return v;
}

double field_num(const nlohmann::json& j, const std::string& field, double fallback) {
  if (!j.contains(field)) return fallback;
  if (!j.at(field).is_number()) throw ConfigError(field + ": expected number");
  return j.at(field).get<double>();
}

}  // namespace

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["params"] = {{"omega1", rat_str(params.omega1)},
                 {"omega2", rat_str(params.omega2)},
                 {"hbar", rat_str(params.hbar)}};
  j["spectrum"] = {{"n_max", n_max},
                   {"m_max", m_max},
                   {"equal_frequency", equal_frequency},
                   {"k_steps", k_steps},
                   {"k_max", k_max}};
  nlohmann::json axes_j = nlohmann::json::array();
  for (const auto& a : axes)
    axes_j.push_back({{"var", a.var}, {"min", a.lo}, {"max", a.hi}, {"steps", a.steps}});
  j["grid"] = {{"object", object}, {"n", state_n}, {"m", state_m}, {"axes", axes_j}};
  j["transform"] = {{"kind", transform_kind}};
  j["verify"] = {{"n_max", verify_nmax}, {"negative_control", negative_control}};
  j["quadrature"] = {{"order", quad_order}, {"radius", quad_radius}};
  j["format"] = format;
  if (output) j["output"] = *output;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  try {
    return from_json_checked(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

RunConfig RunConfig::from_json_checked(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("params")) {
    const auto& p = j.at("params");
    c.params = PUParams(field_rational(p, "omega1"), field_rational(p, "omega2"),
                        p.contains("hbar") ? field_rational(p, "hbar") : rat(1));
  }
  if (j.contains("spectrum")) {
    const auto& s = j.at("spectrum");
    c.n_max = field_int(s, "n_max", c.n_max, 0, 64);
    c.m_max = field_int(s, "m_max", c.m_max, 0, 64);
    if (s.contains("equal_frequency")) {
      if (!s.at("equal_frequency").is_boolean())
        throw ConfigError("spectrum.equal_frequency: expected boolean");
      c.equal_frequency = s.at("equal_frequency").get<bool>();
    }
    c.k_steps = field_int(s, "k_steps", c.k_steps, 1, 10000);
    c.k_max = field_num(s, "k_max", c.k_max);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("object")) c.object = g.at("object").get<std::string>();
    c.state_n = field_int(g, "n", 0, 0, 64);
    c.state_m = field_int(g, "m", 0, 0, 64);
    if (g.contains("axes")) {
      for (const auto& a : g.at("axes")) {
        AxisSpec ax;
        if (!a.contains("var")) throw ConfigError("grid.axes[].var: missing");
        ax.var = a.at("var").get<std::string>();
        ax.lo = field_num(a, "min", 0.0);
        ax.hi = field_num(a, "max", ax.lo);
        ax.steps = field_int(a, "steps", 1, 1, 1 << 20);
        c.axes.push_back(ax);
      }
    }
  }
  if (j.contains("transform") && j.at("transform").contains("kind"))
    c.transform_kind = j.at("transform").at("kind").get<std::string>();
  if (j.contains("verify")) {
    c.verify_nmax = field_int(j.at("verify"), "n_max", c.verify_nmax, 0, 8);
    if (j.at("verify").contains("negative_control"))
      c.negative_control = j.at("verify").at("negative_control").get<bool>();
  }
  if (j.contains("quadrature")) {
    c.quad_order = field_int(j.at("quadrature"), "order", c.quad_order, 8, 512);
    c.quad_radius = field_num(j.at("quadrature"), "radius", c.quad_radius);
  }
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return from_json(j);
}

void RunConfig::apply_params_override(const std::string& spec) {
  std::stringstream ss(spec);
  std::string o1, o2, hb;
  if (!std::getline(ss, o1, ',') || !std::getline(ss, o2, ','))
    throw ConfigError("--params: expected omega1,omega2[,hbar]");
  if (!std::getline(ss, hb, ',')) hb = "1";
  params = PUParams(rat_parse(o1), rat_parse(o2), rat_parse(hb));
  validate();
}

void RunConfig::validate() const {
  static const std::set<std::string> objects = {"pu-wigner", "osc-wigner", "pu-psi", "osc-psi"};
  if (!objects.count(object)) throw ConfigError("grid.object: unknown object '" + object + "'");
  static const std::set<std::string> kinds = {"diagonalize", "equal-frequency"};
  if (!kinds.count(transform_kind))
    throw ConfigError("transform.kind: unknown kind '" + transform_kind + "'");
  if (format != "csv" && format != "json")
    throw ConfigError("format: expected 'csv' or 'json', got '" + format + "'");
  if (!(quad_radius > 0)) throw ConfigError("quadrature.radius: must be positive");
  for (const auto& a : axes) {
    var_from_name(a.var);  // throws on unknown names
    if (a.steps > 1 && !(a.hi > a.lo))
      throw ConfigError("grid.axes['" + a.var + "']: max must exceed min");
  }
}

}  // namespace pudq
