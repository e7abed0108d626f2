#include "pudq/commands.hpp"

#include <fstream>
#include <ostream>

#include "pudq/canon.hpp"
#include "pudq/verify.hpp"
#include "pudq/wavefn.hpp"
#include "pudq/wigner.hpp"

namespace pudq {

namespace {

std::string finish(const Table& t, const RunConfig& cfg, nlohmann::json meta) {
  if (cfg.format == "json") return table_to_json(t, std::move(meta)).dump(2) + "\n";
  return table_to_csv(t);
}

nlohmann::json params_meta(const PUParams& p) {
  return {{"omega1", rat_str(p.omega1)}, {"omega2", rat_str(p.omega2)}, {"hbar", rat_str(p.hbar)}};
}

std::array<double, kNumVars> grid_point(const std::vector<Var>& vars,
                                        const std::vector<double>& coords) {
  std::array<double, kNumVars> pt{};
  for (std::size_t i = 0; i < vars.size(); ++i) pt[static_cast<std::size_t>(vars[i])] = coords[i];
  return pt;
}

}  // namespace

CommandResult cmd_spectrum(const RunConfig& cfg) {
  Table t;
  nlohmann::json meta = {{"params", params_meta(cfg.params)}};
  if (cfg.equal_frequency) {
    // E_mk sampling: discrete branch index m, continuous label k
    if (!cfg.params.equal_freq())
      throw ConfigError("spectrum.equal_frequency: requires omega1 == omega2");
    t.header = {"m", "k", "energy"};
    for (int m = 0; m <= cfg.m_max; ++m) {
      for (int i = 0; i < cfg.k_steps; ++i) {
        double k = cfg.k_steps == 1 ? 0.0 : cfg.k_max * i / (cfg.k_steps - 1);
        t.rows.push_back({std::to_string(m), format_double(k),
                          format_double(equal_freq_spectrum(cfg.params.omega1, cfg.params.hbar,
                                                            m, k))});
      }
    }
    meta["mode"] = "equal-frequency";
  } else {
    SpectrumTable table = spectrum(cfg.params, cfg.n_max, cfg.m_max);
    t.header = {"n", "m", "energy"};
    for (const auto& e : table.entries)
      t.rows.push_back({std::to_string(e.n), std::to_string(e.m), rat_str(e.energy)});
    meta["mode"] = "genvalue";
    meta["unbounded_below"] = table.unbounded_below;
  }
  return {0, finish(t, cfg, std::move(meta)), "spectrum: " + std::to_string(t.rows.size()) + " rows"};
}

CommandResult cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.genvalue_nmax = cfg.verify_nmax;
  opts.quad_order = cfg.quad_order;
  opts.negative_control = cfg.negative_control;
  VerifyReport rep = run_verify(opts);
  std::string diag;
  if (rep.all_pass()) {
    diag = "verify: all " + std::to_string(rep.checks.size()) + " checks passed";
  } else {
    diag = "verify: FAILED:";
    for (const auto& name : rep.failing()) diag += " " + name;
  }
  return {rep.all_pass() ? 0 : 1, rep.to_json().dump(2) + "\n", diag};
}

CommandResult cmd_grid(const RunConfig& cfg) {
  if (cfg.axes.empty()) throw ConfigError("grid.axes: at least one axis required");

  std::vector<Var> vars;
  std::vector<std::vector<double>> points;
  for (const auto& a : cfg.axes) {
    vars.push_back(var_from_name(a.var));
    points.push_back(axis_points(a));
  }

  Table t;
  for (const auto& a : cfg.axes) t.header.push_back(a.var);
  nlohmann::json meta = {{"params", params_meta(cfg.params)},
                         {"object", cfg.object},
                         {"state", {cfg.state_n, cfg.state_m}}};
  nlohmann::json axes_meta = nlohmann::json::array();
  for (const auto& a : cfg.axes)
    axes_meta.push_back({{"var", a.var}, {"min", a.lo}, {"max", a.hi}, {"steps", a.steps}});
  meta["axes"] = axes_meta;

  // iterate the tensor grid in row-major order
  std::vector<std::size_t> idx(cfg.axes.size(), 0);
  auto advance = [&]() {
    for (std::size_t d = idx.size(); d-- > 0;) {
      if (++idx[d] < points[d].size()) return true;
      idx[d] = 0;
    }
    return false;
  };

  auto coords = [&]() {
    std::vector<double> c(idx.size());
    for (std::size_t d = 0; d < idx.size(); ++d) c[d] = points[d][idx[d]];
    return c;
  };

  if (cfg.object == "pu-wigner" || cfg.object == "osc-wigner") {
    Frame frame = cfg.object == "pu-wigner" ? Frame::pu : Frame::oscillator;
    WignerState s(cfg.state_n, cfg.state_m, cfg.params, frame);
    SGauss rho = frame == Frame::pu ? pu_wigner(s) : osc_wigner(s);
    t.header.push_back("value");
    do {
      auto c = coords();
      double v = rho.eval_d(grid_point(vars, c)).real();
      std::vector<std::string> row;
      for (double x : c) row.push_back(format_double(x));
      row.push_back(format_double(v));
      t.rows.push_back(std::move(row));
    } while (advance());
  } else {
    // wavefunction grids are two-dimensional
    if (cfg.axes.size() != 2)
      throw ConfigError("grid.axes: wavefunction grids take exactly two axes");
    QuadratureSpec spec{cfg.quad_order, cfg.quad_radius, 1e-8, true};
    WaveFn2D psi = cfg.object == "osc-psi"
                       ? osc_wavefunction(cfg.state_n, cfg.state_m, cfg.params)
                       : pu_wavefunction_closed(cfg.state_n, cfg.state_m, cfg.params, spec);
    t.header.push_back("re(value)");
    t.header.push_back("im(value)");
    do {
      auto c = coords();
      cdouble v = psi(c[0], c[1]);
      std::vector<std::string> row;
      for (double x : c) row.push_back(format_double(x));
      row.push_back(format_double(v.real()));
      row.push_back(format_double(v.imag()));
      t.rows.push_back(std::move(row));
    } while (advance());
  }
  return {0, finish(t, cfg, std::move(meta)),
          "grid: " + std::to_string(t.rows.size()) + " points of " + cfg.object};
}

CommandResult cmd_transform(const RunConfig& cfg) {
  nlohmann::json j;
  j["params"] = params_meta(cfg.params);
  j["kind"] = cfg.transform_kind;

  auto matrix_json = [](const LinearCanonicalMap& map) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 4; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int k = 0; k < 4; ++k) row.push_back(map.matrix()[i][k].str());
      rows.push_back(row);
    }
    nlohmann::json out;
    out["rows"] = rows;
    nlohmann::json ov = nlohmann::json::array(), nv = nlohmann::json::array();
    for (Var v : map.old_vars()) ov.push_back(var_name(v));
    for (Var v : map.new_vars()) nv.push_back(var_name(v));
    out["old_vars"] = ov;
    out["new_vars"] = nv;
    return out;
  };

  if (cfg.transform_kind == "diagonalize") {
    LinearCanonicalMap map = diagonalizing_map(cfg.params);
    GeneratingFunction gen = generating_function(cfg.params);
    j["map"] = matrix_json(map);
    j["generating_function"] = gen.poly().str();
    j["symplectic"] = map.is_symplectic();
    j["pullback_hamiltonian"] = pullback(hamiltonian(cfg.params), map).str();
  } else {
    if (!cfg.params.equal_freq())
      throw ConfigError("transform.kind=equal-frequency: requires omega1 == omega2");
    EqualFreqTransform eq = equal_freq_map(cfg.params.omega1, cfg.params.hbar);
    j["map"] = matrix_json(eq.map);
    j["generating_function"] = eq.generator.poly().str();
    j["symplectic"] = eq.map.is_symplectic();
    j["pullback_hamiltonian"] = pullback(hamiltonian(cfg.params), eq.map).str();
  }
  return {0, j.dump(2) + "\n", "transform: " + cfg.transform_kind};
}

int deliver(const CommandResult& r, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!r.diagnostics.empty()) err << r.diagnostics << "\n";
  if (r.exit_code == 2) return 2;
  if (cfg.output) {
    std::ofstream f(*cfg.output, std::ios::binary | std::ios::trunc);
    if (!f) {
      err << "cannot write output file: " << *cfg.output << "\n";
      return 2;
    }
    f << r.payload;
  } else {
    out << r.payload;
  }
  return r.exit_code;
}

}  // namespace pudq
