#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pudq/pu_model.hpp"

namespace pudq {

struct CheckResult {
  std::string name;
  bool exact;       // exact-arithmetic identity vs quadrature/floating check
  bool pass;
  double residual;  // 0 for exact passes, magnitude otherwise
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  nlohmann::json observations;

  bool all_pass() const;
  std::vector<std::string> failing() const;
  nlohmann::json to_json() const;
};

struct VerifyOptions {
  int genvalue_nmax = 3;   // star-genvalue depth per frequency pair
  int triangle_nmax = 1;   // consistency-triangle depth
  int quad_order = 48;
  bool negative_control = false;  // inject a deliberately wrong genvalue
};

VerifyReport run_verify(const VerifyOptions& opts);

// Criterion-sized groups. Each returns its own check list so the acceptance
// suite can run and time them independently.
namespace checks {

std::vector<CheckResult> star_genvalue_suite(int nmax);
std::vector<CheckResult> structural_identities();
std::vector<CheckResult> canonical_transformations();
std::vector<CheckResult> consistency_triangle(int nmax, int grid_steps, int quad_order);
std::vector<CheckResult> unitarity_suite(int nmax, int quad_order);
std::vector<CheckResult> spectrum_suite();
std::vector<CheckResult> appendix_oracles(unsigned seed);
std::vector<CheckResult> equal_freq_degeneration();
std::vector<CheckResult> evolution_suite();
std::vector<CheckResult> wigner_quadrature_suite(int quad_order);
std::vector<CheckResult> wavefn_consistency(int quad_order);

nlohmann::json observations();

}  // namespace checks

}  // namespace pudq
