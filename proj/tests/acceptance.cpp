// Acceptance suite: one line per criterion, with the stated tolerances pinned
// in the check implementations and the runtime budget printed alongside.
// Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "pudq/verify.hpp"

namespace {

struct Criterion {
  std::string label;
  double budget_seconds;
  std::vector<pudq::CheckResult> (*run)();
};

std::vector<pudq::CheckResult> c1() { return pudq::checks::star_genvalue_suite(5); }
std::vector<pudq::CheckResult> c2() { return pudq::checks::structural_identities(); }
std::vector<pudq::CheckResult> c3() { return pudq::checks::canonical_transformations(); }
std::vector<pudq::CheckResult> c4() { return pudq::checks::consistency_triangle(2, 31, 64); }
std::vector<pudq::CheckResult> c5() { return pudq::checks::unitarity_suite(2, 48); }
std::vector<pudq::CheckResult> c6() { return pudq::checks::spectrum_suite(); }
std::vector<pudq::CheckResult> c7() { return pudq::checks::appendix_oracles(20240811); }
std::vector<pudq::CheckResult> c8() { return pudq::checks::equal_freq_degeneration(); }
std::vector<pudq::CheckResult> c9() { return pudq::checks::evolution_suite(); }

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 star-genvalue residuals exact (n,m <= 5, three frequency pairs)", 60.0, c1},
      {"2 structural identities exact (charges, energy identity, equation of motion)", 5.0, c2},
      {"3 canonical transformations exact (diagonalizing and equal-frequency)", 5.0, c3},
      {"4 consistency triangle (closed form / transform / inversion, 31x31 grid)", 600.0, c4},
      {"5 unitarity of the integral transform (norms and Gram matrix, n,m <= 2)", 300.0, c5},
      {"6 spectrum tables exact (E_nm for n,m <= 10; E_mk formula)", 1.0, c6},
      {"7 special-function oracle suite (integral identities, reindexing)", 30.0, c7},
      {"8 equal-frequency degeneration (structured errors, 1/Delta norm growth)", 60.0, c8},
      {"9 evolution (stationarity, Moyal equation, star-exponential series)", 60.0, c9},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<pudq::CheckResult> results;
    std::string error;
    try {
      results = crit.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int failed = error.empty() ? 0 : 1;
    double worst = 0.0;
    for (const auto& r : results) {
      if (!r.pass) ++failed;
      worst = std::max(worst, r.residual);
    }
    bool in_budget = elapsed <= crit.budget_seconds;
    bool pass = failed == 0 && in_budget;
    if (!pass) ++failures;

    std::printf("%s criterion %s [%zu checks, worst residual %.3g, %.1fs of %.0fs]\n",
                pass ? "PASS" : "FAIL", crit.label.c_str(), results.size(), worst, elapsed,
                crit.budget_seconds);
    if (!error.empty()) std::printf("     error: %s\n", error.c_str());
    for (const auto& r : results)
      if (!r.pass)
        std::printf("     failing: %s (residual %.3g) %s\n", r.name.c_str(), r.residual,
                    r.note.c_str());
    std::fflush(stdout);
  }

  if (failures == 0) std::printf("acceptance: all criteria passed\n");
  return failures == 0 ? 0 : 1;
}
