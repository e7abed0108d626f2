#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pudq/wavefn.hpp"

using namespace pudq;

namespace {

const PUParams kP41(rat(4), rat(1), rat(1));

std::vector<std::array<double, 2>> grid(double r, int steps) {
  std::vector<std::array<double, 2>> pts;
  double h = steps > 1 ? 2.0 * r / (steps - 1) : 0.0;
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) pts.push_back({-r + h * i, -r + h * j});
  return pts;
}

std::vector<cdouble> sample(const WaveFn2D& f, const std::vector<std::array<double, 2>>& pts) {
  std::vector<cdouble> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i][0], pts[i][1]);
  return out;
}

}  // namespace

TEST_CASE("oscillator eigenfunctions are orthonormal") {
  QuadratureSpec spec{64, 10.0, 1e-10, true};
  WaveFn2D psi00 = osc_wavefunction(0, 0, kP41);
  WaveFn2D psi10 = osc_wavefunction(1, 0, kP41);
  WaveFn2D psi11 = osc_wavefunction(1, 1, kP41);
  auto radii = gaussian_radii(psi00, 10.0);
  CHECK(norm2(psi00, spec, radii[0], radii[1]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm2(psi11, spec, radii[0], radii[1]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(inner(psi00, psi10, spec, radii[0], radii[1])) < 1e-10);
  CHECK_THROWS_AS(osc_wavefunction(0, 0, PUParams(rat(4), rat(1), rat(2))), ConfigError);
}

TEST_CASE("closed-form pu wavefunction: ground state shape") {
  QuadratureSpec spec{64, 10.0, 1e-9, true};
  WaveFn2D psi = pu_wavefunction_closed(0, 0, kP41, spec);
  // phi_00 = 1: pure gaussian-times-phase, e^{-i O1 O2 q x - (D/2)(x^2 + O1 O2 q^2)}
  const auto& cf = psi.closed();
  CHECK(cf.pre.c.size() == 1);
  CHECK(cf.expo.auu == cdouble(-6.0, 0.0));   // -(3/2) * 4
  CHECK(cf.expo.avv == cdouble(-1.5, 0.0));
  CHECK(cf.expo.auv == cdouble(0.0, -4.0));
  auto radii = gaussian_radii(psi, 10.0);
  CHECK(norm2(psi, spec, radii[0], radii[1]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("schrodinger residual of the closed forms") {
  QuadratureSpec spec{64, 10.0, 1e-9, true};
  auto interior = grid(1.5, 7);
  for (auto [n, m] : {std::pair<int, int>{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}}) {
    WaveFn2D psi = pu_wavefunction_closed(n, m, kP41, spec);
    CHECK(schrodinger_residual(psi, kP41, interior) < 1e-6);
  }
  // frequencies whose square roots are irrational work the same way
  PUParams p21(rat(2), rat(1), rat(1));
  PUParams p53(rat(5), rat(3), rat(1));
  for (auto [n, m] : {std::pair<int, int>{0, 0}, {2, 1}}) {
    CHECK(schrodinger_residual(pu_wavefunction_closed(n, m, p21, spec), p21, interior) < 1e-6);
    CHECK(schrodinger_residual(pu_wavefunction_closed(n, m, p53, spec), p53, interior) < 1e-6);
  }
}

TEST_CASE("dirac transform reproduces the closed form up to a global phase") {
  QuadratureSpec tspec{160, 0.0, 1e-7, true};
  GeneratingFunction gen = generating_function(kP41);
  WaveFn2D transformed = dirac_transform(osc_wavefunction(0, 0, kP41), gen, tspec);
  QuadratureSpec nspec{64, 10.0, 1e-9, true};
  WaveFn2D closed = pu_wavefunction_closed(0, 0, kP41, nspec);
  auto pts = grid(1.2, 5);
  PhaseComparison cmp = compare_up_to_phase(sample(closed, pts), sample(transformed, pts));
  CHECK(cmp.rel_error < 1e-6);
}

TEST_CASE("dirac transform preserves norms and orthogonality") {
  QuadratureSpec tspec{160, 0.0, 1e-7, false};
  GeneratingFunction gen = generating_function(kP41);
  WaveFn2D t00 = dirac_transform(osc_wavefunction(0, 0, kP41), gen, tspec);
  WaveFn2D t10 = dirac_transform(osc_wavefunction(1, 0, kP41), gen, tspec);
  QuadratureSpec ispec{48, 10.0, 1e-8, false};
  auto radii = gaussian_radii(pu_wavefunction_unnormalized(0, 0, kP41), 9.0);
  CHECK(norm2(t00, ispec, radii[0], radii[1]) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(inner(t00, t10, ispec, radii[0], radii[1])) < 1e-6);
}

TEST_CASE("wigner transform of the oscillator ground state") {
  WaveFn2D psi00 = osc_wavefunction(0, 0, kP41);
  auto wig = wigner_from_wavefunction(psi00, QuadratureSpec{80, 10.0, 1e-10, true});
  SGauss rho00 = osc_wigner(WignerState(0, 0, kP41, Frame::oscillator));
  for (auto [x1, p1] : grid(1.2, 5)) {
    std::array<double, kNumVars> full{};
    full[static_cast<std::size_t>(Var::X1)] = x1;
    full[static_cast<std::size_t>(Var::P1)] = p1;
    full[static_cast<std::size_t>(Var::X2)] = 0.4;
    full[static_cast<std::size_t>(Var::P2)] = -0.3;
    CHECK(std::abs(wig({x1, p1, 0.4, -0.3}) - rho00.eval_d(full).real()) < 1e-8);
  }
}

TEST_CASE("wavefunction recovered from its wigner function") {
  SGauss rho00 = osc_wigner(WignerState(0, 0, kP41, Frame::oscillator));
  WaveFn2D rec = wavefunction_from_wigner(rho00, Frame::oscillator, 0, 0,
                                          QuadratureSpec{80, 10.0, 1e-10, true});
  CHECK(!rec.reference_point.has_value());
  WaveFn2D psi00 = osc_wavefunction(0, 0, kP41);
  auto pts = grid(1.4, 5);
  CHECK(compare_up_to_phase(sample(psi00, pts), sample(rec, pts)).rel_error < 1e-8);
  // phase convention: the reconstructed function is real positive at origin
  CHECK(rec(0.0, 0.0).real() > 0.0);
  CHECK(std::abs(rec(0.0, 0.0).imag()) < 1e-10);

  // node at the origin triggers the documented fallback
  SGauss rho10 = osc_wigner(WignerState(1, 0, kP41, Frame::oscillator));
  WaveFn2D rec10 = wavefunction_from_wigner(rho10, Frame::oscillator, 1, 0,
                                            QuadratureSpec{80, 10.0, 1e-10, true});
  CHECK(rec10.reference_point.has_value());
  WaveFn2D psi10 = osc_wavefunction(1, 0, kP41);
  CHECK(compare_up_to_phase(sample(psi10, pts), sample(rec10, pts)).rel_error < 1e-6);
}

TEST_CASE("equal frequencies: structured failure and norm divergence") {
  QuadratureSpec spec{48, 10.0, 1e-9, true};
  CHECK_THROWS_AS(pu_wavefunction_closed(0, 0, PUParams(rat(1), rat(1), rat(1)), spec),
                  NonNormalizableError);

  NormDivergenceReport rep = equal_freq_norm_divergence(
      rat(1), rat(1), 0, 0, {rat(1, 2), rat(1, 4), rat(1, 8)}, spec);
  REQUIRE(rep.norms.size() == 3);
  CHECK(rep.monotone);
  CHECK(rep.rate_one_over_delta);
  // halving Delta roughly doubles the squared norm
  CHECK(rep.ratios[0] == doctest::Approx(2.0).epsilon(0.05));
  CHECK(rep.ratios[1] == doctest::Approx(2.0).epsilon(0.05));

  // normalized state at fixed Delta has norm 1
  PUParams pd(rat(5, 4), rat(3, 4), rat(1));
  WaveFn2D psi = pu_wavefunction_closed(0, 0, pd, spec);
  auto radii = gaussian_radii(psi, 10.0);
  CHECK(norm2(psi, spec, radii[0], radii[1]) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("phase comparison identifies aligned functions") {
  std::vector<cdouble> a = {cdouble(1, 0), cdouble(0, 2), cdouble(-1, 1)};
  std::vector<cdouble> b;
  cdouble phase = std::exp(cdouble(0, 1.1));
  for (auto z : a) b.push_back(z * phase);
  PhaseComparison cmp = compare_up_to_phase(a, b);
  CHECK(cmp.rel_error < 1e-14);
  std::vector<cdouble> c = b;
  c[1] += cdouble(0.3, 0);
  CHECK(compare_up_to_phase(a, c).rel_error > 0.05);
}
