#include <benchmark/benchmark.h>

#include "pudq/quadrature.hpp"
#include "pudq/specfun.hpp"
#include "pudq/wigner.hpp"

using namespace pudq;

namespace {

const PUParams kParams(rat(2), rat(1), rat(1));

void BM_MoyalStarQuadratic(benchmark::State& state) {
  SPoly h = hamiltonian(kParams);
  PairSignature sig = PairSignature::pu();
  for (auto _ : state) benchmark::DoNotOptimize(moyal_star(h, h, sig));
}
BENCHMARK(BM_MoyalStarQuadratic);

void BM_LaguerreCompose(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  NoetherCharges j = noether_charges(kParams);
  SPoly z = SPoly::constant(rat(2)) * j.j1;
  for (auto _ : state) benchmark::DoNotOptimize(laguerre(n).compose(z));
}
BENCHMARK(BM_LaguerreCompose)->Arg(2)->Arg(5)->Arg(8);

void BM_PuWignerConstruction(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  WignerState s(n, n, kParams, Frame::pu);
  for (auto _ : state) benchmark::DoNotOptimize(pu_wigner(s));
}
BENCHMARK(BM_PuWignerConstruction)->Arg(1)->Arg(3)->Arg(5);

void BM_StarGenvalueResidual(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  SPoly h = hamiltonian(kParams);
  SGauss rho = pu_wigner(WignerState(n, n, kParams, Frame::pu));
  Scalar e(genvalue_energy(kParams, n, n));
  PairSignature sig = PairSignature::pu();
  for (auto _ : state)
    benchmark::DoNotOptimize(star_genvalue_residual(h, rho, e, kParams, sig).exact_zero());
}
BENCHMARK(BM_StarGenvalueResidual)->Arg(1)->Arg(3)->Arg(5);

void BM_GaussLegendre2D(benchmark::State& state) {
  QuadratureSpec spec{static_cast<int>(state.range(0)), 8.0, 1e-9, false};
  auto f = [](double x, double y) {
    return std::complex<double>(std::exp(-x * x - y * y) * std::cos(3.0 * x * y));
  };
  for (auto _ : state) benchmark::DoNotOptimize(integrate_2d(f, spec));
}
BENCHMARK(BM_GaussLegendre2D)->Arg(64)->Arg(128);

void BM_GaussPolyEval(benchmark::State& state) {
  SGauss rho = pu_wigner(WignerState(3, 3, kParams, Frame::pu));
  std::array<double, kNumVars> pt{};
  pt[static_cast<std::size_t>(Var::q)] = 0.3;
  pt[static_cast<std::size_t>(Var::pq)] = -0.4;
  pt[static_cast<std::size_t>(Var::x)] = 0.8;
  pt[static_cast<std::size_t>(Var::px)] = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(rho.eval_d(pt));
}
BENCHMARK(BM_GaussPolyEval);

}  // namespace

BENCHMARK_MAIN();
