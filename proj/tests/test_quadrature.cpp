#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "pudq/quadrature.hpp"

using namespace pudq;

TEST_CASE("gauss-legendre rule sanity") {
  for (int n : {16, 33, 64}) {
    const Rule1D& r = gauss_legendre(n);
    double wsum = 0.0;
    for (double w : r.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // exactness on a degree 2n-1 monomial (odd: zero by symmetry)
    double odd = 0.0;
    for (int i = 0; i < n; ++i) odd += r.weights[i] * std::pow(r.nodes[i], 2 * n - 1);
    CHECK(std::abs(odd) < 1e-13);
  }
}

TEST_CASE("gauss-hermite rule sanity") {
  for (int n : {16, 48, 96}) {
    const Rule1D& r = gauss_hermite(n);
    double wsum = 0.0, x2 = 0.0;
    for (int i = 0; i < n; ++i) {
      wsum += r.weights[i];
      x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
    }
    CHECK(wsum == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(x2 == doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("1d integral with gate") {
  QuadratureSpec spec{64, 8.0, 1e-10, true};
  auto g = integrate_1d([](double x) { return std::complex<double>(std::exp(-x * x)); }, spec);
  CHECK(g.real() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("2d and 4d tensor integrals") {
  QuadratureSpec spec{64, 8.0, 1e-9, true};
  auto f2 = integrate_2d(
      [](double x, double y) { return std::complex<double>(std::exp(-x * x - 2.0 * y * y)); },
      spec);
  CHECK(f2.real() == doctest::Approx(std::numbers::pi / std::sqrt(2.0)).epsilon(1e-10));

  QuadratureSpec spec4{48, 7.0, 1e-8, true};
  auto f4 = integrate_4d(
      [](double a, double b, double c, double d) {
        return std::complex<double>(std::exp(-a * a - b * b - c * c - d * d));
      },
      spec4);
  CHECK(f4.real() == doctest::Approx(std::pow(std::numbers::pi, 2)).epsilon(1e-9));
}

TEST_CASE("doubling gate flags under-resolution") {
  // highly oscillatory integrand at a tiny order
  QuadratureSpec bad{6, 10.0, 1e-12, true};
  CHECK_THROWS_AS(integrate_1d(
                      [](double x) {
                        return std::complex<double>(std::cos(40.0 * x) * std::exp(-x * x));
                      },
                      bad),
                  QuadratureError);
}

TEST_CASE("gauss-hermite integral with complex integrand") {
  QuadratureSpec spec{64, 0.0, 1e-11, true};
  // int e^{-x^2} e^{i x} dx = sqrt(pi) e^{-1/4}
  auto v = integrate_gh(
      [](double x) { return std::exp(std::complex<double>(0.0, x)); }, spec);
  CHECK(v.real() ==
        doctest::Approx(std::sqrt(std::numbers::pi) * std::exp(-0.25)).epsilon(1e-12));
  CHECK(std::abs(v.imag()) < 1e-13);
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) CHECK(h.load() == 1);
}
