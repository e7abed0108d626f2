#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "pudq/errors.hpp"

namespace pudq {

// Grid/rule description for every numerical integral in the engine. The
// self-consistency gate is part of the contract: a result only counts when
// doubling the rule order moves it by less than `tol`.
struct QuadratureSpec {
  int order = 64;        // nodes per axis
  double radius = 12.0;  // truncation half-width per axis
  double tol = 1e-10;    // gate on |I(order) - I(2*order)|
  bool gate = true;      // run the doubling gate
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; cached per order.
const Rule1D& gauss_legendre(int n);

// Gauss-Hermite rule for weight e^{-x^2}; cached per order.
const Rule1D& gauss_hermite(int n);

using Fn1 = std::function<std::complex<double>(double)>;
using Fn2 = std::function<std::complex<double>(double, double)>;
using Fn4 = std::function<std::complex<double>(double, double, double, double)>;

// Integrals over [-R, R]^dim by tensor Gauss-Legendre, with the doubling gate.
std::complex<double> integrate_1d(const Fn1& f, const QuadratureSpec& spec);
std::complex<double> integrate_2d(const Fn2& f, const QuadratureSpec& spec);
std::complex<double> integrate_4d(const Fn4& f, const QuadratureSpec& spec);

// Anisotropic box [-r0,r0] x ... x [-r3,r3].
std::complex<double> integrate_4d(const Fn4& f, const QuadratureSpec& spec,
                                  const std::array<double, 4>& radii);

// integral f(x) e^{-x^2} dx by Gauss-Hermite with the doubling gate.
std::complex<double> integrate_gh(const Fn1& f, const QuadratureSpec& spec);

// Deterministic parallel map: runs fn(i) for i in [0, n) on a worker pool and
// leaves chunk results in index order, so reductions are reproducible.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace pudq
