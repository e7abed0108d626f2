#pragma once

#include <complex>
#include <vector>

#include "pudq/poly.hpp"
#include "pudq/quadrature.hpp"

namespace pudq {

enum class PolyFamily { laguerre, hermite };

// One orthogonal polynomial with exact rational coefficients, coeffs[k] on z^k.
struct PolySeq {
  PolyFamily family;
  int degree;
  std::vector<Rational> coeffs;

  std::complex<double> eval(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + rat_double(*it);
    return acc;
  }

  double eval(double z) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + rat_double(*it);
    return acc;
  }

  Rational eval(const Rational& z) const {
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Scalar eval(const Scalar& z) const {
    Scalar acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * z + Scalar(*it);
    return acc;
  }

  // Composition with a polynomial argument, exact.
  template <class K>
  Poly<K> compose(const Poly<K>& arg) const {
    Poly<K> acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = acc * arg + Poly<K>::constant(*it);
    return acc;
  }
};

// Laguerre L_n by the standard recurrence (n+1)L_{n+1} = (2n+1-z)L_n - nL_{n-1}.
PolySeq laguerre(int n);

// Laguerre L_n by the Rodrigues construction e^z d^n(e^-z z^n) / n!.
PolySeq laguerre_rodrigues(int n);

// Physicists' Hermite H_n: H_0 = 1, H_1 = 2x, H_{n+1} = 2x H_n - 2n H_{n-1}.
PolySeq hermite(int n);

// | integral H_n(x-a) H_n(x+a) e^{-x^2} e^{-2ibx} dx
//   - 2^n sqrt(pi) n! e^{-b^2} L_n(2(a^2+b^2)) |, by Gauss-Hermite quadrature.
double laguerre_hermite_identity_check(int n, double a, double b, const QuadratureSpec& quad);

// | quadrature of integral exp(-p^2 x^2 + q x) dx  -  exp(q^2/4p^2) sqrt(pi)/p |
// for complex p with Re(p^2) > 0.
double gaussian_integral_check(std::complex<double> p, std::complex<double> q,
                               const QuadratureSpec& quad);

// Evaluates a finite double sum over a (possibly triangular) table in the two
// reindexed orders and returns both values; they must agree for any finite
// table with triangular support.
struct DoubleSumForms {
  Rational direct;          // sum_n sum_k A[k][n]
  Rational antidiagonal;    // sum_n sum_{k<=n} A[k][n-k]
  Rational row_triangular;  // sum_k sum_{n>=k} A[k][n]
  Rational col_triangular;  // sum_n sum_{k<=n} A[k][n]
};
DoubleSumForms reindex_double_sum(const std::vector<std::vector<Rational>>& table);

// Orthogonality residuals by quadrature, used as oracle material.
double laguerre_orthogonality_residual(int n, int m, const QuadratureSpec& quad);
double hermite_orthogonality_residual(int n, int m, const QuadratureSpec& quad);

}  // namespace pudq
