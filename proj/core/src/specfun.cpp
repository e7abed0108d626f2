#include "pudq/specfun.hpp"

#include <cmath>
#include <numbers>

namespace pudq {

namespace {

void require_nonneg(int n, const char* who) {
  if (n < 0) throw Error(std::string(who) + ": negative degree");
}

std::vector<Rational> add_scaled(const std::vector<Rational>& a, const Rational& ca,
                                 const std::vector<Rational>& b, const Rational& cb,
                                 int shift_b = 0) {
  std::vector<Rational> out(std::max(a.size(), b.size() + shift_b), rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += ca * a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i + shift_b] += cb * b[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

PolySeq laguerre(int n) {
  require_nonneg(n, "laguerre");
  std::vector<Rational> prev = {rat(1)};           // L_0
  if (n == 0) return {PolyFamily::laguerre, 0, prev};
  std::vector<Rational> cur = {rat(1), rat(-1)};   // L_1 = 1 - z
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1) L_k - z L_k - k L_{k-1}
    std::vector<Rational> next = add_scaled(cur, rat(2 * k + 1), cur, rat(-1), 1);
    next = add_scaled(next, rat(1), prev, rat(-k));
    for (auto& c : next) c /= rat(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {PolyFamily::laguerre, n, cur};
}

PolySeq laguerre_rodrigues(int n) {
  require_nonneg(n, "laguerre_rodrigues");
  // d^n/dz^n (e^-z z^n) = e^-z * P_n where P <- P' - P, starting from z^n.
  std::vector<Rational> p(n + 1, rat(0));
  p[n] = rat(1);
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> d(p.size(), rat(0));
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = rat(static_cast<long>(i)) * p[i];
    p = add_scaled(d, rat(1), p, rat(-1));
  }
  Rational nf = rat_factorial(n);
  for (auto& c : p) c /= nf;
  while (!p.empty() && p.back() == 0) p.pop_back();
  return {PolyFamily::laguerre, n, p};
}

PolySeq hermite(int n) {
  require_nonneg(n, "hermite");
  std::vector<Rational> prev = {rat(1)};         // H_0
  if (n == 0) return {PolyFamily::hermite, 0, prev};
  std::vector<Rational> cur = {rat(0), rat(2)};  // H_1 = 2x
  for (int k = 1; k < n; ++k) {
    // H_{k+1} = 2x H_k - 2k H_{k-1}
    std::vector<Rational> next = add_scaled(cur, rat(0), cur, rat(2), 1);
    next = add_scaled(next, rat(1), prev, rat(-2 * k));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {PolyFamily::hermite, n, cur};
}

double laguerre_hermite_identity_check(int n, double a, double b, const QuadratureSpec& quad) {
  require_nonneg(n, "laguerre_hermite_identity_check");
  PolySeq hn = hermite(n);
  PolySeq ln = laguerre(n);
  const std::complex<double> i2b(0.0, -2.0 * b);
  auto f = [&](double x) { return hn.eval(x - a) * hn.eval(x + a) * std::exp(i2b * x); };
  std::complex<double> lhs = integrate_gh(f, quad);
  double weight = std::pow(2.0, n) * std::sqrt(std::numbers::pi) * rat_double(rat_factorial(n));
  double rhs =
      weight * std::exp(-b * b) * ln.eval(std::complex<double>(2.0 * (a * a + b * b))).real();
  // residual on the 2^n n! sqrt(pi) scale of the Hermite family: both sides
  // reach ~1e7 by n = 8, where an absolute 1e-8 sits below double roundoff
  return std::abs(lhs - rhs) / std::max(1.0, weight);
}

double gaussian_integral_check(std::complex<double> p, std::complex<double> q,
                               const QuadratureSpec& quad) {
  std::complex<double> p2 = p * p;
  if (p2.real() <= 0.0) throw Error("gaussian_integral_check: Re(p^2) must be positive");
  auto f = [&](double x) { return std::exp(-p2 * x * x + q * x); };
  QuadratureSpec spec = quad;
  // scale the box to the Gaussian decay of the integrand
  spec.radius = std::max(quad.radius, 10.0 / std::sqrt(p2.real()));
  std::complex<double> lhs = integrate_1d(f, spec);
  // principal root with positive real part keeps the closed form on the same
  // branch as the convergent integral
  std::complex<double> s = std::sqrt(p2);
  if (s.real() < 0.0) s = -s;
  std::complex<double> rhs = std::exp(q * q / (4.0 * p2)) * std::sqrt(std::numbers::pi) / s;
  return std::abs(lhs - rhs);
}

DoubleSumForms reindex_double_sum(const std::vector<std::vector<Rational>>& table) {
  auto at = [&](std::size_t k, std::size_t n) -> Rational {
    if (k >= table.size()) return rat(0);
    if (n >= table[k].size()) return rat(0);
    return table[k][n];
  };
  std::size_t kmax = table.size();
  std::size_t nmax = 0;
  for (const auto& row : table) nmax = std::max(nmax, row.size());

  DoubleSumForms out{rat(0), rat(0), rat(0), rat(0)};
  for (std::size_t n = 0; n < nmax; ++n)
    for (std::size_t k = 0; k < kmax; ++k) out.direct += at(k, n);
  // sum_n sum_{k<=n} A_{k, n-k}: anti-diagonal relabeling of the direct sum
  for (std::size_t n = 0; n < nmax + kmax; ++n)
    for (std::size_t k = 0; k <= n; ++k) out.antidiagonal += at(k, n - k);
  // triangular-support pair: sum_k sum_{n>=k} == sum_n sum_{k<=n}
  for (std::size_t k = 0; k < kmax; ++k)
    for (std::size_t n = k; n < nmax; ++n) out.row_triangular += at(k, n);
  for (std::size_t n = 0; n < nmax; ++n)
    for (std::size_t k = 0; k <= n && k < kmax; ++k) out.col_triangular += at(k, n);
  return out;
}

double laguerre_orthogonality_residual(int n, int m, const QuadratureSpec& quad) {
  PolySeq ln = laguerre(n), lm = laguerre(m);
  // integral_0^inf L_n L_m e^-z dz via Gauss-Legendre on [0, R]; the weight
  // truncation error is e^-R, far below the gate tolerance.
  QuadratureSpec spec = quad;
  spec.radius = std::max(quad.radius, 80.0);
  auto f = [&](double z) -> std::complex<double> {
    double zz = (z + spec.radius) / 2.0;  // map [-R, R] -> [0, R]
    return ln.eval(std::complex<double>(zz)) * lm.eval(std::complex<double>(zz)) *
           std::exp(-zz) * 0.5;
  };
  std::complex<double> val = integrate_1d(f, spec);
  double expected = (n == m) ? 1.0 : 0.0;
  return std::abs(val - expected);
}

double hermite_orthogonality_residual(int n, int m, const QuadratureSpec& quad) {
  PolySeq hn = hermite(n), hm = hermite(m);
  // normalize by the weights 2^n n! sqrt(pi); the raw moments reach ~1e7 by
  // n = 8 and a scale-free residual is the meaningful one
  double wn = std::pow(2.0, n) * rat_double(rat_factorial(n)) * std::sqrt(std::numbers::pi);
  double wm = std::pow(2.0, m) * rat_double(rat_factorial(m)) * std::sqrt(std::numbers::pi);
  double scale = 1.0 / std::sqrt(wn * wm);
  auto f = [&](double x) -> std::complex<double> {
    return std::complex<double>(hn.eval(x) * hm.eval(x) * scale);
  };
  std::complex<double> val = integrate_gh(f, quad);
  double expected = (n == m) ? 1.0 : 0.0;
  return std::abs(val - expected);
}

}  // namespace pudq
