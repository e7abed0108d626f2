#include "pudq/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

namespace pudq {

namespace {

// Legendre P_n(x) and derivative by the three-term recurrence.
std::pair<double, double> legendre_pd(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double d = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, d};
}

Rule1D make_gauss_legendre(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-based initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, d] = legendre_pd(n, x);
      double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, d] = legendre_pd(n, x);
    double w = 2.0 / ((1.0 - x * x) * d * d);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2) {
    r.nodes[n / 2] = 0.0;
    auto [p, d] = legendre_pd(n, 0.0);
    r.weights[n / 2] = 2.0 / (d * d);
  }
  return r;
}

// Orthonormal Hermite recurrence values (weight e^{-x^2}); keeps magnitudes
// tame for high orders, and yields Christoffel weights w_i = 1/sum p_k(x)^2.
void hermite_ortho(int n, double x, double* pn, double* pn1) {
  double p0 = std::pow(std::numbers::pi, -0.25);
  double p1 = std::sqrt(2.0) * x * p0;
  if (n == 0) {
    *pn = p0;
    *pn1 = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    double p2 = x * std::sqrt(2.0 / k) * p1 - std::sqrt((k - 1.0) / k) * p0;
    p0 = p1;
    p1 = p2;
  }
  *pn = p1;
  *pn1 = p0;
}

Rule1D make_gauss_hermite(int n) {
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Initial guesses march inward from the largest root estimate.
  double x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 1)
      x -= 1.14 * std::pow(n, 0.426) / x;
    else if (i == 2)
      x = 1.86 * x - 0.86 * r.nodes[n - 1];
    else if (i == 3)
      x = 1.91 * x - 0.91 * r.nodes[n - 2];
    else if (i > 3)
      x = 2.0 * x - r.nodes[n - i + 1];

    double pn = 0.0, pn1 = 0.0;
    for (int it = 0; it < 200; ++it) {
      hermite_ortho(n, x, &pn, &pn1);
      // derivative of orthonormal H~_n: sqrt(2n) H~_{n-1}
      double d = std::sqrt(2.0 * n) * pn1;
      double dx = pn / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    hermite_ortho(n, x, &pn, &pn1);
    double d = std::sqrt(2.0 * n) * pn1;
    double w = 2.0 / (d * d);
    r.nodes[n - 1 - i] = x;
    r.nodes[i] = -x;
    r.weights[n - 1 - i] = w;
    r.weights[i] = w;
  }
  if (n % 2) r.nodes[n / 2] = 0.0;
  if (n % 2) {
    double pn, pn1;
    hermite_ortho(n, 0.0, &pn, &pn1);
    double d = std::sqrt(2.0 * n) * pn1;
    r.weights[n / 2] = 2.0 / (d * d);
  }
  return r;
}

template <class Maker>
const Rule1D& cached_rule(std::map<int, Rule1D>& cache, std::mutex& mu, int n, Maker make) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make(n)).first;
  return it->second;
}

// value plus the rule's L1 mass; cancellation-heavy integrands converge only
// down to roundoff relative to the L1 mass, and the gate must know that.
struct QuadEval {
  std::complex<double> value;
  double l1;
};

QuadEval tensor_1d(const Fn1& f, int order, double radius) {
  const Rule1D& r = gauss_legendre(order);
  std::complex<double> s = 0.0;
  double l1 = 0.0;
  for (int i = 0; i < order; ++i) {
    std::complex<double> v = f(radius * r.nodes[i]);
    s += r.weights[i] * v;
    l1 += r.weights[i] * std::abs(v);
  }
  return {s * radius, l1 * radius};
}

QuadEval tensor_2d(const Fn2& f, int order, double radius) {
  const Rule1D& r = gauss_legendre(order);
  std::vector<QuadEval> rows(order);
  parallel_for(order, [&](std::size_t i) {
    std::complex<double> s = 0.0;
    double l1 = 0.0;
    double xi = radius * r.nodes[i];
    for (int j = 0; j < order; ++j) {
      std::complex<double> v = f(xi, radius * r.nodes[j]);
      s += r.weights[j] * v;
      l1 += r.weights[j] * std::abs(v);
    }
    rows[i] = {s * r.weights[i], l1 * r.weights[i]};
  });
  std::complex<double> s = 0.0;
  double l1 = 0.0;
  for (const auto& v : rows) {
    s += v.value;
    l1 += v.l1;
  }
  return {s * radius * radius, l1 * radius * radius};
}

QuadEval tensor_4d(const Fn4& f, int order, const std::array<double, 4>& radii) {
  const Rule1D& r = gauss_legendre(order);
  std::vector<QuadEval> slabs(order * order);
  parallel_for(static_cast<std::size_t>(order) * order, [&](std::size_t ij) {
    int i = static_cast<int>(ij) / order, j = static_cast<int>(ij) % order;
    double xi = radii[0] * r.nodes[i], xj = radii[1] * r.nodes[j];
    std::complex<double> s = 0.0;
    double l1 = 0.0;
    for (int k = 0; k < order; ++k) {
      double xk = radii[2] * r.nodes[k];
      std::complex<double> row = 0.0;
      double rowl1 = 0.0;
      for (int l = 0; l < order; ++l) {
        std::complex<double> v = f(xi, xj, xk, radii[3] * r.nodes[l]);
        row += r.weights[l] * v;
        rowl1 += r.weights[l] * std::abs(v);
      }
      s += r.weights[k] * row;
      l1 += r.weights[k] * rowl1;
    }
    slabs[ij] = {s * r.weights[i] * r.weights[j], l1 * r.weights[i] * r.weights[j]};
  });
  std::complex<double> s = 0.0;
  double l1 = 0.0;
  for (const auto& v : slabs) {
    s += v.value;
    l1 += v.l1;
  }
  double vol = radii[0] * radii[1] * radii[2] * radii[3];
  return {s * vol, l1 * vol};
}

template <class Evaluate>
std::complex<double> gated(const QuadratureSpec& spec, Evaluate evaluate) {
  QuadEval coarse = evaluate(spec.order);
  if (!spec.gate) return coarse.value;
  QuadEval fine = evaluate(2 * spec.order);
  // converged means: the refinement moved by no more than tol relative to the
  // result, with a floor at roundoff accumulated over the L1 mass
  double scale = std::max({1.0, std::abs(fine.value)});
  double floor = 64.0 * std::numeric_limits<double>::epsilon() * fine.l1;
  if (std::abs(fine.value - coarse.value) > spec.tol * scale + floor)
    throw QuadratureError("quadrature not converged at order " + std::to_string(spec.order) +
                          ": delta=" + std::to_string(std::abs(fine.value - coarse.value)));
  return fine.value;
}

}  // namespace

const Rule1D& gauss_legendre(int n) {
  static std::map<int, Rule1D> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, make_gauss_legendre);
}

const Rule1D& gauss_hermite(int n) {
  static std::map<int, Rule1D> cache;
  static std::mutex mu;
  return cached_rule(cache, mu, n, make_gauss_hermite);
}

std::complex<double> integrate_1d(const Fn1& f, const QuadratureSpec& spec) {
  return gated(spec, [&](int n) { return tensor_1d(f, n, spec.radius); });
}

std::complex<double> integrate_2d(const Fn2& f, const QuadratureSpec& spec) {
  return gated(spec, [&](int n) { return tensor_2d(f, n, spec.radius); });
}

std::complex<double> integrate_4d(const Fn4& f, const QuadratureSpec& spec) {
  std::array<double, 4> radii = {spec.radius, spec.radius, spec.radius, spec.radius};
  return gated(spec, [&](int n) { return tensor_4d(f, n, radii); });
}

std::complex<double> integrate_4d(const Fn4& f, const QuadratureSpec& spec,
                                  const std::array<double, 4>& radii) {
  return gated(spec, [&](int n) { return tensor_4d(f, n, radii); });
}

std::complex<double> integrate_gh(const Fn1& f, const QuadratureSpec& spec) {
  auto evaluate = [&](int n) {
    const Rule1D& r = gauss_hermite(n);
    std::complex<double> s = 0.0;
    double l1 = 0.0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> v = f(r.nodes[i]);
      s += r.weights[i] * v;
      l1 += r.weights[i] * std::abs(v);
    }
    return QuadEval{s, l1};
  };
  return gated(spec, evaluate);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>(hw == 0 ? 4 : hw, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace pudq
