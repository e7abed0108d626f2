#include "pudq/wavefn.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <numbers>

namespace pudq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_hbar_one(const PUParams& p, const char* who) {
  if (p.hbar != 1) throw ConfigError(std::string(who) + ": wavefunction layer fixes hbar = 1");
}

// Gauss-Legendre sum over [-ru,ru] x [-rv,rv] with the doubling gate; the
// gate floor follows the integrand's L1 mass so cancellation-level roundoff
// does not read as non-convergence.
cdouble gl2(const std::function<cdouble(double, double)>& f, const QuadratureSpec& spec,
            double ru, double rv) {
  auto run = [&](int order, double* l1_out) {
    const Rule1D& r = gauss_legendre(order);
    std::vector<cdouble> rows(order);
    std::vector<double> l1rows(order);
    parallel_for(order, [&](std::size_t i) {
      cdouble srow = 0.0;
      double l1 = 0.0;
      double u = ru * r.nodes[i];
      for (int j = 0; j < order; ++j) {
        cdouble v = f(u, rv * r.nodes[j]);
        srow += r.weights[j] * v;
        l1 += r.weights[j] * std::abs(v);
      }
      rows[i] = srow * r.weights[i];
      l1rows[i] = l1 * r.weights[i];
    });
    cdouble s = 0.0;
    double l1 = 0.0;
    for (int i = 0; i < order; ++i) {
      s += rows[i];
      l1 += l1rows[i];
    }
    *l1_out = l1 * ru * rv;
    return s * ru * rv;
  };
  double l1 = 0.0;
  cdouble coarse = run(spec.order, &l1);
  if (!spec.gate) return coarse;
  cdouble fine = run(2 * spec.order, &l1);
  double scale = std::max(1.0, std::abs(fine));
  double floor = 64.0 * std::numeric_limits<double>::epsilon() * l1;
  if (std::abs(fine - coarse) > spec.tol * scale + floor)
    throw QuadratureError("2d quadrature not converged at order " + std::to_string(spec.order));
  return fine;
}

}  // namespace

CPoly2 CPoly2::linear(cdouble cu, cdouble cv, cdouble c0) {
  CPoly2 p;
  if (cu != 0.0) p.c[{1, 0}] = cu;
  if (cv != 0.0) p.c[{0, 1}] = cv;
  if (c0 != 0.0) p.c[{0, 0}] = c0;
  return p;
}

cdouble CPoly2::eval(double u, double v) const {
  cdouble s = 0.0;
  for (const auto& [e, coeff] : c) s += coeff * std::pow(u, e.first) * std::pow(v, e.second);
  return s;
}

CPoly2 CPoly2::diff_u() const {
  CPoly2 out;
  for (const auto& [e, coeff] : c)
    if (e.first > 0) out.c[{e.first - 1, e.second}] += coeff * double(e.first);
  return out;
}

CPoly2 CPoly2::diff_v() const {
  CPoly2 out;
  for (const auto& [e, coeff] : c)
    if (e.second > 0) out.c[{e.first, e.second - 1}] += coeff * double(e.second);
  return out;
}

CPoly2 CPoly2::operator+(const CPoly2& o) const {
  CPoly2 out = *this;
  for (const auto& [e, coeff] : o.c) out.c[e] += coeff;
  return out;
}

CPoly2 CPoly2::operator*(const CPoly2& o) const {
  CPoly2 out;
  for (const auto& [ea, ca] : c)
    for (const auto& [eb, cb] : o.c)
      out.c[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  return out;
}

CPoly2 CPoly2::scaled(cdouble s) const {
  CPoly2 out;
  for (const auto& [e, coeff] : c) out.c[e] = coeff * s;
  return out;
}

CPoly2 hermite_poly2(int k, const CPoly2& arg) {
  CPoly2 h0 = CPoly2::one();
  if (k == 0) return h0;
  CPoly2 h1 = arg.scaled(2.0);
  for (int j = 1; j < k; ++j) {
    CPoly2 h2 = arg.scaled(2.0) * h1 + h0.scaled(-2.0 * j);
    h0 = std::move(h1);
    h1 = std::move(h2);
  }
  return h1;
}

WaveFn2D::WaveFn2D(Frame frame, int n, int m, Closed closed)
    : frame_(frame), n_(n), m_(m), closed_(std::move(closed)), provenance_("closed-form") {
  const Closed& cf = *closed_;
  eval_ = [cf](double u, double v) {
    return cf.norm * cf.pre.eval(u, v) * std::exp(cf.expo.eval(u, v));
  };
}

WaveFn2D::WaveFn2D(Frame frame, int n, int m, std::function<cdouble(double, double)> eval,
                   std::string provenance)
    : frame_(frame), n_(n), m_(m), eval_(std::move(eval)), provenance_(std::move(provenance)) {}

const WaveFn2D::Closed& WaveFn2D::closed() const {
  if (!closed_) throw Error("wavefunction has no closed form (" + provenance_ + ")");
  return *closed_;
}

WaveFn2D osc_wavefunction(int n, int m, const PUParams& p) {
  require_hbar_one(p, "osc_wavefunction");
  if (n < 0 || m < 0) throw ConfigError("state indices must be non-negative");
  double o1 = rat_double(p.omega1), o2 = rat_double(p.omega2);
  CPoly2 hx = hermite_poly2(n, CPoly2::linear(std::sqrt(o1), 0.0));
  CPoly2 hy = hermite_poly2(m, CPoly2::linear(0.0, std::sqrt(o2)));
  WaveFn2D::Closed cf;
  cf.pre = hx * hy;
  cf.expo.auu = -o1 / 2.0;
  cf.expo.avv = -o2 / 2.0;
  double cn = std::pow(o1 / kPi, 0.25) / std::sqrt(std::pow(2.0, n) * rat_double(rat_factorial(n)));
  double cm = std::pow(o2 / kPi, 0.25) / std::sqrt(std::pow(2.0, m) * rat_double(rat_factorial(m)));
  cf.norm = cn * cm;
  return WaveFn2D(Frame::oscillator, n, m, cf);
}

WaveFn2D pu_wavefunction_unnormalized(int n, int m, const PUParams& p) {
  require_hbar_one(p, "pu_wavefunction_closed");
  if (n < 0 || m < 0) throw ConfigError("state indices must be non-negative");
  if (p.omega1 < p.omega2) throw ConfigError("pu_wavefunction_closed: requires omega1 >= omega2");
  double o1 = rat_double(p.omega1), o2 = rat_double(p.omega2);
  double delta = o1 - o2;
  double so1 = std::sqrt(o1), so2 = std::sqrt(o2);

  // Hermite arguments sqrt(O1)(x + i O2 q) and sqrt(O2)(O1 q + i x), in
  // variables (u, v) = (q, x).
  CPoly2 yplus = CPoly2::linear(cdouble(0.0, so1 * o2), cdouble(so1, 0.0));
  CPoly2 yminus = CPoly2::linear(cdouble(so2 * o1, 0.0), cdouble(0.0, so2));
  cdouble a_delta(0.0, delta / (4.0 * std::sqrt(o1 * o2)));

  CPoly2 phi;
  if (m <= n) {
    for (int k = 0; k <= m; ++k) {
      Rational comb = rat_factorial(m) * rat_factorial(n - m) /
                      (rat_factorial(m - k) * rat_factorial(k) * rat_factorial(n - m + k));
      cdouble coeff = std::pow(a_delta, k) * rat_double(comb);
      phi = phi + (hermite_poly2(n - m + k, yplus) * hermite_poly2(k, yminus)).scaled(coeff);
    }
  } else {
    for (int k = 0; k <= n; ++k) {
      Rational comb = rat_factorial(n) * rat_factorial(m - n) /
                      (rat_factorial(n - k) * rat_factorial(k) * rat_factorial(m - n + k));
      cdouble coeff = std::pow(a_delta, k) * rat_double(comb);
      phi = phi + (hermite_poly2(k, yplus) * hermite_poly2(m - n + k, yminus)).scaled(coeff);
    }
  }

  WaveFn2D::Closed cf;
  cf.pre = phi;
  cf.expo.auu = -delta * o1 * o2 / 2.0;  // q^2
  cf.expo.avv = -delta / 2.0;            // x^2
  cf.expo.auv = cdouble(0.0, -o1 * o2);  // q x phase
  cf.norm = 1.0;
  return WaveFn2D(Frame::pu, n, m, cf);
}

std::array<double, 2> gaussian_radii(const WaveFn2D& psi, double n_widths) {
  const auto& cf = psi.closed();
  double au = -2.0 * cf.expo.auu.real();  // |psi|^2 ~ e^{-au u^2 - av v^2}
  double av = -2.0 * cf.expo.avv.real();
  auto radius = [&](double a) { return a > 0 ? n_widths / std::sqrt(2.0 * a) : 0.0; };
  return {radius(au), radius(av)};
}

double norm2(const WaveFn2D& psi, const QuadratureSpec& quad, double ru, double rv) {
  auto f = [&](double u, double v) -> cdouble { return std::norm(psi(u, v)); };
  return gl2(f, quad, ru, rv).real();
}

cdouble inner(const WaveFn2D& a, const WaveFn2D& b, const QuadratureSpec& quad, double ru,
              double rv) {
  auto f = [&](double u, double v) { return std::conj(a(u, v)) * b(u, v); };
  return gl2(f, quad, ru, rv);
}

WaveFn2D pu_wavefunction_closed(int n, int m, const PUParams& p, const QuadratureSpec& quad) {
  WaveFn2D raw = pu_wavefunction_unnormalized(n, m, p);
  auto radii = gaussian_radii(raw, 8.0);
  if (radii[0] == 0.0 || radii[1] == 0.0)
    throw NonNormalizableError("pu_wavefunction_closed: no Gaussian decay at Delta = " +
                               rat_str(p.delta()));
  QuadratureSpec ungated = quad;
  ungated.gate = false;
  ungated.order = std::max(quad.order, 96);
  double n_r = norm2(raw, ungated, radii[0], radii[1]);
  double n_2r = norm2(raw, ungated, 2.0 * radii[0], 2.0 * radii[1]);
  if (std::abs(n_2r - n_r) > 1e-6 * std::max(1.0, std::abs(n_2r)))
    throw NonNormalizableError(
        "pu_wavefunction_closed: norm integral grows under radius doubling (Delta = " +
        rat_str(p.delta()) + ")");
  WaveFn2D::Closed cf = raw.closed();
  cf.norm = 1.0 / std::sqrt(n_2r);
  return WaveFn2D(Frame::pu, n, m, cf);
}

namespace {

// Rank-1 factorization of a two-variable polynomial: pre(u,v) = f(u) g(v).
// Oscillator eigenfunctions always factor; mixed closed forms do not.
bool factor_rank1(const CPoly2& p, std::vector<cdouble>& fu, std::vector<cdouble>& gv) {
  int du = 0, dv = 0;
  for (const auto& [e, c] : p.c) {
    du = std::max(du, e.first);
    dv = std::max(dv, e.second);
  }
  std::vector<std::vector<cdouble>> m(du + 1, std::vector<cdouble>(dv + 1, 0.0));
  double peak = 0.0;
  int i0 = 0, j0 = 0;
  for (const auto& [e, c] : p.c) {
    m[e.first][e.second] = c;
    if (std::abs(c) > peak) {
      peak = std::abs(c);
      i0 = e.first;
      j0 = e.second;
    }
  }
  if (peak == 0.0) return false;
  fu.assign(du + 1, 0.0);
  gv.assign(dv + 1, 0.0);
  for (int i = 0; i <= du; ++i) fu[i] = m[i][j0];
  for (int j = 0; j <= dv; ++j) gv[j] = m[i0][j] / m[i0][j0];
  for (int i = 0; i <= du; ++i)
    for (int j = 0; j <= dv; ++j)
      if (std::abs(m[i][j] - fu[i] * gv[j]) > 1e-12 * peak) return false;
  return true;
}

cdouble eval_poly1(const std::vector<cdouble>& c, double x) {
  cdouble acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

WaveFn2D dirac_transform(const WaveFn2D& psi, const GeneratingFunction& gen,
                         const QuadratureSpec& quad) {
  // F as a double-coefficient evaluator in (old0, old1, new0, new1).
  struct FCoeffs {
    double c_on[2][2];  // old_i new_j couplings
    double c_oo;        // old0 old1
    double c_nn;        // new0 new1
  } fc{};
  const QPoly& f = gen.poly();
  auto coeff = [&](Var a, Var b) {
    return scalar_cdouble(f.coeff(Monomial::of(a).times(Monomial::of(b)))).real();
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) fc.c_on[i][j] = coeff(gen.old_pos()[i], gen.new_pos()[j]);
  fc.c_oo = coeff(gen.old_pos()[0], gen.old_pos()[1]);
  fc.c_nn = coeff(gen.new_pos()[0], gen.new_pos()[1]);

  double det = gen.mixed_hessian_det().to_double();
  double norm_const = std::sqrt(std::abs(det)) / (2.0 * kPi);

  // integration box from the source Gaussian decay
  auto radii = gaussian_radii(psi, 10.0);
  WaveFn2D source = psi;
  QuadratureSpec spec = quad;

  // Factorized evaluation when the source separates and its exponent has no
  // cross term: the X1 sum depends on (q, x) only through the phase offset
  // o = c_on[0][0] q + c_on[1][0] x, so its node table is shared across the
  // grid. This is the same tensor Gauss-Legendre sum, reassociated.
  std::vector<cdouble> fu, gv;
  bool separable = source.has_closed_form() && source.closed().expo.auv == 0.0 &&
                   factor_rank1(source.closed().pre, fu, gv);
  if (separable) {
    auto cf = source.closed();
    struct Shared {
      std::map<std::pair<int, double>, std::vector<cdouble>> memo;  // (order, offset)
      std::mutex mu;
    };
    auto shared = std::make_shared<Shared>();
    auto eval = [shared, cf, fu, gv, fc, norm_const, radii, spec](double q, double x) -> cdouble {
      auto run = [&](int order) -> cdouble {
        const Rule1D& r = gauss_legendre(order);
        double offset = fc.c_on[0][0] * q + fc.c_on[1][0] * x;
        std::vector<cdouble> inner;
        {
          std::lock_guard<std::mutex> lock(shared->mu);
          auto it = shared->memo.find({order, offset});
          if (it != shared->memo.end()) inner = it->second;
        }
        if (inner.empty()) {
          inner.resize(order);
          for (int j = 0; j < order; ++j) {
            double X2 = radii[1] * r.nodes[j];
            cdouble s = 0.0;
            for (int i = 0; i < order; ++i) {
              double X1 = radii[0] * r.nodes[i];
              cdouble ph(0.0, (offset + fc.c_nn * X2) * X1);
              s += r.weights[i] *
                   (eval_poly1(fu, X1) * std::exp(cf.expo.auu * X1 * X1 + ph));
            }
            inner[j] = s * radii[0];
          }
          std::lock_guard<std::mutex> lock(shared->mu);
          shared->memo.emplace(std::make_pair(order, offset), inner);
        }
        double po = fc.c_on[0][1] * q + fc.c_on[1][1] * x;
        cdouble s = 0.0;
        for (int j = 0; j < order; ++j) {
          double X2 = radii[1] * r.nodes[j];
          s += r.weights[j] * eval_poly1(gv, X2) *
               std::exp(cf.expo.avv * X2 * X2 + cdouble(0.0, po * X2)) * inner[j];
        }
        return s * radii[1] * cf.norm * norm_const *
               std::exp(cdouble(0.0, fc.c_oo * q * x));
      };
      cdouble result = run(spec.order);
      if (spec.gate) {
        cdouble fine = run(2 * spec.order);
        if (std::abs(fine - result) > spec.tol * std::max(1.0, std::abs(fine)))
          throw QuadratureError("transform quadrature not converged at order " +
                                std::to_string(spec.order));
        return fine;
      }
      return result;
    };
    return WaveFn2D(Frame::pu, psi.n(), psi.m(), eval, "dirac-transform");
  }

  auto eval = [source, fc, norm_const, radii, spec](double q, double x) -> cdouble {
    auto integrand = [&](double X1, double X2) {
      double fval = fc.c_on[0][0] * q * X1 + fc.c_on[0][1] * q * X2 + fc.c_on[1][0] * x * X1 +
                    fc.c_on[1][1] * x * X2 + fc.c_oo * q * x + fc.c_nn * X1 * X2;
      return std::exp(cdouble(0.0, fval)) * source(X1, X2);
    };
    return norm_const * gl2(integrand, spec, radii[0], radii[1]);
  };
  return WaveFn2D(Frame::pu, psi.n(), psi.m(), eval, "dirac-transform");
}

std::function<double(const std::array<double, 4>&)> wigner_from_wavefunction(
    const WaveFn2D& psi, const QuadratureSpec& quad) {
  auto radii = psi.has_closed_form() ? gaussian_radii(psi, 10.0)
                                     : std::array<double, 2>{quad.radius, quad.radius};
  // y-shifts live on twice the wavefunction support
  double ry1 = 2.0 * radii[0], ry2 = 2.0 * radii[1];
  WaveFn2D source = psi;
  QuadratureSpec spec = quad;
  return [source, spec, ry1, ry2](const std::array<double, 4>& pt) {
    double u1 = pt[0], p1 = pt[1], u2 = pt[2], p2 = pt[3];
    auto integrand = [&](double y1, double y2) {
      cdouble phase = std::exp(cdouble(0.0, -(y1 * p1 + y2 * p2)));
      return std::conj(source(u1 - y1 / 2.0, u2 - y2 / 2.0)) * phase *
             source(u1 + y1 / 2.0, u2 + y2 / 2.0);
    };
    cdouble val = gl2(integrand, spec, ry1, ry2) / (4.0 * kPi * kPi);
    return val.real();
  };
}

WaveFn2D wavefunction_from_wigner(const SGauss& rho, Frame frame, int n, int m,
                                  const QuadratureSpec& quad) {
  std::array<Var, 4> vars = frame == Frame::pu
                                ? std::array<Var, 4>{Var::q, Var::pq, Var::x, Var::px}
                                : std::array<Var, 4>{Var::X1, Var::P1, Var::X2, Var::P2};
  QuadratureSpec spec = quad;

  // The eigenstate exponents carry no p1 p2 cross term, so the tensor
  // momentum quadrature factorizes into two arrays of 1d moment integrals
  //   T_i[k] = sum_w w p^k exp(alpha_i p^2 + (beta_i(pos) + i s_i) p),
  // assembled against the position-substituted prefactor.
  SPoly expo_poly = rho.exponent().to_poly();
  if (!expo_poly.coeff(Monomial::of(vars[1]).times(Monomial::of(vars[3]))).is_zero())
    throw Error("wavefunction_from_wigner: momentum cross term not supported");
  cdouble alpha1 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[1], 2)));
  cdouble alpha2 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[3], 2)));
  // momentum box radii from the pure-momentum decay
  double rp1 = spec.radius, rp2 = spec.radius;
  if (alpha1.real() < 0.0) rp1 = (10.0 + rho.prefactor().degree()) / std::sqrt(-2.0 * alpha1.real());
  if (alpha2.real() < 0.0) rp2 = (10.0 + rho.prefactor().degree()) / std::sqrt(-2.0 * alpha2.real());

  // split the exponent: terms with momenta of degree one couple to positions
  struct ExpoSplit {
    cdouble m1_pos1 = 0, m1_pos2 = 0, m1 = 0;   // beta1 = m1_pos1*pos1 + m1_pos2*pos2 + m1
    cdouble m2_pos1 = 0, m2_pos2 = 0, m2 = 0;
    // pure position part evaluated separately
  } es;
  es.m1_pos1 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[1]).times(Monomial::of(vars[0]))));
  es.m1_pos2 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[1]).times(Monomial::of(vars[2]))));
  es.m1 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[1])));
  es.m2_pos1 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[3]).times(Monomial::of(vars[0]))));
  es.m2_pos2 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[3]).times(Monomial::of(vars[2]))));
  es.m2 = scalar_cdouble(expo_poly.coeff(Monomial::of(vars[3])));
  // pure position exponent: substitute momenta = 0
  SPoly expo_pos =
      expo_poly.substitute(vars[1], rat(0)).substitute(vars[3], rat(0));
  cdouble e_pp1 = scalar_cdouble(expo_pos.coeff(Monomial::of(vars[0], 2)));
  cdouble e_pp2 = scalar_cdouble(expo_pos.coeff(Monomial::of(vars[2], 2)));
  cdouble e_p1p2 = scalar_cdouble(expo_pos.coeff(Monomial::of(vars[0]).times(Monomial::of(vars[2]))));
  cdouble e_p1 = scalar_cdouble(expo_pos.coeff(Monomial::of(vars[0])));
  cdouble e_p2 = scalar_cdouble(expo_pos.coeff(Monomial::of(vars[2])));
  cdouble e_0 = scalar_cdouble(expo_pos.coeff(Monomial::one()));

  // prefactor terms keyed by momentum degrees, with position exponents kept
  struct PreTerm {
    cdouble coeff;
    int pos1, mom1, pos2, mom2;
  };
  std::vector<PreTerm> pre_terms;
  int max_m1 = 0, max_m2 = 0;
  for (const auto& [mono, c] : rho.prefactor().terms()) {
    PreTerm t{scalar_cdouble(c), mono.get(vars[0]), mono.get(vars[1]), mono.get(vars[2]),
              mono.get(vars[3])};
    max_m1 = std::max(max_m1, t.mom1);
    max_m2 = std::max(max_m2, t.mom2);
    pre_terms.push_back(t);
  }
  double pi_pow = std::pow(kPi, rho.pi_power());

  auto chi = [=](double r1, double r2, double u1, double u2) -> cdouble {
    double pos1 = (u1 + r1) / 2.0, pos2 = (u2 + r2) / 2.0;
    double s1 = u1 - r1, s2 = u2 - r2;
    cdouble beta1 = es.m1_pos1 * pos1 + es.m1_pos2 * pos2 + es.m1 + cdouble(0.0, s1);
    cdouble beta2 = es.m2_pos1 * pos1 + es.m2_pos2 * pos2 + es.m2 + cdouble(0.0, s2);
    cdouble e_pos = e_pp1 * pos1 * pos1 + e_pp2 * pos2 * pos2 + e_p1p2 * pos1 * pos2 +
                    e_p1 * pos1 + e_p2 * pos2 + e_0;

    auto moments = [&](int order, double radius, cdouble alpha, cdouble beta, int maxdeg) {
      const Rule1D& r = gauss_legendre(order);
      std::vector<cdouble> t(maxdeg + 1, 0.0);
      for (int i = 0; i < order; ++i) {
        double p = radius * r.nodes[i];
        cdouble base = r.weights[i] * std::exp(alpha * p * p + beta * p);
        for (int k = 0; k <= maxdeg; ++k) {
          t[k] += base;
          base *= p;
        }
      }
      for (auto& v : t) v *= radius;
      return t;
    };

    auto run = [&](int order) {
      std::vector<cdouble> t1 = moments(order, rp1, alpha1, beta1, max_m1);
      std::vector<cdouble> t2 = moments(order, rp2, alpha2, beta2, max_m2);
      cdouble s = 0.0;
      for (const auto& t : pre_terms)
        s += t.coeff * std::pow(pos1, t.pos1) * std::pow(pos2, t.pos2) * t1[t.mom1] * t2[t.mom2];
      return s * std::exp(e_pos) * pi_pow;
    };

    cdouble result = run(spec.order);
    if (spec.gate) {
      cdouble fine = run(2 * spec.order);
      if (std::abs(fine - result) > spec.tol * std::max(1.0, std::abs(fine)))
        throw QuadratureError("inversion quadrature not converged at order " +
                              std::to_string(spec.order));
      return fine;
    }
    return result;
  };

  // |psi(r)|^2 = chi(r; r); pick the origin unless it is a node.
  std::array<double, 2> ref{0.0, 0.0};
  bool moved = false;
  double at_ref = chi(0.0, 0.0, 0.0, 0.0).real();
  if (at_ref < 1e-8) {
    for (double step : {0.25, 0.5, 0.75, 1.0, 1.5, 2.0}) {
      for (auto cand : std::vector<std::array<double, 2>>{
               {step, 0.0}, {0.0, step}, {step, step}, {-step, step}}) {
        double val = chi(cand[0], cand[1], cand[0], cand[1]).real();
        if (val > 1e-6) {  // |psi| > 1e-3
          ref = cand;
          at_ref = val;
          moved = true;
          break;
        }
      }
      if (moved) break;
    }
    if (!moved)
      throw Error("wavefunction_from_wigner: no usable reference point found");
  }

  double scale = 1.0 / std::sqrt(at_ref);
  double r1 = ref[0], r2 = ref[1];
  WaveFn2D out(frame, n, m,
               [chi, r1, r2, scale](double u, double v) { return scale * chi(r1, r2, u, v); },
               "wigner-inversion");
  if (moved) out.reference_point = ref;
  return out;
}

PhaseComparison compare_up_to_phase(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
  if (a.size() != b.size()) throw Error("compare_up_to_phase: length mismatch");
  cdouble overlap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
  double phase = std::abs(overlap) == 0.0 ? 0.0 : std::arg(overlap);
  cdouble rot = std::exp(cdouble(0.0, phase));
  double max_a = 0.0, max_d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    max_a = std::max(max_a, std::abs(a[i]));
    max_d = std::max(max_d, std::abs(a[i] - rot * b[i]));
  }
  return {max_a > 0.0 ? max_d / max_a : max_d, phase};
}

double schrodinger_residual(const WaveFn2D& psi, const PUParams& p,
                            const std::vector<std::array<double, 2>>& points) {
  require_hbar_one(p, "schrodinger_residual");
  const auto& cf = psi.closed();
  double o1sq = rat_double(p.omega1) * rat_double(p.omega1);
  double o2sq = rat_double(p.omega2) * rat_double(p.omega2);
  Rational e_exact = genvalue_energy(p, psi.n(), psi.m());
  double e = rat_double(e_exact);

  // derivative structure of P e^Q: d -> (dP + P dQ) e^Q
  CPoly2 dq_pre = cf.pre.diff_u() + cf.pre * cf.expo.diff_u();
  CPoly2 dx_pre = cf.pre.diff_v() + cf.pre * cf.expo.diff_v();
  CPoly2 dxx_pre = dx_pre.diff_v() + dx_pre * cf.expo.diff_v();

  double max_res = 0.0, max_val = 0.0;
  for (const auto& [q, x] : points) {
    cdouble g = std::exp(cf.expo.eval(q, x));
    cdouble value = cf.pre.eval(q, x) * g;
    // H psi = -i x d_q psi - (1/2) d_x^2 psi + (O1^2+O2^2)/2 x^2 psi
    //         - O1^2 O2^2 / 2 q^2 psi
    cdouble hpsi = cdouble(0.0, -x) * dq_pre.eval(q, x) * g - 0.5 * dxx_pre.eval(q, x) * g +
                   0.5 * (o1sq + o2sq) * x * x * value - 0.5 * o1sq * o2sq * q * q * value;
    max_res = std::max(max_res, std::abs(hpsi - e * value));
    max_val = std::max(max_val, std::abs(value));
  }
  return max_val > 0.0 ? max_res / max_val : max_res;
}

NormDivergenceReport equal_freq_norm_divergence(const Rational& omega_bar, const Rational& hbar,
                                                int n, int m, std::vector<Rational> deltas,
                                                const QuadratureSpec& quad) {
  NormDivergenceReport rep;
  rep.deltas = deltas;
  QuadratureSpec spec = quad;
  for (const auto& d : deltas) {
    PUParams p(omega_bar + d / 2, omega_bar - d / 2, hbar);
    WaveFn2D psi = pu_wavefunction_unnormalized(n, m, p);
    auto radii = gaussian_radii(psi, 10.0);
    rep.norms.push_back(norm2(psi, spec, radii[0], radii[1]));
  }
  rep.monotone = true;
  for (std::size_t i = 0; i + 1 < rep.norms.size(); ++i) {
    rep.ratios.push_back(rep.norms[i + 1] / rep.norms[i]);
    if (rep.norms[i + 1] <= rep.norms[i]) rep.monotone = false;
  }
  // norm * Delta should be flat for the ground state
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < rep.norms.size(); ++i) {
    double nd = rep.norms[i] * rat_double(rep.deltas[i]);
    lo = i == 0 ? nd : std::min(lo, nd);
    hi = i == 0 ? nd : std::max(hi, nd);
  }
  rep.rate_one_over_delta = (n == 0 && m == 0) ? (hi / lo <= 1.05) : false;
  return rep;
}

}  // namespace pudq
