#include "pudq/wigner.hpp"

#include <algorithm>
#include <cmath>

#include "pudq/specfun.hpp"

namespace pudq {

namespace {

Scalar s_rat(const Rational& r) { return Scalar(r); }

// Left/right star multiplication by a polynomial, with hbar substituted.
SGauss star_apply(const SPoly& h, const SGauss& g, const PairSignature& sig, const Rational& hbar,
                  StarSide side) {
  DiffOperator<Scalar> op = bopp_operator(h, sig, side).substitute(Var::hbar, hbar);
  return apply_op(op, g);
}

std::array<Var, 4> sig_vars(const PairSignature& sig) {
  if (sig.size() != 2) throw Error("expected a two-pair signature");
  return {sig.pairs()[0].first, sig.pairs()[0].second, sig.pairs()[1].first,
          sig.pairs()[1].second};
}

}  // namespace

Rational genvalue_energy(const PUParams& p, int n, int m) {
  return p.hbar * ((rat(2 * n + 1) * p.omega1 - rat(2 * m + 1) * p.omega2) / 2);
}

SpectrumTable spectrum(const PUParams& p, int n_max, int m_max) {
  if (n_max < 0 || m_max < 0) throw ConfigError("spectrum: bounds must be non-negative");
  SpectrumTable t;
  t.unbounded_below = true;  // -(m + 1/2) Omega2 decreases without bound in m
  for (int n = 0; n <= n_max; ++n)
    for (int m = 0; m <= m_max; ++m) t.entries.push_back({n, m, genvalue_energy(p, n, m)});
  return t;
}

SGauss pu_wigner_scaled(const WignerState& s, const Rational& scale) {
  if (s.frame != Frame::pu) throw ConfigError("pu_wigner: state is not in the pu frame");
  const PUParams& p = s.params;
  NoetherCharges j = noether_charges(p);
  SPoly z1 = SPoly::constant(rat(2) * scale / (p.hbar * p.omega1)) * j.j1;
  SPoly z2 = SPoly::constant(rat(2) * scale / (p.hbar * p.omega2)) * j.j2;
  SPoly pre = laguerre(s.n).compose(z1) * laguerre(s.m).compose(z2);
  Rational sign = (s.n + s.m) % 2 ? rat(-1) : rat(1);
  pre = SPoly::constant(sign / (p.hbar * p.hbar)) * pre;
  SPoly expo_poly = SPoly::constant(-scale / (p.hbar * p.omega1)) * j.j1 +
                    SPoly::constant(-scale / (p.hbar * p.omega2)) * j.j2;
  return {pre, SQuadForm::from_poly(expo_poly), -2};
}

SGauss pu_wigner(const WignerState& s) { return pu_wigner_scaled(s, rat(1)); }

SGauss osc_wigner(const WignerState& s) {
  const PUParams& p = s.params;
  SPoly h1 = SPoly::constant(rat(1, 2)) *
             (SPoly::var(Var::P1) * SPoly::var(Var::P1) +
              SPoly::constant(p.omega1 * p.omega1) * SPoly::var(Var::X1) * SPoly::var(Var::X1));
  SPoly h2 = SPoly::constant(rat(1, 2)) *
             (SPoly::var(Var::P2) * SPoly::var(Var::P2) +
              SPoly::constant(p.omega2 * p.omega2) * SPoly::var(Var::X2) * SPoly::var(Var::X2));
  SPoly z1 = SPoly::constant(rat(4) / (p.hbar * p.omega1)) * h1;
  SPoly z2 = SPoly::constant(rat(4) / (p.hbar * p.omega2)) * h2;
  SPoly pre = laguerre(s.n).compose(z1) * laguerre(s.m).compose(z2);
  Rational sign = (s.n + s.m) % 2 ? rat(-1) : rat(1);
  pre = SPoly::constant(sign / (p.hbar * p.hbar)) * pre;
  SPoly expo_poly = SPoly::constant(rat(-2) / (p.hbar * p.omega1)) * h1 +
                    SPoly::constant(rat(-2) / (p.hbar * p.omega2)) * h2;
  return {pre, SQuadForm::from_poly(expo_poly), -2};
}

GenvalueResidual star_genvalue_residual(const SPoly& h, const SGauss& rho, const Scalar& e,
                                        const PUParams& p, const PairSignature& sig) {
  SGauss applied = star_apply(h, rho, sig, p.hbar, StarSide::left);
  SGauss residual = applied - rho.scaled(e);
  SGauss conj = residual.conj();
  Scalar half = s_rat(rat(1, 2));
  Scalar half_i = Scalar(rat(0), rat(-1, 2));  // 1/(2i)
  GenvalueResidual out{residual, (residual + conj).scaled(half),
                       (residual - conj).scaled(half_i)};
  return out;
}

SGauss radial_genvalue_residual(int n) {
  // rho_n(z) = L_n(z) e^{-z/2}; operator z/4 - z d^2 - d - (n + 1/2).
  SQuadForm expo;
  expo.add_lin(Var::z1, s_rat(rat(-1, 2)));
  SGauss rho(laguerre(n).compose<Scalar>(SPoly::var(Var::z1)), expo, 0);
  SGauss d1 = rho.diff(Var::z1);
  SGauss d2 = d1.diff(Var::z1);
  SGauss out = rho.times_poly(SPoly::constant(rat(1, 4)) * SPoly::var(Var::z1)) -
               d2.times_poly(SPoly::var(Var::z1)) - d1 -
               rho.scaled(s_rat(rat(2 * n + 1, 2)));
  return out;
}

CrossWigner cross_wigner(const PUParams& p, std::pair<int, int> bra, std::pair<int, int> ket) {
  PairSignature sig = PairSignature::oscillator();
  SPoly b1 = SPoly::constant(p.omega1) * SPoly::var(Var::X1) + Scalar::i() * SPoly::var(Var::P1);
  SPoly b2 = SPoly::constant(p.omega2) * SPoly::var(Var::X2) + Scalar::i() * SPoly::var(Var::P2);

  auto star_pow = [&](const SPoly& f, int k) {
    SPoly acc = SPoly::constant(rat(1));
    for (int i = 0; i < k; ++i) acc = moyal_star(acc, f, sig);
    return acc;
  };

  SGauss w = osc_wigner(WignerState(0, 0, p, Frame::oscillator));
  // raise the bra side from the right with annihilators ...
  SPoly right = moyal_star(star_pow(b1, bra.first), star_pow(b2, bra.second), sig);
  w = star_apply(right, w, sig, p.hbar, StarSide::right);
  // ... and the ket side from the left with creators
  SPoly left = moyal_star(star_pow(b1.conj(), ket.first), star_pow(b2.conj(), ket.second), sig);
  w = star_apply(left, w, sig, p.hbar, StarSide::left);

  double h2o1 = 2.0 * rat_double(p.hbar) * rat_double(p.omega1);
  double h2o2 = 2.0 * rat_double(p.hbar) * rat_double(p.omega2);
  double fact = rat_double(rat_factorial(bra.first)) * rat_double(rat_factorial(ket.first)) *
                rat_double(rat_factorial(bra.second)) * rat_double(rat_factorial(ket.second));
  double norm = std::pow(h2o1, -0.5 * (bra.first + ket.first)) *
                std::pow(h2o2, -0.5 * (bra.second + ket.second)) / std::sqrt(fact);
  return {w, norm, genvalue_energy(p, bra.first, bra.second),
          genvalue_energy(p, ket.first, ket.second)};
}

SGauss gp_mul(const SGauss& a, const SGauss& b) {
  return {a.prefactor() * b.prefactor(), a.exponent() + b.exponent(),
          a.pi_power() + b.pi_power()};
}

std::array<double, 4> gaussian_phase_radii(const SGauss& g, const PairSignature& sig,
                                           double n_widths) {
  std::array<Var, 4> vars = sig_vars(sig);
  // Re Q = -z' A z; marginal sigma_v = sqrt((A^-1)_vv / 2)
  double a[4][4] = {};
  SPoly expo = g.exponent().to_poly();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Monomial m = Monomial::of(vars[i]).times(Monomial::of(vars[j]));
      double c = rat_double(expo.coeff(m).re);
      a[i][j] = i == j ? -c : -c / 2.0;
    }
  // invert in place (Gauss-Jordan with the identity)
  double inv[4][4] = {};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
  double m[4][4];
  std::copy(&a[0][0], &a[0][0] + 16, &m[0][0]);
  bool ok = true;
  for (int col = 0; col < 4 && ok; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14) {
      ok = false;
      break;
    }
    std::swap(m[col], m[piv]);
    std::swap(inv[col], inv[piv]);
    double d = m[col][col];
    for (int j = 0; j < 4; ++j) {
      m[col][j] /= d;
      inv[col][j] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      double f = m[r][col];
      for (int j = 0; j < 4; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  std::array<double, 4> radii{};
  for (int i = 0; i < 4; ++i) {
    double var = ok ? inv[i][i] / 2.0 : 1.0;
    radii[i] = n_widths * std::sqrt(std::max(var, 1e-6));
  }
  return radii;
}

namespace {

// Attempts the Gauss-Hermite route: for integrands P(z) exp(-z'Az + b.z + c)
// with real A > 0, substitute z = z0 + L^-T w (A = L L^T, z0 the stationary
// point) so the weight becomes exp(-|w|^2) and the rule is exact for
// polynomial P. Returns false when the exponent is complex or indefinite.
bool integrate_gausspoly_gh(const SGauss& g, const std::array<Var, 4>& vars,
                            const QuadratureSpec& spec, std::complex<double>* out) {
  SPoly expo = g.exponent().to_poly();
  double a[4][4] = {};
  double b[4] = {};
  double c0 = 0.0;
  for (const auto& [m, coeff] : expo.terms()) {
    if (coeff.im != 0) return false;
    double cv = rat_double(coeff.re);
    std::array<int, 4> e{};
    int deg = 0;
    for (int k = 0; k < 4; ++k) {
      e[k] = m.get(vars[k]);
      deg += e[k];
    }
    if (deg != m.degree()) return false;
    if (deg == 0) {
      c0 = cv;
    } else if (deg == 1) {
      for (int k = 0; k < 4; ++k)
        if (e[k]) b[k] += cv;
    } else {
      int i = -1, j = -1;
      for (int k = 0; k < 4; ++k) {
        if (e[k] == 2) i = j = k;
        if (e[k] == 1) (i < 0 ? i : j) = k;
      }
      // exponent term cv * z_i z_j contributes -cv to A
      if (i == j) {
        a[i][i] -= cv;
      } else {
        a[i][j] -= cv / 2.0;
        a[j][i] -= cv / 2.0;
      }
    }
  }

  // Cholesky A = L L^T; fails for indefinite exponents
  double l[4][4] = {};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = a[i][j];
      for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0.0) return false;
        l[i][i] = std::sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  double det_l = l[0][0] * l[1][1] * l[2][2] * l[3][3];

  // stationary point z0 solves 2 A z0 = b
  double z0[4];
  {
    double rhs[4] = {b[0] / 2.0, b[1] / 2.0, b[2] / 2.0, b[3] / 2.0};
    double y[4];
    for (int i = 0; i < 4; ++i) {
      double s = rhs[i];
      for (int k = 0; k < i; ++k) s -= l[i][k] * y[k];
      y[i] = s / l[i][i];
    }
    for (int i = 3; i >= 0; --i) {
      double s = y[i];
      for (int k = i + 1; k < 4; ++k) s -= l[k][i] * z0[k];
      z0[i] = s / l[i][i];
    }
  }
  double shift = c0;
  for (int i = 0; i < 4; ++i) shift += b[i] * z0[i] / 2.0;

  // inverse transpose of L for z = z0 + L^-T w (solve L^T x = w per node)
  CompiledGauss pre(SGauss(g.prefactor(), SQuadForm::zero(), g.pi_power()), vars);

  auto run = [&](int order) {
    const Rule1D& r = gauss_hermite(order);
    std::vector<std::complex<double>> slabs(order * order);
    parallel_for(static_cast<std::size_t>(order) * order, [&](std::size_t ij) {
      int i = static_cast<int>(ij) / order, j = static_cast<int>(ij) % order;
      std::complex<double> s = 0.0;
      for (int k = 0; k < order; ++k) {
        std::complex<double> row = 0.0;
        for (int m2 = 0; m2 < order; ++m2) {
          double w[4] = {r.nodes[i], r.nodes[j], r.nodes[k], r.nodes[m2]};
          double z[4];
          for (int t = 3; t >= 0; --t) {
            double sum = w[t];
            for (int u = t + 1; u < 4; ++u) sum -= l[u][t] * z[u];
            z[t] = sum / l[t][t];
          }
          row += r.weights[m2] *
                 pre.eval({z0[0] + z[0], z0[1] + z[1], z0[2] + z[2], z0[3] + z[3]});
        }
        s += r.weights[k] * row;
      }
      slabs[ij] = s * r.weights[i] * r.weights[j];
    });
    std::complex<double> s = 0.0;
    for (const auto& v : slabs) s += v;
    return s * std::exp(shift) / det_l;
  };

  int order = std::max(10, g.prefactor().degree() / 2 + 4);
  std::complex<double> coarse = run(order);
  std::complex<double> fine = run(order + 8);
  if (spec.gate && std::abs(fine - coarse) > spec.tol * std::max(1.0, std::abs(fine)) + 1e-12)
    throw QuadratureError("phase-space quadrature not converged at order " +
                          std::to_string(order));
  *out = fine;
  return true;
}

}  // namespace

std::complex<double> integrate_phase_space(const SGauss& g, const PairSignature& sig,
                                           const QuadratureSpec& spec) {
  std::array<Var, 4> vars = sig_vars(sig);
  std::complex<double> gh_value;
  if (integrate_gausspoly_gh(g, vars, spec, &gh_value)) return gh_value;

  // general path: anisotropic Gauss-Legendre box
  double n_widths = 9.0 + g.prefactor().degree() / 3.0;
  std::array<double, 4> radii = gaussian_phase_radii(g, sig, n_widths);
  CompiledGauss fast(g, vars);
  auto f = [&](double a, double b, double c, double d) { return fast.eval({a, b, c, d}); };
  return integrate_4d(f, spec, radii);
}

Expectation expectation(const SPoly& a, const SGauss& rho, const PairSignature& sig,
                        const PUParams& p, const QuadratureSpec& spec) {
  SGauss a_rho = star_apply(a, rho, sig, p.hbar, StarSide::left);
  std::complex<double> raw = integrate_phase_space(a_rho, sig, spec);
  // calibrate the measure on the ground state of the same frame
  WignerState ground(0, 0, p, sig.pairs()[0].first == Var::q ? Frame::pu : Frame::oscillator);
  SGauss rho0 = ground.frame == Frame::pu ? pu_wigner(ground) : osc_wigner(ground);
  double cal = integrate_phase_space(rho0, sig, spec).real();
  return {raw / cal, cal};
}

StarEvolution::StarEvolution(const PUParams& p, std::vector<Component> components, Frame frame)
    : params_(p), frame_(frame) {
  PairSignature sig = PairSignature::oscillator();
  SPoly h = oscillator_hamiltonian(p);

  // exact star powers H^{*j} for the truncated star-exponential route
  std::vector<SPoly> hpow = {SPoly::constant(rat(1))};
  for (int j = 1; j <= series_max_; ++j) hpow.push_back(moyal_star(hpow.back(), h, sig));

  for (const auto& [wl, ket] : components) {
    for (const auto& [wk, bra] : components) {
      CrossTerm term;
      CrossWigner cw = cross_wigner(p, bra, ket);
      term.weight = wl * std::conj(wk) * cw.scale;
      term.bra_e = cw.bra_energy;
      term.ket_e = cw.ket_energy;
      term.freq = (cw.ket_energy - cw.bra_energy) / p.hbar;
      term.gauss = cw.unnormalized;

      SGauss hw = star_apply(h, term.gauss, sig, p.hbar, StarSide::left);
      SGauss wh = star_apply(h, term.gauss, sig, p.hbar, StarSide::right);
      term.bracket = (hw - wh).scaled(Scalar(rat(0), rat(-1) / p.hbar));  // 1/(i hbar)

      term.series.resize(series_max_ + 1);
      for (int j = 0; j <= series_max_; ++j) {
        term.series[j].resize(series_max_ + 1);
        SGauss left = star_apply(hpow[j], term.gauss, sig, p.hbar, StarSide::left);
        for (int jp = 0; jp <= series_max_; ++jp)
          term.series[j][jp] = star_apply(hpow[jp], left, sig, p.hbar, StarSide::right);
      }

      if (frame_ == Frame::pu) {
        // exact pullback to pu variables; requires a rational gamma
        p.require_unequal("pu-frame evolution");
        if (!rat_sqrt_exact(p.gamma_sq()))
          throw SingularParamsError(
              "pu-frame evolution needs omega1^2-omega2^2 to be a perfect square");
        LinearCanonicalMap inv = diagonalizing_map(p).inverse();
        auto pull = [&](const SGauss& g) {
          GaussPoly<QScalar> qg(to_qpoly(g.prefactor()),
                                QuadForm<QScalar>::from_poly(to_qpoly(g.exponent().to_poly())),
                                g.pi_power());
          GaussPoly<QScalar> pulled = pullback(qg, inv);
          return SGauss(to_spoly(pulled.prefactor()),
                        SQuadForm::from_poly(to_spoly(pulled.exponent().to_poly())),
                        pulled.pi_power());
        };
        term.gauss = pull(term.gauss);
        term.bracket = pull(term.bracket);
        for (auto& row : term.series)
          for (auto& g : row) g = pull(g);
      }

      term.gauss_c = CompiledGauss(term.gauss, frame_vars());
      term.bracket_c = CompiledGauss(term.bracket, frame_vars());
      term.series_c.resize(term.series.size());
      for (std::size_t j = 0; j < term.series.size(); ++j)
        for (const auto& g : term.series[j])
          term.series_c[j].emplace_back(g, frame_vars());

      terms_.push_back(std::move(term));
    }
  }
}

std::array<Var, 4> StarEvolution::frame_vars() const {
  if (frame_ == Frame::oscillator) return {Var::X1, Var::P1, Var::X2, Var::P2};
  return {Var::q, Var::pq, Var::x, Var::px};
}

double StarEvolution::value(double t, const std::array<double, 4>& pt) const {
  std::complex<double> s = 0.0;
  for (const auto& term : terms_) {
    std::complex<double> phase = 1.0;
    if (term.freq != 0) {
      double w = rat_double(term.freq);
      phase = std::exp(std::complex<double>(0.0, -t * w));
    }
    s += term.weight * phase * term.gauss_c.eval(pt);
  }
  return s.real();
}

double StarEvolution::moyal_bracket_value(double t, const std::array<double, 4>& pt) const {
  std::complex<double> s = 0.0;
  for (const auto& term : terms_) {
    std::complex<double> phase = 1.0;
    if (term.freq != 0) phase = std::exp(std::complex<double>(0.0, -t * rat_double(term.freq)));
    s += term.weight * phase * term.bracket_c.eval(pt);
  }
  return s.real();
}

double StarEvolution::series_value(double t, const std::array<double, 4>& pt,
                                   int truncation) const {
  if (truncation > series_max_) throw ConfigError("series truncation exceeds precomputed order");
  double hb = rat_double(params_.hbar);
  std::complex<double> it_l(0.0, -t / hb);  // exponent of the left factor
  std::complex<double> it_r(0.0, t / hb);
  std::complex<double> s = 0.0;
  for (const auto& term : terms_) {
    std::complex<double> acc = 0.0;
    std::complex<double> cl = 1.0;
    for (int j = 0; j <= truncation; ++j) {
      std::complex<double> cr = 1.0;
      for (int jp = 0; jp <= truncation; ++jp) {
        acc += cl * cr * term.series_c[j][jp].eval(pt);
        cr *= it_r / static_cast<double>(jp + 1);
      }
      cl *= it_l / static_cast<double>(j + 1);
    }
    s += term.weight * acc;
  }
  return s.real();
}

}  // namespace pudq
