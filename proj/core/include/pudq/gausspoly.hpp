#pragma once

#include <cmath>
#include <numbers>

#include "pudq/star.hpp"

namespace pudq {

// ---------------------------------------------------------------------------
// QuadForm<K>: quadratic form  sum c_uv u v + sum l_v v + c0  with exact
// coefficients. Stored as upper-triangle terms, so symmetry is structural;
// the matrix constructor checks it explicitly.
// ---------------------------------------------------------------------------
template <class K>
class QuadForm {
 public:
  QuadForm() = default;

  static QuadForm zero() { return {}; }

  void add_quad(Var u, Var v, const K& c) {
    if (scalar_is_zero(c)) return;
    auto key = u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
    auto [it, inserted] = quad_.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (scalar_is_zero(it->second)) quad_.erase(it);
    }
  }

  void add_lin(Var v, const K& c) {
    if (scalar_is_zero(c)) return;
    auto [it, inserted] = lin_.emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (scalar_is_zero(it->second)) lin_.erase(it);
    }
  }

  void add_const(const K& c) { c0_ += c; }

  // Builds from a symmetric matrix over `vars`: Q(x) = x^T M x + l.x + c.
  static QuadForm from_matrix(const std::vector<Var>& vars, const std::vector<std::vector<K>>& m,
                              const std::vector<K>& l = {}, const K& c = K{}) {
    QuadForm q;
    const std::size_t n = vars.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (!(m[i][j] == m[j][i])) throw Error("QuadForm: matrix not symmetric");
        if (j < i) continue;
        K coeff = i == j ? m[i][j] : m[i][j] + m[j][i];
        q.add_quad(vars[i], vars[j], coeff);
      }
    for (std::size_t i = 0; i < l.size(); ++i) q.add_lin(vars[i], l[i]);
    q.add_const(c);
    return q;
  }

  // Reads a polynomial of total degree <= 2 back into a quadratic form.
  static QuadForm from_poly(const Poly<K>& p) {
    QuadForm q;
    for (const auto& [mono, c] : p.terms()) {
      std::vector<Var> vs;
      for (std::size_t i = 0; i < kNumVars; ++i)
        for (int k = 0; k < mono.e[i]; ++k) vs.push_back(static_cast<Var>(i));
      if (vs.size() > 2) throw Error("QuadForm::from_poly: degree exceeds 2");
      if (vs.size() == 2)
        q.add_quad(vs[0], vs[1], c);
      else if (vs.size() == 1)
        q.add_lin(vs[0], c);
      else
        q.add_const(c);
    }
    return q;
  }

  Poly<K> to_poly() const {
    Poly<K> p(c0_);
    for (const auto& [v, c] : lin_) p.add_term(Monomial::of(v), c);
    for (const auto& [uv, c] : quad_) p.add_term(Monomial::of(uv.first).times(Monomial::of(uv.second)), c);
    return p;
  }

  Poly<K> diff(Var v) const {
    Poly<K> out;
    for (const auto& [uv, c] : quad_) {
      auto [u, w] = uv;
      if (u == v && w == v)
        out.add_term(Monomial::of(v), c + c);
      else if (u == v)
        out.add_term(Monomial::of(w), c);
      else if (w == v)
        out.add_term(Monomial::of(u), c);
    }
    auto it = lin_.find(v);
    if (it != lin_.end()) out.add_term(Monomial::one(), it->second);
    return out;
  }

  QuadForm substitute(Var v, const K& value) const {
    QuadForm out;
    for (const auto& [uv, c] : quad_) {
      auto [u, w] = uv;
      if (u == v && w == v)
        out.add_const(c * value * value);
      else if (u == v)
        out.add_lin(w, c * value);
      else if (w == v)
        out.add_lin(u, c * value);
      else
        out.add_quad(u, w, c);
    }
    for (const auto& [u, c] : lin_) {
      if (u == v)
        out.add_const(c * value);
      else
        out.add_lin(u, c);
    }
    out.add_const(c0_);
    return out;
  }

  QuadForm operator+(const QuadForm& o) const {
    QuadForm out = *this;
    for (const auto& [uv, c] : o.quad_) out.add_quad(uv.first, uv.second, c);
    for (const auto& [v, c] : o.lin_) out.add_lin(v, c);
    out.add_const(o.c0_);
    return out;
  }

  QuadForm scaled(const K& s) const {
    QuadForm out;
    for (const auto& [uv, c] : quad_) out.add_quad(uv.first, uv.second, c * s);
    for (const auto& [v, c] : lin_) out.add_lin(v, c * s);
    out.add_const(c0_ * s);
    return out;
  }

  QuadForm conj() const {
    QuadForm out;
    for (const auto& [uv, c] : quad_) out.add_quad(uv.first, uv.second, c.conj());
    for (const auto& [v, c] : lin_) out.add_lin(v, c.conj());
    out.add_const(c0_.conj());
    return out;
  }

  K eval(const std::array<K, kNumVars>& pt) const {
    K s = c0_;
    for (const auto& [v, c] : lin_) s += c * pt[static_cast<std::size_t>(v)];
    for (const auto& [uv, c] : quad_)
      s += c * pt[static_cast<std::size_t>(uv.first)] * pt[static_cast<std::size_t>(uv.second)];
    return s;
  }

  std::complex<double> eval_d(const std::array<double, kNumVars>& pt) const {
    std::complex<double> s = scalar_cdouble(c0_);
    for (const auto& [v, c] : lin_) s += scalar_cdouble(c) * pt[static_cast<std::size_t>(v)];
    for (const auto& [uv, c] : quad_)
      s += scalar_cdouble(c) * pt[static_cast<std::size_t>(uv.first)] *
           pt[static_cast<std::size_t>(uv.second)];
    return s;
  }

  bool depends_on(Var v) const {
    for (const auto& [uv, c] : quad_)
      if (uv.first == v || uv.second == v) return true;
    return lin_.count(v) > 0;
  }

  friend bool operator==(const QuadForm& x, const QuadForm& y) {
    return x.quad_ == y.quad_ && x.lin_ == y.lin_ && x.c0_ == y.c0_;
  }
  friend bool operator!=(const QuadForm& x, const QuadForm& y) { return !(x == y); }

  std::string str() const { return to_poly().str(); }

 private:
  std::map<std::pair<Var, Var>, K> quad_;
  std::map<Var, K> lin_;
  K c0_{};
};

// ---------------------------------------------------------------------------
// GaussPoly<K>: P(x) * pi^k * exp(Q(x)) with P polynomial and Q a quadratic
// form. Closed under differentiation and under finite-order differential
// operators, which is what makes star-genvalue checks exact. pi rides along
// as a unit tag and only becomes a number at floating evaluation.
// ---------------------------------------------------------------------------
template <class K>
class GaussPoly {
 public:
  GaussPoly() = default;
  GaussPoly(Poly<K> pre, QuadForm<K> expo, int pi_pow = 0)
      : pre_(std::move(pre)), expo_(std::move(expo)), pi_pow_(pi_pow) {}

  const Poly<K>& prefactor() const { return pre_; }
  const QuadForm<K>& exponent() const { return expo_; }
  int pi_power() const { return pi_pow_; }

  bool is_zero() const { return pre_.is_zero(); }

  GaussPoly diff(Var v, int order = 1) const {
    GaussPoly g = *this;
    for (int k = 0; k < order; ++k) g.pre_ = g.pre_.diff(v) + g.pre_ * expo_.diff(v);
    return g;
  }

  GaussPoly scaled(const K& c) const { return {pre_ * c, expo_, pi_pow_}; }
  GaussPoly times_poly(const Poly<K>& p) const { return {pre_ * p, expo_, pi_pow_}; }

  GaussPoly operator+(const GaussPoly& o) const {
    if (pre_.is_zero()) return o;
    if (o.pre_.is_zero()) return *this;
    require_compatible(o, "add");
    return {pre_ + o.pre_, expo_, pi_pow_};
  }
  GaussPoly operator-(const GaussPoly& o) const {
    if (o.pre_.is_zero()) return *this;
    if (pre_.is_zero()) return {-o.pre_, o.expo_, o.pi_pow_};
    require_compatible(o, "subtract");
    return {pre_ - o.pre_, expo_, pi_pow_};
  }

  GaussPoly conj() const { return {pre_.conj(), expo_.conj(), pi_pow_}; }

  GaussPoly substitute(Var v, const K& value) const {
    return {pre_.substitute(v, value), expo_.substitute(v, value), pi_pow_};
  }
  GaussPoly substitute(Var v, const Rational& r) const {
    return substitute(v, scalar_from_rational<decltype(K{}.re)>(r));
  }

  std::complex<double> eval_d(const std::array<double, kNumVars>& pt) const {
    std::complex<double> val = pre_.eval_d(pt) * std::exp(expo_.eval_d(pt));
    return val * std::pow(std::numbers::pi, pi_pow_);
  }

  friend bool operator==(const GaussPoly& x, const GaussPoly& y) {
    if (x.pre_.is_zero() && y.pre_.is_zero()) return true;
    return x.pi_pow_ == y.pi_pow_ && x.expo_ == y.expo_ && x.pre_ == y.pre_;
  }
  friend bool operator!=(const GaussPoly& x, const GaussPoly& y) { return !(x == y); }

  std::string str() const {
    return "(" + pre_.str() + ") * pi^" + std::to_string(pi_pow_) + " * exp(" + expo_.str() + ")";
  }

 private:
  void require_compatible(const GaussPoly& o, const char* what) const {
    if (pre_.is_zero() || o.pre_.is_zero()) return;
    if (pi_pow_ != o.pi_pow_ || !(expo_ == o.expo_))
      throw Error(std::string("GaussPoly: cannot ") + what + " different exponents");
  }

  Poly<K> pre_;
  QuadForm<K> expo_;
  int pi_pow_ = 0;
};

// Applies a normal-ordered differential operator term by term. The exponent
// is untouched, so the result stays in the same Gaussian class.
template <class K>
GaussPoly<K> apply_op(const DiffOperator<K>& op, const GaussPoly<K>& g) {
  Poly<K> pre;
  for (const auto& t : op.terms) {
    GaussPoly<K> d = g;
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (t.dord.e[i] > 0) d = d.diff(static_cast<Var>(i), t.dord.e[i]);
    pre += t.coeff * d.prefactor();
  }
  return {pre, g.exponent(), g.pi_power()};
}

using SGauss = GaussPoly<Scalar>;
using SQuadForm = QuadForm<Scalar>;

// ---------------------------------------------------------------------------
// CompiledGauss: flattened double-precision evaluator of a GaussPoly over a
// fixed list of four variables. Quadrature loops evaluate millions of points;
// the exact representation stays authoritative, this is just its jit-ed view.
// ---------------------------------------------------------------------------
class CompiledGauss {
 public:
  CompiledGauss() = default;

  CompiledGauss(const SGauss& g, const std::array<Var, 4>& vars) {
    for (int k = 0; k < 4; ++k) max_deg_[k] = 0;
    for (const auto& [m, c] : g.prefactor().terms()) {
      Term t;
      t.coeff = scalar_cdouble(c);
      int covered = 0;
      for (int k = 0; k < 4; ++k) {
        t.e[k] = static_cast<std::uint8_t>(m.get(vars[k]));
        covered += t.e[k];
        max_deg_[k] = std::max<int>(max_deg_[k], t.e[k]);
        if (max_deg_[k] > 23) throw Error("CompiledGauss: degree exceeds the power table");
      }
      if (covered != m.degree()) throw Error("CompiledGauss: prefactor uses other variables");
      terms_.push_back(t);
    }
    SPoly expo = g.exponent().to_poly();
    for (const auto& [m, c] : expo.terms()) {
      std::array<int, 4> e{};
      int covered = 0;
      for (int k = 0; k < 4; ++k) {
        e[k] = m.get(vars[k]);
        covered += e[k];
      }
      if (covered != m.degree()) throw Error("CompiledGauss: exponent uses other variables");
      std::complex<double> cd = scalar_cdouble(c);
      if (m.degree() == 0) {
        e0_ = cd;
      } else if (m.degree() == 1) {
        for (int k = 0; k < 4; ++k)
          if (e[k]) lin_[k] += cd;
      } else {
        int i = -1, j = -1;
        for (int k = 0; k < 4; ++k) {
          if (e[k] == 2) i = j = k;
          if (e[k] == 1) (i < 0 ? i : j) = k;
        }
        quad_[i][j] += cd;
      }
    }
    pi_factor_ = std::pow(std::numbers::pi, g.pi_power());
  }

  std::complex<double> eval(const std::array<double, 4>& z) const {
    std::complex<double> expo = e0_;
    for (int i = 0; i < 4; ++i) {
      expo += lin_[i] * z[i];
      for (int j = i; j < 4; ++j) {
        if (quad_[i][j] != 0.0) expo += quad_[i][j] * (z[i] * z[j]);
      }
    }
    // power tables per variable
    double pw[4][24];
    for (int k = 0; k < 4; ++k) {
      pw[k][0] = 1.0;
      for (int d = 1; d <= max_deg_[k]; ++d) pw[k][d] = pw[k][d - 1] * z[k];
    }
    std::complex<double> pre = 0.0;
    for (const auto& t : terms_)
      pre += t.coeff * (pw[0][t.e[0]] * pw[1][t.e[1]] * pw[2][t.e[2]] * pw[3][t.e[3]]);
    return pre * pi_factor_ * std::exp(expo);
  }

 private:
  struct Term {
    std::complex<double> coeff;
    std::array<std::uint8_t, 4> e{};
  };
  std::vector<Term> terms_;
  std::complex<double> quad_[4][4] = {};
  std::complex<double> lin_[4] = {};
  std::complex<double> e0_ = 0.0;
  double pi_factor_ = 1.0;
  int max_deg_[4] = {};
};

}  // namespace pudq
