#pragma once

#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pudq/scalar.hpp"
#include "pudq/vars.hpp"

namespace pudq {

// ---------------------------------------------------------------------------
// Poly<K>: sparse multivariate polynomial over an exact complex field K
// (K = Scalar or QScalar). Terms map canonical monomials to coefficients;
// zero coefficients are never stored. Values are immutable in spirit: every
// operation returns a fresh polynomial, so sharing across threads is safe.
// ---------------------------------------------------------------------------
template <class K>
class Poly {
 public:
  using Terms = std::map<Monomial, K>;

  Poly() = default;

  explicit Poly(const K& c) {
    if (!scalar_is_zero(c)) terms_[Monomial::one()] = c;
  }

  static Poly zero() { return Poly(); }
  static Poly constant(const K& c) { return Poly(c); }
  static Poly constant(const Rational& r) { return Poly(scalar_from_rational<field_t>(r)); }

  static Poly var(Var v, int exp = 1) {
    Poly p;
    if (exp == 0) return constant(rat(1));
    p.terms_[Monomial::of(v, exp)] = scalar_from_rational<field_t>(rat(1));
    return p;
  }

  static Poly term(const K& c, const Monomial& m) {
    Poly p;
    if (!scalar_is_zero(c)) p.terms_[m] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial::one());
  }

  K constant_value() const {
    auto it = terms_.find(Monomial::one());
    return it == terms_.end() ? K{} : it->second;
  }

  K coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K{} : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  int degree_in(Var v) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.get(v));
    return d;
  }

  bool depends_on(Var v) const {
    for (const auto& [m, c] : terms_)
      if (m.depends_on(v)) return true;
    return false;
  }

  std::vector<Var> vars_used() const {
    std::array<bool, kNumVars> used{};
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (m.e[i] > 0) used[i] = true;
    std::vector<Var> out;
    for (std::size_t i = 0; i < kNumVars; ++i)
      if (used[i]) out.push_back(static_cast<Var>(i));
    return out;
  }

  void add_term(const Monomial& m, const K& c) {
    if (scalar_is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (scalar_is_zero(it->second)) terms_.erase(it);
    }
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
  }

  friend Poly operator-(const Poly& a) {
    Poly out;
    for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
  }

  friend Poly operator*(const K& c, const Poly& a) { return Poly(c) * a; }
  friend Poly operator*(const Poly& a, const K& c) { return Poly(c) * a; }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly out = constant(rat(1));
    Poly base = *this;
    for (unsigned k = e; k > 0; k >>= 1) {
      if (k & 1) out = out * base;
      if (k > 1) base = base * base;
    }
    return out;
  }

  Poly diff(Var v, int order = 1) const {
    Poly cur = *this;
    for (int o = 0; o < order; ++o) {
      Poly next;
      for (const auto& [m, c] : cur.terms_) {
        int k = m.get(v);
        if (k == 0) continue;
        Monomial dm = m;
        dm.set(v, k - 1);
        next.add_term(dm, c * scalar_from_rational<field_t>(rat(k)));
      }
      cur = std::move(next);
      if (cur.is_zero()) break;
    }
    return cur;
  }

  // Substitutes a scalar value for a variable.
  Poly substitute(Var v, const K& value) const {
    Poly out;
    for (const auto& [m, c] : terms_) {
      int k = m.get(v);
      Monomial rm = m;
      rm.set(v, 0);
      K cc = c;
      for (int i = 0; i < k; ++i) cc *= value;
      out.add_term(rm, cc);
    }
    return out;
  }

  Poly substitute(Var v, const Rational& value) const {
    return substitute(v, scalar_from_rational<field_t>(value));
  }

  // Substitutes a polynomial for a variable (composition).
  Poly substitute(Var v, const Poly& value) const {
    // Group by exponent of v, then Horner over the replacement.
    std::map<int, Poly> by_exp;
    for (const auto& [m, c] : terms_) {
      Monomial rm = m;
      int k = m.get(v);
      rm.set(v, 0);
      by_exp[k].add_term(rm, c);
    }
    Poly out;
    int prev = -1;
    for (auto it = by_exp.rbegin(); it != by_exp.rend(); ++it) {
      if (prev >= 0)
        for (int i = 0; i < prev - it->first; ++i) out = out * value;
      out = out + it->second;
      prev = it->first;
    }
    if (prev > 0)
      for (int i = 0; i < prev; ++i) out = out * value;
    return out;
  }

  // Exact evaluation; every variable appearing in the polynomial must be
  // assigned in `point` (indexed by Var).
  K eval(const std::array<K, kNumVars>& point) const {
    K sum{};
    for (const auto& [m, c] : terms_) {
      K t = c;
      for (std::size_t i = 0; i < kNumVars; ++i)
        for (int k = 0; k < m.e[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  std::complex<double> eval_d(const std::array<double, kNumVars>& point) const {
    std::complex<double> sum = 0.0;
    for (const auto& [m, c] : terms_) {
      double t = 1.0;
      for (std::size_t i = 0; i < kNumVars; ++i)
        for (int k = 0; k < m.e[i]; ++k) t *= point[i];
      sum += scalar_cdouble(c) * t;
    }
    return sum;
  }

  Poly conj() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.terms_[m] = c.conj();
    return out;
  }

  Poly real_part() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.add_term(m, K(c.re));
    return out;
  }

  Poly imag_part() const {
    Poly out;
    for (const auto& [m, c] : terms_) out.add_term(m, K(c.im));
    return out;
  }

  // Debug rendering: monomials in canonical order, exact coefficients as a/b.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      std::string cs = scalar_str(c);
      if (!first) {
        if (!cs.empty() && cs[0] == '-') {
          os << " - ";
          cs = cs.substr(1);
        } else {
          os << " + ";
        }
      }
      first = false;
      os << cs;
      for (std::size_t i = 0; i < kNumVars; ++i) {
        if (m.e[i] == 0) continue;
        os << "*" << var_name(static_cast<Var>(i));
        if (m.e[i] > 1) os << "^" << int(m.e[i]);
      }
    }
    return os.str();
  }

 private:
  using field_t = decltype(K{}.re);
  Terms terms_;
};

using SPoly = Poly<Scalar>;
using QPoly = Poly<QScalar>;

inline QPoly to_qpoly(const SPoly& p) {
  QPoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, to_qscalar(c));
  return out;
}

// Conversion back to the rational field; throws if irrational parts survive.
inline SPoly to_spoly(const QPoly& p) {
  SPoly out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, to_scalar(c));
  return out;
}

}  // namespace pudq
