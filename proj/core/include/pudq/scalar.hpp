#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "pudq/rational.hpp"

namespace pudq {

// ---------------------------------------------------------------------------
// QuadExt: elements a + b*sqrt(d) of a real quadratic extension of Q.
//
// d is carried per value. Pure rationals store d = 0; binary operations unify
// the radicands and refuse to mix distinct irrational ones. Perfect-square
// radicands collapse to the rational part at construction, so a nonzero b
// always rides a genuinely irrational sqrt and equality stays decidable.
// ---------------------------------------------------------------------------
class QuadExt {
 public:
  QuadExt() : a_(0), b_(0), d_(0) {}
  QuadExt(const Rational& a) : a_(a), b_(0), d_(0) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(rat(a)), b_(0), d_(0) {}        // NOLINT(google-explicit-constructor)

  QuadExt(const Rational& a, const Rational& b, const Rational& d) : a_(a), b_(b), d_(d) {
    normalize();
  }

  // sqrt(r) for r >= 0, exact: rational when r is a perfect square, else a
  // pure sqrt(d) element.
  static QuadExt sqrt_of(const Rational& r) {
    if (sgn(r) < 0) throw FieldError("sqrt of negative rational: " + rat_str(r));
    if (auto s = rat_sqrt_exact(r)) return QuadExt(*s);
    return QuadExt(rat(0), rat(1), r);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Rational& d() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  // Rational part extraction; throws when an irrational part remains.
  Rational as_rational() const {
    if (!is_rational()) throw FieldError("value has irrational part: " + str());
    return a_;
  }

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    Rational d = unify(x, y);
    return QuadExt(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    Rational d = unify(x, y);
    return QuadExt(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a_, -x.b_, x.d_); }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Rational d = unify(x, y);
    return QuadExt(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) { return x * y.inverse(); }

  QuadExt& operator+=(const QuadExt& y) { return *this = *this + y; }
  QuadExt& operator-=(const QuadExt& y) { return *this = *this - y; }
  QuadExt& operator*=(const QuadExt& y) { return *this = *this * y; }

  QuadExt inverse() const {
    // (a + b sqrt(d))^-1 = (a - b sqrt(d)) / (a^2 - b^2 d). The denominator
    // vanishes only at zero because d is never a perfect square here.
    Rational den = a_ * a_ - b_ * b_ * d_;
    if (den == 0) throw FieldError("division by zero in quadratic extension");
    return QuadExt(a_ / den, -b_ / den, d_);
  }

  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

  double to_double() const { return rat_double(a_) + rat_double(b_) * std::sqrt(rat_double(d_)); }

  std::string str() const {
    if (b_ == 0) return rat_str(a_);
    std::string s;
    if (a_ != 0) s += rat_str(a_) + (sgn(b_) < 0 ? "" : "+");
    s += rat_str(b_) + "*sqrt(" + rat_str(d_) + ")";
    return s;
  }

 private:
  void normalize() {
    if (b_ == 0) {
      d_ = 0;
      return;
    }
    if (auto s = rat_sqrt_exact(d_)) {
      a_ += b_ * (*s);
      b_ = 0;
      d_ = 0;
    }
  }

  static Rational unify(const QuadExt& x, const QuadExt& y) {
    if (x.b_ == 0) return y.d_;
    if (y.b_ == 0) return x.d_;
    if (x.d_ != y.d_)
      throw FieldError("mixing sqrt(" + rat_str(x.d_) + ") with sqrt(" + rat_str(y.d_) + ")");
    return x.d_;
  }

  Rational a_, b_, d_;
};

// ---------------------------------------------------------------------------
// Complex<F>: complex numbers over an exact real field F.
// ---------------------------------------------------------------------------
template <class F>
struct Complex {
  F re{};
  F im{};

  Complex() = default;
  Complex(const F& r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Complex(const F& r, const F& i) : re(r), im(i) {}

  static Complex i() { return Complex(F(0), F(1)); }

  bool is_zero() const { return re == F(0) && im == F(0); }
  bool is_real() const { return im == F(0); }

  Complex conj() const { return Complex(re, -im); }

  friend Complex operator+(const Complex& x, const Complex& y) {
    return Complex(x.re + y.re, x.im + y.im);
  }
  friend Complex operator-(const Complex& x, const Complex& y) {
    return Complex(x.re - y.re, x.im - y.im);
  }
  friend Complex operator-(const Complex& x) { return Complex(-x.re, -x.im); }
  friend Complex operator*(const Complex& x, const Complex& y) {
    return Complex(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
  }
  friend Complex operator/(const Complex& x, const Complex& y) {
    F n = y.re * y.re + y.im * y.im;
    if (n == F(0)) throw FieldError("complex division by zero");
    return Complex((x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n);
  }

  Complex& operator+=(const Complex& y) { return *this = *this + y; }
  Complex& operator-=(const Complex& y) { return *this = *this - y; }
  Complex& operator*=(const Complex& y) { return *this = *this * y; }

  friend bool operator==(const Complex& x, const Complex& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }
};

// The two coefficient fields used by the engine. Scalar carries every exact
// identity; QScalar adds sqrt(omega1^2-omega2^2)-type constants for the
// canonical-transformation layer.
using Scalar = Complex<Rational>;
using QScalar = Complex<QuadExt>;

// --------------------------- field trait hooks ----------------------------

inline bool field_is_zero(const Rational& r) { return r == 0; }
inline bool field_is_zero(const QuadExt& q) { return q.is_zero(); }
inline double field_double(const Rational& r) { return rat_double(r); }
inline double field_double(const QuadExt& q) { return q.to_double(); }
inline std::string field_str(const Rational& r) { return rat_str(r); }
inline std::string field_str(const QuadExt& q) { return q.str(); }

template <class F>
bool scalar_is_zero(const Complex<F>& c) {
  return c.is_zero();
}

template <class F>
std::complex<double> scalar_cdouble(const Complex<F>& c) {
  return {field_double(c.re), field_double(c.im)};
}

template <class F>
Complex<F> scalar_from_rational(const Rational& r) {
  return Complex<F>(F(r));
}

template <class F>
std::string scalar_str(const Complex<F>& c) {
  if (c.im == F(0)) return field_str(c.re);
  if (c.re == F(0)) return field_str(c.im) + "*i";
  std::string im = field_str(c.im);
  std::string sep = (!im.empty() && im[0] == '-') ? "" : "+";
  return "(" + field_str(c.re) + sep + im + "*i)";
}

inline QScalar to_qscalar(const Scalar& s) { return QScalar(QuadExt(s.re), QuadExt(s.im)); }

inline Scalar to_scalar(const QScalar& q) {
  return Scalar(q.re.as_rational(), q.im.as_rational());
}

}  // namespace pudq
