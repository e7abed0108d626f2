#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "pudq/errors.hpp"

namespace pudq {

// Exact rational arithmetic. GMP's mpq_class supplies canonical arithmetic;
// the helpers below cover parsing, powers and exact square roots.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "a", "-a/b" or decimal-free fraction strings. mpq_class's string
// constructor does not canonicalize, so this wrapper must.
inline Rational rat_parse(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw ConfigError("not a rational: '" + s + "'");
  if (r.get_den() == 0) throw ConfigError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline double rat_double(const Rational& r) { return r.get_d(); }

inline Rational rat_pow(const Rational& base, unsigned long e) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), e);
  out.canonicalize();
  return out;
}

inline Rational rat_factorial(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

inline Rational rat_binomial(unsigned long n, unsigned long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

// Exact square root of a non-negative rational, when it exists in Q.
inline std::optional<Rational> rat_sqrt_exact(const Rational& r) {
  if (sgn(r) < 0) return std::nullopt;
  mpz_class num = r.get_num(), den = r.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  return Rational(sn, sd);
}

}  // namespace pudq
