#pragma once

#include <functional>
#include <vector>

#include "pudq/poly.hpp"

namespace pudq {

namespace detail {

template <class K>
void check_signature(const Poly<K>& f, const PairSignature& sig, const char* who) {
  for (Var v : f.vars_used())
    if (!sig.knows(v))
      throw SignatureError(std::string(who) + ": variable '" + var_name(v) +
                           "' not in pair signature");
}

// i^k as an exact complex rational.
template <class K>
K imag_unit_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return scalar_from_rational<decltype(K{}.re)>(rat(1));
    case 1: return K::i();
    case 2: return -scalar_from_rational<decltype(K{}.re)>(rat(1));
    default: return -K::i();
  }
}

}  // namespace detail

// {f,g} = sum over pairs of df/dq dg/dp - df/dp dg/dq.
template <class K>
Poly<K> poisson_bracket(const Poly<K>& f, const Poly<K>& g, const PairSignature& sig) {
  detail::check_signature(f, sig, "poisson_bracket");
  detail::check_signature(g, sig, "poisson_bracket");
  Poly<K> out;
  for (const auto& [qv, pv] : sig.pairs())
    out += f.diff(qv) * g.diff(pv) - f.diff(pv) * g.diff(qv);
  return out;
}

// ---------------------------------------------------------------------------
// Moyal star product on polynomials, by the terminating bidifferential series
//
//   f * g = sum_{a,b} (i hbar/2)^{|a|+|b|} (-1)^{|b|} / (a! b!)
//           (d_q^a d_p^b f) (d_q^b d_p^a g)
//
// with multi-indices a, b over the signature's pairs. hbar stays symbolic.
// ---------------------------------------------------------------------------
template <class K>
Poly<K> moyal_star(const Poly<K>& f, const Poly<K>& g, const PairSignature& sig) {
  detail::check_signature(f, sig, "moyal_star");
  detail::check_signature(g, sig, "moyal_star");
  Poly<K> out;

  // Recurse over pairs, differentiating incrementally; fd carries
  // d_q^a d_p^b f, gd carries d_q^b d_p^a g for the pairs handled so far.
  std::function<void(std::size_t, const Poly<K>&, const Poly<K>&, int, int, const Rational&)>
      walk = [&](std::size_t pi, const Poly<K>& fd, const Poly<K>& gd, int order, int bsum,
                 const Rational& invfact) {
        if (fd.is_zero() || gd.is_zero()) return;
        if (pi == sig.pairs().size()) {
          // (i/2)^order (-1)^bsum / (a! b!) * hbar^order * fd * gd
          K c = detail::imag_unit_pow<K>(order);
          Rational scale = invfact / rat_pow(rat(2), order);
          if (bsum % 2) scale = -scale;
          c *= scalar_from_rational<decltype(K{}.re)>(scale);
          Poly<K> h = Poly<K>::var(Var::hbar, order);
          out += c * (fd * gd * h);
          return;
        }
        auto [qv, pv] = sig.pairs()[pi];
        Poly<K> fa = fd;
        Poly<K> ga = gd;
        for (int a = 0;; ++a) {
          if (a > 0) {
            fa = fa.diff(qv);
            ga = ga.diff(pv);
            if (fa.is_zero() || ga.is_zero()) break;
          }
          Poly<K> fb = fa;
          Poly<K> gb = ga;
          for (int b = 0;; ++b) {
            if (b > 0) {
              fb = fb.diff(pv);
              gb = gb.diff(qv);
              if (fb.is_zero() || gb.is_zero()) break;
            }
            walk(pi + 1, fb, gb, order + a + b, bsum + b,
                 invfact / (rat_factorial(a) * rat_factorial(b)));
          }
        }
      };
  walk(0, f, g, 0, 0, rat(1));
  return out;
}

// [f,g]_* = (f*g - g*f) / (i hbar). The difference is always divisible by
// hbar; a non-divisible term signals a star-product bug, not bad input.
template <class K>
Poly<K> moyal_bracket(const Poly<K>& f, const Poly<K>& g, const PairSignature& sig) {
  Poly<K> d = moyal_star(f, g, sig) - moyal_star(g, f, sig);
  Poly<K> out;
  const K minus_i = -K::i();
  for (const auto& [m, c] : d.terms()) {
    int k = m.get(Var::hbar);
    if (k < 1)
      throw Error("moyal_bracket: commutator term without hbar factor: " + d.str());
    Monomial rm = m;
    rm.set(Var::hbar, k - 1);
    out.add_term(rm, c * minus_i);  // divide by i
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite-order differential operators with polynomial coefficients,
// normal-ordered: coefficients multiply from the left, derivatives act right.
// ---------------------------------------------------------------------------
template <class K>
struct DiffOperator {
  struct Term {
    Monomial dord;     // derivative orders per variable
    Poly<K> coeff;
  };
  std::vector<Term> terms;

  Poly<K> apply(const Poly<K>& p) const {
    Poly<K> out;
    for (const auto& t : terms) {
      Poly<K> d = p;
      for (std::size_t i = 0; i < kNumVars && !d.is_zero(); ++i)
        if (t.dord.e[i] > 0) d = d.diff(static_cast<Var>(i), t.dord.e[i]);
      out += t.coeff * d;
    }
    return out;
  }

  DiffOperator substitute(Var v, const Rational& value) const {
    DiffOperator out;
    for (const auto& t : terms) {
      if (t.dord.depends_on(v)) throw Error("substituting a differentiated variable");
      Poly<K> c = t.coeff.substitute(v, value);
      if (!c.is_zero()) out.terms.push_back({t.dord, c});
    }
    return out;
  }

  int max_order() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.dord.degree());
    return d;
  }
};

enum class StarSide { left, right };

// Bopp-shifted form of star multiplication by h: the operator B with
// B g = h * g (side = left) or B g = g * h (side = right), obtained by
// substituting q -> q + (i hbar/2) d_p, p -> p - (i hbar/2) d_q into h and
// normal ordering. Exact for polynomial h; finitely many terms.
template <class K>
DiffOperator<K> bopp_operator(const Poly<K>& h, const PairSignature& sig,
                              StarSide side = StarSide::left) {
  detail::check_signature(h, sig, "bopp_operator");
  DiffOperator<K> op;

  std::function<void(std::size_t, const Poly<K>&, Monomial, int, int, const Rational&)> walk =
      [&](std::size_t pi, const Poly<K>& hd, Monomial dord, int order, int bsum,
          const Rational& invfact) {
        if (hd.is_zero()) return;
        if (pi == sig.pairs().size()) {
          K c = detail::imag_unit_pow<K>(order);
          Rational scale = invfact / rat_pow(rat(2), order);
          if (bsum % 2) scale = -scale;
          c *= scalar_from_rational<decltype(K{}.re)>(scale);
          Poly<K> coeff = c * (hd * Poly<K>::var(Var::hbar, order));
          if (!coeff.is_zero()) op.terms.push_back({dord, coeff});
          return;
        }
        auto [qv, pv] = sig.pairs()[pi];
        Poly<K> ha = hd;
        for (int a = 0;; ++a) {
          if (a > 0) {
            ha = ha.diff(qv);
            if (ha.is_zero()) break;
          }
          Poly<K> hb = ha;
          for (int b = 0;; ++b) {
            if (b > 0) {
              hb = hb.diff(pv);
              if (hb.is_zero()) break;
            }
            // h * g pairs d_q^a d_p^b h with d_p^a d_q^b g and sign (-1)^b;
            // g * h flips the sign to (-1)^a.
            Monomial d = dord;
            d.set(pv, d.get(pv) + a);
            d.set(qv, d.get(qv) + b);
            int s = side == StarSide::left ? b : a;
            walk(pi + 1, hb, d, order + a + b, bsum + s,
                 invfact / (rat_factorial(a) * rat_factorial(b)));
          }
        }
      };
  walk(0, h, Monomial::one(), 0, 0, rat(1));
  return op;
}

}  // namespace pudq
