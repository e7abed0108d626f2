#pragma once

#include <array>

#include "pudq/gausspoly.hpp"
#include "pudq/pu_model.hpp"

namespace pudq {

// ---------------------------------------------------------------------------
// Linear canonical maps on the 4-dimensional phase space, exact over the
// quadratic extension Q(sqrt(d)), so symplectic checks are equalities even
// when sqrt(omega1^2 - omega2^2) or sqrt(2) is irrational.
//
// Variable ordering inside the matrix is (positions, momenta):
// old = (q, x, p_q, p_x), new = (N1, N2, NP1, NP2); old_i = sum_j M_ij new_j.
// ---------------------------------------------------------------------------
class LinearCanonicalMap {
 public:
  using Mat4 = std::array<std::array<QuadExt, 4>, 4>;

  LinearCanonicalMap(std::array<Var, 4> old_vars, std::array<Var, 4> new_vars, Mat4 m)
      : old_vars_(old_vars), new_vars_(new_vars), m_(std::move(m)) {}

  const std::array<Var, 4>& old_vars() const { return old_vars_; }
  const std::array<Var, 4>& new_vars() const { return new_vars_; }
  const Mat4& matrix() const { return m_; }

  // Each old variable as a linear polynomial in the new variables.
  QPoly old_var_poly(int i) const;

  // M^T J M == J, exactly.
  bool is_symplectic() const;

  LinearCanonicalMap inverse() const;

  // Composition: this after o (old(this) <- new(o)). Requires matching frames.
  LinearCanonicalMap compose(const LinearCanonicalMap& o) const;

  std::array<double, 4> apply(const std::array<double, 4>& new_point) const;

 private:
  std::array<Var, 4> old_vars_;
  std::array<Var, 4> new_vars_;
  Mat4 m_;
};

// Quadratic generating function F(old positions, new positions) with the
// type-1 relations p = dF/d(old), P = -dF/d(new).
class GeneratingFunction {
 public:
  GeneratingFunction(QPoly f, std::array<Var, 2> old_pos, std::array<Var, 2> old_mom,
                     std::array<Var, 2> new_pos, std::array<Var, 2> new_mom)
      : f_(std::move(f)), old_pos_(old_pos), old_mom_(old_mom), new_pos_(new_pos),
        new_mom_(new_mom) {}

  const QPoly& poly() const { return f_; }
  const std::array<Var, 2>& old_pos() const { return old_pos_; }
  const std::array<Var, 2>& new_pos() const { return new_pos_; }

  // d^2 F / d(old_i) d(new_j); must be nonsingular.
  std::array<std::array<QuadExt, 2>, 2> mixed_hessian() const;
  QuadExt mixed_hessian_det() const;

  // Solves the implicit generating relations into an explicit linear map.
  LinearCanonicalMap implied_map() const;

 private:
  QPoly f_;
  std::array<Var, 2> old_pos_, old_mom_, new_pos_, new_mom_;
};

// The frequency-ordered diagonalizing transformation taking (q,x,p_q,p_x) to
// the uncoupled two-oscillator frame (X1,X2,P1,P2).
LinearCanonicalMap diagonalizing_map(const PUParams& p);

// Its generating function F(q,x,X1,X2); implied_map() reproduces
// diagonalizing_map exactly.
GeneratingFunction generating_function(const PUParams& p);

// Equal-frequency transformation to the angular-momentum frame (Q1,Q2,P1,P2)
// along with its generating function.
struct EqualFreqTransform {
  GeneratingFunction generator;
  LinearCanonicalMap map;
};
EqualFreqTransform equal_freq_map(const Rational& omega, const Rational& hbar);

// Pullback target of the equal-frequency map:
// Omega (Q1 P2 - Q2 P1) + (Omega^2/4)(Q1^2 + Q2^2).
SPoly equal_freq_hamiltonian(const Rational& omega);

// Spectrum formula for the equal-frequency Hamiltonian: discrete angular
// momentum branch plus a continuous branch, E_mk = Omega hbar (m - Omega hbar k^2 / 4).
double equal_freq_spectrum(const Rational& omega, const Rational& hbar, int m, double k);

// A' = A o T: exact composition with the map's linear forms.
QPoly pullback(const QPoly& h, const LinearCanonicalMap& map);
QPoly pullback(const SPoly& h, const LinearCanonicalMap& map);

// GaussPoly composed with a linear map (prefactor and exponent pulled back).
GaussPoly<QScalar> pullback(const GaussPoly<QScalar>& g, const LinearCanonicalMap& map);

}  // namespace pudq
