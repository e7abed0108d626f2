#pragma once

#include "pudq/poly.hpp"

namespace pudq {

// Frequencies and the deformation parameter, exact. Every constructor in the
// engine is driven by one of these.
struct PUParams {
  Rational omega1;
  Rational omega2;
  Rational hbar;

  PUParams(Rational o1, Rational o2, Rational hb)
      : omega1(std::move(o1)), omega2(std::move(o2)), hbar(std::move(hb)) {
    if (sgn(omega1) <= 0 || sgn(omega2) <= 0)
      throw ConfigError("params: frequencies must be positive");
    if (sgn(hbar) <= 0) throw ConfigError("params.hbar: must be positive");
  }

  Rational delta() const { return omega1 - omega2; }
  Rational gamma_sq() const { return omega1 * omega1 - omega2 * omega2; }
  bool equal_freq() const { return omega1 == omega2; }

  // Unequal-frequency constructors divide by omega1^2 - omega2^2; callers
  // that do must refuse the singular case with a structured error.
  void require_unequal(const char* who) const {
    if (equal_freq())
      throw SingularParamsError(std::string(who) +
                                ": prefactor 1/(omega1^2-omega2^2) is singular at omega1=omega2=" +
                                rat_str(omega1));
  }
  void require_ordered(const char* who) const {
    require_unequal(who);
    if (omega1 < omega2)
      throw ConfigError(std::string(who) + ": requires omega1 > omega2");
  }
};

// H = p_q x + p_x^2/2 + (O1^2+O2^2) x^2/2 - O1^2 O2^2 q^2/2 on (q,p_q,x,p_x).
SPoly hamiltonian(const PUParams& p);

// Diagonalized frame: (P1^2 + O1^2 X1^2)/2 - (P2^2 + O2^2 X2^2)/2.
SPoly oscillator_hamiltonian(const PUParams& p);

// Ostrogradsky momenta as polynomials in the formal derivative symbols
// qdot, qddot, qdddot: p_x = qddot, p_q = -(O1^2+O2^2) qdot - qdddot.
struct Momenta {
  SPoly p_x;
  SPoly p_q;
};
Momenta momenta(const PUParams& p);

// Conserved Noether charges J1, J2; both Poisson-commute with H and satisfy
// H = (J1 - J2)/2 as polynomial identities.
struct NoetherCharges {
  SPoly j1;
  SPoly j2;
};
NoetherCharges noether_charges(const PUParams& p);

// Trajectory in the trigonometric amplitude basis:
// q(t) = a1 cos(O1 t) + b1 sin(O1 t) + a2 cos(O2 t) + b2 sin(O2 t).
struct ClassicalSolution {
  Rational a1, b1, a2, b2;

  bool is_zero() const { return a1 == 0 && b1 == 0 && a2 == 0 && b2 == 0; }
};

// Time derivative in the amplitude basis, exact.
ClassicalSolution solution_derivative(const ClassicalSolution& s, const PUParams& p, int order);

// Evaluates q(t) (or a derivative) in floating point.
double solution_eval(const ClassicalSolution& s, const PUParams& p, double t);

// d^4 q/dt^4 + (O1^2+O2^2) d^2 q/dt^2 + O1^2 O2^2 q at the samples. The
// amplitude-basis residual vanishes identically, so these come out exactly 0.
std::vector<double> eom_residual(const ClassicalSolution& s, const PUParams& p,
                                 const std::vector<Rational>& t_samples);

// Same residual for an arbitrary polynomial trajectory q(t), exact in t.
SPoly eom_residual_poly(const SPoly& q_of_t, const PUParams& p);

// Infinitesimal symmetry direction qddd +/- (O1^2-O2^2) qdot, itself a solution.
ClassicalSolution symmetry_variation(const ClassicalSolution& s, const PUParams& p, int sign);

// D^k q under the Hamilton flow map f -> {f, H}, eliminated to the
// equation-of-motion polynomial; returns D^4 q + (O1^2+O2^2) D^2 q + O1^2O2^2 q.
SPoly hamilton_eom_elimination(const PUParams& p);

}  // namespace pudq
