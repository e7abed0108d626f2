#include "pudq/pu_model.hpp"

#include <cmath>

#include "pudq/star.hpp"

namespace pudq {

namespace {

SPoly v(Var x) { return SPoly::var(x); }
SPoly c(const Rational& r) { return SPoly::constant(r); }

}  // namespace

SPoly hamiltonian(const PUParams& p) {
  Rational o1sq = p.omega1 * p.omega1, o2sq = p.omega2 * p.omega2;
  return v(Var::pq) * v(Var::x) + c(rat(1, 2)) * v(Var::px) * v(Var::px) +
         c((o1sq + o2sq) / 2) * v(Var::x) * v(Var::x) -
         c(o1sq * o2sq / 2) * v(Var::q) * v(Var::q);
}

SPoly oscillator_hamiltonian(const PUParams& p) {
  Rational o1sq = p.omega1 * p.omega1, o2sq = p.omega2 * p.omega2;
  return c(rat(1, 2)) * (v(Var::P1) * v(Var::P1) + c(o1sq) * v(Var::X1) * v(Var::X1)) -
         c(rat(1, 2)) * (v(Var::P2) * v(Var::P2) + c(o2sq) * v(Var::X2) * v(Var::X2));
}

Momenta momenta(const PUParams& p) {
  Rational osum = p.omega1 * p.omega1 + p.omega2 * p.omega2;
  return {v(Var::qddot), c(-osum) * v(Var::qdot) - v(Var::qdddot)};
}

NoetherCharges noether_charges(const PUParams& p) {
  p.require_unequal("noether_charges");
  Rational o1sq = p.omega1 * p.omega1, o2sq = p.omega2 * p.omega2;
  Rational pref = rat(1) / (o1sq - o2sq);
  SPoly u = v(Var::px) + c(o2sq) * v(Var::q);   // p_x + O2^2 q
  SPoly w = v(Var::pq) + c(o1sq) * v(Var::x);   // p_q + O1^2 x
  SPoly s = v(Var::pq) + c(o2sq) * v(Var::x);   // p_q + O2^2 x
  SPoly z = v(Var::px) + c(o1sq) * v(Var::q);   // p_x + O1^2 q
  SPoly j1 = c(pref) * (c(o1sq) * u * u + w * w);
  SPoly j2 = c(pref) * (s * s + c(o2sq) * z * z);
  return {j1, j2};
}

ClassicalSolution solution_derivative(const ClassicalSolution& s, const PUParams& p, int order) {
  ClassicalSolution d = s;
  for (int k = 0; k < order; ++k) {
    // d/dt (a cos + b sin) = (Ob) cos + (-Oa) sin per mode
    d = ClassicalSolution{p.omega1 * d.b1, -p.omega1 * d.a1, p.omega2 * d.b2, -p.omega2 * d.a2};
  }
  return d;
}

double solution_eval(const ClassicalSolution& s, const PUParams& p, double t) {
  double w1 = rat_double(p.omega1), w2 = rat_double(p.omega2);
  return rat_double(s.a1) * std::cos(w1 * t) + rat_double(s.b1) * std::sin(w1 * t) +
         rat_double(s.a2) * std::cos(w2 * t) + rat_double(s.b2) * std::sin(w2 * t);
}

std::vector<double> eom_residual(const ClassicalSolution& s, const PUParams& p,
                                 const std::vector<Rational>& t_samples) {
  Rational osum = p.omega1 * p.omega1 + p.omega2 * p.omega2;
  Rational oprod = rat_pow(p.omega1, 2) * rat_pow(p.omega2, 2);
  ClassicalSolution d2 = solution_derivative(s, p, 2);
  ClassicalSolution d4 = solution_derivative(s, p, 4);
  // residual amplitudes, exact; the characteristic roots cancel them to zero
  ClassicalSolution r{d4.a1 + osum * d2.a1 + oprod * s.a1, d4.b1 + osum * d2.b1 + oprod * s.b1,
                      d4.a2 + osum * d2.a2 + oprod * s.a2, d4.b2 + osum * d2.b2 + oprod * s.b2};
  std::vector<double> out;
  out.reserve(t_samples.size());
  for (const auto& t : t_samples) out.push_back(solution_eval(r, p, rat_double(t)));
  return out;
}

SPoly eom_residual_poly(const SPoly& q_of_t, const PUParams& p) {
  Rational osum = p.omega1 * p.omega1 + p.omega2 * p.omega2;
  Rational oprod = rat_pow(p.omega1, 2) * rat_pow(p.omega2, 2);
  return q_of_t.diff(Var::t, 4) + SPoly::constant(osum) * q_of_t.diff(Var::t, 2) +
         SPoly::constant(oprod) * q_of_t;
}

ClassicalSolution symmetry_variation(const ClassicalSolution& s, const PUParams& p, int sign) {
  Rational gsq = p.gamma_sq();
  ClassicalSolution d1 = solution_derivative(s, p, 1);
  ClassicalSolution d3 = solution_derivative(s, p, 3);
  Rational sg = sign >= 0 ? rat(1) : rat(-1);
  return {d3.a1 + sg * gsq * d1.a1, d3.b1 + sg * gsq * d1.b1, d3.a2 + sg * gsq * d1.a2,
          d3.b2 + sg * gsq * d1.b2};
}

SPoly hamilton_eom_elimination(const PUParams& p) {
  SPoly h = hamiltonian(p);
  PairSignature sig = PairSignature::pu();
  SPoly dq = SPoly::var(Var::q);
  std::vector<SPoly> deriv = {dq};  // D^k q with D f = {f, H}
  for (int k = 0; k < 4; ++k) deriv.push_back(poisson_bracket(deriv.back(), h, sig));
  Rational osum = p.omega1 * p.omega1 + p.omega2 * p.omega2;
  Rational oprod = rat_pow(p.omega1, 2) * rat_pow(p.omega2, 2);
  return deriv[4] + SPoly::constant(osum) * deriv[2] + SPoly::constant(oprod) * deriv[0];
}

}  // namespace pudq
