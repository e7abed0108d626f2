#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pudq/canon.hpp"
#include "pudq/quadrature.hpp"
#include "pudq/wigner.hpp"

namespace pudq {

using cdouble = std::complex<double>;

// ---------------------------------------------------------------------------
// Closed-form evaluators: complex polynomial and quadratic exponent in two
// real variables, with analytic derivatives. Coefficient arithmetic is done
// in double; exactness lives in the phase-space layer, while the wavefunction
// layer is the quadrature oracle side of every comparison.
// ---------------------------------------------------------------------------
struct CPoly2 {
  std::map<std::pair<int, int>, cdouble> c;

  static CPoly2 one() { return {{{{0, 0}, 1.0}}}; }
  static CPoly2 linear(cdouble cu, cdouble cv, cdouble c0 = 0.0);

  cdouble eval(double u, double v) const;
  CPoly2 diff_u() const;
  CPoly2 diff_v() const;
  CPoly2 operator+(const CPoly2& o) const;
  CPoly2 operator*(const CPoly2& o) const;
  CPoly2 scaled(cdouble s) const;
};

struct CQuad2 {
  cdouble auu = 0.0, auv = 0.0, avv = 0.0, bu = 0.0, bv = 0.0, c0 = 0.0;

  cdouble eval(double u, double v) const {
    return auu * u * u + auv * u * v + avv * v * v + bu * u + bv * v + c0;
  }
  CPoly2 diff_u() const { return CPoly2::linear(2.0 * auu, auv, bu); }
  CPoly2 diff_v() const { return CPoly2::linear(auv, 2.0 * avv, bv); }
};

// Hermite H_k composed with a linear complex argument, as a CPoly2.
CPoly2 hermite_poly2(int k, const CPoly2& arg);

// ---------------------------------------------------------------------------
// WaveFn2D: a two-variable wavefunction, either in closed form
// norm * pre(u,v) exp(expo(u,v)), as an on-demand integral transform, or as
// sampled grid values. All carry an evaluator except pure samples.
// ---------------------------------------------------------------------------
class WaveFn2D {
 public:
  struct Closed {
    CPoly2 pre;
    CQuad2 expo;
    double norm = 1.0;
  };

  WaveFn2D(Frame frame, int n, int m, Closed closed);
  WaveFn2D(Frame frame, int n, int m, std::function<cdouble(double, double)> eval,
           std::string provenance);

  Frame frame() const { return frame_; }
  int n() const { return n_; }
  int m() const { return m_; }

  cdouble operator()(double u, double v) const { return eval_(u, v); }

  bool has_closed_form() const { return closed_.has_value(); }
  const Closed& closed() const;

  const std::string& provenance() const { return provenance_; }

  // Reference point chosen by wavefunction_from_wigner when the origin is a
  // node; empty otherwise.
  std::optional<std::array<double, 2>> reference_point;

 private:
  Frame frame_;
  int n_, m_;
  std::optional<Closed> closed_;
  std::function<cdouble(double, double)> eval_;
  std::string provenance_;
};

// Oscillator-frame eigenfunction H_n(sqrt(O1) X1) H_m(sqrt(O2) X2) times the
// Gaussian, with the standard analytic normalization. Requires hbar = 1.
WaveFn2D osc_wavefunction(int n, int m, const PUParams& p);

// Closed-form position-space eigenfunction of the fourth-order oscillator,
// unit-normalized by quadrature, phase as constructed. Requires hbar = 1 and
// omega1 > omega2; at equal frequencies the norm integral diverges and the
// radius-doubling gate reports it as a structured error.
WaveFn2D pu_wavefunction_closed(int n, int m, const PUParams& p, const QuadratureSpec& quad);

// Same closed form without normalization (norm factor 1); used by the
// norm-divergence study.
WaveFn2D pu_wavefunction_unnormalized(int n, int m, const PUParams& p);

// Unitary integral transform psi(q,x) = N integral e^{i F} psi(X1,X2) dX1 dX2
// with N = sqrt(|det d2F/d(old)d(new)|)/(2 pi). Lazily evaluated per point.
WaveFn2D dirac_transform(const WaveFn2D& psi, const GeneratingFunction& gen,
                         const QuadratureSpec& quad);

// Wigner transform of a wavefunction: for positions (u1,u2) and momenta
// (p1,p2), (1/(2pi)^2) integral conj(psi)(u - y/2) e^{-i y.p} psi(u + y/2) d2y.
std::function<double(const std::array<double, 4>&)> wigner_from_wavefunction(
    const WaveFn2D& psi, const QuadratureSpec& quad);

// Inverse: reconstructs psi from a pure-state Wigner function by the momentum
// integral against e^{i p . (u - r)}, referenced at r (origin by default; an
// offset reference is chosen automatically when the origin is a node).
WaveFn2D wavefunction_from_wigner(const SGauss& rho, Frame frame, int n, int m,
                                  const QuadratureSpec& quad);

// L2 norm-squared and inner products over the plane by Gauss-Legendre with
// per-axis radii.
double norm2(const WaveFn2D& psi, const QuadratureSpec& quad, double ru, double rv);
cdouble inner(const WaveFn2D& a, const WaveFn2D& b, const QuadratureSpec& quad, double ru,
              double rv);

// Relative deviation between two functions sampled on the same points, after
// aligning the best-fit global phase.
struct PhaseComparison {
  double rel_error;
  double phase;
};
PhaseComparison compare_up_to_phase(const std::vector<cdouble>& a, const std::vector<cdouble>& b);

// Pointwise Schroedinger residual |H psi - E psi| / max|psi| for a
// closed-form pu-frame wavefunction, using analytic derivatives.
double schrodinger_residual(const WaveFn2D& psi, const PUParams& p,
                            const std::vector<std::array<double, 2>>& points);

// Norm growth of the closed form as Delta = omega1 - omega2 -> 0, over the
// symmetric family omega_{1,2} = omega_bar +/- Delta/2.
struct NormDivergenceReport {
  std::vector<Rational> deltas;
  std::vector<double> norms;     // unnormalized |psi_nm|^2
  std::vector<double> ratios;    // norms[i+1] / norms[i]
  bool monotone;                 // norms strictly increasing as Delta shrinks
  bool rate_one_over_delta;      // norm * Delta constant within 5% (n = m = 0)
};
NormDivergenceReport equal_freq_norm_divergence(const Rational& omega_bar, const Rational& hbar,
                                                int n, int m, std::vector<Rational> deltas,
                                                const QuadratureSpec& quad);

// Gaussian half-widths of |psi|^2 for radius choices.
std::array<double, 2> gaussian_radii(const WaveFn2D& psi, double n_widths);

}  // namespace pudq
