#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "pudq/canon.hpp"
#include "pudq/gausspoly.hpp"
#include "pudq/pu_model.hpp"
#include "pudq/quadrature.hpp"

namespace pudq {

enum class Frame { pu, oscillator };

struct WignerState {
  int n;
  int m;
  PUParams params;
  Frame frame;

  WignerState(int n_, int m_, PUParams p, Frame f)
      : n(n_), m(m_), params(std::move(p)), frame(f) {
    if (n < 0 || m < 0) throw ConfigError("state indices must be non-negative");
    if (frame == Frame::pu) params.require_unequal("pu-frame state");
  }
};

struct SpectrumEntry {
  int n, m;
  Rational energy;
};

struct SpectrumTable {
  std::vector<SpectrumEntry> entries;
  bool unbounded_below;  // energies decrease without bound as m grows
};

// E_nm = hbar ((n+1/2) Omega1 - (m+1/2) Omega2), exact.
Rational genvalue_energy(const PUParams& p, int n, int m);

SpectrumTable spectrum(const PUParams& p, int n_max, int m_max);

// Stationary Wigner functions. The pu-frame constructor takes an exponent
// scale: scale = 1 is the form that solves the star-genvalue equation (and
// integrates to one); other scales exist so the verification report can
// demonstrate that rejected candidate scalings fail.
SGauss pu_wigner(const WignerState& s);
SGauss pu_wigner_scaled(const WignerState& s, const Rational& scale);
SGauss osc_wigner(const WignerState& s);

// Residual of H * rho = e rho computed through the Bopp-shifted operator,
// split into the components even and odd in the imaginary unit.
struct GenvalueResidual {
  SGauss residual;
  SGauss real_part;
  SGauss imag_part;
  bool exact_zero() const { return residual.is_zero(); }
};
GenvalueResidual star_genvalue_residual(const SPoly& h, const SGauss& rho, const Scalar& e,
                                        const PUParams& p, const PairSignature& sig);

// Radial form of the one-oscillator genvalue equation in z = 4H/(hbar Omega):
// (z/4 - z d^2/dz^2 - d/dz - (n + 1/2)) applied to L_n(z) e^{-z/2}; exact zero.
SGauss radial_genvalue_residual(int n);

// Wigner transform of |ket><bra| for two-oscillator eigenstates, exact up to
// the stated positive normalization.
struct CrossWigner {
  SGauss unnormalized;   // conj-ladders * W00 * ladders, exact
  double scale;          // W = scale * unnormalized
  Rational bra_energy;   // W * H = E_bra W
  Rational ket_energy;   // H * W = E_ket W
};
CrossWigner cross_wigner(const PUParams& p, std::pair<int, int> bra, std::pair<int, int> ket);

// Expectation <A> = integral of A * rho over phase space, with the measure
// calibrated so that <1> over the ground state is exactly 1. The calibration
// constant is reported alongside the value.
struct Expectation {
  std::complex<double> value;
  double calibration;  // measured integral of the ground-state density
};
Expectation expectation(const SPoly& a, const SGauss& rho, const PairSignature& sig,
                        const PUParams& p, const QuadratureSpec& spec);

// Phase-space integral of a Gaussian-class function over the signature's
// four variables. The box is anisotropic: per-axis radii follow the marginal
// widths of the (possibly cross-coupled) Gaussian.
std::complex<double> integrate_phase_space(const SGauss& g, const PairSignature& sig,
                                           const QuadratureSpec& spec);

// Marginal n_widths-sigma radii of exp(Re Q) along the signature variables.
std::array<double, 4> gaussian_phase_radii(const SGauss& g, const PairSignature& sig,
                                           double n_widths);

// Product of two Gaussian-class functions (exponents add).
SGauss gp_mul(const SGauss& a, const SGauss& b);

// ---------------------------------------------------------------------------
// Spectral star evolution of a finite eigenstate superposition:
// rho(t) = sum w_l conj(w_k) e^{-i t (E_l - E_k)/hbar} W_kl. Cross terms are
// exact Gaussian-class objects; only the phases are floating point.
// ---------------------------------------------------------------------------
class StarEvolution {
 public:
  using Component = std::pair<std::complex<double>, std::pair<int, int>>;

  StarEvolution(const PUParams& p, std::vector<Component> components,
                Frame frame = Frame::oscillator);

  // rho(t) at a phase-space point, ordered (X1, P1, X2, P2) in the oscillator
  // frame and (q, p_q, x, p_x) in the pu frame.
  double value(double t, const std::array<double, 4>& pt) const;

  // (H * rho - rho * H)/(i hbar) at time t, from the exact star products.
  double moyal_bracket_value(double t, const std::array<double, 4>& pt) const;

  // Star-exponential route truncated at the given power of t on either side;
  // every star product underneath is exact.
  double series_value(double t, const std::array<double, 4>& pt, int truncation) const;

  const PUParams& params() const { return params_; }

 private:
  struct CrossTerm {
    std::complex<double> weight;  // w_l conj(w_k) * normalization scale
    Rational freq;                // (E_l - E_k)/hbar, exact
    SGauss gauss;                 // unnormalized cross state
    SGauss bracket;               // (H*W - W*H)/(i hbar), exact
    std::vector<std::vector<SGauss>> series;  // H^{*j} * W * H^{*j'}
    Rational bra_e, ket_e;
    // flattened views for grid evaluation
    CompiledGauss gauss_c;
    CompiledGauss bracket_c;
    std::vector<std::vector<CompiledGauss>> series_c;
  };

  std::array<Var, 4> frame_vars() const;

  PUParams params_;
  Frame frame_;
  std::vector<CrossTerm> terms_;
  int series_max_ = 3;
};

}  // namespace pudq
