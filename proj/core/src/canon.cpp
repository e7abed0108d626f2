#include "pudq/canon.hpp"

namespace pudq {

namespace {

// J for (pos, pos, mom, mom) ordering with pairs (0,2) and (1,3).
int j_entry(int i, int j) {
  if (i == 0 && j == 2) return 1;
  if (i == 1 && j == 3) return 1;
  if (i == 2 && j == 0) return -1;
  if (i == 3 && j == 1) return -1;
  return 0;
}

QuadExt qe(const Rational& r) { return QuadExt(r); }

QPoly qvar(Var v) { return QPoly::var(v); }

QPoly qconst(const QuadExt& c) { return QPoly::constant(QScalar(c)); }

}  // namespace

QPoly LinearCanonicalMap::old_var_poly(int i) const {
  QPoly p;
  for (int j = 0; j < 4; ++j)
    if (!m_[i][j].is_zero()) p.add_term(Monomial::of(new_vars_[j]), QScalar(m_[i][j]));
  return p;
}

bool LinearCanonicalMap::is_symplectic() const {
  // (M^T J M)_ab = sum_ij M_ia J_ij M_jb
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      QuadExt s;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          int jj = j_entry(i, j);
          if (jj == 0) continue;
          QuadExt term = m_[i][a] * m_[j][b];
          s += jj > 0 ? term : -term;
        }
      if (!(s == qe(rat(j_entry(a, b))))) return false;
    }
  return true;
}

LinearCanonicalMap LinearCanonicalMap::inverse() const {
  // Gauss-Jordan over the exact field.
  std::array<std::array<QuadExt, 8>, 4> aug{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) aug[i][j] = m_[i][j];
    aug[i][4 + i] = qe(rat(1));
  }
  for (int col = 0; col < 4; ++col) {
    int piv = -1;
    for (int r = col; r < 4; ++r)
      if (!aug[r][col].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw Error("canonical map not invertible");
    std::swap(aug[col], aug[piv]);
    QuadExt inv = aug[col][col].inverse();
    for (int j = 0; j < 8; ++j) aug[col][j] = aug[col][j] * inv;
    for (int r = 0; r < 4; ++r) {
      if (r == col || aug[r][col].is_zero()) continue;
      QuadExt f = aug[r][col];
      for (int j = 0; j < 8; ++j) aug[r][j] = aug[r][j] - f * aug[col][j];
    }
  }
  Mat4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = aug[i][4 + j];
  return LinearCanonicalMap(new_vars_, old_vars_, out);
}

LinearCanonicalMap LinearCanonicalMap::compose(const LinearCanonicalMap& o) const {
  if (new_vars_ != o.old_vars_) throw Error("canonical map composition: frame mismatch");
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      QuadExt s;
      for (int k = 0; k < 4; ++k) s += m_[i][k] * o.m_[k][j];
      out[i][j] = s;
    }
  return LinearCanonicalMap(old_vars_, o.new_vars_, out);
}

std::array<double, 4> LinearCanonicalMap::apply(const std::array<double, 4>& new_point) const {
  std::array<double, 4> out{};
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (int j = 0; j < 4; ++j) s += m_[i][j].to_double() * new_point[j];
    out[i] = s;
  }
  return out;
}

std::array<std::array<QuadExt, 2>, 2> GeneratingFunction::mixed_hessian() const {
  std::array<std::array<QuadExt, 2>, 2> h{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      QPoly d = f_.diff(old_pos_[i]).diff(new_pos_[j]);
      if (!d.is_constant()) throw Error("generating function not quadratic");
      h[i][j] = d.constant_value().re;  // coefficients are real here
    }
  return h;
}

QuadExt GeneratingFunction::mixed_hessian_det() const {
  auto h = mixed_hessian();
  return h[0][0] * h[1][1] - h[0][1] * h[1][0];
}

LinearCanonicalMap GeneratingFunction::implied_map() const {
  // P_i = -dF/dN_i is linear in (old positions, new positions):
  //   -P_i = A_i0 q + A_i1 x + B_i0 N1 + B_i1 N2
  // Solve the 2x2 system for the old positions, then read the old momenta
  // from p = dF/d(old position).
  std::array<std::array<QuadExt, 2>, 2> a{};
  std::array<std::array<QuadExt, 2>, 2> b{};
  for (int i = 0; i < 2; ++i) {
    QPoly d = f_.diff(new_pos_[i]);
    for (int j = 0; j < 2; ++j) {
      a[i][j] = d.coeff(Monomial::of(old_pos_[j])).re;
      b[i][j] = d.coeff(Monomial::of(new_pos_[j])).re;
    }
  }
  QuadExt det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
  if (det.is_zero()) throw Error("generating relations are degenerate");
  QuadExt inv = det.inverse();
  // old_pos = Ainv * (-P - B*N), with rows of Ainv:
  std::array<std::array<QuadExt, 2>, 2> ai = {
      {{a[1][1] * inv, -a[0][1] * inv}, {-a[1][0] * inv, a[0][0] * inv}}};

  // Columns in new-frame order (N1, N2, NP1, NP2).
  LinearCanonicalMap::Mat4 m{};
  for (int r = 0; r < 2; ++r) {
    for (int i = 0; i < 2; ++i) {
      m[r][2 + i] = -ai[r][i];  // momentum columns
      QuadExt s;
      for (int k = 0; k < 2; ++k) s += ai[r][k] * b[k][i];
      m[r][i] = -s;  // position columns
    }
  }
  // Old momenta p_j = dF/d(old_j) = sum over old positions and new positions.
  for (int j = 0; j < 2; ++j) {
    QPoly d = f_.diff(old_pos_[j]);
    std::array<QuadExt, 2> cpos{}, cnew{};
    for (int k = 0; k < 2; ++k) {
      cpos[k] = d.coeff(Monomial::of(old_pos_[k])).re;
      cnew[k] = d.coeff(Monomial::of(new_pos_[k])).re;
    }
    for (int col = 0; col < 4; ++col) {
      QuadExt s = col < 2 ? cnew[col] : QuadExt();
      for (int k = 0; k < 2; ++k) s += cpos[k] * m[k][col];
      m[2 + j][col] = s;
    }
  }
  return LinearCanonicalMap({old_pos_[0], old_pos_[1], old_mom_[0], old_mom_[1]},
                            {new_pos_[0], new_pos_[1], new_mom_[0], new_mom_[1]}, m);
}

LinearCanonicalMap diagonalizing_map(const PUParams& p) {
  p.require_ordered("diagonalizing_map");
  QuadExt g = QuadExt::sqrt_of(p.gamma_sq());
  QuadExt ginv = g.inverse();
  QuadExt o1 = qe(p.omega1);
  QuadExt o2sq = qe(p.omega2 * p.omega2);
  LinearCanonicalMap::Mat4 m{};
  // columns: (X1, X2, P1, P2); rows: (q, x, p_q, p_x)
  m[0][1] = ginv;                       // q  = (O1 X2 - P1) / (O1 g)
  m[0][2] = -ginv / o1;
  m[1][0] = o1 * ginv;                  // x  = (O1 X1 - P2) / g
  m[1][3] = -ginv;
  m[2][0] = -o1 * o2sq * ginv;          // p_q = O1 (O1 P2 - O2^2 X1) / g
  m[2][3] = o1 * o1 * ginv;
  m[3][1] = -o2sq * ginv;               // p_x = (O1 P1 - O2^2 X2) / g
  m[3][2] = o1 * ginv;
  return LinearCanonicalMap({Var::q, Var::x, Var::pq, Var::px},
                            {Var::X1, Var::X2, Var::P1, Var::P2}, m);
}

GeneratingFunction generating_function(const PUParams& p) {
  p.require_ordered("generating_function");
  QuadExt g = QuadExt::sqrt_of(p.gamma_sq());
  QuadExt o1 = qe(p.omega1);
  // F = O1 g q X1 + g x X2 - O1^2 q x - O1 X1 X2
  QPoly f = qconst(o1 * g) * qvar(Var::q) * qvar(Var::X1) +
            qconst(g) * qvar(Var::x) * qvar(Var::X2) -
            qconst(o1 * o1) * qvar(Var::q) * qvar(Var::x) -
            qconst(o1) * qvar(Var::X1) * qvar(Var::X2);
  return GeneratingFunction(std::move(f), {Var::q, Var::x}, {Var::pq, Var::px},
                            {Var::X1, Var::X2}, {Var::P1, Var::P2});
}

EqualFreqTransform equal_freq_map(const Rational& omega, const Rational& hbar) {
  if (sgn(omega) <= 0) throw ConfigError("equal_freq_map: omega must be positive");
  if (sgn(hbar) <= 0) throw ConfigError("equal_freq_map: hbar must be positive");
  QuadExt o = qe(omega);
  // F = -O^2 q x - O^2 q Q1 + O x Q2 + (O/4) Q1 Q2
  QPoly f = -qconst(o * o) * qvar(Var::q) * qvar(Var::x) -
            qconst(o * o) * qvar(Var::q) * qvar(Var::Q1) +
            qconst(o) * qvar(Var::x) * qvar(Var::Q2) +
            qconst(o * qe(rat(1, 4))) * qvar(Var::Q1) * qvar(Var::Q2);
  GeneratingFunction gen(std::move(f), {Var::q, Var::x}, {Var::pq, Var::px},
                         {Var::Q1, Var::Q2}, {Var::P1, Var::P2});
  return {gen, gen.implied_map()};
}

SPoly equal_freq_hamiltonian(const Rational& omega) {
  SPoly q1 = SPoly::var(Var::Q1), q2 = SPoly::var(Var::Q2);
  SPoly p1 = SPoly::var(Var::P1), p2 = SPoly::var(Var::P2);
  return SPoly::constant(omega) * (q1 * p2 - q2 * p1) +
         SPoly::constant(omega * omega / 4) * (q1 * q1 + q2 * q2);
}

double equal_freq_spectrum(const Rational& omega, const Rational& hbar, int m, double k) {
  double oh = rat_double(omega) * rat_double(hbar);
  return oh * (m - oh * k * k / 4.0);
}

QPoly pullback(const QPoly& h, const LinearCanonicalMap& map) {
  QPoly out = h;
  // substitute one old variable at a time; replacements involve only new vars
  for (int i = 0; i < 4; ++i) out = out.substitute(map.old_vars()[i], map.old_var_poly(i));
  return out;
}

QPoly pullback(const SPoly& h, const LinearCanonicalMap& map) {
  return pullback(to_qpoly(h), map);
}

GaussPoly<QScalar> pullback(const GaussPoly<QScalar>& g, const LinearCanonicalMap& map) {
  QPoly pre = pullback(g.prefactor(), map);
  QPoly expo = pullback(g.exponent().to_poly(), map);
  return {pre, QuadForm<QScalar>::from_poly(expo), g.pi_power()};
}

}  // namespace pudq
