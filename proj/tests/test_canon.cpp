#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pudq/canon.hpp"
#include "pudq/star.hpp"

using namespace pudq;

namespace {

bool maps_equal(const LinearCanonicalMap& a, const LinearCanonicalMap& b) {
  for (int i = 0; i < 4; ++i)
    if (!(a.old_var_poly(i) == b.old_var_poly(i))) return false;
  return a.old_vars() == b.old_vars() && a.new_vars() == b.new_vars();
}

}  // namespace

TEST_CASE("diagonalizing map is symplectic, exactly, even for irrational gamma") {
  for (auto [o1, o2] : {std::pair<long, long>{2, 1}, {3, 2}, {5, 3}}) {
    PUParams p(rat(o1), rat(o2), rat(1));
    CHECK(diagonalizing_map(p).is_symplectic());
  }
}

TEST_CASE("pullback lands exactly on the two-oscillator hamiltonian") {
  for (auto [o1, o2] : {std::pair<long, long>{2, 1}, {3, 2}, {5, 3}}) {
    PUParams p(rat(o1), rat(o2), rat(1));
    LinearCanonicalMap t = diagonalizing_map(p);
    CHECK(pullback(hamiltonian(p), t) == to_qpoly(oscillator_hamiltonian(p)));
  }
}

TEST_CASE("origin maps to origin") {
  PUParams p(rat(5), rat(3), rat(1));
  auto z = diagonalizing_map(p).apply({0.0, 0.0, 0.0, 0.0});
  for (double v : z) CHECK(v == 0.0);
}

TEST_CASE("pullback of a constant is the constant") {
  PUParams p(rat(5), rat(3), rat(1));
  SPoly c = SPoly::constant(rat(7, 3));
  CHECK(pullback(c, diagonalizing_map(p)) == to_qpoly(c));
}

TEST_CASE("generating function reproduces the map through its implicit relations") {
  for (auto [o1, o2] : {std::pair<long, long>{5, 3}, {2, 1}}) {
    PUParams p(rat(o1), rat(o2), rat(1));
    GeneratingFunction gen = generating_function(p);
    CHECK(maps_equal(gen.implied_map(), diagonalizing_map(p)));
  }
}

TEST_CASE("generating function bilinear trace and mixed hessian") {
  PUParams p(rat(5), rat(3), rat(1));  // gamma = 4
  GeneratingFunction gen = generating_function(p);
  // F(0,0,X1,X2) = -O1 X1 X2
  QPoly f00 = gen.poly().substitute(Var::q, QScalar(QuadExt(rat(0))))
                  .substitute(Var::x, QScalar(QuadExt(rat(0))));
  CHECK(f00 == QPoly::constant(QScalar(QuadExt(rat(-5)))) * QPoly::var(Var::X1) *
                   QPoly::var(Var::X2));
  auto h = gen.mixed_hessian();
  CHECK(h[0][0] == QuadExt(rat(20)));  // d2F/dq dX1 = O1 gamma
  CHECK(h[1][1] == QuadExt(rat(4)));   // d2F/dx dX2 = gamma
  CHECK(h[0][1].is_zero());
  CHECK(h[1][0].is_zero());
  CHECK(gen.mixed_hessian_det() == QuadExt(rat(80)));
  // dF/dx equals the map's p_x relation: gamma X2 - O1^2 q at matched points
  QPoly dfdx = gen.poly().diff(Var::x);
  LinearCanonicalMap t = diagonalizing_map(p);
  // substitute q by its new-frame form; the result must equal p_x's form
  QPoly lhs = dfdx.substitute(Var::q, t.old_var_poly(0));
  CHECK(lhs == t.old_var_poly(3));  // rows ordered (q, x, p_q, p_x)
}

TEST_CASE("bracket preservation under pullback") {
  PUParams p(rat(5), rat(3), rat(1));
  LinearCanonicalMap t = diagonalizing_map(p);
  PairSignature osc = PairSignature::oscillator();
  // {q o T, p_q o T} = 1 in the new variables
  CHECK(poisson_bracket(t.old_var_poly(0), t.old_var_poly(2), osc) ==
        QPoly::constant(QScalar(QuadExt(rat(1)))));
  // {f o T, g o T} = {f, g} o T for a quadratic pair
  PUParams pirr(rat(2), rat(1), rat(1));
  LinearCanonicalMap tirr = diagonalizing_map(pirr);
  SPoly f = SPoly::var(Var::q) * SPoly::var(Var::px);
  SPoly g = hamiltonian(pirr);
  CHECK(poisson_bracket(pullback(f, tirr), pullback(g, tirr), osc) ==
        pullback(poisson_bracket(f, g, PairSignature::pu()), tirr));
}

TEST_CASE("round trip with the exact inverse") {
  PUParams p(rat(2), rat(1), rat(1));  // gamma = sqrt(3)
  LinearCanonicalMap t = diagonalizing_map(p);
  LinearCanonicalMap rt = t.compose(t.inverse());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(rt.matrix()[i][j] == QuadExt(rat(i == j ? 1 : 0)));
}

TEST_CASE("equal frequency transformation") {
  EqualFreqTransform eq = equal_freq_map(rat(1), rat(1));
  CHECK(eq.map.is_symplectic());
  PUParams p(rat(1), rat(1), rat(1));
  CHECK(pullback(hamiltonian(p), eq.map) == to_qpoly(equal_freq_hamiltonian(rat(1))));
  CHECK(maps_equal(eq.generator.implied_map(), eq.map));

  // omega = 2 as well
  EqualFreqTransform eq2 = equal_freq_map(rat(2), rat(1));
  PUParams p2(rat(2), rat(2), rat(1));
  CHECK(pullback(hamiltonian(p2), eq2.map) == to_qpoly(equal_freq_hamiltonian(rat(2))));
}

TEST_CASE("equal frequency spectrum formula") {
  CHECK(equal_freq_spectrum(rat(1), rat(1), 0, 0.0) == 0.0);
  CHECK(equal_freq_spectrum(rat(1), rat(1), 2, 2.0) == doctest::Approx(1.0));
  // decreasing in |k|
  CHECK(equal_freq_spectrum(rat(1), rat(1), 1, 0.5) > equal_freq_spectrum(rat(1), rat(1), 1, 1.5));
  // hbar and omega scaling
  CHECK(equal_freq_spectrum(rat(3), rat(1, 2), 4, 0.0) == doctest::Approx(6.0));
}

TEST_CASE("singular and invalid parameter handling") {
  CHECK_THROWS_AS(diagonalizing_map(PUParams(rat(1), rat(1), rat(1))), SingularParamsError);
  CHECK_THROWS_AS(generating_function(PUParams(rat(1), rat(2), rat(1))), ConfigError);
  CHECK_THROWS_AS(equal_freq_map(rat(-1), rat(1)), ConfigError);
}

TEST_CASE("gauss pullback composes prefactor and exponent") {
  PUParams p(rat(5), rat(3), rat(1));
  LinearCanonicalMap t = diagonalizing_map(p);
  // exp(q^2 coefficient) built in pu variables, pulled back to the new frame
  QuadForm<QScalar> e;
  e.add_quad(Var::q, Var::q, QScalar(QuadExt(rat(-1))));
  GaussPoly<QScalar> g(QPoly::var(Var::q), e, 0);
  GaussPoly<QScalar> pulled = pullback(g, t);
  CHECK(pulled.prefactor() == t.old_var_poly(0));
  QPoly qq = t.old_var_poly(0) * t.old_var_poly(0);
  CHECK(pulled.exponent().to_poly() == QPoly::constant(QScalar(QuadExt(rat(-1)))) * qq);
}
