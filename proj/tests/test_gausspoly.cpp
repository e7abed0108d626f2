#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pudq/gausspoly.hpp"

using namespace pudq;

namespace {

const PairSignature kPu = PairSignature::pu();

SPoly v(Var x, int e = 1) { return SPoly::var(x, e); }
SPoly c(const Rational& r) { return SPoly::constant(r); }

// exp(-q^2 / s) style exponents
SQuadForm gaussian_expo(const Rational& qq) {
  SQuadForm e;
  e.add_quad(Var::q, Var::q, Scalar(qq));
  return e;
}

SPoly random_poly(std::mt19937& rng, int max_deg, int terms) {
  std::vector<Var> vars = {Var::q, Var::pq, Var::x, Var::px};
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  SPoly p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      Var w = vars[pick(rng)];
      m.set(w, m.get(w) + 1);
    }
    int cc = coef(rng);
    p.add_term(m, Scalar(rat(cc ? cc : 1)));
  }
  return p;
}

}  // namespace

TEST_CASE("quadform construction keeps symmetry") {
  std::vector<Var> vars = {Var::q, Var::x};
  std::vector<std::vector<Scalar>> good = {{Scalar(rat(1)), Scalar(rat(2))},
                                           {Scalar(rat(2)), Scalar(rat(-1))}};
  SQuadForm f = SQuadForm::from_matrix(vars, good);
  CHECK(f.to_poly() == v(Var::q, 2) + c(rat(4)) * v(Var::q) * v(Var::x) - v(Var::x, 2));

  std::vector<std::vector<Scalar>> bad = {{Scalar(rat(1)), Scalar(rat(2))},
                                          {Scalar(rat(3)), Scalar(rat(-1))}};
  CHECK_THROWS_AS(SQuadForm::from_matrix(vars, bad), Error);
}

TEST_CASE("quadform evaluation is exact at rational points") {
  SQuadForm f;
  f.add_quad(Var::q, Var::x, Scalar(rat(3, 2)));
  f.add_lin(Var::q, Scalar(rat(-1)));
  f.add_const(Scalar(rat(1, 4)));
  std::array<Scalar, kNumVars> pt{};
  pt[static_cast<std::size_t>(Var::q)] = Scalar(rat(2, 3));
  pt[static_cast<std::size_t>(Var::x)] = Scalar(rat(3));
  CHECK(f.eval(pt) == Scalar(rat(3) - rat(2, 3) + rat(1, 4)));
}

TEST_CASE("gauss differentiation: chain rule") {
  // d/dq exp(-q^2) = -2q exp(-q^2)
  SGauss g(c(rat(1)), gaussian_expo(rat(-1)));
  SGauss d = g.diff(Var::q);
  CHECK(d.prefactor() == c(rat(-2)) * v(Var::q));
  CHECK(d.exponent() == g.exponent());

  // order zero is the identity
  CHECK(g.diff(Var::q, 0) == g);

  // d^2/dq^2 [q exp(-q^2/2)] = (q^3 - 3q) exp(-q^2/2)
  SGauss h(v(Var::q), gaussian_expo(rat(-1, 2)));
  CHECK(h.diff(Var::q, 2).prefactor() == v(Var::q, 3) - c(rat(3)) * v(Var::q));
}

TEST_CASE("gauss derivatives commute") {
  std::mt19937 rng(41);
  SQuadForm e;
  e.add_quad(Var::q, Var::q, Scalar(rat(-1)));
  e.add_quad(Var::q, Var::pq, Scalar(rat(1, 3)));
  e.add_quad(Var::pq, Var::pq, Scalar(rat(-2)));
  for (int trial = 0; trial < 6; ++trial) {
    SGauss g(random_poly(rng, 3, 4), e);
    CHECK(g.diff(Var::q).diff(Var::pq) == g.diff(Var::pq).diff(Var::q));
  }
}

TEST_CASE("operator application is linear") {
  std::mt19937 rng(43);
  SQuadForm e = gaussian_expo(rat(-1));
  DiffOperator<Scalar> op = bopp_operator(random_poly(rng, 2, 3), kPu).substitute(Var::hbar, rat(1));
  SGauss g1(random_poly(rng, 3, 4), e), g2(random_poly(rng, 3, 4), e);
  Scalar a(rat(2, 3)), b(rat(-5));
  CHECK(apply_op(op, g1.scaled(a) + g2.scaled(b)) ==
        apply_op(op, g1).scaled(a) + apply_op(op, g2).scaled(b));
}

TEST_CASE("bopp application on zero exponent reduces to the star product") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 6; ++trial) {
    SPoly h = random_poly(rng, 3, 3), f = random_poly(rng, 3, 4);
    SGauss g(f, SQuadForm::zero());
    DiffOperator<Scalar> op = bopp_operator(h, kPu);
    SGauss applied = apply_op(op, g);
    CHECK(applied.prefactor() == moyal_star(h, f, kPu));
  }
}

TEST_CASE("bopp on a q-only gaussian multiplies by q when h = q") {
  // no p-dependence, so the shift derivative contributes nothing
  SGauss g(c(rat(1)), gaussian_expo(rat(-1)));
  DiffOperator<Scalar> op = bopp_operator(v(Var::q), kPu).substitute(Var::hbar, rat(1));
  CHECK(apply_op(op, g).prefactor() == v(Var::q));
}

TEST_CASE("substitution closes the gaussian class") {
  SQuadForm e;
  e.add_quad(Var::q, Var::x, Scalar(rat(-1)));
  e.add_quad(Var::hbar, Var::q, Scalar(rat(1)));
  SGauss g(Scalar(rat(0), rat(1, 2)) * v(Var::hbar), e);
  SGauss s = g.substitute(Var::hbar, rat(1));
  CHECK(s.prefactor() == SPoly::constant(Scalar(rat(0), rat(1, 2))));
  // exponent becomes -qx + q
  SQuadForm expect;
  expect.add_quad(Var::q, Var::x, Scalar(rat(-1)));
  expect.add_lin(Var::q, Scalar(rat(1)));
  CHECK(s.exponent() == expect);

  // substituting everything leaves a constant gaussian
  SGauss full = s.substitute(Var::q, rat(2)).substitute(Var::x, rat(1, 2));
  CHECK(full.prefactor().is_constant());
}

TEST_CASE("adding different exponents is refused") {
  SGauss a(c(rat(1)), gaussian_expo(rat(-1)));
  SGauss b(c(rat(1)), gaussian_expo(rat(-2)));
  CHECK_THROWS_AS(a + b, Error);
  CHECK_NOTHROW(a + a);
  CHECK((a - a).is_zero());
}

TEST_CASE("pi power rides along evaluation") {
  SGauss g(c(rat(1)), SQuadForm::zero(), -2);
  std::array<double, kNumVars> pt{};
  CHECK(g.eval_d(pt).real() == doctest::Approx(1.0 / (std::numbers::pi * std::numbers::pi)));
}
