#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pudq/poly.hpp"

using namespace pudq;

namespace {

SPoly random_poly(std::mt19937& rng, int max_deg, int terms) {
  std::vector<Var> vars = {Var::q, Var::pq, Var::x, Var::px};
  std::uniform_int_distribution<int> coef(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> pick(0, 3);
  std::uniform_int_distribution<int> deg(0, max_deg);
  SPoly p;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      Var v = vars[pick(rng)];
      m.set(v, m.get(v) + 1);
    }
    p.add_term(m, Scalar(rat(coef(rng), den(rng)), rat(coef(rng), den(rng))));
  }
  return p;
}

}  // namespace

TEST_CASE("rational parsing canonicalizes") {
  CHECK(rat_parse("4/6") == rat(2, 3));
  CHECK(rat_parse("-10/4") == rat(-5, 2));
  CHECK(rat_str(rat_parse("4/6")) == "2/3");
  CHECK_THROWS_AS(rat_parse("1/0"), ConfigError);
  CHECK_THROWS_AS(rat_parse("abc"), ConfigError);
  CHECK(rat_pow(rat(2, 3), 3) == rat(8, 27));
  CHECK(rat_factorial(6) == rat(720));
  CHECK(*rat_sqrt_exact(rat(16, 9)) == rat(4, 3));
  CHECK(!rat_sqrt_exact(rat(2)).has_value());
}

TEST_CASE("quadratic extension arithmetic") {
  QuadExt g = QuadExt::sqrt_of(rat(3));
  CHECK(g * g == QuadExt(rat(3)));
  CHECK((g + g) == QuadExt(rat(0), rat(2), rat(3)));
  CHECK(g.inverse() * g == QuadExt(rat(1)));
  // perfect squares collapse to rationals
  CHECK(QuadExt::sqrt_of(rat(16)) == QuadExt(rat(4)));
  CHECK(QuadExt::sqrt_of(rat(16)).is_rational());
  // mixing distinct radicands is refused
  CHECK_THROWS_AS(QuadExt::sqrt_of(rat(2)) + QuadExt::sqrt_of(rat(3)), FieldError);
  // (1 + sqrt(2))(1 - sqrt(2)) = -1
  QuadExt s2 = QuadExt::sqrt_of(rat(2));
  CHECK((QuadExt(rat(1)) + s2) * (QuadExt(rat(1)) - s2) == QuadExt(rat(-1)));
}

TEST_CASE("complex scalar field") {
  Scalar i = Scalar::i();
  CHECK(i * i == Scalar(rat(-1)));
  Scalar z(rat(3), rat(4));
  CHECK(z * z.conj() == Scalar(rat(25)));
  CHECK(z / z == Scalar(rat(1)));
  CHECK_THROWS_AS(z / Scalar(), FieldError);
}

TEST_CASE("poly term bookkeeping drops zeros") {
  SPoly p = SPoly::var(Var::q) - SPoly::var(Var::q);
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
  SPoly q = SPoly::var(Var::q) + SPoly::var(Var::x);
  CHECK(q.term_count() == 2);
  CHECK(q.degree() == 1);
}

TEST_CASE("poly arithmetic is commutative and associative on random inputs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SPoly a = random_poly(rng, 4, 5), b = random_poly(rng, 4, 5), c = random_poly(rng, 4, 5);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("differentiation and substitution") {
  SPoly p = SPoly::var(Var::q, 3) * SPoly::var(Var::pq);  // q^3 p_q
  CHECK(p.diff(Var::q) == SPoly::constant(rat(3)) * SPoly::var(Var::q, 2) * SPoly::var(Var::pq));
  CHECK(p.diff(Var::q, 3) == SPoly::constant(rat(6)) * SPoly::var(Var::pq));
  CHECK(p.diff(Var::q, 4).is_zero());
  CHECK(p.diff(Var::x).is_zero());

  SPoly sub = p.substitute(Var::q, rat(2));
  CHECK(sub == SPoly::constant(rat(8)) * SPoly::var(Var::pq));

  // compose q -> (x + 1)
  SPoly comp = SPoly::var(Var::q, 2).substitute(
      Var::q, SPoly::var(Var::x) + SPoly::constant(rat(1)));
  CHECK(comp == SPoly::var(Var::x, 2) + SPoly::constant(rat(2)) * SPoly::var(Var::x) +
                    SPoly::constant(rat(1)));
}

TEST_CASE("derivatives commute on random polynomials") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    SPoly p = random_poly(rng, 5, 8);
    CHECK(p.diff(Var::q).diff(Var::px) == p.diff(Var::px).diff(Var::q));
  }
}

TEST_CASE("exact evaluation") {
  SPoly h = SPoly::var(Var::q) * SPoly::var(Var::pq) + SPoly::constant(rat(1, 2));
  std::array<Scalar, kNumVars> pt{};
  pt[static_cast<std::size_t>(Var::q)] = Scalar(rat(2, 3));
  pt[static_cast<std::size_t>(Var::pq)] = Scalar(rat(3));
  CHECK(h.eval(pt) == Scalar(rat(5, 2)));
}

TEST_CASE("canonical text rendering") {
  SPoly p = SPoly::constant(rat(3, 2)) * SPoly::var(Var::q, 2) -
            Scalar(rat(0), rat(1, 2)) * SPoly::var(Var::hbar);
  CHECK(p.str() == "-1/2*i*hbar + 3/2*q^2");
  CHECK(SPoly().str() == "0");
  // rendering is stable under term insertion order
  SPoly q1 = SPoly::var(Var::q) + SPoly::var(Var::x);
  SPoly q2 = SPoly::var(Var::x) + SPoly::var(Var::q);
  CHECK(q1.str() == q2.str());
}

TEST_CASE("field conversions between rational and quadratic extension") {
  SPoly p = SPoly::constant(rat(2, 3)) * SPoly::var(Var::q);
  QPoly qp = to_qpoly(p);
  CHECK(to_spoly(qp) == p);
  QPoly irr = QPoly::constant(QScalar(QuadExt::sqrt_of(rat(2))));
  CHECK_THROWS_AS(to_spoly(irr), FieldError);
}
