#include "doctest.h"
#include "khoveq/gf2poly.hpp"
#include "khoveq/poly.hpp"

using namespace khoveq;

TEST_CASE("bivariate ring basics") {
  BivariatePoly s = BivariatePoly::s(), t = BivariatePoly::t();
  auto p = s * s + t - BivariatePoly::monomial(0, 0, 3);
  CHECK(p.str() == "-3 + t + s^2");  // graded order: constants first
  CHECK((p - p).is_zero());
  CHECK((s * t).eval(2, 5) == 10);
  CHECK(p.eval(-1, 4) == 2);
  auto q = (s + t) * (s - t);
  CHECK(q == s * s - t * t);
  CHECK((-q) + q == BivariatePoly());
}

TEST_CASE("bivariate canonical storage drops zeros") {
  BivariatePoly p;
  p.add_term(1, 2, 7);
  p.add_term(1, 2, -7);
  CHECK(p.is_zero());
  CHECK(p.str() == "0");
}

TEST_CASE("laurent ring and bracket substitution") {
  LaurentPoly A;
  A.add_term(1, 1);           // A
  LaurentPoly p = A * A;      // A^2
  p.add_term(-2, 3);          // + 3A^-2
  auto q = p.substitute_monomial(2, 1);  // A -> x with A^2 = x^2 ... identity-ish
  CHECK(q.coeff(4) == 1);
  CHECK(q.coeff(-4) == 3);
  // q-variable substitution used for brackets: A^2 -> -q^-1 style flows
  LaurentPoly r = p.substitute_monomial(-1, -1);
  CHECK(r.coeff(-2) == 1);
  CHECK(r.coeff(2) == 3);  // (-1)^(-2) = 1
}

TEST_CASE("gf2 polynomial euclidean ring") {
  auto x = Gf2Poly::x_pow(1);
  auto p = x * x * x + x + Gf2Poly::one();  // x^3+x+1, irreducible
  auto q = x * x + Gf2Poly::one();
  CHECK(Gf2Poly::gcd(p, q).is_one());
  auto prod = p * q;
  CHECK(prod % p == Gf2Poly::zero());
  CHECK(prod / p == q);
  CHECK(prod.degree() == 5);
  CHECK((p + p).is_zero());
  Gf2Poly r = Gf2Poly::x_pow(130) + Gf2Poly::x_pow(1);
  CHECK(r.degree() == 130);
  CHECK((r % x).is_zero());
  CHECK(p.str("x") == "x^3 + x + 1");
}
