#include "doctest.h"
#include "walg/poly.hpp"

using namespace walg;

static RatFunc K() { return RatFunc::sym(); }

TEST_CASE("poly arithmetic and divrem") {
  Poly a = Poly::monomial(1, 3) + Poly::monomial(-2, 1) + Poly(mpq_class(5));
  Poly b = Poly::monomial(1, 1) + Poly(mpq_class(1));
  Poly q, r;
  divrem(a, b, q, r);
  CHECK(q * b + r == a);
  CHECK(r.degree() < b.degree());
  CHECK((a - a).is_zero());
  CHECK(eval(a, mpq_class(2)) == 8 - 4 + 5);
}

TEST_CASE("gcd is monic and divides") {
  Poly x = Poly::monomial(1, 1);
  Poly p = (x + Poly(mpq_class(1))) * (x + Poly(mpq_class(2)));
  Poly q = (x + Poly(mpq_class(1))) * (x + Poly(mpq_class(3)));
  Poly g = gcd(p, q);
  CHECK(g == x + Poly(mpq_class(1)));
  CHECK(gcd(p, Poly()) == p);  // p is monic already
  CHECK(gcd(Poly(mpq_class(3)) * p, Poly()) == p);
}

TEST_CASE("ratfunc field ops stay reduced") {
  RatFunc k = K();
  RatFunc a = (k * k - RatFunc(1)) / (k + RatFunc(1));  // k - 1 after reduction
  CHECK(a == k - RatFunc(1));
  CHECK(a.den.degree() == 0);
  RatFunc b = RatFunc(1) / k + RatFunc(1) / (k * k);
  CHECK(b * k * k == k + RatFunc(1));
  CHECK((b - b).is_zero());
  CHECK_THROWS(b / RatFunc(0));
}

TEST_CASE("ratfunc rendering") {
  RatFunc k = K();
  CHECK(render_ratfunc(RatFunc(mpq_class(-3, 2)), "k") == "-3/2");
  CHECK(render_ratfunc(k, "k") == "k");
  CHECK(render_ratfunc(RatFunc(2) * k, "k") == "2*k");
  CHECK(render_ratfunc((k + RatFunc(1)) / (k - RatFunc(2)), "k") == "(k + 1)/(k - 2)");
  CHECK(render_ratfunc(RatFunc(4) / k, "k") == "4/(k)");
  CHECK(render_poly((k * k * RatFunc(2) - k).num, "k") == "2*k^2 - k");
}

TEST_CASE("upoly over ratfunc for minimal polynomials") {
  using PR = UPoly<RatFunc>;
  RatFunc t = RatFunc::sym();
  PR mu = PR::monomial(RatFunc(1), 3) - PR::monomial(RatFunc(4) / t, 1);
  PR g = gcd(mu, derivative(mu));
  CHECK(g.degree() == 0);  // squarefree
  PR sq = mu * mu;
  CHECK(gcd(sq, derivative(sq)).degree() > 0);
  CHECK(render_upoly(mu, "x", "t") == "x^3 - (4/(t))*x");
}
