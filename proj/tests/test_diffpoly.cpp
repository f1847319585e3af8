#include <random>

#include "doctest.h"
#include "walg/diffpoly.hpp"

using namespace walg;

namespace {

// one even weight-1 variable u
VarTable table_u() {
  VarTable vt;
  vt.add("u", false, 2);
  vt.freeze();
  return vt;
}

// even u (weight 1), odd phi/psi (weight 1/2)
VarTable table_mixed() {
  VarTable vt;
  vt.add("u", false, 2);
  vt.add("phi", true, 1);
  vt.add("psi", true, 1);
  vt.freeze();
  return vt;
}

DiffPoly random_poly(const VarTable& vt, std::mt19937& rng, int terms,
                     int max_ord) {
  DiffPoly p(&vt);
  for (int t = 0; t < terms; ++t) {
    std::vector<Factor> fs;
    int nf = 1 + (int)(rng() % 3);
    for (int i = 0; i < nf; ++i)
      fs.push_back({(int)(rng() % vt.size()), (int)(rng() % (max_ord + 1)),
                    1 + (int)(rng() % 2)});
    RatFunc c = RatFunc((long)(rng() % 9) - 4) +
                RatFunc::sym() * RatFunc((long)(rng() % 3));
    p.add_term(fs, c);
  }
  return p;
}

}  // namespace

TEST_CASE("variable table ranks and guards") {
  VarTable vt;
  CHECK_THROWS(vt.add("k", false, 2));
  CHECK_THROWS(vt.add("t", false, 2));
  CHECK_THROWS(vt.add("lam", false, 2));
  CHECK_THROWS(vt.add("mu", false, 2));
  CHECK_THROWS(vt.add("2bad", false, 2));
  CHECK_THROWS(vt.add("w", false, 0));
  int u = vt.add("u", false, 2);
  int phi = vt.add("phi", true, 1);
  CHECK_THROWS(vt.add("u", false, 2));
  CHECK_THROWS(vt.rank_of_id(u));  // not frozen yet
  vt.freeze();
  // phi (weight 1/2) ranks before u (weight 1)
  CHECK(vt.rank_of_id(phi) == 0);
  CHECK(vt.rank_of_id(u) == 1);
  CHECK(vt.id_of("phi") == phi);
  CHECK(vt.id_of("nope") == -1);
  CHECK_THROWS(vt.add("late", false, 2));
}

TEST_CASE("Koszul normalization") {
  VarTable vt = table_mixed();
  int phi = vt.id_of("phi"), psi = vt.id_of("psi"), u = vt.id_of("u");
  DiffPoly P = DiffPoly::var(&vt, phi), Q = DiffPoly::var(&vt, psi);
  DiffPoly U = DiffPoly::var(&vt, u);

  CHECK(P * Q == -(Q * P));
  CHECK((P * P).is_zero());
  CHECK((P * Q * P * Q).is_zero());
  CHECK(P * U == U * P);
  // phi' is an independent odd factor: phi*phi' is nonzero and anticommutes
  DiffPoly P1 = DiffPoly::var(&vt, phi, 1);
  CHECK_FALSE((P * P1).is_zero());
  CHECK(P * P1 == -(P1 * P));

  std::mt19937 rng(2024);
  for (int i = 0; i < 30; ++i) {
    DiffPoly a = random_poly(vt, rng, 3, 2);
    DiffPoly b = random_poly(vt, rng, 3, 2);
    DiffPoly c = random_poly(vt, rng, 3, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("total derivative") {
  VarTable vt = table_u();
  int u = vt.id_of("u");
  DiffPoly f = DiffPoly::var(&vt, u) * DiffPoly::var(&vt, u, 2);
  CHECK(f.d() == parse_diffpoly(&vt, "u[1]*u[2] + u*u[3]"));
  CHECK(f.d().weight2() == f.weight2() + 2);

  VarTable mv = table_mixed();
  std::mt19937 rng(515);
  for (int i = 0; i < 40; ++i) {
    DiffPoly a = random_poly(mv, rng, 3, 2);
    DiffPoly b = random_poly(mv, rng, 3, 2);
    CHECK((a * b).d() == a.d() * b + a * b.d());
  }
}

TEST_CASE("graded partial derivatives") {
  VarTable vt = table_mixed();
  int phi = vt.id_of("phi"), psi = vt.id_of("psi"), u = vt.id_of("u");
  DiffPoly P = DiffPoly::var(&vt, phi), Q = DiffPoly::var(&vt, psi);

  DiffPoly f = P * Q;
  CHECK(f.partial(psi, 0, Side::left) == -P);
  CHECK(f.partial(psi, 0, Side::right) == P);
  CHECK(f.partial(phi, 0, Side::left) == Q);
  CHECK(f.partial(phi, 0, Side::right) == -Q);

  DiffPoly g = DiffPoly::var(&vt, u) * DiffPoly::var(&vt, u);
  CHECK(g.partial(u, 0, Side::left) == g.partial(u, 0, Side::right));
  CHECK(g.partial(u, 0, Side::left) == DiffPoly::var(&vt, u).scaled(RatFunc(2)));

  // right partial vs left partial: (-1)^{x(f+x)} on parity-homogeneous f
  std::mt19937 rng(99);
  for (int i = 0; i < 40; ++i) {
    DiffPoly a = random_poly(vt, rng, 4, 2);
    auto [ev, od] = a.parity_split();
    CHECK(ev + od == a);
    for (int id : {phi, psi, u})
      for (int n : {0, 1, 2}) {
        int x = vt.by_id(id).odd ? 1 : 0;
        for (const DiffPoly* h : {&ev, &od}) {
          int fp = h->parity();
          if (fp < 0) continue;
          int sgn = (x * (fp + x)) & 1;
          DiffPoly lhs = h->partial(id, n, Side::right);
          DiffPoly rhs = h->partial(id, n, Side::left);
          CHECK(lhs == (sgn ? -rhs : rhs));
        }
      }
  }
}

TEST_CASE("variational derivative") {
  VarTable vt = table_u();
  int u = vt.id_of("u");
  DiffPoly f = DiffPoly::var(&vt, u) * DiffPoly::var(&vt, u, 2);
  CHECK(f.variational(u, Side::left) ==
        DiffPoly::var(&vt, u, 2).scaled(RatFunc(2)));

  // the variational derivative kills total derivatives
  VarTable mv = table_mixed();
  std::mt19937 rng(321);
  for (int i = 0; i < 25; ++i) {
    DiffPoly b = random_poly(mv, rng, 3, 2);
    DiffPoly db = b.d();
    for (int id = 0; id < mv.size(); ++id) {
      CHECK(db.variational(id, Side::left).is_zero());
      CHECK(db.variational(id, Side::right).is_zero());
    }
  }
}

TEST_CASE("antiderivative witness") {
  VarTable vt = table_u();
  int u = vt.id_of("u");
  DiffPoly f = DiffPoly::var(&vt, u, 1) * DiffPoly::var(&vt, u, 2);
  auto w = antiderivative(f);
  REQUIRE(w.has_value());
  DiffPoly sq = DiffPoly::var(&vt, u, 1) * DiffPoly::var(&vt, u, 1);
  CHECK(*w == sq.scaled(RatFunc(mpq_class(1, 2))));
  CHECK(w->d() == f);

  CHECK_FALSE(is_total_derivative(DiffPoly::var(&vt, u) *
                                  DiffPoly::var(&vt, u, 2)));
  CHECK_FALSE(is_total_derivative(DiffPoly::var(&vt, u)));

  VarTable mv = table_mixed();
  std::mt19937 rng(777);
  for (int i = 0; i < 20; ++i) {
    DiffPoly b = random_poly(mv, rng, 3, 2);
    DiffPoly db = b.d();
    auto ww = antiderivative(db);
    REQUIRE(ww.has_value());
    CHECK(ww->d() == db);
  }
}

TEST_CASE("monomial enumeration") {
  VarTable vt = table_u();
  // one even weight-1 generator: counts are integer partitions
  CHECK(monomials_of_weight2(vt, 0, true).size() == 1);
  CHECK(monomials_of_weight2(vt, 2, false).size() == 1);
  CHECK(monomials_of_weight2(vt, 4, false).size() == 2);
  CHECK(monomials_of_weight2(vt, 6, false).size() == 3);
  CHECK(monomials_of_weight2(vt, 8, false).size() == 5);
  CHECK(monomials_of_weight2(vt, 10, false).size() == 7);
  CHECK(monomials_of_weight2(vt, 12, false).size() == 11);

  VarTable mv = table_mixed();
  for (int w2 = 1; w2 <= 7; ++w2) {
    auto ms = monomials_of_weight2(mv, w2, false);
    // sorted, unique, of the right weight
    for (size_t i = 0; i < ms.size(); ++i) {
      CHECK(ms[i].w2 == w2);
      if (i) CHECK(mono_less(ms[i - 1], ms[i]));
    }
    // every monomial builds a nonzero polynomial (no odd squares emitted)
    for (const Mono& m : ms) {
      DiffPoly p(&mv);
      p.add_term(m.fs, RatFunc(1));
      CHECK(p.terms().size() == 1);
      CHECK(p.terms().begin()->first == m);
    }
  }
  // weight 1/2 + 1/2: phi*psi only (odd squares die)
  auto ms2 = monomials_of_weight2(mv, 2, false);
  // u, phi*psi
  CHECK(ms2.size() == 2);
}

TEST_CASE("render and parse round trip") {
  VarTable vt = table_u();
  int u = vt.id_of("u");
  DiffPoly L = DiffPoly::var(&vt, u) * DiffPoly::var(&vt, u) +
               DiffPoly::var(&vt, u, 1).scaled(RatFunc::sym() * RatFunc(2));
  CHECK(L.render() == "u^2 + 2*k*u[1]");
  CHECK(parse_diffpoly(&vt, L.render()) == L);
  CHECK(parse_diffpoly(&vt, "u^2 + 2*k*u[1]") == L);

  DiffPoly z(&vt);
  CHECK(z.render() == "0");
  CHECK(parse_diffpoly(&vt, "0").is_zero());
  CHECK(parse_diffpoly(&vt, "u - u").is_zero());
  CHECK(parse_diffpoly(&vt, "-3/2*u").render() == "-3/2*u");
  CHECK(parse_diffpoly(&vt, "(k + 1)/(k - 2)*u[2]").render() ==
        "(k + 1)/(k - 2)*u[2]");
  CHECK(parse_diffpoly(&vt, "u*u*u") == parse_diffpoly(&vt, "u^3"));
  CHECK(parse_diffpoly(&vt, "u[0]") == DiffPoly::var(&vt, u));
  CHECK(parse_diffpoly(&vt, "(u + 1)^2") ==
        parse_diffpoly(&vt, "u^2 + 2*u + 1"));
  CHECK(parse_diffpoly(&vt, "4/2*u") == parse_diffpoly(&vt, "2*u"));

  CHECK_THROWS(parse_diffpoly(&vt, "v"));
  CHECK_THROWS(parse_diffpoly(&vt, "t*u"));
  CHECK_THROWS(parse_diffpoly(&vt, "u/u"));
  CHECK_THROWS(parse_diffpoly(&vt, "u/0"));
  CHECK_THROWS(parse_diffpoly(&vt, "u +"));
  CHECK_THROWS(parse_diffpoly(&vt, "u u"));
  CHECK_THROWS(parse_diffpoly(&vt, "u[x]"));

  VarTable mv = table_mixed();
  std::mt19937 rng(611);
  for (int i = 0; i < 1000; ++i) {
    DiffPoly p = random_poly(mv, rng, 1 + (int)(rng() % 5), 3);
    CHECK(parse_diffpoly(&mv, p.render()) == p);
  }
}

TEST_CASE("weight and parity bookkeeping") {
  VarTable mv = table_mixed();
  int u = mv.id_of("u"), phi = mv.id_of("phi");
  DiffPoly U = DiffPoly::var(&mv, u), P = DiffPoly::var(&mv, phi);
  CHECK(U.weight2() == 2);
  CHECK(P.weight2() == 1);
  CHECK((U * P).weight2() == 3);
  CHECK((U + P).weight2() == -1);
  CHECK(U.parity() == 0);
  CHECK(P.parity() == 1);
  CHECK((U + P).parity() == -1);
  CHECK((U * P).parity() == 1);
  auto ws = (U + P + U * U).weight_split();
  CHECK(ws.size() == 3);
  CHECK(ws.at(2) == U);
  CHECK(ws.at(1) == P);

  DiffPoly c = DiffPoly::constant(&mv, RatFunc(5));
  CHECK(c.weight2() == 0);
  CHECK(c.parity() == 0);
  CHECK(c.is_constant());
}

TEST_CASE("specialization at a numeric level") {
  VarTable vt = table_u();
  int u = vt.id_of("u");
  RatFunc k = RatFunc::sym();
  // (k^2-1)/(k-1) = k+1 after reduction, so no pole at k=1
  DiffPoly p = DiffPoly::var(&vt, u).scaled((k * k - RatFunc(1)) / (k - RatFunc(1)));
  CHECK(specialize(p, mpq_class(3)) == DiffPoly::var(&vt, u).scaled(RatFunc(4)));
  DiffPoly q = DiffPoly::var(&vt, u).scaled(RatFunc(1) / (k - RatFunc(2)));
  CHECK_THROWS(specialize(q, mpq_class(2)));
  CHECK(specialize(q, mpq_class(3)) == DiffPoly::var(&vt, u));
}
