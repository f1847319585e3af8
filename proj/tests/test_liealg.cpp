#include <random>

#include "doctest.h"
#include "walg/liealg.hpp"

using namespace walg;

static int label_index(const LieAlg& g, const std::string& name) {
  for (int i = 0; i < g.dim; ++i)
    if (g.labels[i] == name) return i;
  REQUIRE(false);
  return -1;
}

TEST_CASE("A1 defining relations and form") {
  LieAlg g = build_simple("A1");
  CHECK(g.dim == 3);
  int h = label_index(g, "h1"), e = label_index(g, "e1"), f = label_index(g, "f1");
  Elt ef = bracket(g, basis_elt(g, e), basis_elt(g, f));
  CHECK(ef == basis_elt(g, h));
  CHECK(pair_form(g, basis_elt(g, e), basis_elt(g, f)) == 1);
  CHECK(pair_form(g, basis_elt(g, h), basis_elt(g, h)) == 2);
}

TEST_CASE("A2 dimensions and exhaustive Jacobi") {
  LieAlg g = build_simple("A2");
  CHECK(g.dim == 8);
  int roots = 0;
  for (auto& r : g.root_of)
    if (!r.empty()) ++roots;
  CHECK(roots == 6);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      for (int l = 0; l < 8; ++l) CHECK(jacobi_ok(g, i, j, l));
}

TEST_CASE("C2 dimension, highest root pairing, normalization") {
  LieAlg g = build_simple("C2");
  CHECK(g.dim == 10);
  REQUIRE(g.theta_index >= 0);
  // kappa(e_theta, f_theta) = 1
  std::vector<int> neg = g.root_of[g.theta_index];
  for (int& c : neg) c = -c;
  int ftheta = -1;
  for (int i = 0; i < g.dim; ++i)
    if (g.root_of[i] == neg) ftheta = i;
  REQUIRE(ftheta >= 0);
  CHECK(pair_form(g, basis_elt(g, g.theta_index), basis_elt(g, ftheta)) == 1);

  // (theta,theta) = 2: solve Gram_cartan x = theta, then theta(x) = 2
  int n = g.cartan_dim;
  Mat<mpq_class> gram(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram.at(i, j) = g.form[i][j];
  std::vector<mpq_class> th(n);
  for (int j = 0; j < n; ++j) {
    Elt br = bracket(g, basis_elt(g, j), basis_elt(g, g.theta_index));
    th[j] = br[g.theta_index];  // theta(h_j)
  }
  auto x = solve(gram, th);
  REQUIRE(x.has_value());
  mpq_class len = 0;
  for (int j = 0; j < n; ++j) len += th[j] * (*x)[j];
  CHECK(len == 2);
}

TEST_CASE("random Jacobi, invariance and duality for all built-ins") {
  std::mt19937_64 rng(1000);
  for (auto type : {"A1", "A2", "A3", "C2", "C3", "gl2"}) {
    LieAlg g = build_reductive(type);
    for (int trial = 0; trial < 1000; ++trial) {
      int i = (int)(rng() % g.dim), j = (int)(rng() % g.dim), l = (int)(rng() % g.dim);
      CHECK(jacobi_ok(g, i, j, l));
    }
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        CHECK(g.form[i][j] == g.form[j][i]);
        for (int l = 0; l < g.dim; ++l) {
          // kappa([a,b],c) = kappa(a,[b,c])
          Elt ab = bracket(g, basis_elt(g, i), basis_elt(g, j));
          Elt bc = bracket(g, basis_elt(g, j), basis_elt(g, l));
          CHECK(pair_form(g, ab, basis_elt(g, l)) ==
                pair_form(g, basis_elt(g, i), bc));
        }
        CHECK(pair_form(g, g.dual[i], basis_elt(g, j)) == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("center of gl2 and sl2") {
  CHECK(center(build_reductive("gl2")).size() == 1);
  CHECK(center(build_simple("A1")).empty());
  auto z = center(build_reductive("gl2"));
  LieAlg g = build_reductive("gl2");
  CHECK(z[0][label_index(g, "z")] != 0);
}

TEST_CASE("principal triples and gradings") {
  {
    LieAlg g = build_simple("A1");
    Sl2Triple t = principal_triple(g);
    CHECK(bracket(g, t.e, t.f) == t.h);
    AdxGrading gr = grade(g, t);
    std::vector<int> degs = gr.deg2_of;
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>{-2, 0, 2});  // x-eigenvalues -1,0,1
    CHECK(gr.Pi.size() == 1);
    CHECK(gr.integral);
  }
  {
    LieAlg g = build_simple("A2");
    AdxGrading gr = grade(g, principal_triple(g));
    CHECK(gr.depth2 == 4);  // d = 2
    CHECK(gr.pieces.at(0).size() == 2);
    CHECK(gr.Pi.size() == 2);  // a1+a2 decomposes
    int total = 0;
    for (auto& [d, v] : gr.pieces) total += (int)v.size();
    CHECK(total == g.dim);
    // [g_i, g_j] in g_{i+j}, exhaustively
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        Elt br = bracket(g, basis_elt(g, i), basis_elt(g, j));
        for (int l = 0; l < g.dim; ++l)
          if (br[l] != 0) CHECK(gr.deg2_of[l] == gr.deg2_of[i] + gr.deg2_of[j]);
      }
  }
  {
    LieAlg g = build_simple("C2");
    AdxGrading gr = grade(g, principal_triple(g));
    CHECK(gr.depth2 == 6);  // d = 3
  }
}

TEST_CASE("sp4 partition (2,2) grading") {
  LieAlg g = build_simple("C2");
  Sl2Triple t = partition_triple(g, {2, 2});
  CHECK(bracket(g, t.e, t.f) == t.h);
  AdxGrading gr = grade(g, t);
  CHECK(gr.integral);
  CHECK(gr.depth2 == 2);  // d = 1
  CHECK(gr.pieces.at(0).size() == 4);
  CHECK(gr.pieces.at(2).size() == 3);
  CHECK(gr.Pi.size() == 3);  // all of Delta_1 indecomposable
  for (int i : gr.Pi) CHECK(gr.deg2_of[i] == 2);
  CHECK(gr.delta0_pos.size() == 1);
  CHECK(g.labels[gr.delta0_pos[0]] == "e10");
}

TEST_CASE("condition F for sl2 principal") {
  LieAlg g = build_simple("A1");
  Sl2Triple t = principal_triple(g);
  AdxGrading gr = grade(g, t);
  Elt y = default_y(g, gr);
  FReport r = check_condition_F(g, t, gr, y);
  CHECK(r.f1);
  CHECK(r.f2);
  CHECK(r.f3_abelian);
  CHECK(r.f3_image);
  CHECK(r.pass());
  CHECK(r.kernel_dim == 1);
  // frozen: minimal polynomial x^3 - (4/t) x
  RatFunc tinv = RatFunc(Poly(mpq_class(1)), Poly::monomial(1, 1));
  UPoly<RatFunc> expect = UPoly<RatFunc>::monomial(RatFunc(1), 3) -
                          UPoly<RatFunc>::monomial(RatFunc(4) * tinv, 1);
  CHECK(r.min_poly == expect);

  // y = 0 must fail (F2): ad_f is nilpotent, minimal polynomial a power of x
  FReport r0 = check_condition_F(g, t, gr, zero_elt(g));
  CHECK(r0.f1);
  CHECK(!r0.f2);
  CHECK(!r0.pass());

  // rescaling y leaves all three booleans unchanged
  FReport r3 = check_condition_F(g, t, gr, scale(3, y));
  CHECK(r3.f1 == r.f1);
  CHECK(r3.f2 == r.f2);
  CHECK(r3.f3_abelian == r.f3_abelian);
  CHECK(r3.f3_image == r.f3_image);

  CHECK_THROWS(check_condition_F(g, t, gr, t.f));  // y outside g_d
}

TEST_CASE("condition F for sl3 principal") {
  LieAlg g = build_simple("A2");
  Sl2Triple t = principal_triple(g);
  AdxGrading gr = grade(g, t);
  FReport r = check_condition_F(g, t, gr, default_y(g, gr));
  CHECK(r.pass());
}

TEST_CASE("condition F for sp4 partition (2,2): choice of y decides") {
  LieAlg g = build_simple("C2");
  Sl2Triple t = partition_triple(g, {2, 2});
  AdxGrading gr = grade(g, t);

  Elt y_mid = zero_elt(g);
  y_mid[label_index(g, "e11")] = 1;
  FReport good = check_condition_F(g, t, gr, y_mid);
  CHECK(good.f1);
  CHECK(good.f2);
  CHECK(good.f3_abelian);
  CHECK(good.f3_image);
  CHECK(good.kernel_dim == 2);

  // y = e_theta: s = f + e_theta/t is not semisimple
  FReport bad1 = check_condition_F(g, t, gr, default_y(g, gr));
  CHECK(!bad1.f2);

  // y = e of the triple: s is semisimple but its kernel is a gl2 form
  FReport bad2 = check_condition_F(g, t, gr, t.e);
  CHECK(bad2.f2);
  CHECK(!bad2.f3_abelian);

  // independent spot check of (F2) decisions at a sample value t = 1/4:
  // specialize ad_s and test squarefreeness of its minimal polynomial over Q
  auto specialize = [&](const Elt& y, const mpq_class& t0) {
    int n = g.dim;
    Mat<mpq_class> M(n, n);
    for (int j = 0; j < n; ++j) {
      Elt bf = bracket(g, t.f, basis_elt(g, j));
      Elt by = bracket(g, y, basis_elt(g, j));
      for (int i = 0; i < n; ++i) M.at(i, j) = bf[i] + by[i] / t0;
    }
    return M;
  };
  auto minpoly_squarefree_q = [&](Mat<mpq_class> M) {
    int n = M.rows;
    std::vector<Mat<mpq_class>> pw;
    Mat<mpq_class> id(n, n);
    for (int i = 0; i < n; ++i) id.at(i, i) = 1;
    pw.push_back(id);
    for (int r = 1; r <= n; ++r) {
      Mat<mpq_class> nx(n, n);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          if (pw.back().at(i, l) == 0) continue;
          for (int j = 0; j < n; ++j) nx.at(i, j) += pw.back().at(i, l) * M.at(l, j);
        }
      pw.push_back(nx);
    }
    for (int m = 1; m <= n; ++m) {
      Mat<mpq_class> A(n * n, m);
      std::vector<mpq_class> b(n * n);
      for (int i = 0; i < n * n; ++i) {
        for (int r = 0; r < m; ++r) A.at(i, r) = pw[r].a[i];
        b[i] = pw[m].a[i];
      }
      auto sol = solve(A, b);
      if (sol) {
        Poly mu = Poly::monomial(1, m);
        for (int r = 0; r < m; ++r) mu -= Poly::monomial((*sol)[r], r);
        return gcd(mu, derivative(mu)).degree() == 0;
      }
    }
    REQUIRE(false);
    return false;
  };
  CHECK(minpoly_squarefree_q(specialize(y_mid, mpq_class(1, 4))));
  CHECK(!minpoly_squarefree_q(specialize(zero_elt(g), mpq_class(1, 4))));
}
