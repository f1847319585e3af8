#include <random>

#include "doctest.h"
#include "walg/screening.hpp"

using namespace walg;

namespace {

Sl2Triple minimal_triple_sl3(const LieAlg& g) {
  Elt e = basis_elt(g, g.theta_index);
  Elt f = basis_elt(g, g.theta_index + 3);
  Elt h = bracket(g, e, f);
  return {e, h, f};
}

DiffPoly random_hom(const VarTable& vt, std::mt19937& rng, int w2) {
  DiffPoly p(&vt);
  for (const Mono& m : monomials_of_weight2(vt, w2, false)) {
    long c = (long)(rng() % 5) - 2;
    if (c == 0) continue;
    DiffPoly t(&vt);
    t.add_term(m.fs, RatFunc(c));
    p += t;
  }
  return p;
}

// the commutator identity Q(dp) = d(Qp) + sum_d C_{m,d} Q_d(p)
bool recursion_identity(const WSetup& S, int fi, int member,
                        const DiffPoly& p) {
  const ScreeningFamily& F = S.fams[fi];
  DiffPoly rhs = screen_apply(S, fi, member, p).d();
  for (int d : F.members) {
    auto c = F.comm.find({member, d});
    if (c == F.comm.end()) continue;
    rhs += c->second * screen_apply(S, fi, d, p);
  }
  return screen_apply(S, fi, member, p.d()) == rhs;
}

// weight2 -> free differential-algebra dimension for given generator weights
std::map<int, int> free_dims(const std::vector<int>& gen_w2, int bound) {
  VarTable vt;
  for (size_t i = 0; i < gen_w2.size(); ++i)
    vt.add("g" + std::to_string(i), false, gen_w2[i]);
  vt.freeze();
  std::map<int, int> d;
  for (int w2 = 0; w2 <= bound; ++w2)
    d[w2] = (int)monomials_of_weight2(vt, w2, w2 == 0).size();
  return d;
}

int dim_at(const KernelBasis& kb, int w2) {
  auto it = kb.by_weight2.find(w2);
  return it == kb.by_weight2.end() ? 0 : (int)it->second.size();
}

// d(kernel at w2) lies in the span of the kernel at w2 + 2
bool d_closed(const WSetup& S, const KernelBasis& kb, int w2) {
  auto lo = kb.by_weight2.find(w2);
  if (lo == kb.by_weight2.end()) return true;
  std::vector<Mono> mons = monomials_of_weight2(S.amb->vt, w2 + 2, false);
  std::map<Mono, int, MonoLess> index;
  for (const Mono& m : mons) index.emplace(m, (int)index.size());
  auto hi = kb.by_weight2.find(w2 + 2);
  int nh = hi == kb.by_weight2.end() ? 0 : (int)hi->second.size();
  for (const DiffPoly& b : lo->second) {
    Mat<RatFunc> M(nh + 1, (int)mons.size());
    for (int i = 0; i < nh; ++i)
      for (const auto& [m, c] : hi->second[i].terms())
        M.at(i, index.at(m)) = c;
    Mat<RatFunc> Mx = M;
    DiffPoly db = b.d();
    for (const auto& [m, c] : db.terms()) Mx.at(nh, index.at(m)) = c;
    if (rank(Mx) != rank(M)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sl2 principal screening data") {
  LieAlg g = build_simple("A1");
  Sl2Triple t = principal_triple(g);
  WSetup S = build_w_setup(g, t, RatFunc::sym());
  REQUIRE(S.fams.size() == 1);
  const ScreeningFamily& F = S.fams[0];
  CHECK(F.deg2 == 2);
  CHECK(F.shift2 == -2);
  CHECK(F.members == std::vector<int>{F.base});
  REQUIRE(S.amb->vt.size() == 1);
  int u = S.amb->vt.id_of("h1");
  REQUIRE(u == 0);
  auto U = [&](int n) { return DiffPoly::var(&S.amb->vt, u, n); };

  CHECK(screen_apply(S, 0, U(0)) == DiffPoly::constant(&S.amb->vt, RatFunc(2)));
  // C = -u/k drives the derivative action
  RatFunc mk = -(RatFunc(1) / RatFunc::sym());
  CHECK(F.comm.at({F.base, F.base}) == U(0).scaled(mk));
  CHECK(screen_apply(S, 0, U(1)) == U(0).scaled(RatFunc(2) * mk));
  CHECK(screen_apply(S, 0, U(0) * U(0)) == U(0).scaled(RatFunc(4)));
  CHECK(screen_apply(S, 0, DiffPoly::constant(&S.amb->vt, RatFunc(1))).is_zero());

  // zero level rejected; decomposable root rejected; foreign table rejected
  CHECK_THROWS(build_w_setup(g, t, RatFunc(0)));
  CHECK_THROWS(screen_apply(S, 0, 99, U(0)));
  VarTable other;
  other.add("u", false, 2);
  other.freeze();
  CHECK_THROWS(screen_apply(S, 0, DiffPoly::var(&other, 0)));
}

TEST_CASE("screening recursion identity and weight shift") {
  std::mt19937 rng(2024);
  LieAlg g2 = build_simple("A1");
  WSetup S2 = build_w_setup(g2, principal_triple(g2), RatFunc::sym());
  LieAlg g3 = build_simple("A2");
  WSetup S3 = build_w_setup(g3, principal_triple(g3), RatFunc::sym());
  for (WSetup* Sp : {&S2, &S3}) {
    WSetup& S = *Sp;
    // on generators
    for (size_t f = 0; f < S.fams.size(); ++f)
      for (int m : S.fams[f].members)
        for (int id = 0; id < S.amb->vt.size(); ++id)
          CHECK(recursion_identity(S, (int)f, m, DiffPoly::var(&S.amb->vt, id)));
    // on seeded random elements of weight <= 4
    for (int i = 0; i < 50; ++i) {
      DiffPoly p = random_hom(S.amb->vt, rng, 2 + (int)(rng() % 7));
      if (p.is_zero()) continue;
      for (size_t f = 0; f < S.fams.size(); ++f) {
        CHECK(recursion_identity(S, (int)f, S.fams[f].base, p));
        DiffPoly q = screen_apply(S, (int)f, p);
        if (!q.is_zero())
          CHECK(q.weight2() == p.weight2() + S.fams[f].shift2);
      }
    }
  }
}

TEST_CASE("sl2 principal joint kernel") {
  LieAlg g = build_simple("A1");
  WSetup S = build_w_setup(g, principal_triple(g), RatFunc::sym());
  KernelBasis kb = joint_kernel(S, 8);
  // dimensions match the free differential algebra on one weight-2 generator
  std::map<int, int> expect = free_dims({4}, 8);
  for (int w2 = 0; w2 <= 8; ++w2) CHECK(dim_at(kb, w2) == expect.at(w2));

  int u = S.amb->vt.id_of("h1");
  auto U = [&](int n) { return DiffPoly::var(&S.amb->vt, u, n); };
  DiffPoly L = U(0) * U(0) + U(1).scaled(RatFunc(2) * RatFunc::sym());
  REQUIRE(kb.by_weight2.count(4));
  CHECK(kb.by_weight2.at(4) == std::vector<DiffPoly>{L});
  CHECK(kb.by_weight2.at(4)[0].render() == "h1^2 + 2*k*h1[1]");

  for (int w2 = 0; w2 <= 6; ++w2) CHECK(d_closed(S, kb, w2));
  CHECK(check_subalgebra(S, kb));

  // k = 0 is the only excluded level in this pipeline
  REQUIRE(kb.bad_k.size() == 1);
  CHECK(kb.bad_k[0].degree() == 1);
  CHECK(kb.bad_k[0].coeff(0) == 0);
  CHECK(kb.bad_k[0].coeff(1) == 1);

  // generators: weight 2 and the weight-4 density; weight 3 is all d-images
  auto gens = kernel_generators(S, kb);
  CHECK(gens.count(4));
  CHECK(!gens.count(6));
  CHECK(gens.count(8));
  CHECK(gens.at(4).size() == 1);
  CHECK(gens.at(8).size() == 1);

  // deterministic output
  KernelBasis kb2 = joint_kernel(S, 8);
  for (const auto& [w2, basis] : kb.by_weight2) {
    REQUIRE(kb2.by_weight2.count(w2));
    for (size_t i = 0; i < basis.size(); ++i)
      CHECK(basis[i].render() == kb2.by_weight2.at(w2)[i].render());
  }
}

TEST_CASE("sl2 KdV hierarchy certificate") {
  LieAlg g = build_simple("A1");
  WSetup S = build_w_setup(g, principal_triple(g), RatFunc::sym());
  KernelBasis kb = joint_kernel(S, 8);
  Hierarchy H = hamiltonians(S, kb, {2, 4});
  REQUIRE(H.hams.size() == 2);
  CHECK(H.weight_of == std::vector<int>{2, 4});
  CHECK(H.all_commute);
  REQUIRE(H.pairs.size() == 1);
  CHECK(std::get<2>(H.pairs[0]));
  CHECK_FALSE(H.hams[0].is_zero());
  CHECK_FALSE(H.hams[1].is_zero());
  CHECK_THROWS(hamiltonians(S, kb, {5}));
}

TEST_CASE("sl3 principal kernel and hierarchy") {
  LieAlg g = build_simple("A2");
  Sl2Triple t = principal_triple(g);
  WSetup S = build_w_setup(g, t, RatFunc::sym());
  REQUIRE(S.fams.size() == 2);
  for (const ScreeningFamily& F : S.fams) {
    CHECK(F.deg2 == 2);
    CHECK(F.members.size() == 1);
  }
  // theta is decomposable
  CHECK_THROWS(build_family(g, t, S.gr, g.theta_index, RatFunc::sym(), *S.amb));

  KernelBasis kb = joint_kernel(S, 6);
  std::map<int, int> expect = free_dims({4, 6}, 6);
  for (int w2 = 0; w2 <= 6; ++w2) CHECK(dim_at(kb, w2) == expect.at(w2));
  for (int w2 = 0; w2 <= 4; ++w2) CHECK(d_closed(S, kb, w2));
  CHECK(check_subalgebra(S, kb));

  // free generators exactly at weights 2 and 3
  auto gens = kernel_generators(S, kb);
  CHECK(gens.size() == 2);
  CHECK(gens.count(4));
  CHECK(gens.count(6));
  CHECK(gens.at(4).size() == 1);
  CHECK(gens.at(6).size() == 1);

  Hierarchy H = hamiltonians(S, kb, {2, 3});
  REQUIRE(H.hams.size() == 2);
  CHECK(H.all_commute);
}

TEST_CASE("sl3 minimal nilpotent with half-integral piece") {
  LieAlg g = build_simple("A2");
  Sl2Triple t = minimal_triple_sl3(g);
  WSetup S = build_w_setup(g, t, RatFunc::sym());
  REQUIRE(S.fams.size() == 2);
  for (const ScreeningFamily& F : S.fams) {
    CHECK(F.deg2 == 1);
    CHECK(F.shift2 == -1);
    CHECK(F.members.size() == 1);
  }
  CHECK(S.amb->vt.size() == 4);  // two Cartan fields, two Phi fields

  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    DiffPoly p = random_hom(S.amb->vt, rng, 1 + (int)(rng() % 4));
    if (p.is_zero()) continue;
    for (size_t f = 0; f < S.fams.size(); ++f)
      CHECK(recursion_identity(S, (int)f, S.fams[f].base, p));
  }

  // kernel dimensions match generators of weights 1, 3/2, 3/2, 2
  KernelBasis kb = joint_kernel(S, 4);
  std::map<int, int> expect = free_dims({2, 3, 3, 4}, 4);
  for (int w2 = 0; w2 <= 4; ++w2) CHECK(dim_at(kb, w2) == expect.at(w2));
  for (int w2 = 0; w2 <= 2; ++w2) CHECK(d_closed(S, kb, w2));
  CHECK(check_subalgebra(S, kb));
}

TEST_CASE("sp4 rectangular nilpotent groups three roots into one family") {
  LieAlg g = build_simple("C2");
  Sl2Triple t = partition_triple(g, {2, 2});
  WSetup S = build_w_setup(g, t, RatFunc::sym());
  CHECK(S.gr.integral);
  CHECK(S.gr.delta0_pos.size() == 1);
  REQUIRE(S.fams.size() == 3);
  for (const ScreeningFamily& F : S.fams) {
    CHECK(F.deg2 == 2);
    CHECK(F.members.size() == 3);  // one lattice class
    // cross-member commutator terms appear
    bool cross = false;
    for (const auto& [md, C] : F.comm)
      if (md.first != md.second && !C.is_zero()) cross = true;
    CHECK(cross);
  }

  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    DiffPoly p = random_hom(S.amb->vt, rng, 2 + (int)(rng() % 3));
    if (p.is_zero()) continue;
    for (size_t f = 0; f < S.fams.size(); ++f)
      for (int m : S.fams[f].members)
        CHECK(recursion_identity(S, (int)f, m, p));
  }

  // kernel dimensions match generators of weights 1, 2, 2, 2
  KernelBasis kb = joint_kernel(S, 4);
  std::map<int, int> expect = free_dims({2, 4, 4, 4}, 4);
  for (int w2 = 0; w2 <= 4; ++w2) CHECK(dim_at(kb, w2) == expect.at(w2));
  CHECK(check_subalgebra(S, kb));
}
