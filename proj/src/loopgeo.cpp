#include "walg/loopgeo.hpp"

#include <algorithm>
#include <stdexcept>

#include "walg/lambda.hpp"

namespace walg {

namespace {

// Bernoulli numbers with B_1 = -1/2, from sum_{j<=m} C(m+1,j) B_j = 0;
// these are the Taylor coefficients of phi(w) = w/(e^w - 1)
const mpq_class& bernoulli(int m) {
  static std::vector<mpq_class> B{1};
  while ((int)B.size() <= m) {
    int n = (int)B.size();
    mpq_class acc = 0;
    for (int j = 0; j < n; ++j) acc += binom(n + 1, j) * B[j];
    B.push_back(-acc / mpq_class(n + 1));
  }
  return B[m];
}

// truncation ideal: drop terms of weighted degree above N
DiffPoly trunc(const LoopCtx& C, const DiffPoly& p) {
  DiffPoly r(&C.zt);
  for (const auto& [m, c] : p.terms()) {
    if (m.w2 > 2 * C.N) continue;
    r.add_term(m.fs, c);
  }
  return r;
}

void add_into(LoopElt& r, const std::pair<int, int>& key, DiffPoly v) {
  if (v.is_zero()) return;
  auto it = r.c.find(key);
  if (it == r.c.end()) {
    r.c.emplace(key, std::move(v));
    return;
  }
  it->second += v;
  if (it->second.is_zero()) r.c.erase(it);
}

LoopElt scale_elt(const LoopElt& a, const RatFunc& c) {
  LoopElt r;
  if (c.is_zero()) return r;
  for (const auto& [p, v] : a.c) r.c.emplace(p, v.scaled(c));
  return r;
}

LoopElt log_elt(const LoopCtx& C) {
  LoopElt Z;
  for (int i = 0; i < (int)C.pos.size(); ++i)
    Z.c.emplace(C.pos[i], DiffPoly::var(&C.zt, i));
  return Z;
}

// sum_m c_m ad_Z^m(v) with c_m = 1/m! (exponential adjoint) or B_m/m!
// (the BCH derivative phi(ad_Z)); ad_{-Z} when inverse. Every ad_Z raises
// the coefficient degree, so the series dies inside the truncation ideal.
LoopElt ad_series(const LoopCtx& C, const LoopElt& v, bool phi, bool inverse) {
  LoopElt Z = log_elt(C);
  LoopElt r;
  LoopElt cur = v;
  mpq_class mfact = 1;
  for (int m = 0; !cur.is_zero(); ++m) {
    if (m > 2 * C.N + 8)
      throw std::logic_error("adjoint series does not terminate");
    if (m > 0) mfact *= m;
    mpq_class c = (phi ? bernoulli(m) : mpq_class(1)) / mfact;
    if (inverse && (m & 1)) c = -c;
    if (c != 0)
      for (const auto& [p, w] : cur.c) add_into(r, p, w.scaled(RatFunc(c)));
    cur = lbracket(C, Z, cur);
  }
  return r;
}

// E extended kappa-linearly to an Elt in g_0
DiffPoly E_of(const LoopCtx& C, const Elt& w) {
  DiffPoly r(&C.zt);
  for (int b = 0; b < C.g.dim; ++b) {
    if (w[b] == 0) continue;
    r += E_coord(C, b).scaled(RatFunc(w[b]));
  }
  return r;
}

// all (basis, t-power) pairs of extended degree q
std::vector<std::pair<int, int>> deg_slice(const LoopCtx& C, int q) {
  std::vector<std::pair<int, int>> r;
  int step = C.d + 1;
  for (int a = 0; a < C.g.dim; ++a) {
    int j = C.gr.deg2_of[a] / 2;
    if ((q - j) % step != 0) continue;
    r.emplace_back(a, (q - j) / step);
  }
  return r;
}

using CLoop = std::map<std::pair<int, int>, mpq_class>;

// ad_s on a loop element with rational constant coefficients
CLoop ad_s_const(const LoopCtx& C, const CLoop& w) {
  CLoop r;
  for (const auto& [p, c] : w) {
    Elt bf = bracket(C.g, C.t.f, basis_elt(C.g, p.first));
    Elt by = bracket(C.g, C.y, basis_elt(C.g, p.first));
    for (int l = 0; l < C.g.dim; ++l) {
      if (bf[l] != 0) r[{l, p.second}] += c * bf[l];
      if (by[l] != 0) r[{l, p.second - 1}] += c * by[l];
    }
  }
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

std::string loop_name(const LoopCtx& C, int basis, int tpow) {
  return C.g.labels[basis] + " t^" + std::to_string(tpow);
}

}  // namespace

int ext_deg(const LoopCtx& C, int basis, int tpow) {
  return C.gr.deg2_of[basis] / 2 + (C.d + 1) * tpow;
}

LoopElt basis_loop(const LoopCtx& C, int basis, int tpow) {
  LoopElt r;
  r.c.emplace(std::make_pair(basis, tpow),
              DiffPoly::constant(&C.zt, RatFunc(1)));
  return r;
}

LoopElt s_elt(const LoopCtx& C) {
  LoopElt r;
  for (int i = 0; i < C.g.dim; ++i) {
    if (C.t.f[i] != 0)
      add_into(r, {i, 0}, DiffPoly::constant(&C.zt, RatFunc(C.t.f[i])));
    if (C.y[i] != 0)
      add_into(r, {i, -1}, DiffPoly::constant(&C.zt, RatFunc(C.y[i])));
  }
  return r;
}

LoopElt lbracket(const LoopCtx& C, const LoopElt& a, const LoopElt& b) {
  LoopElt r;
  for (const auto& [pa, ca] : a.c)
    for (const auto& [pb, cb] : b.c) {
      const auto& row = C.g.brk[pa.first][pb.first];
      if (row.empty()) continue;
      DiffPoly prod = trunc(C, ca * cb);
      if (prod.is_zero()) continue;
      int n = pa.second + pb.second;
      for (const auto& [l, v] : row) {
        if (ext_deg(C, l, n) > C.N) continue;
        add_into(r, {l, n}, prod.scaled(RatFunc(v)));
      }
    }
  return r;
}

LoopElt adjoint(const LoopCtx& C, const LoopElt& v, bool inverse) {
  return ad_series(C, v, false, inverse);
}

LoopElt split_pos(const LoopCtx& C, const LoopElt& v) {
  LoopElt r;
  for (const auto& [p, c] : v.c)
    if (ext_deg(C, p.first, p.second) > 0) r.c.emplace(p, c);
  return r;
}

LoopElt split_neg(const LoopCtx& C, const LoopElt& v) {
  LoopElt r;
  for (const auto& [p, c] : v.c)
    if (ext_deg(C, p.first, p.second) <= 0) r.c.emplace(p, c);
  return r;
}

DiffPoly E_coord(const LoopCtx& C, int b) {
  if (b < 0 || b >= C.g.dim || C.gr.deg2_of[b] != 0)
    throw std::invalid_argument("E needs a degree-0 index");
  return C.ecoord[b];
}

std::vector<DiffPoly> left_table(const LoopCtx& C, const LoopElt& u) {
  for (const auto& [p, c] : u.c)
    if (ext_deg(C, p.first, p.second) <= 0)
      throw std::invalid_argument("non-truncatable input degree");
  LoopElt w = ad_series(C, u, true, false);
  std::vector<DiffPoly> tab((size_t)C.zt.size(), DiffPoly(&C.zt));
  for (const auto& [p, c] : w.c) {
    auto it = C.zid.find(p);
    if (it != C.zid.end()) tab[it->second] = -c;
  }
  return tab;
}

std::vector<DiffPoly> right_table(const LoopCtx& C, const LoopElt& v) {
  for (const auto& [p, c] : v.c)
    if (ext_deg(C, p.first, p.second) < -1)
      throw std::invalid_argument("non-truncatable input degree");
  LoopElt w = ad_series(C, split_pos(C, adjoint(C, v, false)), true, false);
  std::vector<DiffPoly> tab((size_t)C.zt.size(), DiffPoly(&C.zt));
  for (const auto& [p, c] : w.c) {
    auto it = C.zid.find(p);
    if (it != C.zid.end()) tab[it->second] = c;
  }
  return tab;
}

DiffPoly apply_deriv(const LoopCtx& C, const std::vector<DiffPoly>& tab,
                     const DiffPoly& F) {
  DiffPoly r(&C.zt);
  for (int i = 0; i < (int)tab.size(); ++i) {
    if (tab[i].is_zero()) continue;
    DiffPoly dF = F.partial(i, 0, Side::left);
    if (dF.is_zero()) continue;
    r += trunc(C, tab[i] * dF);
  }
  return r;
}

DiffPoly left_action(const LoopCtx& C, const LoopElt& u, const DiffPoly& F) {
  return apply_deriv(C, left_table(C, u), F);
}

DiffPoly right_action(const LoopCtx& C, const LoopElt& v, const DiffPoly& F) {
  return apply_deriv(C, right_table(C, v), F);
}

std::unique_ptr<LoopCtx> build_loop_ctx(const LieAlg& g, const Sl2Triple& t,
                                        const Elt& y, const RatFunc& level,
                                        int N) {
  auto C = std::make_unique<LoopCtx>();
  C->g = g;
  C->t = t;
  C->gr = grade(g, t);
  if (!C->gr.integral)
    throw std::invalid_argument(
        "extended grading needs an integral ad_x grading");
  if (level.is_zero()) throw std::invalid_argument("level must be nonzero");
  if (N < 1) throw std::invalid_argument("truncation order must be positive");
  C->y = y;
  C->level = level;
  C->N = N;
  C->d = C->gr.depth2 / 2;
  for (int i = 0; i < g.dim; ++i)
    if (y[i] != 0 && C->gr.deg2_of[i] != C->gr.depth2)
      throw std::invalid_argument("y must lie in the top degree piece");

  // one coordinate per loop basis element of degree 1..N; the t-power is
  // determined by (degree, basis index), so (degree, basis) ordering is total
  for (int q = 1; q <= N; ++q)
    for (const auto& [a, n] : deg_slice(*C, q)) {
      if (n < 0) continue;
      int id = C->zt.add("z_" + g.labels[a] + "_" + std::to_string(n), false,
                         2 * q);
      C->pos.emplace_back(a, n);
      C->zid[{a, n}] = id;
    }
  C->zt.freeze();

  C->adk_s = adjoint(*C, s_elt(*C), false);
  C->ecoord.assign((size_t)g.dim, DiffPoly(&C->zt));
  for (int b : C->gr.pieces.at(0)) {
    DiffPoly e(&C->zt);
    for (const auto& [p, coeff] : C->adk_s.c) {
      if (p.second != 0) continue;
      const mpq_class& kp = g.form[b][p.first];
      if (kp != 0) e += coeff.scaled(level * RatFunc(kp));
    }
    C->ecoord[b] = e;
  }
  C->stab = right_table(*C, s_elt(*C));
  return C;
}

std::vector<LoopElt> centralizer_basis(const LoopCtx& C, int q) {
  if (q <= 0) throw std::invalid_argument("positive degree required");
  auto dom = deg_slice(C, q), img = deg_slice(C, q - 1);
  std::map<std::pair<int, int>, int> iix;
  for (int i = 0; i < (int)img.size(); ++i) iix[img[i]] = i;
  Mat<mpq_class> M(std::max(1, (int)img.size()), (int)dom.size());
  for (int c = 0; c < (int)dom.size(); ++c) {
    CLoop w{{dom[c], 1}};
    for (const auto& [p, v] : ad_s_const(C, w)) M.at(iix.at(p), c) = v;
  }
  std::vector<LoopElt> out;
  for (const auto& x : nullspace(M)) {
    LoopElt v;
    for (int i = 0; i < (int)dom.size(); ++i)
      if (x[i] != 0)
        v.c.emplace(dom[i], DiffPoly::constant(&C.zt, RatFunc(x[i])));
    out.push_back(std::move(v));
  }
  return out;
}

VerifyReport verify_lemma_3_1(const LoopCtx& C, const LoopElt& u,
                              const LoopElt& v) {
  VerifyReport rep;
  rep.identity = "lemma_3_1";
  rep.N = C.N;
  int du = 1;
  for (const auto& [p, c] : u.c)
    du = std::max(du, ext_deg(C, p.first, p.second));
  rep.window = C.N - du - 1;
  if (rep.window < 1) throw std::invalid_argument("margin exhausted");
  auto ut = left_table(C, u);
  auto vtab = right_table(C, v);
  auto rt = left_table(
      C, split_pos(C, lbracket(C, u, split_neg(C, adjoint(C, v, false)))));
  for (int i = 0; i < (int)C.pos.size(); ++i) {
    if (ext_deg(C, C.pos[i].first, C.pos[i].second) > rep.window) continue;
    DiffPoly lhs = apply_deriv(C, ut, vtab[i]) - apply_deriv(C, vtab, ut[i]);
    ++rep.checked;
    if (lhs == rt[i]) continue;
    rep.ok = false;
    rep.counterexample = C.zt.by_id(i).name;
    break;
  }
  return rep;
}

VerifyReport verify_lemma_3_1_suite(const LoopCtx& C) {
  VerifyReport rep;
  rep.identity = "lemma_3_1";
  rep.N = C.N;
  std::vector<std::pair<LoopElt, std::string>> vs;
  vs.emplace_back(s_elt(C), "s");
  for (int a = 0; a < C.g.dim; ++a)
    for (int n = -1; n <= 1; ++n) {
      int q = ext_deg(C, a, n);
      if (q < -1 || q > C.N) continue;
      vs.emplace_back(basis_loop(C, a, n), loop_name(C, a, n));
    }
  for (int i = 0; i < (int)C.pos.size(); ++i) {
    auto [a, n] = C.pos[i];
    if (ext_deg(C, a, n) + 2 > C.N) continue;
    for (const auto& [v, vname] : vs) {
      VerifyReport one = verify_lemma_3_1(C, basis_loop(C, a, n), v);
      rep.checked += one.checked;
      rep.window = std::max(rep.window, one.window);
      if (!one.ok && rep.ok) {
        rep.ok = false;
        rep.counterexample = "u = " + loop_name(C, a, n) + ", v = " + vname +
                             ", at " + one.counterexample;
      }
    }
  }
  return rep;
}

Main2Report verify_main2(const LoopCtx& C) {
  if (C.N < 3)
    throw std::invalid_argument("truncation order must be at least 3");
  if (!check_condition_F(C.g, C.t, C.gr, C.y).pass())
    throw std::invalid_argument("condition (F) not satisfied");
  Main2Report R;
  const std::vector<int>& g0 = C.gr.pieces.at(0);
  RatFunc mk = RatFunc(-1) / C.level;

  R.pairing = {"main2_pairing", C.N, C.N, 0, true, ""};
  for (int al : C.gr.Pi_1) {
    auto ut = left_table(C, scale_elt(basis_loop(C, al, 0), mk));
    for (int bt : g0) {
      DiffPoly lhs = apply_deriv(C, ut, C.ecoord[bt]);
      mpq_class rhs = pair_form(
          C.g, C.t.f, bracket(C.g, basis_elt(C.g, bt), basis_elt(C.g, al)));
      ++R.pairing.checked;
      if (lhs == DiffPoly::constant(&C.zt, RatFunc(rhs))) continue;
      R.pairing.ok = false;
      R.pairing.counterexample =
          "alpha = " + C.g.labels[al] + ", beta = " + C.g.labels[bt];
      break;
    }
    if (!R.pairing.ok) break;
  }

  R.commutator = {"main2_commutator", C.N, C.N - 1, 0, true, ""};
  for (int al : C.gr.Pi_1) {
    auto ut = left_table(C, scale_elt(basis_loop(C, al, 0), mk));
    std::vector<DiffPoly> rtab((size_t)C.zt.size(), DiffPoly(&C.zt));
    for (int gm : family_members(C.g, C.gr, al)) {
      auto gt = left_table(C, scale_elt(basis_loop(C, gm, 0), mk));
      for (int rho : g0) {
        mpq_class c =
            bracket(C.g, basis_elt(C.g, al), basis_elt(C.g, rho))[gm];
        if (c == 0) continue;
        DiffPoly w = E_of(C, C.g.dual[rho]).scaled(RatFunc(c) / C.level);
        for (int i = 0; i < (int)rtab.size(); ++i)
          if (!gt[i].is_zero()) rtab[i] += trunc(C, w * gt[i]);
      }
    }
    for (int i = 0; i < (int)C.pos.size(); ++i) {
      if (ext_deg(C, C.pos[i].first, C.pos[i].second) > C.N - 1) continue;
      DiffPoly lhs =
          apply_deriv(C, ut, C.stab[i]) - apply_deriv(C, C.stab, ut[i]);
      ++R.commutator.checked;
      if (lhs == rtab[i]) continue;
      R.commutator.ok = false;
      R.commutator.counterexample =
          "alpha = " + C.g.labels[al] + ", at " + C.zt.by_id(i).name;
      break;
    }
    if (!R.commutator.ok) break;
  }

  R.cotangent = {"main2_cotangent", C.N, C.N, 0, true, ""};
  for (int q = 1; q <= C.N; ++q) {
    auto dom = deg_slice(C, -q), img = deg_slice(C, -q - 1);
    std::map<std::pair<int, int>, int> dix, iix;
    for (int i = 0; i < (int)dom.size(); ++i) dix[dom[i]] = i;
    for (int i = 0; i < (int)img.size(); ++i) iix[img[i]] = i;
    Mat<mpq_class> M1((int)g0.size(), std::max(1, (int)dom.size()));
    for (int r = 0; r < (int)g0.size(); ++r) {
      CLoop w{{{g0[r], 0}, 1}};
      for (int step = 0; step < q; ++step) w = ad_s_const(C, w);
      for (const auto& [p, v] : w) M1.at(r, dix.at(p)) = v;
    }
    Mat<mpq_class> M2((int)dom.size(), std::max(1, (int)img.size()));
    for (int r = 0; r < (int)dom.size(); ++r) {
      CLoop w{{dom[r], 1}};
      for (const auto& [p, v] : ad_s_const(C, w)) M2.at(r, iix.at(p)) = v;
    }
    // rank of the span {ad_s^q e_al} must fill a complement of the
    // centralizer slice, whose codimension is the rank of ad_s there
    int have = rank(M1), want = rank(M2);
    ++R.cotangent.checked;
    if (have == want) continue;
    R.cotangent.ok = false;
    R.cotangent.counterexample = "degree " + std::to_string(q) + ": rank " +
                                 std::to_string(have) + " expected " +
                                 std::to_string(want);
    break;
  }
  return R;
}

VerifyReport verify_lemma_4_2(const LoopCtx& C) {
  if (C.N < 3)
    throw std::invalid_argument("truncation order must be at least 3");
  VerifyReport rep;
  rep.identity = "lemma_4_2";
  rep.N = C.N;
  rep.window = C.N - 2;
  const std::vector<int>& g0 = C.gr.pieces.at(0);
  int nz = (int)C.pos.size();
  std::vector<std::vector<DiffPoly>> lt((size_t)nz);
  std::vector<char> in_win((size_t)nz, 0);
  for (int i = 0; i < nz; ++i) {
    lt[i] = left_table(C, basis_loop(C, C.pos[i].first, C.pos[i].second));
    in_win[i] = ext_deg(C, C.pos[i].first, C.pos[i].second) <= C.N - 1;
  }
  std::vector<DiffPoly> edual((size_t)C.g.dim, DiffPoly(&C.zt));
  for (int gm : g0) edual[gm] = E_of(C, C.g.dual[gm]);

  for (int bi = 0; bi < nz; ++bi) {
    auto [b, bn] = C.pos[bi];
    if (ext_deg(C, b, bn) > C.N - 2) continue;
    // W = [s^R, e_bt^L] on the window, then the graded forward solve
    // W = sum_al A^al e_al^L; the correction e_al^L z_al + 1 has positive
    // degree, so the iteration is a terminating Neumann series
    std::vector<DiffPoly> W((size_t)nz, DiffPoly(&C.zt));
    for (int i = 0; i < nz; ++i) {
      if (!in_win[i]) continue;
      W[i] = apply_deriv(C, C.stab, lt[bi][i]) -
             apply_deriv(C, lt[bi], C.stab[i]);
    }
    std::vector<DiffPoly> A((size_t)nz, DiffPoly(&C.zt));
    for (int pass = 0; pass <= C.N + 1; ++pass) {
      std::vector<DiffPoly> nA((size_t)nz, DiffPoly(&C.zt));
      for (int al = 0; al < nz; ++al) {
        if (!in_win[al]) continue;
        DiffPoly acc = -W[al];
        for (int rho = 0; rho < nz; ++rho) {
          if (A[rho].is_zero()) continue;
          DiffPoly corr = lt[rho][al];
          if (rho == al) corr += DiffPoly::constant(&C.zt, RatFunc(1));
          if (!corr.is_zero()) acc += trunc(C, A[rho] * corr);
        }
        nA[al] = acc;
      }
      if (nA == A) break;
      A = std::move(nA);
    }
    for (int i = 0; i < nz; ++i) {
      if (!in_win[i]) continue;
      DiffPoly acc(&C.zt);
      for (int rho = 0; rho < nz; ++rho)
        if (!A[rho].is_zero() && !lt[rho][i].is_zero())
          acc += trunc(C, A[rho] * lt[rho][i]);
      if (!(acc == W[i]))
        throw std::logic_error("triangular solve failed to converge");
    }

    for (int ai = 0; ai < nz; ++ai) {
      if (!in_win[ai]) continue;
      auto [a, an] = C.pos[ai];
      DiffPoly rhs(&C.zt);
      if (an == bn)
        for (int gm : g0) {
          mpq_class c =
              bracket(C.g, basis_elt(C.g, b), basis_elt(C.g, gm))[a];
          if (c != 0) rhs += edual[gm].scaled(RatFunc(c) / C.level);
        }
      mpq_class cs = 0;
      if (an == bn) cs += bracket(C.g, basis_elt(C.g, b), C.t.f)[a];
      if (an == bn - 1) cs += bracket(C.g, basis_elt(C.g, b), C.y)[a];
      if (cs != 0) rhs += DiffPoly::constant(&C.zt, RatFunc(cs));
      ++rep.checked;
      if (-A[ai] == rhs) continue;
      rep.ok = false;
      rep.counterexample = "alpha = " + loop_name(C, a, an) +
                           ", beta = " + loop_name(C, b, bn);
      return rep;
    }
  }
  return rep;
}

}  // namespace walg
