#include "walg/pva.hpp"

#include <stdexcept>

namespace walg {

// [u_a, u_b] expanded in the PVA variables of the chosen sub-basis
static DiffPoly bracket_poly(const Pva& P, const LieAlg& g, int a, int b) {
  DiffPoly r(&P.vt);
  for (const auto& [l, c] : g.brk[a][b]) {
    auto it = P.var_of_basis.find(l);
    if (it == P.var_of_basis.end())
      throw std::invalid_argument("basis indices do not span a subalgebra");
    r += DiffPoly::var(&P.vt, it->second).scaled(RatFunc(c));
  }
  return r;
}

std::unique_ptr<Pva> affine_pva(const LieAlg& g, const std::vector<int>& sub,
                                const RatFunc& level,
                                const Mat<mpq_class>* form) {
  auto P = std::make_unique<Pva>();
  P->tag = "affine(" + g.type + ")";
  for (int i : sub) P->var_of_basis[i] = P->vt.add(g.labels[i], false, 2);
  P->vt.freeze();

  auto kappa = [&](int a, int b) -> mpq_class {
    return form ? form->at(a, b) : g.form[a][b];
  };
  // symmetry and invariance of the form on the subalgebra
  for (int a : sub)
    for (int b : sub) {
      if (!(kappa(a, b) == kappa(b, a)))
        throw std::invalid_argument("form is not symmetric");
      for (int c : sub) {
        mpq_class lhs = 0, rhs = 0;
        for (const auto& [l, cf] : g.brk[a][b]) lhs += cf * kappa(l, c);
        for (const auto& [l, cf] : g.brk[b][c]) rhs += cf * kappa(a, l);
        if (!(lhs == rhs)) throw std::invalid_argument("form is not invariant");
      }
    }

  for (int a : sub)
    for (int b : sub) {
      LambdaPoly p(&P->vt);
      p.set(0, bracket_poly(*P, g, a, b));
      p.set(1, DiffPoly::constant(&P->vt, level * RatFunc(kappa(a, b))));
      P->H.set(P->var_of_basis[a], P->var_of_basis[b], p);
    }
  return P;
}

std::unique_ptr<Pva> affine_pva(const LieAlg& g, const RatFunc& level) {
  std::vector<int> all(g.dim);
  for (int i = 0; i < g.dim; ++i) all[i] = i;
  return affine_pva(g, all, level);
}

std::unique_ptr<Pva> bg_system(const LieAlg& g, const AdxGrading& gr,
                               const Elt& f) {
  auto P = std::make_unique<Pva>();
  P->tag = "bg(" + g.type + ")";
  auto it = gr.pieces.find(1);
  std::vector<int> half = it == gr.pieces.end() ? std::vector<int>() : it->second;
  for (int i : half)
    P->var_of_basis[i] = P->vt.add("Phi_" + g.labels[i], false, 1);
  P->vt.freeze();
  if (half.empty()) return P;

  Mat<mpq_class> pairing((int)half.size(), (int)half.size());
  for (size_t a = 0; a < half.size(); ++a)
    for (size_t b = 0; b < half.size(); ++b)
      pairing.at((int)a, (int)b) = pair_form(
          g, f, bracket(g, basis_elt(g, half[a]), basis_elt(g, half[b])));
  if (rank(pairing) != (int)half.size())
    throw std::invalid_argument("degenerate pairing on the weight-1/2 piece");

  for (size_t a = 0; a < half.size(); ++a)
    for (size_t b = 0; b < half.size(); ++b) {
      LambdaPoly p(&P->vt);
      p.set(0, DiffPoly::constant(&P->vt, RatFunc(pairing.at((int)a, (int)b))));
      P->H.set(P->var_of_basis[half[a]], P->var_of_basis[half[b]], p);
    }
  return P;
}

DiffPoly transplant(const DiffPoly& p, const VarTable* nvt) {
  DiffPoly r(nvt);
  const VarTable* ovt = p.table();
  for (const auto& [m, c] : p.terms()) {
    std::vector<Factor> fs;
    fs.reserve(m.fs.size());
    for (const Factor& f : m.fs) {
      int id = nvt->id_of(ovt->by_rank(f.vr).name);
      if (id < 0) throw std::invalid_argument("variable missing from target table");
      fs.push_back({nvt->rank_of_id(id), f.ord, f.exp});
    }
    r.add_term(std::move(fs), c);
  }
  return r;
}

static LambdaPoly transplant(const LambdaPoly& p, const VarTable* nvt) {
  LambdaPoly r(nvt);
  for (int s = 0; s <= p.degree(); ++s)
    if (!p.c[s].is_zero()) r.set(s, transplant(p.c[s], nvt));
  return r;
}

std::unique_ptr<Pva> tensor(const Pva& a, const Pva& b) {
  auto P = std::make_unique<Pva>();
  P->tag = a.tag + " (x) " + b.tag;
  for (const Pva* src : {&a, &b})
    for (int id = 0; id < src->vt.size(); ++id) {
      const VarInfo& v = src->vt.by_id(id);
      P->vt.add(v.name, v.odd, v.weight2);
    }
  P->vt.freeze();
  for (const Pva* src : {&a, &b}) {
    for (const auto& [bi, vid] : src->var_of_basis)
      P->var_of_basis[bi] = P->vt.id_of(src->vt.by_id(vid).name);
    for (const auto& [ij, h] : src->H.e) {
      int ni = P->vt.id_of(src->vt.by_id(ij.first).name);
      int nj = P->vt.id_of(src->vt.by_id(ij.second).name);
      P->H.set(ni, nj, transplant(h, &P->vt));
    }
  }
  return P;
}

// reduces a weight-homogeneous piece against the echelonized image of d
static DiffPoly reduce_mod_d(const DiffPoly& piece) {
  int w2 = piece.weight2();
  if (piece.is_zero() || w2 <= 2) return piece;
  const VarTable* vt = piece.table();
  std::vector<Mono> mons = monomials_of_weight2(*vt, w2, false);
  std::map<Mono, int, MonoLess> index;
  for (const Mono& m : mons) index.emplace(m, (int)index.size());
  std::vector<Mono> cands = monomials_of_weight2(*vt, w2 - 2, false);
  Mat<RatFunc> A((int)cands.size(), (int)mons.size());
  for (size_t i = 0; i < cands.size(); ++i) {
    DiffPoly b(vt);
    b.add_term(cands[i].fs, RatFunc(1));
    DiffPoly db = b.d();
    for (const auto& [m, c] : db.terms()) A.at((int)i, index.at(m)) = c;
  }
  std::vector<int> piv = rref(A);
  std::vector<RatFunc> v = coords_of(piece, index);
  for (size_t i = 0; i < piv.size(); ++i) {
    int p = piv[i];
    if (v[p].is_zero()) continue;
    RatFunc c = v[p];
    for (int j = p; j < A.cols; ++j) v[j] -= c * A.at((int)i, j);
  }
  DiffPoly out(vt);
  for (size_t j = 0; j < mons.size(); ++j) {
    if (v[j].is_zero()) continue;
    DiffPoly t(vt);
    t.add_term(mons[j].fs, v[j]);
    out += t;
  }
  return out;
}

LocalFunctional functional(const DiffPoly& p) {
  DiffPoly rep(p.table());
  for (const auto& [w2, piece] : p.weight_split()) {
    if (w2 == 0) continue;  // constants are zero functionals
    rep += reduce_mod_d(piece);
  }
  return {rep};
}

std::string LocalFunctional::render() const { return "∫ " + rep.render(); }

LocalFunctional local_bracket(const LocalFunctional& F,
                              const LocalFunctional& G, const Pva& P) {
  const VarTable* vt = &P.vt;
  DiffPoly acc(vt);
  for (const auto& [ij, h] : P.H.e) {
    DiffPoly df = F.rep.variational(ij.first, Side::left);
    if (df.is_zero()) continue;
    DiffPoly dg = G.rep.variational(ij.second, Side::right);
    if (dg.is_zero()) continue;
    acc += dg * subst_arrow(h, Side::right, df);
  }
  return functional(acc);
}

bool Derivation::is_zero() const {
  for (const DiffPoly& p : val)
    if (!p.is_zero()) return false;
  return true;
}

DiffPoly Derivation::apply(const DiffPoly& p) const {
  DiffPoly r(vt);
  for (int id = 0; id < vt->size(); ++id) {
    if (val[id].is_zero()) continue;
    int mx = p.max_order(id);
    for (int n = 0; n <= mx; ++n) {
      DiffPoly pp = p.partial(id, n, Side::left);
      if (pp.is_zero()) continue;
      r += val[id].dn(n) * pp;
    }
  }
  return r;
}

Derivation eta(const LocalFunctional& F, const Pva& P) {
  Derivation X;
  X.vt = &P.vt;
  X.val.resize(P.vt.size(), DiffPoly(&P.vt));
  for (int id = 0; id < P.vt.size(); ++id) {
    DiffPoly v =
        master_bracket(F.rep, DiffPoly::var(&P.vt, id), P.H).coeff(0);
    if (v.parity() == 1)
      throw std::logic_error("odd evolutionary fields are unsupported");
    X.val[id] = v;
  }
  return X;
}

std::vector<LocalFunctional> eta_kernel(const Pva& P, int weight2_bound) {
  const VarTable* vt = &P.vt;
  std::vector<LocalFunctional> out;
  for (int w2 = 1; w2 <= weight2_bound; ++w2) {
    // coset basis: monomials of weight w2 outside the pivot set of d(V)
    std::vector<Mono> mons = monomials_of_weight2(*vt, w2, false);
    std::map<Mono, int, MonoLess> index;
    for (const Mono& m : mons) index.emplace(m, (int)index.size());
    std::vector<int> pivots;
    if (w2 > 2) {
      std::vector<Mono> cands = monomials_of_weight2(*vt, w2 - 2, false);
      Mat<RatFunc> A((int)cands.size(), (int)mons.size());
      for (size_t i = 0; i < cands.size(); ++i) {
        DiffPoly b(vt);
        b.add_term(cands[i].fs, RatFunc(1));
        DiffPoly db = b.d();
        for (const auto& [m, c] : db.terms()) A.at((int)i, index.at(m)) = c;
      }
      pivots = rref(A);
    }
    std::vector<int> coset;
    {
      size_t pi = 0;
      for (int j = 0; j < (int)mons.size(); ++j) {
        if (pi < pivots.size() && pivots[pi] == j) {
          ++pi;
          continue;
        }
        coset.push_back(j);
      }
    }
    if (coset.empty()) continue;

    // rows: monomials of every eta value, per generator
    std::map<std::pair<int, Mono>, int,
             bool (*)(const std::pair<int, Mono>&, const std::pair<int, Mono>&)>
        row([](const std::pair<int, Mono>& a, const std::pair<int, Mono>& b) {
          if (a.first != b.first) return a.first < b.first;
          return mono_less(a.second, b.second);
        });
    std::vector<std::vector<DiffPoly>> vals(coset.size());
    for (size_t c = 0; c < coset.size(); ++c) {
      DiffPoly m(vt);
      m.add_term(mons[coset[c]].fs, RatFunc(1));
      vals[c].reserve(vt->size());
      for (int id = 0; id < vt->size(); ++id) {
        DiffPoly v = master_bracket(m, DiffPoly::var(vt, id), P.H).coeff(0);
        for (const auto& [mm, cc] : v.terms()) row.try_emplace({id, mm}, (int)row.size());
        vals[c].push_back(std::move(v));
      }
    }
    Mat<RatFunc> M((int)row.size(), (int)coset.size());
    for (size_t c = 0; c < coset.size(); ++c)
      for (int id = 0; id < vt->size(); ++id)
        for (const auto& [mm, cc] : vals[c][id].terms())
          M.at(row.at({id, mm}), (int)c) = cc;
    for (const auto& ker : nullspace(M)) {
      DiffPoly rep(vt);
      for (size_t c = 0; c < coset.size(); ++c) {
        if (ker[c].is_zero()) continue;
        DiffPoly t(vt);
        t.add_term(mons[coset[c]].fs, ker[c]);
        rep += t;
      }
      out.push_back({rep});
    }
  }
  return out;
}

}  // namespace walg
