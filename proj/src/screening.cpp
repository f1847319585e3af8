#include "walg/screening.hpp"

#include <algorithm>
#include <stdexcept>

namespace walg {

namespace {

// kappa-dual of a g_0 basis vector, expanded over the ambient variables
DiffPoly dual_poly(const LieAlg& g, const AdxGrading& gr, const Pva& amb,
                   int b) {
  DiffPoly r(&amb.vt);
  const Elt& d = g.dual[b];
  for (int j = 0; j < g.dim; ++j) {
    if (d[j] == 0) continue;
    if (gr.deg2_of[j] != 0)
      throw std::logic_error("dual of a g_0 vector left g_0");
    r += DiffPoly::var(&amb.vt, amb.var_of_basis.at(j)).scaled(RatFunc(d[j]));
  }
  return r;
}

void note_den(std::vector<Poly>& bad, const RatFunc& c) {
  if (c.den.degree() < 1) return;
  // only the root set matters, so store the squarefree part; the
  // denominator is monic, so the quotient by the monic gcd stays monic
  Poly sf, r;
  divrem(c.den, gcd(c.den, derivative(c.den)), sf, r);
  for (const Poly& p : bad)
    if (p == sf) return;
  bad.push_back(sf);
}

bool mono_pair_less(const std::pair<int, Mono>& a,
                    const std::pair<int, Mono>& b) {
  if (a.first != b.first) return a.first < b.first;
  return mono_less(a.second, b.second);
}

}  // namespace

ScreeningFamily build_family(const LieAlg& g, const Sl2Triple& t,
                             const AdxGrading& gr, int alpha,
                             const RatFunc& level, const Pva& amb) {
  if (std::find(gr.Pi.begin(), gr.Pi.end(), alpha) == gr.Pi.end())
    throw std::invalid_argument("alpha is not indecomposable");
  ScreeningFamily F;
  F.base = alpha;
  F.deg2 = gr.deg2_of[alpha];
  if (F.deg2 != 1 && F.deg2 != 2)
    throw std::invalid_argument("screenings require alpha of degree 1/2 or 1");

  F.members = family_members(g, gr, alpha);

  const std::vector<int>& g0 = gr.pieces.at(0);
  std::vector<int> half;
  if (gr.pieces.count(1)) half = gr.pieces.at(1);
  const VarTable* vt = &amb.vt;

  for (int m : F.members) {
    std::vector<DiffPoly> act((size_t)vt->size(), DiffPoly(vt));
    Elt em = basis_elt(g, m);
    for (int b : g0) {
      Elt br = bracket(g, basis_elt(g, b), em);
      int vb = amb.var_of_basis.at(b);
      if (F.deg2 == 2) {
        mpq_class c = pair_form(g, t.f, br);
        if (c != 0) act[vb] = DiffPoly::constant(vt, RatFunc(c));
      } else {
        for (int d = 0; d < g.dim; ++d) {
          if (br[d] == 0) continue;
          if (std::find(F.members.begin(), F.members.end(), d) ==
              F.members.end())
            throw std::logic_error("generator action leaves the family span");
          act[vb] += DiffPoly::var(vt, amb.var_of_basis.at(d))
                         .scaled(RatFunc(br[d]));
        }
      }
    }
    if (F.deg2 == 1)
      for (int b : half) {
        mpq_class c = pair_form(g, t.f, bracket(g, em, basis_elt(g, b)));
        if (c != 0)
          act[amb.var_of_basis.at(b)] = DiffPoly::constant(vt, RatFunc(c));
      }
    F.gen_action[m] = std::move(act);
  }

  // commutator rule [Q_m, d] = sum_d C_{m,d} Q_d over the family
  for (int m : F.members) {
    Elt em = basis_elt(g, m);
    for (int d : F.members) {
      DiffPoly C(vt);
      for (int b : g0) {
        Elt br = bracket(g, em, basis_elt(g, b));
        if (br[d] == 0) continue;
        C += dual_poly(g, gr, amb, b).scaled(RatFunc(br[d]));
      }
      if (!C.is_zero()) F.comm[{m, d}] = C.scaled(RatFunc(1) / level);
    }
  }

  // the weight shift is read off the action, not assumed
  bool have = false;
  for (const auto& [m, act] : F.gen_action)
    for (int id = 0; id < vt->size(); ++id) {
      if (act[id].is_zero()) continue;
      int s = act[id].weight2() - vt->by_id(id).weight2;
      if (!have) {
        F.shift2 = s;
        have = true;
      } else if (F.shift2 != s) {
        throw std::logic_error("family action is not weight-homogeneous");
      }
    }
  if (!have) F.shift2 = -F.deg2;
  return F;
}

WSetup build_w_setup(const LieAlg& g, const Sl2Triple& t,
                     const RatFunc& level) {
  if (level.is_zero()) throw std::invalid_argument("level must be nonzero");
  WSetup S;
  S.g = g;
  S.t = t;
  S.gr = grade(g, t);
  S.level = level;
  auto A = affine_pva(g, S.gr.pieces.at(0), level);
  auto B = bg_system(g, S.gr, t.f);
  S.amb = tensor(*A, *B);
  for (int a : S.gr.Pi)
    S.fams.push_back(build_family(g, t, S.gr, a, level, *S.amb));
  return S;
}

// memoized value of Q_member on the order-n derivative of u_id, via
// Q(dv) = d(Qv) + sum_d C_{member,d} Q_d(v)
static const DiffPoly& q_value(const WSetup& S, int fi, int member, int id,
                               int n) {
  std::array<int, 4> key{fi, member, id, n};
  auto it = S.memo.find(key);
  if (it != S.memo.end()) return it->second;
  const ScreeningFamily& F = S.fams[fi];
  DiffPoly v(&S.amb->vt);
  if (n == 0) {
    v = F.gen_action.at(member)[id];
  } else {
    v = q_value(S, fi, member, id, n - 1).d();
    for (int d : F.members) {
      auto c = F.comm.find({member, d});
      if (c == F.comm.end()) continue;
      const DiffPoly& qd = q_value(S, fi, d, id, n - 1);
      if (!qd.is_zero()) v += c->second * qd;
    }
  }
  return S.memo.emplace(key, std::move(v)).first->second;
}

DiffPoly screen_apply(const WSetup& S, int fam, int member,
                      const DiffPoly& p) {
  if (fam < 0 || fam >= (int)S.fams.size())
    throw std::out_of_range("family index");
  const ScreeningFamily& F = S.fams[fam];
  if (!F.gen_action.count(member))
    throw std::invalid_argument("not a family member");
  if (p.table() != &S.amb->vt)
    throw std::invalid_argument("foreign generators present");
  // all ambient generators are even, so the chain rule has no signs
  DiffPoly r(&S.amb->vt);
  for (int id = 0; id < S.amb->vt.size(); ++id) {
    int mx = p.max_order(id);
    for (int n = 0; n <= mx; ++n) {
      DiffPoly pd = p.partial(id, n, Side::left);
      if (pd.is_zero()) continue;
      r += q_value(S, fam, member, id, n) * pd;
    }
  }
  return r;
}

DiffPoly screen_apply(const WSetup& S, int fam, const DiffPoly& p) {
  return screen_apply(S, fam, S.fams.at(fam).base, p);
}

KernelBasis joint_kernel(const WSetup& S, int weight2_max) {
  KernelBasis kb;
  kb.weight2_max = weight2_max;
  const VarTable* vt = &S.amb->vt;
  for (int w2 = 0; w2 <= weight2_max; ++w2) {
    std::vector<Mono> mons = monomials_of_weight2(*vt, w2, w2 == 0);
    if (mons.empty()) continue;
    std::map<std::pair<int, Mono>, int, decltype(&mono_pair_less)> row(
        &mono_pair_less);
    std::vector<std::vector<DiffPoly>> img(S.fams.size());
    for (size_t f = 0; f < S.fams.size(); ++f) {
      img[f].reserve(mons.size());
      for (const Mono& m : mons) {
        DiffPoly mm(vt);
        mm.add_term(m.fs, RatFunc(1));
        DiffPoly q = screen_apply(S, (int)f, S.fams[f].base, mm);
        for (const auto& [om, c] : q.terms())
          row.try_emplace({(int)f, om}, (int)row.size());
        img[f].push_back(std::move(q));
      }
    }
    Mat<RatFunc> M((int)row.size(), (int)mons.size());
    for (size_t f = 0; f < S.fams.size(); ++f)
      for (size_t c = 0; c < mons.size(); ++c)
        for (const auto& [om, cc] : img[f][c].terms()) {
          M.at(row.at({(int)f, om}), (int)c) = cc;
          note_den(kb.bad_k, cc);
        }
    std::vector<DiffPoly> basis;
    for (const auto& v : nullspace(M)) {
      int lead = -1;
      for (int j = 0; j < (int)v.size(); ++j)
        if (!v[j].is_zero()) lead = j;
      if (lead < 0) continue;
      RatFunc inv = RatFunc(1) / v[lead];
      DiffPoly p(vt);
      for (int j = 0; j < (int)v.size(); ++j) {
        if (v[j].is_zero()) continue;
        RatFunc c = v[j] * inv;
        note_den(kb.bad_k, c);
        DiffPoly term(vt);
        term.add_term(mons[j].fs, c);
        p += term;
      }
      for (size_t f = 0; f < S.fams.size(); ++f)
        if (!screen_apply(S, (int)f, S.fams[f].base, p).is_zero())
          throw std::logic_error("kernel candidate fails re-verification");
      basis.push_back(std::move(p));
    }
    if (!basis.empty()) kb.by_weight2[w2] = std::move(basis);
  }
  return kb;
}

std::map<int, std::vector<DiffPoly>> kernel_generators(const WSetup& S,
                                                       const KernelBasis& kb) {
  std::map<int, std::vector<DiffPoly>> out;
  const VarTable* vt = &S.amb->vt;
  for (const auto& [w2, basis] : kb.by_weight2) {
    if (w2 == 0) continue;  // the unit is not a generator
    std::vector<Mono> mons = monomials_of_weight2(*vt, w2, false);
    std::map<Mono, int, MonoLess> index;
    for (const Mono& m : mons) index.emplace(m, (int)index.size());
    Mat<RatFunc> I(0, (int)mons.size());
    auto prev = kb.by_weight2.find(w2 - 2);
    if (prev != kb.by_weight2.end()) {
      I = Mat<RatFunc>((int)prev->second.size(), (int)mons.size());
      for (size_t i = 0; i < prev->second.size(); ++i) {
        DiffPoly db = prev->second[i].d();
        for (const auto& [m, c] : db.terms()) I.at((int)i, index.at(m)) = c;
      }
    }
    std::vector<int> piv = rref(I);
    std::vector<std::vector<RatFunc>> reduced;
    for (const DiffPoly& b : basis) {
      std::vector<RatFunc> v = coords_of(b, index);
      for (size_t i = 0; i < piv.size(); ++i) {
        int p = piv[i];
        if (v[p].is_zero()) continue;
        RatFunc c = v[p];
        for (int j = p; j < I.cols; ++j) v[j] -= c * I.at((int)i, j);
      }
      if (std::any_of(v.begin(), v.end(),
                      [](const RatFunc& c) { return !c.is_zero(); }))
        reduced.push_back(std::move(v));
    }
    if (reduced.empty()) continue;
    Mat<RatFunc> R((int)reduced.size(), (int)mons.size());
    for (size_t i = 0; i < reduced.size(); ++i)
      for (int j = 0; j < R.cols; ++j) R.at((int)i, j) = reduced[i][j];
    size_t nr = rref(R).size();
    std::vector<DiffPoly> gens;
    for (size_t i = 0; i < nr; ++i) {
      int lead = -1;
      for (int j = 0; j < R.cols; ++j)
        if (!R.at((int)i, j).is_zero()) lead = j;
      RatFunc inv = RatFunc(1) / R.at((int)i, lead);
      DiffPoly p(vt);
      for (int j = 0; j < R.cols; ++j) {
        if (R.at((int)i, j).is_zero()) continue;
        DiffPoly term(vt);
        term.add_term(mons[j].fs, R.at((int)i, j) * inv);
        p += term;
      }
      gens.push_back(std::move(p));
    }
    out[w2] = std::move(gens);
  }
  return out;
}

bool check_subalgebra(const WSetup& S, const KernelBasis& kb) {
  std::vector<const DiffPoly*> all;
  for (const auto& [w2, b] : kb.by_weight2)
    for (const DiffPoly& p : b) all.push_back(&p);
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i; j < all.size(); ++j) {
      LambdaPoly br = master_bracket(*all[i], *all[j], S.amb->H);
      for (int s = 0; s <= br.degree(); ++s) {
        if (br.coeff(s).is_zero()) continue;
        for (size_t f = 0; f < S.fams.size(); ++f)
          if (!screen_apply(S, (int)f, S.fams[f].base, br.coeff(s)).is_zero())
            return false;
      }
    }
  return true;
}

Hierarchy hamiltonians(const WSetup& S, const KernelBasis& kb,
                       const std::vector<int>& weights) {
  Hierarchy H;
  const VarTable* vt = &S.amb->vt;
  for (int w : weights) {
    int w2 = 2 * w;
    if (w2 > kb.weight2_max)
      throw std::invalid_argument("kernel not computed to the requested weight");
    auto it = kb.by_weight2.find(w2);
    if (it == kb.by_weight2.end()) continue;
    std::vector<LocalFunctional> fs;
    for (const DiffPoly& b : it->second) {
      LocalFunctional F = functional(b);
      if (!F.is_zero()) fs.push_back(std::move(F));
    }
    if (fs.empty()) continue;
    // an independent set of functional classes at this weight
    std::vector<Mono> mons = monomials_of_weight2(*vt, w2, false);
    std::map<Mono, int, MonoLess> index;
    for (const Mono& m : mons) index.emplace(m, (int)index.size());
    Mat<RatFunc> R((int)fs.size(), (int)mons.size());
    for (size_t i = 0; i < fs.size(); ++i) {
      std::vector<RatFunc> v = coords_of(fs[i].rep, index);
      for (int j = 0; j < R.cols; ++j) R.at((int)i, j) = v[j];
    }
    size_t nr = rref(R).size();
    for (size_t i = 0; i < nr; ++i) {
      int lead = -1;
      for (int j = 0; j < R.cols; ++j)
        if (!R.at((int)i, j).is_zero()) lead = j;
      RatFunc inv = RatFunc(1) / R.at((int)i, lead);
      DiffPoly p(vt);
      for (int j = 0; j < R.cols; ++j) {
        if (R.at((int)i, j).is_zero()) continue;
        DiffPoly term(vt);
        term.add_term(mons[j].fs, R.at((int)i, j) * inv);
        p += term;
      }
      H.hams.push_back(functional(p));
      H.weight_of.push_back(w);
    }
  }
  for (size_t i = 0; i < H.hams.size(); ++i)
    for (size_t j = i + 1; j < H.hams.size(); ++j) {
      bool z = local_bracket(H.hams[i], H.hams[j], *S.amb).is_zero();
      H.pairs.emplace_back((int)i, (int)j, z);
      if (!z) H.all_commute = false;
    }
  return H;
}

}  // namespace walg
