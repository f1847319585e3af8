#include "walg/lambda.hpp"

#include <stdexcept>

namespace walg {

mpq_class binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return mpq_class(z);
}

LambdaPoly LambdaPoly::from(const DiffPoly& p) {
  LambdaPoly r(p.table());
  r.c.push_back(p);
  r.trim();
  return r;
}

DiffPoly LambdaPoly::coeff(int s) const {
  if (s < 0 || s > degree()) return DiffPoly(vt);
  return c[s];
}

void LambdaPoly::set(int s, const DiffPoly& p) {
  if ((int)c.size() <= s) c.resize(s + 1, DiffPoly(vt));
  c[s] = p;
  trim();
}

void LambdaPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

int LambdaPoly::weight2() const {
  int w = -2;
  for (int s = 0; s <= degree(); ++s) {
    if (c[s].is_zero()) continue;
    int ws = c[s].weight2();
    if (ws < 0) return -1;
    ws += 2 * s;
    if (w == -2)
      w = ws;
    else if (w != ws)
      return -1;
  }
  return w == -2 ? 0 : w;
}

std::string LambdaPoly::render() const {
  if (is_zero()) return "0";
  std::string out;
  for (int s = degree(); s >= 0; --s) {
    if (c[s].is_zero()) continue;
    std::string ls =
        s == 0 ? "" : (s == 1 ? "lam" : "lam^" + std::to_string(s));
    std::string cs = c[s].render();
    std::string piece;
    if (s == 0) {
      piece = cs;
    } else if (cs == "1") {
      piece = ls;
    } else {
      bool wrap = cs.find(" + ") != std::string::npos ||
                  cs.find(" - ") != std::string::npos || cs[0] == '-';
      if (wrap) cs = "(" + cs + ")";
      piece = cs + "*" + ls;
    }
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out;
}

LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b) {
  LambdaPoly r(a.vt ? a.vt : b.vt);
  r.c.resize(std::max(a.c.size(), b.c.size()), DiffPoly(r.vt));
  for (size_t s = 0; s < a.c.size(); ++s) r.c[s] += a.c[s];
  for (size_t s = 0; s < b.c.size(); ++s) r.c[s] += b.c[s];
  r.trim();
  return r;
}

LambdaPoly operator-(const LambdaPoly& a) {
  LambdaPoly r = a;
  for (auto& p : r.c) p = -p;
  return r;
}

LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b) {
  return a + (-b);
}

LambdaPoly lmul(const DiffPoly& h, const LambdaPoly& p) {
  LambdaPoly r(p.vt ? p.vt : h.table());
  r.c.reserve(p.c.size());
  for (const DiffPoly& q : p.c) r.c.push_back(h * q);
  r.trim();
  return r;
}

LambdaPoly lam_shift(const LambdaPoly& p, int s) {
  if (p.is_zero() || s == 0) return p;
  LambdaPoly r(p.vt);
  r.c.assign(s, DiffPoly(p.vt));
  r.c.insert(r.c.end(), p.c.begin(), p.c.end());
  return r;
}

LambdaPoly scale(const LambdaPoly& p, const RatFunc& c) {
  LambdaPoly r(p.vt);
  r.c.reserve(p.c.size());
  for (const DiffPoly& q : p.c) r.c.push_back(q.scaled(c));
  r.trim();
  return r;
}

// one application of (lam + d)
static LambdaPoly lpd1(const LambdaPoly& p) {
  LambdaPoly r(p.vt);
  r.c.assign(p.c.size() + 1, DiffPoly(p.vt));
  for (size_t s = 0; s < p.c.size(); ++s) {
    r.c[s + 1] += p.c[s];
    r.c[s] += p.c[s].d();
  }
  r.trim();
  return r;
}

LambdaPoly lam_plus_d(const LambdaPoly& p, int n) {
  LambdaPoly r = p;
  for (int i = 0; i < n; ++i) r = lpd1(r);
  return r;
}

LambdaPoly lam_plus_d(const DiffPoly& a, int n) {
  return lam_plus_d(LambdaPoly::from(a), n);
}

LambdaPoly subst_left_minus(const LambdaPoly& p) {
  LambdaPoly r(p.vt);
  for (int s = 0; s <= p.degree(); ++s) {
    if (p.c[s].is_zero()) continue;
    LambdaPoly q = lam_plus_d(p.c[s], s);
    r += (s & 1) ? -q : q;
  }
  return r;
}

DiffPoly subst_arrow(const LambdaPoly& p, Side side, const DiffPoly& target) {
  DiffPoly r(p.vt ? p.vt : target.table());
  for (int s = 0; s <= p.degree(); ++s) {
    if (p.c[s].is_zero()) continue;
    if (side == Side::right)
      r += p.c[s] * target.dn(s);
    else
      r += (p.c[s] * target).dn(s);
  }
  return r;
}

void BracketTable::set(int i, int j, LambdaPoly p) {
  if (!vt) throw std::logic_error("bracket table without a variable table");
  p.trim();
  if (p.is_zero())
    e.erase({i, j});
  else
    e[{i, j}] = std::move(p);
}

const LambdaPoly* BracketTable::find(int i, int j) const {
  auto it = e.find({i, j});
  return it == e.end() ? nullptr : &it->second;
}

// H(lam+d) with the arrow to the right: the coefficients of H stay
// undifferentiated while (lam+d)^p acts on everything in b
static LambdaPoly arrow_apply(const LambdaPoly& h, const LambdaPoly& b) {
  LambdaPoly r(h.vt ? h.vt : b.vt);
  for (int p = 0; p <= h.degree(); ++p) {
    if (h.c[p].is_zero()) continue;
    r += lmul(h.c[p], lam_plus_d(b, p));
  }
  return r;
}

LambdaPoly master_bracket(const DiffPoly& f, const DiffPoly& g,
                          const BracketTable& H) {
  const VarTable* vt = H.vt;
  LambdaPoly out(vt);
  auto [fe, fo] = f.parity_split();
  auto [ge, go] = g.parity_split();
  const DiffPoly* fparts[2] = {&fe, &fo};
  const DiffPoly* gparts[2] = {&ge, &go};
  for (int fb = 0; fb < 2; ++fb)
    for (int gb = 0; gb < 2; ++gb) {
      const DiffPoly& fp = *fparts[fb];
      const DiffPoly& gp = *gparts[gb];
      if (fp.is_zero() || gp.is_zero()) continue;
      for (const auto& [ij, Hji] : H.e) {
        int i = ij.first, j = ij.second;
        int mi = fp.max_order(i);
        int nj = gp.max_order(j);
        if (mi < 0 || nj < 0) continue;
        int pi = vt->by_id(i).odd ? 1 : 0;
        int pj = vt->by_id(j).odd ? 1 : 0;
        bool neg = ((fb & gb) ^ (pi & pj)) != 0;
        for (int m = 0; m <= mi; ++m) {
          DiffPoly A = fp.partial(i, m, Side::left);
          if (A.is_zero()) continue;
          LambdaPoly B = lam_plus_d(A, m);
          if (m & 1) B = -B;
          LambdaPoly C = arrow_apply(Hji, B);
          for (int n = 0; n <= nj; ++n) {
            DiffPoly G = gp.partial(j, n, Side::right);
            if (G.is_zero()) continue;
            LambdaPoly D = lmul(G, lam_plus_d(C, n));
            out += neg ? -D : D;
          }
        }
      }
    }
  return out;
}

void Lambda2Poly::add(int a, int b, const DiffPoly& p) {
  if (p.is_zero()) return;
  auto [it, fresh] = t.try_emplace({a, b}, p);
  if (!fresh) {
    it->second += p;
    if (it->second.is_zero()) t.erase(it);
  }
}

static int req_parity(const DiffPoly& p, const char* what) {
  int q = p.parity();
  if (q < 0)
    throw std::invalid_argument(std::string(what) + ": parity-mixed element");
  return q;
}

bool skew_holds(const BracketTable& H, const DiffPoly& f, const DiffPoly& g) {
  int fb = req_parity(f, "skew"), gb = req_parity(g, "skew");
  LambdaPoly lhs = master_bracket(g, f, H);
  LambdaPoly rhs = subst_left_minus(master_bracket(f, g, H));
  if (!(fb & gb)) rhs = -rhs;  // total factor -(-1)^{fg}
  return lhs == rhs;
}

bool jacobi_holds(const BracketTable& H, const DiffPoly& f, const DiffPoly& g,
                  const DiffPoly& h) {
  int fb = req_parity(f, "jacobi"), gb = req_parity(g, "jacobi");
  bool neg2 = !(fb & gb);  // subtract (-1)^{fg} T2
  Lambda2Poly J;
  LambdaPoly in1 = master_bracket(g, h, H);
  for (int b = 0; b <= in1.degree(); ++b) {
    if (in1.c[b].is_zero()) continue;
    LambdaPoly o = master_bracket(f, in1.c[b], H);
    for (int a = 0; a <= o.degree(); ++a) J.add(a, b, o.c[a]);
  }
  LambdaPoly in2 = master_bracket(f, h, H);
  for (int a = 0; a <= in2.degree(); ++a) {
    if (in2.c[a].is_zero()) continue;
    LambdaPoly o = master_bracket(g, in2.c[a], H);
    for (int b = 0; b <= o.degree(); ++b)
      J.add(a, b, neg2 ? -o.c[b] : o.c[b]);
  }
  // T3 = sum_a {c_a _{lam+mu} h} lam^a; the lam power multiplies outside
  LambdaPoly in3 = master_bracket(f, g, H);
  for (int a = 0; a <= in3.degree(); ++a) {
    if (in3.c[a].is_zero()) continue;
    LambdaPoly o = master_bracket(in3.c[a], h, H);
    for (int s = 0; s <= o.degree(); ++s) {
      if (o.c[s].is_zero()) continue;
      for (int cp = 0; cp <= s; ++cp)
        J.add(a + cp, s - cp, -o.c[s].scaled(RatFunc(binom(s, cp))));
    }
  }
  return J.is_zero();
}

AxiomWitness check_skew(const BracketTable& H) {
  const VarTable* vt = H.vt;
  for (int i = 0; i < vt->size(); ++i)
    for (int j = 0; j < vt->size(); ++j)
      if (!skew_holds(H, DiffPoly::var(vt, i), DiffPoly::var(vt, j)))
        return {false, i, j, -1};
  return {};
}

AxiomWitness check_jacobi(const BracketTable& H) {
  const VarTable* vt = H.vt;
  for (int i = 0; i < vt->size(); ++i)
    for (int j = 0; j < vt->size(); ++j)
      for (int l = 0; l < vt->size(); ++l)
        if (!jacobi_holds(H, DiffPoly::var(vt, i), DiffPoly::var(vt, j),
                          DiffPoly::var(vt, l)))
          return {false, i, j, l};
  return {};
}

}  // namespace walg
