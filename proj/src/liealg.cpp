#include "walg/liealg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace walg {

Elt zero_elt(const LieAlg& g) { return Elt(g.dim, mpq_class(0)); }

Elt basis_elt(const LieAlg& g, int i) {
  Elt v = zero_elt(g);
  v[i] = 1;
  return v;
}

bool is_zero(const Elt& a) {
  for (auto& x : a)
    if (x != 0) return false;
  return true;
}

Elt add(const Elt& a, const Elt& b) {
  Elt r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

Elt sub(const Elt& a, const Elt& b) {
  Elt r = a;
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Elt scale(const mpq_class& c, const Elt& a) {
  Elt r = a;
  for (auto& x : r) x *= c;
  return r;
}

Elt bracket(const LieAlg& g, const Elt& a, const Elt& b) {
  Elt r = zero_elt(g);
  for (int i = 0; i < g.dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < g.dim; ++j) {
      if (b[j] == 0) continue;
      mpq_class c = a[i] * b[j];
      for (auto& [l, v] : g.brk[i][j]) r[l] += c * v;
    }
  }
  return r;
}

mpq_class pair_form(const LieAlg& g, const Elt& a, const Elt& b) {
  mpq_class r = 0;
  for (int i = 0; i < g.dim; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < g.dim; ++j)
      if (b[j] != 0) r += a[i] * b[j] * g.form[i][j];
  }
  return r;
}

Elt dual_of(const LieAlg& g, const Elt& a) {
  Elt r = zero_elt(g);
  for (int i = 0; i < g.dim; ++i)
    if (a[i] != 0) r = add(r, scale(a[i], g.dual[i]));
  return r;
}

bool jacobi_ok(const LieAlg& g, int i, int j, int l) {
  Elt a = basis_elt(g, i), b = basis_elt(g, j), c = basis_elt(g, l);
  Elt s = bracket(g, bracket(g, a, b), c);
  s = add(s, bracket(g, bracket(g, b, c), a));
  s = add(s, bracket(g, bracket(g, c, a), b));
  return is_zero(s);
}

std::vector<Elt> center(const LieAlg& g) {
  // rows: all (j, component l) constraints sum_i x_i c_{i,j}^l = 0
  Mat<mpq_class> m(g.dim * g.dim, g.dim);
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j)
      for (auto& [l, v] : g.brk[i][j]) m.at(j * g.dim + l, i) += v;
  return nullspace(m);
}

// ---- built-in construction from defining-representation matrices ----

namespace {

struct MatQ {
  int n = 0;
  std::vector<mpq_class> a;
  explicit MatQ(int n_) : n(n_), a((size_t)n_ * n_) {}
  mpq_class& at(int i, int j) { return a[(size_t)i * n + j]; }
  const mpq_class& at(int i, int j) const { return a[(size_t)i * n + j]; }
};

MatQ commutator(const MatQ& x, const MatQ& y) {
  MatQ r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int l = 0; l < x.n; ++l) {
      if (x.at(i, l) == 0) continue;
      for (int j = 0; j < x.n; ++j) {
        if (y.at(l, j) != 0) r.at(i, j) += x.at(i, l) * y.at(l, j);
      }
    }
  for (int i = 0; i < x.n; ++i)
    for (int l = 0; l < x.n; ++l) {
      if (y.at(i, l) == 0) continue;
      for (int j = 0; j < x.n; ++j) {
        if (x.at(l, j) != 0) r.at(i, j) -= y.at(i, l) * x.at(l, j);
      }
    }
  return r;
}

mpq_class trace_prod(const MatQ& x, const MatQ& y) {
  mpq_class r = 0;
  for (int i = 0; i < x.n; ++i)
    for (int l = 0; l < x.n; ++l)
      if (x.at(i, l) != 0 && y.at(l, i) != 0) r += x.at(i, l) * y.at(l, i);
  return r;
}

struct RootInfo {
  std::vector<int> coeffs;  // over simple roots; positive root
  int height() const {
    int h = 0;
    for (int c : coeffs) h += c;
    return h;
  }
};

bool root_order(const RootInfo& a, const RootInfo& b) {
  if (a.height() != b.height()) return a.height() < b.height();
  return a.coeffs < b.coeffs;
}

std::string digits(const std::vector<int>& v) {
  std::string s;
  for (int c : v) {
    assert(c >= 0 && c <= 9);
    s += char('0' + c);
  }
  return s;
}

// assemble LieAlg from explicit basis matrices; form = trace form
LieAlg assemble(const std::string& type, int cartan_dim,
                const std::vector<std::string>& labels, const std::vector<MatQ>& mats,
                const std::vector<std::vector<int>>& root_of) {
  LieAlg g;
  g.type = type;
  g.dim = (int)mats.size();
  g.cartan_dim = cartan_dim;
  g.labels = labels;
  g.root_of = root_of;

  g.form.assign(g.dim, std::vector<mpq_class>(g.dim));
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) g.form[i][j] = trace_prod(mats[i], mats[j]);

  // Gram inverse rows give the dual basis
  Mat<mpq_class> gi(g.dim, 2 * g.dim);
  for (int i = 0; i < g.dim; ++i) {
    for (int j = 0; j < g.dim; ++j) gi.at(i, j) = g.form[i][j];
    gi.at(i, g.dim + i) = 1;
  }
  auto piv = rref(gi);
  if ((int)piv.size() != g.dim || piv.back() != g.dim - 1)
    throw std::runtime_error("degenerate trace form");
  g.dual.assign(g.dim, Elt(g.dim));
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) g.dual[i][j] = gi.at(i, g.dim + j);

  g.brk.assign(g.dim, std::vector<std::vector<std::pair<int, mpq_class>>>(g.dim));
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      MatQ m = commutator(mats[i], mats[j]);
      // x_l = sum_r Ginv[l][r] tr(m b_r); Ginv rows are g.dual
      std::vector<mpq_class> tr(g.dim);
      for (int r = 0; r < g.dim; ++r) tr[r] = trace_prod(m, mats[r]);
      for (int l = 0; l < g.dim; ++l) {
        mpq_class x = 0;
        for (int r = 0; r < g.dim; ++r)
          if (tr[r] != 0 && g.dual[l][r] != 0) x += g.dual[l][r] * tr[r];
        if (x != 0) g.brk[i][j].push_back({l, x});
      }
    }
  return g;
}

LieAlg build_A(int n) {
  int m = n + 1;
  std::vector<MatQ> mats;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> root_of;
  for (int i = 0; i < n; ++i) {  // h_i = E_ii - E_{i+1,i+1}
    MatQ h(m);
    h.at(i, i) = 1;
    h.at(i + 1, i + 1) = -1;
    mats.push_back(h);
    labels.push_back("h" + std::to_string(i + 1));
    root_of.push_back({});
  }
  std::vector<std::pair<RootInfo, std::pair<int, int>>> pos;  // root, (i,j)
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RootInfo r;
      r.coeffs.assign(n, 0);
      for (int l = i; l < j; ++l) r.coeffs[l] = 1;
      pos.push_back({r, {i, j}});
    }
  std::sort(pos.begin(), pos.end(),
            [](auto& a, auto& b) { return root_order(a.first, b.first); });
  for (auto& [r, ij] : pos) {
    MatQ x(m);
    x.at(ij.first, ij.second) = 1;
    mats.push_back(x);
    labels.push_back("e" + digits(r.coeffs));
    root_of.push_back(r.coeffs);
  }
  for (auto& [r, ij] : pos) {
    MatQ x(m);
    x.at(ij.second, ij.first) = 1;
    mats.push_back(x);
    labels.push_back("f" + digits(r.coeffs));
    std::vector<int> neg = r.coeffs;
    for (int& c : neg) c = -c;
    root_of.push_back(neg);
  }
  LieAlg g = assemble("A" + std::to_string(n), n, labels, mats, root_of);
  g.theta_index = n + (int)pos.size() - 1;  // highest root is last positive
  return g;
}

// sp(2n) with J = [[0,I],[-I,0]]; X = [[A,B],[C,-A^T]], B,C symmetric
LieAlg build_C(int n) {
  int m = 2 * n;
  std::vector<MatQ> mats;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> root_of;
  for (int i = 0; i < n; ++i) {  // h_i = E_ii - E_{n+i,n+i}
    MatQ h(m);
    h.at(i, i) = 1;
    h.at(n + i, n + i) = -1;
    mats.push_back(h);
    labels.push_back("h" + std::to_string(i + 1));
    root_of.push_back({});
  }
  // simple roots: a_i = eps_i - eps_{i+1} (i<n), a_n = 2 eps_n
  auto coeffs_of = [&](int pi, int pj, int kind) {
    // kind 0: eps_i - eps_j (i<j); kind 1: eps_i + eps_j (i<=j)
    std::vector<int> c(n, 0);
    if (kind == 0) {
      for (int l = pi; l < pj; ++l) c[l] = 1;
    } else {
      for (int l = pi; l < pj; ++l) c[l] += 1;
      for (int l = pj; l < n - 1; ++l) c[l] += 2;
      c[n - 1] += 1;
    }
    return c;
  };
  struct PRoot {
    RootInfo r;
    MatQ pos, neg;
  };
  std::vector<PRoot> roots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {  // eps_i - eps_j
      MatQ p(m), q(m);
      p.at(i, j) = 1;
      p.at(n + j, n + i) = -1;
      q.at(j, i) = 1;
      q.at(n + i, n + j) = -1;
      roots.push_back({{coeffs_of(i, j, 0)}, p, q});
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {  // eps_i + eps_j
      MatQ p(m), q(m);
      p.at(i, n + j) = 1;
      p.at(j, n + i) = 1;
      q.at(n + j, i) = 1;
      q.at(n + i, j) = 1;
      roots.push_back({{coeffs_of(i, j, 1)}, p, q});
    }
  for (int i = 0; i < n; ++i) {  // 2 eps_i
    MatQ p(m), q(m);
    p.at(i, n + i) = 1;
    q.at(n + i, i) = 1;
    roots.push_back({{coeffs_of(i, i, 1)}, p, q});
  }
  std::sort(roots.begin(), roots.end(),
            [](const PRoot& a, const PRoot& b) { return root_order(a.r, b.r); });
  for (auto& pr : roots) {
    mats.push_back(pr.pos);
    labels.push_back("e" + digits(pr.r.coeffs));
    root_of.push_back(pr.r.coeffs);
  }
  for (auto& pr : roots) {
    mats.push_back(pr.neg);
    labels.push_back("f" + digits(pr.r.coeffs));
    std::vector<int> neg = pr.r.coeffs;
    for (int& c : neg) c = -c;
    root_of.push_back(neg);
  }
  LieAlg g = assemble("C" + std::to_string(n), n, labels, mats, root_of);
  g.theta_index = n + (int)roots.size() - 1;
  return g;
}

}  // namespace

LieAlg build_simple(const std::string& type_label) {
  if (type_label.size() != 2)
    throw std::invalid_argument("unsupported type label: " + type_label);
  char fam = type_label[0];
  int n = type_label[1] - '0';
  if (fam == 'A' && n >= 1 && n <= 9) return build_A(n);
  if (fam == 'C' && n >= 2 && n <= 9) return build_C(n);
  throw std::invalid_argument("unsupported type label: " + type_label);
}

LieAlg build_reductive(const std::string& type_label) {
  if (type_label == "gl1") {
    LieAlg g;
    g.type = "gl1";
    g.dim = 1;
    g.cartan_dim = 1;
    g.labels = {"u"};
    g.brk.assign(1, std::vector<std::vector<std::pair<int, mpq_class>>>(1));
    g.form = {{mpq_class(1)}};
    g.dual = {{mpq_class(1)}};
    g.root_of = {{}};
    return g;
  }
  if (type_label == "gl2") {
    // sl2 + center z = I, defining-rep trace form
    std::vector<MatQ> mats;
    MatQ h(2), e(2), f(2), z(2);
    h.at(0, 0) = 1;
    h.at(1, 1) = -1;
    e.at(0, 1) = 1;
    f.at(1, 0) = 1;
    z.at(0, 0) = 1;
    z.at(1, 1) = 1;
    mats = {h, e, f, z};
    LieAlg g = assemble("gl2", 1, {"h1", "e1", "f1", "z"}, mats, {{}, {1}, {-1}, {}});
    g.theta_index = 1;
    return g;
  }
  return build_simple(type_label);
}

// ---- sl2-triples ----

static Elt solve_elt(const LieAlg& g, const std::vector<Elt>& gens,
                     const std::vector<Elt>& images, const Elt& target) {
  // find x = sum c_i gens[i] with sum c_i images[i] = target
  Mat<mpq_class> A(g.dim, (int)gens.size());
  for (size_t i = 0; i < images.size(); ++i)
    for (int r = 0; r < g.dim; ++r) A.at(r, (int)i) = images[i][r];
  auto sol = solve(A, target);
  if (!sol) throw std::runtime_error("sl2-triple solve failed");
  Elt x = zero_elt(g);
  for (size_t i = 0; i < gens.size(); ++i) x = add(x, scale((*sol)[i], gens[i]));
  return x;
}

Sl2Triple principal_triple(const LieAlg& g) {
  if (g.root_of.empty()) throw std::invalid_argument("principal triple needs root data");
  int n = g.cartan_dim;
  std::vector<int> simple_pos;  // indices of simple positive root vectors
  for (int i = n; i < g.dim; ++i) {
    const auto& r = g.root_of[i];
    if (r.empty()) continue;
    int h = 0;
    bool pos = true;
    for (int c : r) {
      h += c;
      if (c < 0) pos = false;
    }
    if (pos && h == 1) simple_pos.push_back(i);
  }
  if ((int)simple_pos.size() != n)
    throw std::invalid_argument("principal triple needs a full set of simple roots");

  Sl2Triple t;
  t.f = zero_elt(g);
  std::vector<int> simple_neg;
  for (int ip : simple_pos) {
    // matching negative root vector
    std::vector<int> neg = g.root_of[ip];
    for (int& c : neg) c = -c;
    int in = -1;
    for (int j = n; j < g.dim; ++j)
      if (g.root_of[j] == neg) {
        in = j;
        break;
      }
    assert(in >= 0);
    simple_neg.push_back(in);
    t.f[in] += 1;
  }

  // h in the Cartan with a_i(h) = 2 for all simple a_i
  Mat<mpq_class> A((int)simple_pos.size(), n);
  std::vector<mpq_class> bvec(simple_pos.size(), mpq_class(2));
  for (size_t r = 0; r < simple_pos.size(); ++r)
    for (int c = 0; c < n; ++c) {
      // [h_c, e_r] = a_r(h_c) e_r
      Elt br = bracket(g, basis_elt(g, c), basis_elt(g, simple_pos[r]));
      A.at((int)r, c) = br[simple_pos[r]];
    }
  auto sol = solve(A, bvec);
  if (!sol) throw std::runtime_error("no principal h");
  t.h = zero_elt(g);
  for (int c = 0; c < n; ++c) t.h = add(t.h, scale((*sol)[c], basis_elt(g, c)));

  // e = sum c_i e_{a_i} with [e, f] = h
  std::vector<Elt> egens, eimgs;
  for (int ip : simple_pos) {
    egens.push_back(basis_elt(g, ip));
    eimgs.push_back(bracket(g, basis_elt(g, ip), t.f));
  }
  t.e = solve_elt(g, egens, eimgs, t.h);
  return t;
}

Sl2Triple partition_triple(const LieAlg& g, const std::vector<int>& parts) {
  if (g.type.size() != 2 || g.type[0] != 'C')
    throw std::invalid_argument("partition triples are built-in for type C only");
  int n = g.type[1] - '0';
  int total = 0;
  for (int p : parts) total += p;
  if (total != 2 * n) throw std::invalid_argument("partition must sum to 2n");
  if ((int)parts.size() == 1 && parts[0] == 2 * n) return principal_triple(g);
  bool all2 = std::all_of(parts.begin(), parts.end(), [](int p) { return p == 2; });
  if (!all2)
    throw std::invalid_argument("supported type C partitions: (2n) and (2,...,2)");

  // f_(2^n): e = [[0,I],[0,0]], f = [[0,0],[I,0]], h = diag(I,-I).
  // In root terms: e = sum of the 2eps_i root vectors, f their negatives,
  // h = sum of the h_i. The 2eps_i coefficient vector over simple roots is
  // (0..0,2,..,2,1) with the 2-run starting at position i.
  auto is_2eps = [&](const std::vector<int>& r) {
    if ((int)r.size() != n || r[n - 1] != 1) return false;
    int l = 0;
    while (l < n - 1 && r[l] == 0) ++l;
    for (; l < n - 1; ++l)
      if (r[l] != 2) return false;
    return true;
  };
  Sl2Triple t;
  t.e = zero_elt(g);
  t.f = zero_elt(g);
  t.h = zero_elt(g);
  for (int i = 0; i < g.cartan_dim; ++i) t.h[i] = 1;
  for (int i = g.cartan_dim; i < g.dim; ++i) {
    const auto& r = g.root_of[i];
    if (r.empty()) continue;
    if (is_2eps(r)) t.e[i] = 1;
    std::vector<int> neg = r;
    for (int& c : neg) c = -c;
    if (is_2eps(neg)) t.f[i] = 1;
  }
  // verify the defining relations exactly
  Elt ef = bracket(g, t.e, t.f);
  if (!is_zero(sub(ef, t.h))) throw std::runtime_error("partition triple: [e,f] != h");
  if (!is_zero(sub(bracket(g, t.h, t.e), scale(2, t.e))))
    throw std::runtime_error("partition triple: [h,e] != 2e");
  if (!is_zero(sub(bracket(g, t.h, t.f), scale(-2, t.f))))
    throw std::runtime_error("partition triple: [h,f] != -2f");
  return t;
}

// ---- grading ----

AdxGrading grade(const LieAlg& g, const Sl2Triple& t) {
  AdxGrading gr;
  gr.deg2_of.assign(g.dim, 0);
  for (int i = 0; i < g.dim; ++i) {
    Elt ad = bracket(g, t.h, basis_elt(g, i));  // = 2 ad_x b_i
    // b_i must be an eigenvector
    mpq_class lam = ad[i];
    if (!is_zero(sub(ad, scale(lam, basis_elt(g, i)))))
      throw std::runtime_error("basis not ad_x homogeneous");
    // lam = 2j must be a half-integer doubled, i.e. integer
    if (lam.get_den() != 1) throw std::runtime_error("non half-integral ad_x eigenvalue");
    gr.deg2_of[i] = (int)lam.get_num().get_si();
  }
  gr.integral = true;
  gr.depth2 = 0;
  for (int i = 0; i < g.dim; ++i) {
    gr.pieces[gr.deg2_of[i]].push_back(i);
    gr.depth2 = std::max(gr.depth2, gr.deg2_of[i]);
    if (((gr.deg2_of[i] % 2) + 2) % 2 != 0) gr.integral = false;
  }

  // Pi: positive-degree root vectors not expressible as a sum of two
  // positive-degree roots; also collect degree-0 positive roots
  if (!g.root_of.empty()) {
    std::vector<int> dpos;
    for (int i = 0; i < g.dim; ++i)
      if (!g.root_of[i].empty() && gr.deg2_of[i] > 0) dpos.push_back(i);
    for (int i : dpos) {
      bool decomposable = false;
      for (int a : dpos) {
        for (int b : dpos) {
          std::vector<int> sum = g.root_of[a];
          for (size_t l = 0; l < sum.size(); ++l) sum[l] += g.root_of[b][l];
          if (sum == g.root_of[i]) {
            decomposable = true;
            break;
          }
        }
        if (decomposable) break;
      }
      if (!decomposable) {
        gr.Pi.push_back(i);
        if (gr.deg2_of[i] == 1) gr.Pi_half.push_back(i);
        if (gr.deg2_of[i] == 2) gr.Pi_1.push_back(i);
      }
    }
    for (int i = g.cartan_dim; i < g.dim; ++i) {
      if (g.root_of[i].empty() || gr.deg2_of[i] != 0) continue;
      // positive root vectors sit in the first root block
      bool positive = false;
      for (int c : g.root_of[i]) {
        if (c > 0) {
          positive = true;
          break;
        }
        if (c < 0) break;
      }
      if (positive) gr.delta0_pos.push_back(i);
    }
  }
  return gr;
}

Elt default_y(const LieAlg& g, const AdxGrading& gr) {
  if (g.theta_index < 0) throw std::invalid_argument("no highest root available");
  if (gr.deg2_of[g.theta_index] != gr.depth2)
    throw std::invalid_argument("e_theta does not lie in g_d for this grading");
  return basis_elt(g, g.theta_index);
}

// ---- condition (F) ----

namespace {

// minimal polynomial of a square matrix over Q(t) by the first linear
// dependence among its powers
UPoly<RatFunc> min_poly_of(const Mat<RatFunc>& M) {
  int n = M.rows;
  std::vector<Mat<RatFunc>> pw;
  Mat<RatFunc> id(n, n);
  for (int i = 0; i < n; ++i) id.at(i, i) = RatFunc(1);
  pw.push_back(id);
  for (int r = 1; r <= n; ++r) {
    Mat<RatFunc> nx(n, n);
    const Mat<RatFunc>& pr = pw.back();
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (pr.at(i, l).is_zero()) continue;
        for (int j = 0; j < n; ++j)
          if (!M.at(l, j).is_zero()) nx.at(i, j) += pr.at(i, l) * M.at(l, j);
      }
    pw.push_back(nx);
  }
  for (int m = 1; m <= n; ++m) {
    Mat<RatFunc> A(n * n, m);
    std::vector<RatFunc> b(n * n);
    for (int i = 0; i < n * n; ++i) {
      for (int r = 0; r < m; ++r) A.at(i, r) = pw[r].a[i];
      b[i] = pw[m].a[i];
    }
    auto sol = solve(A, b);
    if (sol) {
      UPoly<RatFunc> mu = UPoly<RatFunc>::monomial(RatFunc(1), m);
      for (int r = 0; r < m; ++r) mu -= UPoly<RatFunc>::monomial((*sol)[r], r);
      return mu;
    }
  }
  throw std::runtime_error("minimal polynomial not found");
}

}  // namespace

FReport check_condition_F(const LieAlg& g, const Sl2Triple& t, const AdxGrading& gr,
                          const Elt& y) {
  for (int i = 0; i < g.dim; ++i)
    if (y[i] != 0 && gr.deg2_of[i] != gr.depth2)
      throw std::invalid_argument("y must lie in g_d");

  FReport rep;
  rep.f1 = gr.integral;

  // LoopMatrix: ad_s = ad_f + t^{-1} ad_y acting on g tensor Q(t)
  RatFunc tinv = RatFunc(Poly(mpq_class(1)), Poly::monomial(1, 1));
  Mat<RatFunc> M(g.dim, g.dim);
  for (int j = 0; j < g.dim; ++j) {
    Elt bf = bracket(g, t.f, basis_elt(g, j));
    Elt by = bracket(g, y, basis_elt(g, j));
    for (int i = 0; i < g.dim; ++i) {
      RatFunc v = RatFunc(bf[i]);
      if (by[i] != 0) v += RatFunc(by[i]) * tinv;
      M.at(i, j) = v;
    }
  }

  rep.min_poly = min_poly_of(M);
  UPoly<RatFunc> gg = gcd(rep.min_poly, derivative(rep.min_poly));
  rep.f2 = gg.degree() == 0;

  auto ker = nullspace(M);
  rep.kernel_dim = (int)ker.size();
  rep.f3_abelian = true;
  for (size_t a = 0; a < ker.size() && rep.f3_abelian; ++a)
    for (size_t b = a + 1; b < ker.size() && rep.f3_abelian; ++b) {
      // Q(t)-bilinear bracket of kernel vectors
      std::vector<RatFunc> out(g.dim);
      for (int i = 0; i < g.dim; ++i) {
        if (ker[a][i].is_zero()) continue;
        for (int j = 0; j < g.dim; ++j) {
          if (ker[b][j].is_zero()) continue;
          RatFunc c = ker[a][i] * ker[b][j];
          for (auto& [l, v] : g.brk[i][j]) out[l] += c * RatFunc(v);
        }
      }
      for (auto& x : out)
        if (!x.is_zero()) {
          rep.f3_abelian = false;
          break;
        }
    }

  // Im(ad_s) in extended degree 0 is [f, g_1] + [y, g_{-d}]; need rank = dim g_0
  std::vector<Elt> gens;
  auto it1 = gr.pieces.find(2);
  if (it1 != gr.pieces.end())
    for (int i : it1->second) gens.push_back(bracket(g, t.f, basis_elt(g, i)));
  auto itd = gr.pieces.find(-gr.depth2);
  if (itd != gr.pieces.end())
    for (int i : itd->second) gens.push_back(bracket(g, y, basis_elt(g, i)));
  auto it0 = gr.pieces.find(0);
  rep.g0_dim = it0 == gr.pieces.end() ? 0 : (int)it0->second.size();
  Mat<mpq_class> im((int)gens.size(), g.dim);
  for (size_t r = 0; r < gens.size(); ++r)
    for (int c = 0; c < g.dim; ++c) im.at((int)r, c) = gens[r][c];
  rep.image_rank = rank(im);
  rep.f3_image = rep.image_rank == rep.g0_dim;
  return rep;
}

namespace {

// integer lattice membership of v in the column span of cols, by Hermite
// forward reduction; root coordinates keep every entry tiny
bool lattice_contains(std::vector<std::vector<long>> cols,
                      std::vector<long> v) {
  auto all_zero = [](const std::vector<long>& w) {
    return std::all_of(w.begin(), w.end(), [](long x) { return x == 0; });
  };
  if (all_zero(v)) return true;
  size_t r = v.size(), c0 = 0;
  for (size_t row = 0; row < r && c0 < cols.size(); ++row) {
    for (size_t c = c0 + 1; c < cols.size(); ++c)
      while (cols[c][row] != 0) {
        long q = cols[c0][row] / cols[c][row];
        for (size_t i = 0; i < r; ++i) cols[c0][i] -= q * cols[c][i];
        std::swap(cols[c0], cols[c]);
      }
    if (cols[c0][row] == 0) continue;
    if (v[row] % cols[c0][row] != 0) return false;
    long q = v[row] / cols[c0][row];
    for (size_t i = 0; i < r; ++i) v[i] -= q * cols[c0][i];
    ++c0;
  }
  return all_zero(v);
}

}  // namespace

std::vector<int> family_members(const LieAlg& g, const AdxGrading& gr,
                                int alpha) {
  if (alpha < 0 || alpha >= g.dim || g.root_of[alpha].empty() ||
      gr.deg2_of[alpha] <= 0)
    throw std::invalid_argument("family base must be a positive-degree root");
  std::vector<std::vector<long>> q0;
  for (int j : gr.delta0_pos)
    q0.emplace_back(g.root_of[j].begin(), g.root_of[j].end());
  std::vector<int> members;
  for (int j = 0; j < g.dim; ++j) {
    if (g.root_of[j].empty() || gr.deg2_of[j] <= 0) continue;
    std::vector<long> d(g.root_of[j].size());
    for (size_t l = 0; l < d.size(); ++l)
      d[l] = (long)g.root_of[j][l] - g.root_of[alpha][l];
    if (!lattice_contains(q0, d)) continue;
    if (gr.deg2_of[j] != gr.deg2_of[alpha])
      throw std::logic_error("family member with mismatched degree");
    members.push_back(j);
  }
  return members;
}

}  // namespace walg
