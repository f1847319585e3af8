#include "walg/diffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <stdexcept>

#include "walg/linalg.hpp"

namespace walg {

namespace {
const char* kReserved[] = {"k", "t", "lam", "mu"};

bool is_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha((unsigned char)s[0]) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum((unsigned char)c) || c == '_')) return false;
  return true;
}
}  // namespace

int VarTable::add(const std::string& name, bool odd, int weight2) {
  if (frozen_) throw std::logic_error("variable table is frozen");
  if (!is_ident(name)) throw std::invalid_argument("bad variable name: " + name);
  for (const char* r : kReserved)
    if (name == r) throw std::invalid_argument("reserved name: " + name);
  if (index_.count(name)) throw std::invalid_argument("duplicate variable: " + name);
  if (weight2 <= 0) throw std::invalid_argument("variable weight must be positive");
  index_[name] = (int)vars_.size();
  vars_.push_back({name, odd, weight2});
  return (int)vars_.size() - 1;
}

void VarTable::freeze() {
  if (frozen_) return;
  id_at_rank_.resize(vars_.size());
  for (int i = 0; i < (int)vars_.size(); ++i) id_at_rank_[i] = i;
  // stable: ids break weight ties, so registration order is part of the order
  std::stable_sort(id_at_rank_.begin(), id_at_rank_.end(),
                   [&](int a, int b) { return vars_[a].weight2 < vars_[b].weight2; });
  rank_of_.resize(vars_.size());
  for (int r = 0; r < (int)id_at_rank_.size(); ++r) rank_of_[id_at_rank_[r]] = r;
  frozen_ = true;
}

int VarTable::id_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

bool mono_less(const Mono& a, const Mono& b) {
  if (a.w2 != b.w2) return a.w2 < b.w2;
  size_t n = std::min(a.fs.size(), b.fs.size());
  for (size_t i = 0; i < n; ++i) {
    const Factor &x = a.fs[i], &y = b.fs[i];
    if (x.vr != y.vr) return x.vr < y.vr;
    if (x.ord != y.ord) return x.ord > y.ord;
    if (x.exp != y.exp) return x.exp > y.exp;
  }
  return a.fs.size() < b.fs.size();
}

int mono_parity(const VarTable& vt, const Mono& m) {
  int p = 0;
  for (const Factor& f : m.fs)
    if (vt.by_rank(f.vr).odd) p += f.exp;
  return p & 1;
}

DiffPoly DiffPoly::constant(const VarTable* vt, const RatFunc& c) {
  DiffPoly p(vt);
  if (!c.is_zero()) p.t_[Mono{}] = c;
  return p;
}

DiffPoly DiffPoly::var(const VarTable* vt, int id, int ord) {
  DiffPoly p(vt);
  p.add_term({{vt->rank_of_id(id), ord, 1}}, RatFunc(1));
  return p;
}

bool DiffPoly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

RatFunc DiffPoly::constant_term() const {
  auto it = t_.find(Mono{});
  return it == t_.end() ? RatFunc() : it->second;
}

RatFunc DiffPoly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? RatFunc() : it->second;
}

// normalizes the raw factor sequence: insertion sort into (rank, ord
// descending) order counting odd-odd transpositions, then merge of equal
// factors; an odd variable squared kills the term
void DiffPoly::add_term(std::vector<Factor> raw, RatFunc c) {
  if (!vt_) throw std::logic_error("DiffPoly without a variable table");
  if (!vt_->frozen()) throw std::logic_error("variable table not frozen");
  if (c.is_zero()) return;
  std::vector<Factor> fs;
  fs.reserve(raw.size());
  for (const Factor& f : raw) {
    if (f.exp == 0) continue;
    if (f.exp < 0 || f.ord < 0) throw std::invalid_argument("bad monomial factor");
    fs.push_back(f);
  }
  auto odd_of = [&](const Factor& f) {
    return vt_->by_rank(f.vr).odd && (f.exp & 1);
  };
  bool neg = false;
  for (size_t i = 1; i < fs.size(); ++i)
    for (size_t j = i; j > 0; --j) {
      Factor &p = fs[j - 1], &q = fs[j];
      if (p.vr < q.vr || (p.vr == q.vr && p.ord >= q.ord)) break;
      if (odd_of(p) && odd_of(q)) neg = !neg;
      std::swap(p, q);
    }
  Mono m;
  for (const Factor& f : fs) {
    if (!m.fs.empty() && m.fs.back().vr == f.vr && m.fs.back().ord == f.ord)
      m.fs.back().exp += f.exp;
    else
      m.fs.push_back(f);
  }
  for (const Factor& f : m.fs) {
    const VarInfo& v = vt_->by_rank(f.vr);
    if (v.odd && f.exp > 1) return;
    m.w2 += f.exp * (v.weight2 + 2 * f.ord);
  }
  if (neg) c = -c;
  auto [it, fresh] = t_.try_emplace(std::move(m), c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

static const VarTable* common_table(const DiffPoly& a, const DiffPoly& b) {
  const VarTable* va = a.table();
  const VarTable* vb = b.table();
  if (va && vb && va != vb) throw std::logic_error("mixed variable tables");
  return va ? va : vb;
}

DiffPoly operator+(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r(common_table(a, b));
  r.t_ = a.t_;
  for (const auto& [m, c] : b.t_) {
    auto [it, fresh] = r.t_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) r.t_.erase(it);
    }
  }
  return r;
}

DiffPoly operator-(const DiffPoly& a) {
  DiffPoly r = a;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

DiffPoly operator-(const DiffPoly& a, const DiffPoly& b) { return a + (-b); }

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r(common_table(a, b));
  for (const auto& [ma, ca] : a.t_)
    for (const auto& [mb, cb] : b.t_) {
      std::vector<Factor> fs = ma.fs;
      fs.insert(fs.end(), mb.fs.begin(), mb.fs.end());
      r.add_term(std::move(fs), ca * cb);
    }
  return r;
}

DiffPoly DiffPoly::scaled(const RatFunc& c) const {
  DiffPoly r(vt_);
  if (c.is_zero()) return r;
  r.t_ = t_;
  for (auto& [m, co] : r.t_) co *= c;
  return r;
}

int DiffPoly::parity() const {
  int p = -2;
  for (const auto& [m, c] : t_) {
    int q = mono_parity(*vt_, m);
    if (p == -2)
      p = q;
    else if (p != q)
      return -1;
  }
  return p == -2 ? 0 : p;
}

std::pair<DiffPoly, DiffPoly> DiffPoly::parity_split() const {
  DiffPoly ev(vt_), od(vt_);
  for (const auto& [m, c] : t_)
    (mono_parity(*vt_, m) ? od : ev).t_[m] = c;
  return {ev, od};
}

int DiffPoly::weight2() const {
  int w = -2;
  for (const auto& [m, c] : t_) {
    if (w == -2)
      w = m.w2;
    else if (w != m.w2)
      return -1;
  }
  return w == -2 ? 0 : w;
}

std::map<int, DiffPoly> DiffPoly::weight_split() const {
  std::map<int, DiffPoly> out;
  for (const auto& [m, c] : t_) {
    auto [it, fresh] = out.try_emplace(m.w2, DiffPoly(vt_));
    it->second.t_[m] = c;
  }
  return out;
}

DiffPoly DiffPoly::d() const {
  DiffPoly r(vt_);
  for (const auto& [m, c] : t_)
    for (size_t i = 0; i < m.fs.size(); ++i) {
      const Factor& f = m.fs[i];
      std::vector<Factor> fs = m.fs;
      fs[i] = {f.vr, f.ord + 1, 1};
      if (f.exp > 1) fs.insert(fs.begin() + i, Factor{f.vr, f.ord, f.exp - 1});
      r.add_term(std::move(fs), c * RatFunc((long)f.exp));
    }
  return r;
}

DiffPoly DiffPoly::dn(int n) const {
  DiffPoly r = *this;
  for (int i = 0; i < n; ++i) r = r.d();
  return r;
}

DiffPoly DiffPoly::partial(int id, int n, Side side) const {
  int rk = vt_->rank_of_id(id);
  bool odd = vt_->by_id(id).odd;
  DiffPoly r(vt_);
  for (const auto& [m, c] : t_) {
    int idx = -1;
    for (size_t i = 0; i < m.fs.size(); ++i)
      if (m.fs[i].vr == rk && m.fs[i].ord == n) {
        idx = (int)i;
        break;
      }
    if (idx < 0) continue;
    std::vector<Factor> fs = m.fs;
    RatFunc co = c;
    if (!odd) {
      co *= RatFunc((long)fs[idx].exp);
      if (--fs[idx].exp == 0) fs.erase(fs.begin() + idx);
    } else {
      // sign: odd factors the derivation moves across before reaching x
      int sgn = 0;
      if (side == Side::left) {
        for (int i = 0; i < idx; ++i)
          if (vt_->by_rank(fs[i].vr).odd && (fs[i].exp & 1)) sgn ^= 1;
      } else {
        for (int i = idx + 1; i < (int)fs.size(); ++i)
          if (vt_->by_rank(fs[i].vr).odd && (fs[i].exp & 1)) sgn ^= 1;
      }
      if (sgn) co = -co;
      fs.erase(fs.begin() + idx);
    }
    r.add_term(std::move(fs), co);
  }
  return r;
}

int DiffPoly::max_order(int id) const {
  int rk = vt_->rank_of_id(id);
  int mx = -1;
  for (const auto& [m, c] : t_)
    for (const Factor& f : m.fs)
      if (f.vr == rk) mx = std::max(mx, f.ord);
  return mx;
}

DiffPoly DiffPoly::variational(int id, Side side) const {
  DiffPoly r(vt_);
  int mx = max_order(id);
  for (int n = 0; n <= mx; ++n) {
    DiffPoly p = partial(id, n, side).dn(n);
    r += (n & 1) ? -p : p;
  }
  return r;
}

namespace {
void gen_rank(const VarTable& vt, int r, long prev_ord, int remaining,
              std::vector<Factor>& cur, std::vector<Mono>& out);

void gen_from(const VarTable& vt, int r, int remaining, std::vector<Factor>& cur,
              std::vector<Mono>& out) {
  if (r == vt.size()) {
    if (remaining == 0) {
      Mono m;
      m.fs = cur;
      for (const Factor& f : cur)
        m.w2 += f.exp * (vt.by_rank(f.vr).weight2 + 2 * f.ord);
      out.push_back(std::move(m));
    }
    return;
  }
  gen_rank(vt, r, LONG_MAX, remaining, cur, out);
}

void gen_rank(const VarTable& vt, int r, long prev_ord, int remaining,
              std::vector<Factor>& cur, std::vector<Mono>& out) {
  gen_from(vt, r + 1, remaining, cur, out);
  const VarInfo& v = vt.by_rank(r);
  long max_ord = std::min(prev_ord - 1, (long)(remaining - v.weight2) / 2);
  for (long ord = max_ord; ord >= 0; --ord) {
    int cost = v.weight2 + 2 * (int)ord;
    int max_exp = v.odd ? 1 : remaining / cost;
    for (int e = 1; e <= max_exp; ++e) {
      cur.push_back({r, (int)ord, e});
      gen_rank(vt, r, ord, remaining - e * cost, cur, out);
      cur.pop_back();
    }
  }
}
}  // namespace

std::vector<Mono> monomials_of_weight2(const VarTable& vt, int w2,
                                       bool include_one) {
  if (!vt.frozen()) throw std::logic_error("variable table not frozen");
  std::vector<Mono> out;
  if (w2 < 0) return out;
  if (w2 == 0) {
    if (include_one) out.push_back(Mono{});
    return out;
  }
  std::vector<Factor> cur;
  gen_from(vt, 0, w2, cur, out);
  std::sort(out.begin(), out.end(), mono_less);
  return out;
}

std::vector<RatFunc> coords_of(const DiffPoly& p,
                               const std::map<Mono, int, MonoLess>& index) {
  std::vector<RatFunc> v(index.size());
  for (const auto& [m, c] : p.terms()) {
    auto it = index.find(m);
    if (it == index.end()) throw std::logic_error("monomial outside the basis");
    v[it->second] = c;
  }
  return v;
}

std::optional<DiffPoly> antiderivative(const DiffPoly& p) {
  const VarTable* vt = p.table();
  DiffPoly wit(vt);
  for (const auto& [w2, piece] : p.weight_split()) {
    if (w2 <= 2) return std::nullopt;  // the image of d starts at weight2 3
    std::vector<Mono> cand = monomials_of_weight2(*vt, w2 - 2, false);
    std::map<Mono, int, MonoLess> row;
    for (const auto& [m, c] : piece.terms()) row.emplace(m, (int)row.size());
    std::vector<DiffPoly> img;
    img.reserve(cand.size());
    for (const Mono& m : cand) {
      DiffPoly b(vt);
      b.add_term(m.fs, RatFunc(1));
      DiffPoly db = b.d();
      for (const auto& [mm, cc] : db.terms()) row.emplace(mm, (int)row.size());
      img.push_back(std::move(db));
    }
    Mat<RatFunc> M((int)row.size(), (int)cand.size());
    for (int j = 0; j < (int)cand.size(); ++j)
      for (const auto& [mm, cc] : img[j].terms()) M.at(row.at(mm), j) = cc;
    std::vector<RatFunc> rhs(row.size());
    for (const auto& [m, c] : piece.terms()) rhs[row.at(m)] = c;
    auto x = solve(M, rhs);
    if (!x) return std::nullopt;
    for (int j = 0; j < (int)cand.size(); ++j) {
      if ((*x)[j].is_zero()) continue;
      DiffPoly b(vt);
      b.add_term(cand[j].fs, (*x)[j]);
      wit += b;
    }
  }
  if (!(wit.d() == p)) throw std::logic_error("antiderivative witness failed");
  return wit;
}

bool is_total_derivative(const DiffPoly& p) { return antiderivative(p).has_value(); }

DiffPoly specialize(const DiffPoly& p, const mpq_class& k0) {
  DiffPoly r(p.table());
  for (const auto& [m, c] : p.terms()) {
    mpq_class den = eval(c.den, k0);
    if (den == 0) throw std::domain_error("level specialization hits a pole");
    mpq_class v = eval(c.num, k0) / den;
    if (v == 0) continue;
    DiffPoly t(p.table());
    t.add_term(m.fs, RatFunc(v));
    r += t;
  }
  return r;
}

// rendering: terms in descending monomial order, signs folded into the
// separators, coefficient 1 dropped, multi-term coefficients parenthesized
static bool multi_term(const Poly& p) {
  int n = 0;
  for (const auto& x : p.c)
    if (x != 0) ++n;
  return n > 1;
}

static std::string mono_str(const VarTable& vt, const Mono& m) {
  std::string out;
  for (const Factor& f : m.fs) {
    if (!out.empty()) out += "*";
    out += vt.by_rank(f.vr).name;
    if (f.ord > 0) out += "[" + std::to_string(f.ord) + "]";
    if (f.exp > 1) out += "^" + std::to_string(f.exp);
  }
  return out;
}

std::string DiffPoly::render() const {
  if (t_.empty()) return "0";
  std::string out;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    RatFunc c = it->second;
    bool neg = is_neg_leading(c);
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (it->first.is_one()) {
      out += render_ratfunc(c, "k");
    } else if (c == RatFunc(1)) {
      out += mono_str(*vt_, it->first);
    } else {
      std::string cs = render_ratfunc(c, "k");
      if (c.den.degree() == 0 && multi_term(c.num)) cs = "(" + cs + ")";
      out += cs + "*" + mono_str(*vt_, it->first);
    }
  }
  return out;
}

namespace {
struct Tok {
  enum Kind { Int, Ident, Sym, End } kind;
  std::string s;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  Tok cur;
  explicit Lexer(const std::string& s) : src(s) { next(); }
  void next() {
    while (pos < src.size() && std::isspace((unsigned char)src[pos])) ++pos;
    if (pos >= src.size()) {
      cur = {Tok::End, ""};
      return;
    }
    char c = src[pos];
    if (std::isdigit((unsigned char)c)) {
      size_t b = pos;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
      cur = {Tok::Int, src.substr(b, pos - b)};
      return;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t b = pos;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_'))
        ++pos;
      cur = {Tok::Ident, src.substr(b, pos - b)};
      return;
    }
    if (std::string("+-*/^()[]").find(c) != std::string::npos) {
      ++pos;
      cur = {Tok::Sym, std::string(1, c)};
      return;
    }
    throw std::invalid_argument("unexpected character: " + std::string(1, c));
  }
};

struct Parser {
  Lexer lx;
  const VarTable* vt;
  Parser(const VarTable* v, const std::string& s) : lx(s), vt(v) {}

  bool sym(const char* s) {
    if (lx.cur.kind == Tok::Sym && lx.cur.s == s) {
      lx.next();
      return true;
    }
    return false;
  }
  void expect(const char* s) {
    if (!sym(s)) throw std::invalid_argument(std::string("expected '") + s + "'");
  }

  DiffPoly expr() {
    DiffPoly a = term();
    for (;;) {
      if (sym("+"))
        a += term();
      else if (sym("-"))
        a -= term();
      else
        return a;
    }
  }
  DiffPoly term() {
    DiffPoly a = unary();
    for (;;) {
      if (sym("*")) {
        a *= unary();
      } else if (sym("/")) {
        DiffPoly b = unary();
        if (!b.is_constant())
          throw std::invalid_argument("division by a non-constant");
        RatFunc c = b.constant_term();
        if (c.is_zero()) throw std::invalid_argument("division by zero");
        a = a.scaled(RatFunc(1) / c);
      } else {
        return a;
      }
    }
  }
  DiffPoly unary() {
    if (sym("-")) return -unary();
    return power();
  }
  DiffPoly power() {
    DiffPoly a = atom();
    if (sym("^")) {
      if (lx.cur.kind != Tok::Int)
        throw std::invalid_argument("exponent must be an integer");
      long e = std::stol(lx.cur.s);
      lx.next();
      DiffPoly r = DiffPoly::constant(vt, RatFunc(1));
      for (long i = 0; i < e; ++i) r *= a;
      return r;
    }
    return a;
  }
  DiffPoly atom() {
    if (lx.cur.kind == Tok::Int) {
      mpq_class v(lx.cur.s);
      lx.next();
      return DiffPoly::constant(vt, RatFunc(v));
    }
    if (lx.cur.kind == Tok::Ident) {
      std::string name = lx.cur.s;
      lx.next();
      if (name == "k") return DiffPoly::constant(vt, RatFunc::sym());
      int id = vt->id_of(name);
      if (id < 0) throw std::invalid_argument("unknown variable: " + name);
      int ord = 0;
      if (sym("[")) {
        if (lx.cur.kind != Tok::Int)
          throw std::invalid_argument("derivative order must be an integer");
        ord = (int)std::stol(lx.cur.s);
        lx.next();
        expect("]");
      }
      return DiffPoly::var(vt, id, ord);
    }
    if (sym("(")) {
      DiffPoly a = expr();
      expect(")");
      return a;
    }
    throw std::invalid_argument("unexpected token in expression");
  }
};
}  // namespace

DiffPoly parse_diffpoly(const VarTable* vt, const std::string& text) {
  Parser p(vt, text);
  DiffPoly r = p.expr();
  if (p.lx.cur.kind != Tok::End)
    throw std::invalid_argument("trailing input in expression");
  return r;
}

}  // namespace walg
