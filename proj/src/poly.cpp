#include "walg/poly.hpp"

namespace walg {

static std::string render_q(const mpq_class& q) { return q.get_str(); }

std::string render_poly(const Poly& a, const std::string& sym) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    mpq_class co = a.coeff(i);
    if (co == 0) continue;
    bool neg = co < 0;
    mpq_class ab = neg ? mpq_class(-co) : co;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string var;
    if (i == 1)
      var = sym;
    else if (i > 1)
      var = sym + "^" + std::to_string(i);
    if (i == 0)
      out += render_q(ab);
    else if (ab == 1)
      out += var;
    else
      out += render_q(ab) + "*" + var;
  }
  return out;
}

void RatFunc::assign(Poly n, Poly d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  Poly g = gcd(n, d);
  if (!g.is_zero() && g.degree() >= 1) {
    Poly q, r;
    divrem(n, g, q, r);
    n = q;
    divrem(d, g, q, r);
    d = q;
  }
  if (n.is_zero()) {
    num = Poly();
    den = Poly(mpq_class(1));
    return;
  }
  mpq_class l = d.lead();
  for (auto& v : n.c) v /= l;
  for (auto& v : d.c) v /= l;
  num = n;
  den = d;
}

bool is_neg_leading(const RatFunc& a) { return a.num.lead() < 0; }

// a polynomial needs parentheses as a multiplicand or dividend when it has
// more than one term, or a coefficient fused with the symbol, or a sign
static bool needs_parens(const Poly& p) {
  if (p.is_zero()) return false;
  int nterms = 0;
  for (auto& x : p.c)
    if (x != 0) ++nterms;
  if (nterms > 1) return true;
  if (p.degree() >= 1 && p.lead() != 1) return true;
  if (p.degree() == 0 && p.c[0] < 0) return true;
  return false;
}

std::string render_ratfunc(const RatFunc& a, const std::string& sym) {
  std::string n = render_poly(a.num, sym);
  if (a.den.degree() == 0) return n;  // den == 1 by normalization
  if (needs_parens(a.num)) n = "(" + n + ")";
  return n + "/(" + render_poly(a.den, sym) + ")";
}

std::string render_upoly(const UPoly<RatFunc>& a, const std::string& xsym,
                         const std::string& csym) {
  if (a.is_zero()) return "0";
  std::string out;
  for (int i = a.degree(); i >= 0; --i) {
    RatFunc co = a.coeff(i);
    if (co.is_zero()) continue;
    bool neg = is_neg_leading(co);
    if (neg) co = -co;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string var;
    if (i == 1)
      var = xsym;
    else if (i > 1)
      var = xsym + "^" + std::to_string(i);
    std::string cs = render_ratfunc(co, csym);
    if (i == 0) {
      out += cs;
    } else if (co == RatFunc(1)) {
      out += var;
    } else {
      if (!co.is_constant() || co.constant() < 0) cs = "(" + cs + ")";
      out += cs + "*" + var;
    }
  }
  return out;
}

}  // namespace walg
