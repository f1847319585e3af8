// Dense univariate polynomials over a field, plus the rational function
// fields Q(k), Q(t) built on top of UPoly<mpq_class>. The indeterminate is
// anonymous; callers name it ("k", "t", "x") only when rendering. RatFunc is
// kept reduced with a monic denominator, so equality is coefficient equality.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace walg {

template <class F>
struct UPoly {
  // c[i] is the coefficient of x^i; invariant: c.empty() or c.back() != 0
  std::vector<F> c;

  UPoly() = default;
  explicit UPoly(const F& a) {
    if (!(a == F(0))) c.push_back(a);
  }
  static UPoly monomial(const F& a, int deg) {
    UPoly p;
    if (a == F(0)) return p;
    p.c.assign(deg + 1, F(0));
    p.c[deg] = a;
    return p;
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return (int)c.size() - 1; }  // -1 for zero
  void trim() {
    while (!c.empty() && c.back() == F(0)) c.pop_back();
  }

  F coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : F(0); }
  F lead() const { return c.empty() ? F(0) : c.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
    r.trim();
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), F(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    r.trim();
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, F(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == F(0)) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c == b.c; }

  UPoly& operator+=(const UPoly& b) { return *this = *this + b; }
  UPoly& operator-=(const UPoly& b) { return *this = *this - b; }
  UPoly& operator*=(const UPoly& b) { return *this = *this * b; }
};

// quotient and remainder; b must be nonzero
template <class F>
void divrem(const UPoly<F>& a, const UPoly<F>& b, UPoly<F>& q, UPoly<F>& r) {
  if (b.is_zero()) throw std::domain_error("poly division by zero");
  q = UPoly<F>();
  r = a;
  int db = b.degree();
  while (!r.is_zero() && r.degree() >= db) {
    int d = r.degree() - db;
    F f = r.lead() / b.lead();
    UPoly<F> m = UPoly<F>::monomial(f, d);
    q += m;
    r -= m * b;
  }
}

// monic gcd; gcd(0,0) = 0
template <class F>
UPoly<F> gcd(const UPoly<F>& a, const UPoly<F>& b) {
  UPoly<F> x = a, y = b;
  while (!y.is_zero()) {
    UPoly<F> q, r;
    divrem(x, y, q, r);
    x = y;
    y = r;
  }
  if (!x.is_zero()) {
    F l = x.lead();
    for (auto& v : x.c) v = v / l;
  }
  return x;
}

template <class F>
UPoly<F> derivative(const UPoly<F>& a) {
  UPoly<F> r;
  if (a.degree() < 1) return r;
  r.c.resize(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) r.c[i - 1] = F((long)i) * a.c[i];
  r.trim();
  return r;
}

template <class F>
F eval(const UPoly<F>& a, const F& x) {
  F v(0);
  for (size_t i = a.c.size(); i > 0; --i) v = v * x + a.c[i - 1];
  return v;
}

using Poly = UPoly<mpq_class>;

// "2*k^2 + k - 3"; sym names the indeterminate
std::string render_poly(const Poly& a, const std::string& sym);

struct RatFunc {
  Poly num, den;  // den monic, gcd(num,den)=1, den never zero

  RatFunc() : den(Poly(mpq_class(1))) {}
  RatFunc(const mpq_class& a) : num(Poly(a)), den(Poly(mpq_class(1))) {}
  RatFunc(long a) : RatFunc(mpq_class(a)) {}
  RatFunc(const Poly& n, const Poly& d) { assign(n, d); }
  static RatFunc sym() {  // the indeterminate itself
    return RatFunc(Poly::monomial(1, 1), Poly(mpq_class(1)));
  }

  void assign(Poly n, Poly d);
  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.degree() <= 0 && den.degree() == 0; }
  mpq_class constant() const {  // valid only if is_constant()
    return num.is_zero() ? mpq_class(0) : num.c[0];
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("rational function division by zero");
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num = -r.num;
    return r;
  }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num == b.num && a.den == b.den;
  }

  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }
};

// numerator-leading-coefficient sign; used to render "a - b" instead of "a + -b"
bool is_neg_leading(const RatFunc& a);
// "(num)/(den)" minimal-paren form; reparsable by the expression grammar
std::string render_ratfunc(const RatFunc& a, const std::string& sym);
// monic-in-x polynomial with RatFunc coefficients, e.g. "x^3 - (4/t)*x"
std::string render_upoly(const UPoly<RatFunc>& a, const std::string& xsym,
                         const std::string& csym);

}  // namespace walg
