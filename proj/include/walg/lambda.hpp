// Polynomials in the formal symbol lam with DiffPoly coefficients, the
// master-formula lambda bracket over a generator bracket table, and the
// skew/Jacobi axiom checkers (Jacobi in two formal symbols lam, mu).
#pragma once

#include <utility>

#include "walg/diffpoly.hpp"

namespace walg {

mpq_class binom(int n, int k);

struct LambdaPoly {
  const VarTable* vt = nullptr;
  std::vector<DiffPoly> c;  // c[s] multiplies lam^s; trailing entry nonzero

  LambdaPoly() = default;
  explicit LambdaPoly(const VarTable* v) : vt(v) {}
  static LambdaPoly from(const DiffPoly& p);

  int degree() const { return (int)c.size() - 1; }
  bool is_zero() const { return c.empty(); }
  DiffPoly coeff(int s) const;
  void set(int s, const DiffPoly& p);
  void trim();
  // weight2 counting lam as weight 1; -1 when mixed, 0 for zero
  int weight2() const;
  std::string render() const;

  friend LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator-(const LambdaPoly& a);
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    return a.c == b.c;
  }
  LambdaPoly& operator+=(const LambdaPoly& b) { return *this = *this + b; }
  LambdaPoly& operator-=(const LambdaPoly& b) { return *this = *this - b; }
};

// h times every coefficient, h on the left, no differentiation
LambdaPoly lmul(const DiffPoly& h, const LambdaPoly& p);
LambdaPoly lam_shift(const LambdaPoly& p, int s);  // times lam^s
LambdaPoly scale(const LambdaPoly& p, const RatFunc& c);
// (lam + d)^n p with d acting on the coefficients
LambdaPoly lam_plus_d(const LambdaPoly& p, int n);
LambdaPoly lam_plus_d(const DiffPoly& a, int n);
// lam -> -lam-d with d acting on the coefficients (the left-arrow convention)
LambdaPoly subst_left_minus(const LambdaPoly& p);
// evaluate at lam = 0 after the arrow substitution: right differentiates the
// target only, left differentiates the coefficient
DiffPoly subst_arrow(const LambdaPoly& p, Side side, const DiffPoly& target);

struct BracketTable {
  const VarTable* vt = nullptr;
  // (i, j) -> {u_i lam u_j}; ids are VarTable ids, absent entries are zero
  std::map<std::pair<int, int>, LambdaPoly> e;

  void set(int i, int j, LambdaPoly p);
  const LambdaPoly* find(int i, int j) const;
};

// the master formula; f, g may be parity-mixed (split internally)
LambdaPoly master_bracket(const DiffPoly& f, const DiffPoly& g,
                          const BracketTable& H);

// element of V[lam, mu]: (lam power, mu power) -> coefficient
struct Lambda2Poly {
  std::map<std::pair<int, int>, DiffPoly> t;
  void add(int a, int b, const DiffPoly& p);
  bool is_zero() const { return t.empty(); }
  friend bool operator==(const Lambda2Poly&, const Lambda2Poly&) = default;
};

// axiom checks on parity-homogeneous elements
bool skew_holds(const BracketTable& H, const DiffPoly& f, const DiffPoly& g);
bool jacobi_holds(const BracketTable& H, const DiffPoly& f, const DiffPoly& g,
                  const DiffPoly& h);

struct AxiomWitness {
  bool ok = true;
  int i = -1, j = -1, l = -1;  // first violating generator pair/triple
};
AxiomWitness check_skew(const BracketTable& H);
AxiomWitness check_jacobi(const BracketTable& H);

}  // namespace walg
