// Differential polynomial superalgebra with coefficients in Q(k).
//
// Monomials are canonical: factors sorted by (variable rank, derivative
// order descending), odd factors never repeated, Koszul signs absorbed into
// the coefficient during normalization. Variable ranks order the table by
// (weight, registration id), so the monomial order is graded and then
// lexicographic on the canonical factor sequence; all maps iterate in that
// order, which makes every downstream computation deterministic.
//
// Weights are stored doubled (weight2) so the half-integer weights of the
// Phi variables stay integral.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "walg/poly.hpp"

namespace walg {

struct VarInfo {
  std::string name;
  bool odd = false;
  int weight2 = 2;
};

class VarTable {
 public:
  // returns the variable id; name must be a fresh identifier, not reserved
  int add(const std::string& name, bool odd, int weight2);
  void freeze();  // computes ranks; add() afterwards throws
  bool frozen() const { return frozen_; }

  int size() const { return (int)vars_.size(); }
  int id_of(const std::string& name) const;  // -1 if absent
  int rank_of_id(int id) const {
    if (!frozen_) throw std::logic_error("variable table not frozen");
    return rank_of_[id];
  }
  int id_at(int rank) const { return id_at_rank_[rank]; }
  const VarInfo& by_rank(int rank) const { return vars_[id_at_rank_[rank]]; }
  const VarInfo& by_id(int id) const { return vars_[id]; }

 private:
  std::vector<VarInfo> vars_;
  std::map<std::string, int> index_;
  std::vector<int> rank_of_, id_at_rank_;
  bool frozen_ = false;
};

struct Factor {
  int vr;   // variable rank in the table
  int ord;  // derivative order >= 0
  int exp;  // >= 1; == 1 for odd variables
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Mono {
  int w2 = 0;  // cached total weight2
  std::vector<Factor> fs;
  bool is_one() const { return fs.empty(); }
  friend bool operator==(const Mono&, const Mono&) = default;
};

// graded, then lexicographic on the canonical factor sequence
bool mono_less(const Mono& a, const Mono& b);
struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const { return mono_less(a, b); }
};

int mono_parity(const VarTable& vt, const Mono& m);  // 0 even, 1 odd

enum class Side { left, right };

class DiffPoly {
 public:
  using Terms = std::map<Mono, RatFunc, MonoLess>;

  DiffPoly() : vt_(nullptr) {}
  explicit DiffPoly(const VarTable* vt) : vt_(vt) {}
  static DiffPoly constant(const VarTable* vt, const RatFunc& c);
  static DiffPoly var(const VarTable* vt, int id, int ord = 0);

  const VarTable* table() const { return vt_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  RatFunc constant_term() const;
  RatFunc coeff(const Mono& m) const;

  // adds c * (normalized monomial built from raw factors)
  void add_term(std::vector<Factor> raw, RatFunc c);

  friend DiffPoly operator+(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator-(const DiffPoly& a);
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend bool operator==(const DiffPoly& a, const DiffPoly& b) {
    return a.t_ == b.t_;
  }
  DiffPoly& operator+=(const DiffPoly& b) { return *this = *this + b; }
  DiffPoly& operator-=(const DiffPoly& b) { return *this = *this - b; }
  DiffPoly& operator*=(const DiffPoly& b) { return *this = *this * b; }

  DiffPoly scaled(const RatFunc& c) const;

  // parity: 0 even, 1 odd, -1 mixed; zero counts as even
  int parity() const;
  // two even/odd parts; their sum is the polynomial
  std::pair<DiffPoly, DiffPoly> parity_split() const;
  // weight2 when weight-homogeneous, -1 when mixed; zero counts as any
  int weight2() const;
  std::map<int, DiffPoly> weight_split() const;

  DiffPoly d() const;  // total derivative
  DiffPoly dn(int n) const;
  // graded partial derivative with respect to var id's n-th derivative
  DiffPoly partial(int id, int n, Side side) const;
  // variational derivative: sum_n (-d)^n applied to the matching partial
  DiffPoly variational(int id, Side side) const;
  int max_order(int id) const;  // highest n with u_id^{(n)} present, -1 if none

  std::string render() const;

 private:
  const VarTable* vt_;
  Terms t_;
};

DiffPoly parse_diffpoly(const VarTable* vt, const std::string& text);

// all canonical monomials of exact weight2 w2 (w2 == 0 gives {1} when
// include_one); sorted by mono_less
std::vector<Mono> monomials_of_weight2(const VarTable& vt, int w2,
                                       bool include_one);

// coordinates of p against an indexed monomial basis; throws when a monomial
// of p is missing from the index
std::vector<RatFunc> coords_of(const DiffPoly& p,
                               const std::map<Mono, int, MonoLess>& index);

// witness b with d(b) == p, or nullopt; p must have zero constant term
std::optional<DiffPoly> antiderivative(const DiffPoly& p);
bool is_total_derivative(const DiffPoly& p);

// evaluates every coefficient at k = k0; throws when a denominator vanishes
DiffPoly specialize(const DiffPoly& p, const mpq_class& k0);

}  // namespace walg
