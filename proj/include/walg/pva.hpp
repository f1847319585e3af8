// Concrete Poisson vertex algebras (affine, beta-gamma, tensor products),
// local functionals V/(dV + C) with canonical coset representatives, and the
// eta map from functionals to evolutionary derivations.
#pragma once

#include <memory>

#include "walg/lambda.hpp"
#include "walg/liealg.hpp"

namespace walg {

// owns its variable table; bracket-table and polynomial pointers reference it,
// so the object is pinned to the heap and never copied
struct Pva {
  VarTable vt;
  BracketTable H;
  std::string tag;
  std::map<int, int> var_of_basis;  // Lie-algebra basis index -> var id

  Pva() { H.vt = &vt; }
  Pva(const Pva&) = delete;
  Pva& operator=(const Pva&) = delete;
};

// affine PVA on the span of the given basis indices (must be closed under the
// bracket); form defaults to the algebra's invariant form and is validated
// for symmetry and invariance on the subalgebra
std::unique_ptr<Pva> affine_pva(const LieAlg& g, const std::vector<int>& sub,
                                const RatFunc& level,
                                const Mat<mpq_class>* form = nullptr);
std::unique_ptr<Pva> affine_pva(const LieAlg& g, const RatFunc& level);

// beta-gamma system F(g_1/2): even weight-1/2 generators Phi_<label> for the
// weight-1/2 root vectors, {Phi_a lam Phi_b} = (f|[e_a,e_b]); the pairing
// must be nondegenerate unless the half piece is empty
std::unique_ptr<Pva> bg_system(const LieAlg& g, const AdxGrading& gr,
                               const Elt& f);

// tensor product: disjoint union of generators, cross brackets zero
std::unique_ptr<Pva> tensor(const Pva& a, const Pva& b);

// rebuilds p over another table, matching variables by name
DiffPoly transplant(const DiffPoly& p, const VarTable* nvt);

// local functional: class of p in V/(dV + C); rep is canonical (no constant
// term, each weight piece reduced against the echelon basis of d(V))
struct LocalFunctional {
  DiffPoly rep;
  bool is_zero() const { return rep.is_zero(); }
  std::string render() const;
  friend bool operator==(const LocalFunctional&,
                         const LocalFunctional&) = default;
};

LocalFunctional functional(const DiffPoly& p);

// [F, G] via the variational formula: sum_{i,j} (dR g/dR u_j) {u_i d u_j}->
// (dL f/dL u_i), then the canonical projection
LocalFunctional local_bracket(const LocalFunctional& F,
                              const LocalFunctional& G, const Pva& P);

// even evolutionary derivation, determined by its generator values
struct Derivation {
  const VarTable* vt = nullptr;
  std::vector<DiffPoly> val;  // val[id] = X(u_id)
  bool is_zero() const;
  DiffPoly apply(const DiffPoly& p) const;
};

Derivation eta(const LocalFunctional& F, const Pva& P);

// basis of Ker(eta) on functionals of weight2 in [1, weight2_bound]
std::vector<LocalFunctional> eta_kernel(const Pva& P, int weight2_bound);

}  // namespace walg
