// Finite-dimensional reductive Lie algebra data with exact rational
// structure constants, sl2-triples, ad_x gradings and the condition-(F)
// checker on the loop algebra.
//
// Basis layout for built-ins: Cartan h1..hn first, then positive root
// vectors ordered by (height, lex), then the matching negative root vectors.
// The bilinear form is the defining-representation trace form; for A_n and
// C_n this is already normalized so long roots have square length 2.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "walg/linalg.hpp"
#include "walg/poly.hpp"

namespace walg {

using Elt = std::vector<mpq_class>;  // coefficients over the algebra basis

struct LieAlg {
  std::string type;                  // "A1", "C2", "gl1", "gl2", "user", ...
  int dim = 0;
  int cartan_dim = 0;                // basis[0..cartan_dim) spans the Cartan
  std::vector<std::string> labels;   // valid grammar identifiers
  // brk[i][j] = [v, (i,j)-bracket coefficients], sparse rows of ad
  std::vector<std::vector<std::vector<std::pair<int, mpq_class>>>> brk;
  std::vector<std::vector<mpq_class>> form;  // kappa(b_i, b_j)
  std::vector<Elt> dual;  // dual[i] solves kappa(dual[i], b_j) = delta_ij
  // root coordinates over simple roots for root-vector indices; empty for
  // Cartan indices. Present for built-ins, optional for user tables.
  std::vector<std::vector<int>> root_of;
  int theta_index = -1;  // highest-root vector, when root data is present

  bool is_cartan_index(int i) const { return i < cartan_dim; }
};

Elt zero_elt(const LieAlg& g);
Elt basis_elt(const LieAlg& g, int i);
bool is_zero(const Elt& a);
Elt add(const Elt& a, const Elt& b);
Elt sub(const Elt& a, const Elt& b);
Elt scale(const mpq_class& c, const Elt& a);
Elt bracket(const LieAlg& g, const Elt& a, const Elt& b);
mpq_class pair_form(const LieAlg& g, const Elt& a, const Elt& b);
// coefficient vector of the kappa-dual of a
Elt dual_of(const LieAlg& g, const Elt& a);
// exact Jacobi check on one basis triple
bool jacobi_ok(const LieAlg& g, int i, int j, int l);
// basis of the center, computed as the joint kernel of ad(b_j)
std::vector<Elt> center(const LieAlg& g);

// built-ins: "A1".."A9", "C2".."C9" (simple), "gl1", "gl2" (reductive)
LieAlg build_simple(const std::string& type_label);
LieAlg build_reductive(const std::string& type_label);

struct Sl2Triple {
  Elt e, h, f;  // [e,f]=h, [h,e]=2e, [h,f]=-2f; x = h/2
};

Sl2Triple principal_triple(const LieAlg& g);
// type C partition triples; supported partitions: (2,2,...,2) and (2n)
Sl2Triple partition_triple(const LieAlg& g, const std::vector<int>& parts);

struct AdxGrading {
  std::vector<int> deg2_of;        // 2 * (ad_x eigenvalue) per basis index
  std::map<int, std::vector<int>> pieces;  // 2j -> basis indices
  int depth2 = 0;                  // 2d
  std::vector<int> Pi;             // indecomposable positive root vectors
  std::vector<int> Pi_half, Pi_1;  // Pi at degree 1/2 resp. 1
  std::vector<int> delta0_pos;     // positive roots of degree 0
  bool integral = false;           // condition (F1)

  int deg2(int i) const { return deg2_of[i]; }
};

AdxGrading grade(const LieAlg& g, const Sl2Triple& t);

// [alpha]: positive-degree roots congruent to alpha modulo the root lattice
// of the degree-0 roots; alpha must be a positive-degree root index
std::vector<int> family_members(const LieAlg& g, const AdxGrading& gr,
                                int alpha);

// default choice y = e_theta for the cyclic element s = f + y t^{-1}
Elt default_y(const LieAlg& g, const AdxGrading& gr);

struct FReport {
  bool f1 = false;             // integral grading
  bool f2 = false;             // min poly of ad_s over Q(t) squarefree
  bool f3_abelian = false;     // Ker(ad_s) abelian
  bool f3_image = false;       // Im(ad_s) meets degree 0 in all of g_0
  UPoly<RatFunc> min_poly;     // monic, coefficients in Q(t)
  int kernel_dim = 0;          // dim over Q(t) of Ker(ad_s)
  int image_rank = 0, g0_dim = 0;
  bool pass() const { return f1 && f2 && f3_abelian && f3_image; }
};

// y must lie in g_d (y = 0 is allowed and fails (F2) whenever f != 0)
FReport check_condition_F(const LieAlg& g, const Sl2Triple& t, const AdxGrading& gr,
                          const Elt& y);

}  // namespace walg
