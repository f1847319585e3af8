// Truncated loop-group model of the geometric realization.
//
// The loop algebra g((t)) carries the extended grading deg(X t^n) =
// deg(X) + (d+1)n for an integral ad_x grading of depth d. Coordinates z_a,
// one per loop basis element of extended degree 1..N, present the unipotent
// group element through its logarithm K = exp(Z). Adjoint and BCH series
// terminate inside the truncation window, so every identity checked here is
// an exact statement about the window, never an approximation; verifiers
// report the window they actually covered.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "walg/diffpoly.hpp"
#include "walg/liealg.hpp"

namespace walg {

// loop-algebra element with coordinate-ring coefficients, keyed by
// (basis index, t-power); absent keys are zero
struct LoopElt {
  std::map<std::pair<int, int>, DiffPoly> c;
  bool is_zero() const { return c.empty(); }
};

struct VerifyReport {
  std::string identity;
  int N = 0;
  int window = 0;   // largest coordinate degree covered by the check
  int checked = 0;  // instances compared
  bool ok = true;
  std::string counterexample;  // first failing instance, empty when ok
};

// owns the coordinate table; polynomial coefficients reference it, so the
// object is pinned to the heap and never copied
struct LoopCtx {
  LieAlg g;
  Sl2Triple t;
  AdxGrading gr;
  Elt y;
  RatFunc level;
  int N = 0;
  int d = 0;  // grading depth
  VarTable zt;
  std::vector<std::pair<int, int>> pos;    // z id -> (basis, t-power)
  std::map<std::pair<int, int>, int> zid;  // (basis, t-power) -> z id
  LoopElt adk_s;                           // K s K^{-1}
  std::vector<DiffPoly> stab;              // s^R z_id
  std::vector<DiffPoly> ecoord;            // E_b per basis index, g_0 only

  LoopCtx() = default;
  LoopCtx(const LoopCtx&) = delete;
  LoopCtx& operator=(const LoopCtx&) = delete;
};

// y defaults to default_y when absent; requires an integral grading and a
// level with nonzero value
std::unique_ptr<LoopCtx> build_loop_ctx(const LieAlg& g, const Sl2Triple& t,
                                        const Elt& y, const RatFunc& level,
                                        int N);

int ext_deg(const LoopCtx& C, int basis, int tpow);
LoopElt basis_loop(const LoopCtx& C, int basis, int tpow);
LoopElt s_elt(const LoopCtx& C);  // f + y t^{-1}

LoopElt lbracket(const LoopCtx& C, const LoopElt& a, const LoopElt& b);

// K^{+-1} v K^{-+1} as a terminating exponential-adjoint series
LoopElt adjoint(const LoopCtx& C, const LoopElt& v, bool inverse = false);

// components of strictly positive (resp. nonpositive) extended degree
LoopElt split_pos(const LoopCtx& C, const LoopElt& v);
LoopElt split_neg(const LoopCtx& C, const LoopElt& v);

// E_b = k(e_b | K s K^{-1}); b must index a degree-0 basis element
DiffPoly E_coord(const LoopCtx& C, int b);

// infinitesimal actions on the coordinate ring, as derivations: the
// epsilon-linear terms of F(e^{-eps u} K) and of F(e^{eps (K v K^{-1})_+} K)
DiffPoly left_action(const LoopCtx& C, const LoopElt& u, const DiffPoly& F);
DiffPoly right_action(const LoopCtx& C, const LoopElt& v, const DiffPoly& F);

// value tables tab[id] = action on z_id; apply_deriv extends them to
// polynomials by the Leibniz rule
std::vector<DiffPoly> left_table(const LoopCtx& C, const LoopElt& u);
std::vector<DiffPoly> right_table(const LoopCtx& C, const LoopElt& v);
DiffPoly apply_deriv(const LoopCtx& C, const std::vector<DiffPoly>& tab,
                     const DiffPoly& F);

// basis of Ker(ad_s) in extended degree q > 0, with rational constants
std::vector<LoopElt> centralizer_basis(const LoopCtx& C, int q);

// [u^L, v^R] == ([u, (K v K^{-1})_-]_+)^L on all coordinates of degree
// <= N - (deg u + 1)
VerifyReport verify_lemma_3_1(const LoopCtx& C, const LoopElt& u,
                              const LoopElt& v);
// sweep: u over the positive basis with margin, v over s and the loop basis
// elements of degree -1..1
VerifyReport verify_lemma_3_1_suite(const LoopCtx& C);

struct Main2Report {
  VerifyReport pairing;     // u_al^L E_bt == (f | [e_bt, e_al])
  VerifyReport commutator;  // [u_al^L, s^R] == (1/k) sum c E u^L
  VerifyReport cotangent;   // rank {ad_s^q e_al} per degree q = 1..N
  bool pass() const {
    return pairing.ok && commutator.ok && cotangent.ok;
  }
};

Main2Report verify_main2(const LoopCtx& C);

// expresses [s^R, e_bt^L] = sum_al A_bt^al e_al^L by a graded forward solve
// and matches -A against (1/k) sum_gm E_{dual gm} c_{bt,gm}^al + c_{bt,s}^al
VerifyReport verify_lemma_4_2(const LoopCtx& C);

}  // namespace walg
