// Screening-operator families on V^k(g_0) (x) F(g_1/2), joint kernels
// realizing the classical W-algebra, and hierarchy commutativity
// certificates.
#pragma once

#include <array>

#include "walg/pva.hpp"

namespace walg {

// one family per indecomposable alpha: members [alpha] = Delta_{>0} cap
// (alpha + Q_0), their generator actions, and the commutator rule
// [Q_a, d] = sum_b C_{a,b} Q_b with C linear in the g_0 variables
struct ScreeningFamily {
  int base = -1;             // basis index of alpha
  int deg2 = 0;              // shared doubled ad_x degree of the members
  int shift2 = 0;            // doubled weight shift of every member's action
  std::vector<int> members;  // ascending basis indices
  std::map<int, std::vector<DiffPoly>> gen_action;  // member -> value per var
  std::map<std::pair<int, int>, DiffPoly> comm;     // (member, member) -> C
};

struct WSetup {
  LieAlg g;
  Sl2Triple t;
  AdxGrading gr;
  RatFunc level;
  std::unique_ptr<Pva> amb;  // V^k(g_0) (x) F(g_1/2)
  std::vector<ScreeningFamily> fams;
  // memoized member action on derivative variables, keyed
  // (family, member, var, order)
  mutable std::map<std::array<int, 4>, DiffPoly> memo;

  WSetup() = default;
  WSetup(const WSetup&) = delete;
  WSetup(WSetup&&) = default;
};

// alpha must be a basis index listed in gr.Pi
ScreeningFamily build_family(const LieAlg& g, const Sl2Triple& t,
                             const AdxGrading& gr, int alpha,
                             const RatFunc& level, const Pva& amb);

WSetup build_w_setup(const LieAlg& g, const Sl2Triple& t, const RatFunc& level);

// the member's derivation applied to p; member is a basis index in the family
DiffPoly screen_apply(const WSetup& S, int fam, int member, const DiffPoly& p);
// base member shorthand
DiffPoly screen_apply(const WSetup& S, int fam, const DiffPoly& p);

struct KernelBasis {
  // weight2 -> echelonized basis, leading coefficient 1, re-verified
  std::map<int, std::vector<DiffPoly>> by_weight2;
  // monic denominators met in the pipeline; their roots are the excluded k
  std::vector<Poly> bad_k;
  int weight2_max = -1;
};

KernelBasis joint_kernel(const WSetup& S, int weight2_max);

// kernel basis modulo d-images of the next-lower weight's kernel
std::map<int, std::vector<DiffPoly>> kernel_generators(const WSetup& S,
                                                       const KernelBasis& kb);

// every lambda-coefficient of every pairwise bracket annihilated by all
// screenings
bool check_subalgebra(const WSetup& S, const KernelBasis& kb);

struct Hierarchy {
  std::vector<LocalFunctional> hams;
  std::vector<int> weight_of;                    // plain weight per functional
  std::vector<std::tuple<int, int, bool>> pairs;  // (i, j, commutes)
  bool all_commute = true;
};

// integer weights; kb must reach weight2 = 2 * max(weights)
Hierarchy hamiltonians(const WSetup& S, const KernelBasis& kb,
                       const std::vector<int>& weights);

}  // namespace walg
