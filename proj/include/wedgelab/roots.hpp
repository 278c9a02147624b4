#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wedgelab/liealg.hpp"
#include "wedgelab/ratlp.hpp"

namespace wl {

struct RestrictedRoot {
  Vec alpha;    // values on the columns of the chosen abelian subspace basis
  Mat space;    // coordinate columns, orthonormal
  bool compact = false;
  Vec coroot;   // coordinate vector, lies in the abelian subspace
  Vec coroot_a; // coefficients of the coroot on the a-basis
};

struct RootSystem {
  Mat a_basis;
  std::vector<RestrictedRoot> roots;
  Mat centralizer;  // centralizer of the abelian subspace, coordinate columns
};

// Checks the basis spans a maximal abelian subspace of q intersect p whose
// ad action is self-adjoint for the trace form. Throws on any violation.
void verify_cartan_subspace(const SymmetricPair& p, const Mat& a_basis);

// Greedy construction of such a subspace; deterministic for a fixed pair.
Mat find_max_abelian_hyperbolic(const SymmetricPair& p);

// Joint eigenspace decomposition of the commuting ad family.
RootSystem restricted_roots(const SymmetricPair& p, const Mat& a_basis);

// Fills the compact flags. Two independent routes (pointwise fixing under
// tau composed with theta, and vanishing on the center of q intersect p)
// must agree, otherwise this throws.
void classify_roots(const SymmetricPair& p, RootSystem& rs);

void compute_coroots(const SymmetricPair& p, RootSystem& rs);

// Coefficients of x on the a-basis; throws if x is not in the span.
Vec a_coefficients(const RootSystem& rs, const Vec& x);
double eval_root(const RestrictedRoot& root, const Vec& x_a);

// Indices of noncompact roots whose value vector is lexicographically positive.
std::vector<int> noncompact_positive_lex(const RootSystem& rs);

// Greedy maximal set of pairwise strongly orthogonal roots from `candidates`.
std::vector<int> strongly_orthogonal_set(const RootSystem& rs,
                                         const std::vector<int>& candidates);

// Dimension of the Lie span of one vector per listed root space together
// with its theta image.
int gamma_subalgebra_dim(const SymmetricPair& p, const RootSystem& rs,
                         const std::vector<int>& gamma);

struct CausalStructure {
  Vec h_causal;                     // coordinate vector, inside the a-span
  Vec h_causal_a;                   // its a-coefficients
  std::vector<int> pos_noncompact;  // roots with value +1 on h_causal
  std::vector<int> gamma;           // strongly orthogonal subset of the above
};

// Builds the causal grading element as half the sum of the coroots of a
// sign-adjusted strongly orthogonal system. If a cone margin functional is
// supplied it fixes the overall orientation.
CausalStructure causal_structure(const SymmetricPair& p, RootSystem& rs,
                                 const std::function<double(const Vec&)>& cone_margin);

// Group generated by the reflections of the compact roots, acting on
// a-coefficients. Throws if the closure exceeds the cap.
std::vector<Mat> weyl_group_k(const RootSystem& rs, int cap = 10000);

struct ConePairA {
  Mat min_generators;  // columns: coroot coefficients of positive noncompact roots
  Mat max_normals;     // rows: value vectors of positive noncompact roots
};
ConePairA cone_min_max(const RootSystem& rs, const CausalStructure& cs);

struct ConeChecks {
  bool min_pointed = false;
  bool min_generating = false;
  bool max_solid = false;
  bool inclusion = false;
};
// Exact rational certificates for the cone pair.
ConeChecks certify_cones(const ConePairA& cones);

// Smallest inequality margin of the outer cone at x (a-coefficients).
double max_cone_margin(const ConePairA& cones, const Vec& x_a);

// max over noncompact roots of |alpha(x)| and twice that over compact roots.
double s_of(const RootSystem& rs, const Vec& x_a);

struct CPiEval {
  double cone_margin;
  double s_value;
};
CPiEval c_pi_eval(const RootSystem& rs, const ConePairA& cones, const Vec& x_a);

}  // namespace wl
