#pragma once

#include <cstdint>
#include <vector>

#include "wedgelab/linop.hpp"
#include "wedgelab/sampling.hpp"

namespace wl {

// Diagonal nondegenerate symmetric bilinear form beta(x, y) = sum d_i x_i y_i.
struct QuadraticSpace {
  Vec diag;
};

// Signature (1, d): diag = (1, -1, ..., -1) with d+1 entries.
QuadraticSpace lorentz_space(int d);

double beta_form(const QuadraticSpace& s, const Vec& x, const Vec& y);
Cplx beta_form_c(const QuadraticSpace& s, const CVec& x, const CVec& y);

// Lorentzian pairing x0*y0 - <spatial, spatial>.
double lorentz_form(const Vec& x, const Vec& y);
Cplx lorentz_form_c(const CVec& x, const CVec& y);

// Membership margins: positive strictly inside, negative outside.
double future_cone_margin(const Vec& x);  // min(x0, [x,x])
double right_wedge_margin(const Vec& x);  // x1 - |x0|
bool in_future_cone(const Vec& x, double delta = 0.0);
bool in_right_wedge(const Vec& x, double delta = 0.0);

// s_x(y) = -y + 2 beta(x,y)/beta(x,x) x. Throws for isotropic x.
Vec point_symmetry(const QuadraticSpace& s, const Vec& x, const Vec& y);

// Geodesic exponential of the quadric through p: branch-safe closed form,
// with tangency of v enforced and the output re-verified on the quadric.
Vec quadric_exp(const QuadraticSpace& s, const Vec& p, const Vec& v);
// Truncated-series route through the two entire coefficient functions.
Vec quadric_exp_series(const QuadraticSpace& s, const Vec& p, const Vec& v,
                       int terms = 40);

// || Exp_p((2t-u) v) - s_{Exp_p(tv)}(Exp_p(uv)) ||.
double geodesic_residual(const QuadraticSpace& s, const Vec& p, const Vec& v,
                         double t, double u);

// Boost with complex time acting on the (z0, z1) block.
CVec boost_flow(const CVec& z, Cplx time);
CVec complexify(const Vec& x);
Vec tau_h_real(const Vec& x);  // (-x0, -x1, x2, ...)
CVec tau_h_bar(const CVec& z);
CVec kappa_h(const CVec& z);      // (-i z1, -i z0, z2, ...)
CVec kappa_h_inv(const CVec& z);  // (i z1, i z0, z2, ...)

// Margin of Im z in the future cone; when on_quadric is requested the
// membership additionally requires [z,z] = -1 within tolerance.
double tube_margin(const CVec& z);
bool in_tube(const CVec& z, bool on_quadric, double delta = 0.0);

// Fixed Chebyshev grid of 33 points in (0, pi) used for imaginary-time
// orbit scans; the middle node sits at pi/2.
const std::vector<double>& kms_time_grid();

// Minimum tube margin of the imaginary-time orbit over kms_time_grid().
double kms_margin_ds(const Vec& x);
bool kms_membership_ds(const Vec& x, double delta = 0.0);

// Deterministic samplers: a box sample of Minkowski space, and a global
// hyperboloid parametrization (exact quadric membership by construction).
Vec sample_minkowski_point(const IndexSampler& smp, std::uint64_t index, int d,
                           double box);
Vec sample_ds_point(const IndexSampler& smp, std::uint64_t index, int d);

// Inversion of the wedge chart of dS^d based at e2: rotation normalization
// of the spatial block, boost via atanh on the (x0, x1) block, geodesic
// parameter via atan2. A domain failure in any step means "outside".
struct ChartInversion {
  bool inside = false;
  double margin = 0.0;  // min(x1, x1^2 - x0^2)
  double boost = 0.0;
  double rho = 0.0;
  Vec axis;             // spatial unit direction (size d-1)
  double residual = 0.0;  // reconstruction error of the round trip
};
ChartInversion invert_wedge_chart(const Vec& x);

struct MembershipRow {
  Vec x;
  // One banding margin per route, commensurate across routes. For the
  // imaginary-time-orbit route this is the margin at the central grid
  // node; the boolean still requires every node.
  std::vector<double> margins;
  std::vector<int> member;  // per-route membership booleans (0/1)
  // +1 interior of every set, -1 exterior of every set, 0 within the
  // boundary band of some margin, 2 interior disagreement.
  int verdict = 0;
};

struct EqualityReport {
  int samples = 0;
  int interior = 0;
  int boundary = 0;
  int disagreements = 0;
  std::vector<MembershipRow> rows;
};

// Four-route right-wedge membership over box samples of R^{1,d}.
EqualityReport minkowski_wedge_equalities(int d, int n, std::uint64_t seed,
                                          bool parallel = false);
// Five-route wedge membership over hyperboloid samples of dS^d.
EqualityReport desitter_wedge_equalities(int d, int n, std::uint64_t seed,
                                         bool parallel = false);

}  // namespace wl
