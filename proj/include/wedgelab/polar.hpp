#pragma once

#include <vector>

#include "wedgelab/liealg.hpp"

namespace wl {

// Polar-map analysis bundle: a defining involution tau with eigensplit
// g = h + q, a second commuting involution sigma, and the subalgebra
// q_L = q + [q, q] whose ad-spectra decide regularity.
struct PolarContext {
  LieAlgebra g;
  Mat tau;
  Mat sigma;
  Mat h_basis;    // fix(tau)
  Mat q_basis;    // (-1)-space of tau
  Mat gs_basis;   // fix(sigma)
  Mat qs_basis;   // q intersect fix(sigma)
  Mat qms_basis;  // q intersect (-1)-space of sigma
  Mat qL_basis;   // q + [q, q]
};

// Validates involutivity, commutation, the automorphism property of both
// maps, and bracket stability of q_L.
PolarContext make_polar_context(const LieAlgebra& g, const Mat& tau,
                                const Mat& sigma);

// e^{-2 ad x} and e^{-ad x} as coordinate operators.
Mat sigma_x(const PolarContext& ctx, const Vec& x);
Mat zeta_x(const PolarContext& ctx, const Vec& x);

// Restriction of ad x to q_L; throws if q_L is not invariant.
Mat ad_on_qL(const PolarContext& ctx, const Vec& x);

// Geodesic-exponential regularity at x in q: no eigenvalue of ad x on q_L
// within tolerance of i*pi*n, n != 0. Cross-checked against invertibility
// of sinhc(ad x) on q; disagreement of the two routes is a hard error.
bool exp_regular(const PolarContext& ctx, const Vec& x);

// Polar-map regularity at x in q^{-sigma}: additionally no eigenvalue near
// i*(pi/2 + pi*n). Requires exp_regular(x) and membership in q^{-sigma};
// cross-checked against invertibility of cosh(ad x) on q^sigma.
bool polar_regular(const PolarContext& ctx, const Vec& x);

// cosh(ad x) a_q + sinhc(ad x) b - sinh(ad x) a_h for a in g^sigma and
// b in q^{-sigma}, where a = a_h + a_q is the tau-split. The result lies
// in q.
Vec tangent_polar(const PolarContext& ctx, const Vec& x, const Vec& a,
                  const Vec& b);

// The same map assembled over the product basis g^sigma x q^{-sigma},
// expressed in q-coordinates, and its numerical rank.
Mat tangent_polar_matrix(const PolarContext& ctx, const Vec& x);
int tangent_polar_rank(const PolarContext& ctx, const Vec& x);

struct StabilizerInfo {
  Mat basis;       // fix(tau sigma_x)
  Mat h_sigma_x;   // h intersect fix(sigma_x)
  Mat q_msigma_x;  // q intersect (-1)-space of sigma_x
  Mat fix_sq;      // fix(sigma_x^2)
};

// Stabilizer algebra fix(tau sigma_x) of the geodesic exponential of x in q.
// Verifies internally that its intersection with fix(sigma_x^2) is the
// direct sum of h^{sigma_x} and q^{-sigma_x}.
StabilizerInfo stabilizer_algebra(const PolarContext& ctx, const Vec& x);

// Under the precondition that both imaginary spectral radii of ad x, ad y
// stay below pi: if the ambient exponentials of x and y agree, x - y must
// be central. Returns false only when equal exponentials pair with a
// non-central difference.
bool exp_fiber_central(const PolarContext& ctx, const Vec& x, const Vec& y);

enum class SingularKind { ExponentialMap, PolarMap };

// Parameters t in (0, t_max] where t * direction hits the singular lattice
// of the chosen map, located by a coarse grid plus local refinement of the
// spectral margin. Accuracy is well below 1e-3.
std::vector<double> singular_parameters(const PolarContext& ctx,
                                        const Vec& direction, double t_max,
                                        SingularKind kind);

}  // namespace wl
