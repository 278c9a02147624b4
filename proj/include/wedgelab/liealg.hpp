#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "wedgelab/linop.hpp"

namespace wl {

// A real matrix Lie algebra: span of `basis` inside gl(n, R), with the
// Frobenius Gram matrix cached for coordinate recovery and the ad action
// tabulated per basis vector.
struct LieAlgebra {
  std::string name;
  int n = 0;    // ambient matrix size
  int dim = 0;  // basis size
  std::vector<Mat> basis;     // n x n each
  std::vector<Mat> ad_basis;  // dim x dim each
  Mat gram;                   // tr(b_i^T b_j)
  Mat gram_inv;
  std::optional<Mat> theta;  // coordinate matrix of X -> -X^T
  std::optional<Mat> cplx;   // coordinate matrix of ambient multiplication by i
                             // (doubled-real realizations only)
};

// Supported names: sl(n), gl(n), so(p,q), sp(2n), su(p,q), slC(n),
// and products joined with 'x', e.g. "sl(2)xsl(2)".
// su(p,q) and slC(n) are realized as real matrices of doubled size.
// sl(2) has basis {h0, e0, f0}.
LieAlgebra make_realization(const std::string& name);
LieAlgebra make_product(const LieAlgebra& a, const LieAlgebra& b);

Mat bracket(const Mat& x, const Mat& y);
Vec to_coords(const LieAlgebra& g, const Mat& x, double* residual = nullptr);
Mat from_coords(const LieAlgebra& g, const Vec& c);
Mat ad(const LieAlgebra& g, const Vec& x);

// Coordinate matrix of conjugation by an invertible ambient matrix.
Mat ad_group(const LieAlgebra& g, const Mat& ginv_conj);

// Ambient exponential of an algebra element.
Mat exp_ambient(const LieAlgebra& g, const Vec& x);

// Structure sanity: closure of brackets and sampled Jacobi identity.
double closure_residual(const LieAlgebra& g);
double jacobi_residual(const LieAlgebra& g, int samples = 20, unsigned seed = 1);

struct GradedSplit {
  Mat p_plus, p_zero, p_minus;  // dim x dim spectral projections of ad h
  int dim_plus = 0, dim_zero = 0, dim_minus = 0;
};

struct EulerInfo {
  bool euler = false;
  double defect = 0.0;  // residual of (ad h)^3 = ad h
  GradedSplit split;
};

EulerInfo is_euler(const LieAlgebra& g, const Vec& h);

// Involution e^{i pi ad h} = 1 - 2 (ad h)^2 for an Euler element.
Mat tau_from_euler(const LieAlgebra& g, const Vec& h);

// Order-four element e^{-(pi i/2) ad h} acting on complexified coordinates,
// and its inverse.
CVec kappa_apply(const LieAlgebra& g, const Vec& h, const CVec& x);
CVec kappa_inv_apply(const LieAlgebra& g, const Vec& h, const CVec& x);

// s in {+1, 0, -1}.
Mat grading_projection(const LieAlgebra& g, const Vec& h, int s);

// || e^{-st} e^{t ad h} x - P_s x || for s = +-1 at large t; the flow-limit
// route to the grading projection.
double grading_limit_error(const LieAlgebra& g, const Vec& h, const Vec& x,
                           int s, double t = 40.0);

Mat killing_form(const LieAlgebra& g);

// Coordinate matrix of X -> -X^T, with involution/automorphism checks.
Mat cartan_theta(const LieAlgebra& g);

// Orthonormal basis (columns) of the s-eigenspace of a coordinate involution.
Mat eigenspace_basis(const Mat& invol, int s);

// Verifies h = [q, q] for the +-1 eigenspaces h, q of a coordinate involution.
double h_equals_qq_residual(const LieAlgebra& g, const Mat& tau);

// sl(2) identity battery (g must be make_realization("sl(2)")).
// Residual of Ad(exp((pi/4)(e-f))) h1 = h0 with h1 = (e+f)/2.
double sl2_conjugation_residual(const LieAlgebra& sl2);
// Residual of e^{t ad(e-f)} h1 = cos(2t) h1 + sin(2t) h0.
double sl2_turn_residual(const LieAlgebra& sl2, double t);
// Residual of sin(ad(le+mf)) h = S(4lm) (-le+mf), for 0 < 4lm < pi^2.
double sl2_sin_formula_residual(const LieAlgebra& sl2, double lambda, double mu);

nlohmann::json lie_to_json(const LieAlgebra& g);
LieAlgebra lie_from_json(const nlohmann::json& j);

// A symmetric pair bundle: commuting involutions tau (defining) and theta
// (Cartan), plus the modular Euler element h fixed by tau.
struct SymmetricPair {
  LieAlgebra g;
  Mat tau;
  Mat theta;
  Vec h;
};

// Checks: involutive, automorphisms, commuting, tau(h) = h, h Euler.
double symmetric_pair_residual(const SymmetricPair& p);

}  // namespace wl
