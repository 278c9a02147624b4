#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace wl {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Cplx = std::complex<double>;

// Eigenvalues of a real square matrix, with the (complex) eigenvector matrix.
struct Spectrum {
  CVec values;
  CMat vectors;
};

Spectrum spectrum(const Mat& a);
double spectral_radius(const Mat& a);

// max |Im lambda| over the spectrum.
double imag_spectral_radius(const Mat& a);

// Entire functions applied to matrices.
//   Exp   : sum A^k / k!
//   Cosh  : sum A^{2k} / (2k)!
//   Sinh  : sum A^{2k+1} / (2k+1)!
//   Sinhc : sum A^{2k} / (2k+1)!         (= sinh(A) A^{-1} on invertibles)
//   CBig  : sum (-1)^k A^k / (2k)!       (= cos on squares: CBig(z^2) = cos z)
//   SBig  : sum (-1)^k A^k / (2k+1)!     (z SBig(z^2) = sin z)
enum class Entire { Exp, Cosh, Sinh, Sinhc, CBig, SBig };

const char* entire_name(Entire f);

// Scalar version on complex arguments (closed forms, branch-safe).
Cplx entire_scalar(Entire f, Cplx z);

// Truncated-series evaluation. The series is summed until a rigorous
// remainder bound (ratio-dominated tail of the majorant series at ||A||)
// drops below tol * max(1, partial-sum norm); throws if 400 terms do not
// suffice. Exp additionally uses scaling-and-squaring.
Mat apply_entire(Entire f, const Mat& a, double tol = 1e-14);

// Independent evaluation through the eigendecomposition of a. Requires a
// numerically diagonalizable input; the imaginary residue of the result is
// checked and discarded.
Mat apply_entire_spectral(Entire f, const Mat& a);

// Orthonormal nullspace basis via SVD (columns). reltol scales sigma_max.
Mat nullspace(const Mat& a, double reltol = 1e-9);

// Principal angles between the column spans (inputs need not be orthonormal).
Vec principal_angles(const Mat& u, const Mat& v);

struct KernelResult {
  Mat basis;                  // orthonormal columns, analytic (eigenspace) route
  int dim = 0;
  int numeric_dim = 0;        // dimension of the SVD nullspace of f(A)
  double max_principal_angle = 0.0;  // between the two routes
};

// ker sinhc(ad-style argument A): direct sum of the eigenspaces of A for
// eigenvalues in i*pi*Z \ {0}; cross-checked against the numerical nullspace
// of the series evaluation. Mismatch in dimension is a hard error.
KernelResult kernel_sinhc(const Mat& a);

// ker cosh(A): eigenspaces for eigenvalues in i*(pi/2 + pi*Z).
KernelResult kernel_cosh(const Mat& a);

}  // namespace wl
