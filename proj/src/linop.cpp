#include "wedgelab/linop.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace wl {

namespace {

constexpr double kPi = 3.14159265358979323846;

double step_denominator(Entire f, int k) {
  // Denominator introduced when passing from term k-1 to term k (k >= 1).
  switch (f) {
    case Entire::Exp: return double(k);
    case Entire::Cosh: return double(2 * k - 1) * double(2 * k);
    case Entire::Sinh: return double(2 * k) * double(2 * k + 1);
    case Entire::Sinhc: return double(2 * k) * double(2 * k + 1);
    case Entire::CBig: return double(2 * k - 1) * double(2 * k);
    case Entire::SBig: return double(2 * k) * double(2 * k + 1);
  }
  return 1.0;
}

bool uses_square(Entire f) {
  return f == Entire::Cosh || f == Entire::Sinh || f == Entire::Sinhc;
}

bool alternating(Entire f) { return f == Entire::CBig || f == Entire::SBig; }

Mat series_sum(Entire f, const Mat& a, double tol) {
  const int n = int(a.rows());
  const Mat id = Mat::Identity(n, n);
  const Mat step = uses_square(f) ? Mat(a * a) : a;
  const double r = step.norm();  // Frobenius bounds the operator norm

  Mat term = (f == Entire::Sinh) ? a : id;
  Mat sum = term;
  for (int k = 1; k <= 400; ++k) {
    term = (step * term) / step_denominator(f, k);
    if (alternating(f)) term = -term;
    sum += term;
    const double ratio = r / step_denominator(f, k + 1);
    if (ratio < 1.0) {
      const double tail = term.norm() * ratio / (1.0 - ratio);
      if (tail < tol * std::max(1.0, sum.norm())) return sum;
    }
  }
  throw std::runtime_error("apply_entire: series did not converge in 400 terms");
}

}  // namespace

const char* entire_name(Entire f) {
  switch (f) {
    case Entire::Exp: return "exp";
    case Entire::Cosh: return "cosh";
    case Entire::Sinh: return "sinh";
    case Entire::Sinhc: return "sinhc";
    case Entire::CBig: return "C";
    case Entire::SBig: return "S";
  }
  return "?";
}

Spectrum spectrum(const Mat& a) {
  Eigen::EigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed");
  return Spectrum{es.eigenvalues(), es.eigenvectors()};
}

double spectral_radius(const Mat& a) {
  return spectrum(a).values.cwiseAbs().maxCoeff();
}

double imag_spectral_radius(const Mat& a) {
  return spectrum(a).values.imag().cwiseAbs().maxCoeff();
}

Cplx entire_scalar(Entire f, Cplx z) {
  switch (f) {
    case Entire::Exp: return std::exp(z);
    case Entire::Cosh: return std::cosh(z);
    case Entire::Sinh: return std::sinh(z);
    case Entire::Sinhc:
      if (std::abs(z) < 1e-8) return 1.0 + z * z / 6.0;
      return std::sinh(z) / z;
    case Entire::CBig:
      // cos(sqrt z); even in sqrt z, so the branch does not matter.
      return std::cos(std::sqrt(z));
    case Entire::SBig: {
      Cplx w = std::sqrt(z);
      if (std::abs(w) < 1e-8) return 1.0 - z / 6.0 + z * z / 120.0;
      return std::sin(w) / w;
    }
  }
  return {};
}

Mat apply_entire(Entire f, const Mat& a, double tol) {
  if (f == Entire::Exp) {
    // Scaling and squaring on top of the series.
    const double r = a.norm();
    int s = 0;
    while (r / std::pow(2.0, s) > 1.0 && s < 64) ++s;
    Mat e = series_sum(Entire::Exp, a / std::pow(2.0, s), tol);
    for (int i = 0; i < s; ++i) e = e * e;
    return e;
  }
  return series_sum(f, a, tol);
}

Mat apply_entire_spectral(Entire f, const Mat& a) {
  Eigen::ComplexEigenSolver<CMat> es(a.cast<Cplx>());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("apply_entire_spectral: eigensolver failed");
  const CMat& v = es.eigenvectors();
  CVec fd(es.eigenvalues().size());
  for (int i = 0; i < fd.size(); ++i) fd(i) = entire_scalar(f, es.eigenvalues()(i));
  CMat w = v * fd.asDiagonal() * v.inverse();
  const double scale = std::max(1.0, w.norm());
  if (w.imag().norm() > 1e-8 * scale)
    throw std::runtime_error("apply_entire_spectral: non-real result");
  return w.real();
}

Mat nullspace(const Mat& a, double reltol) {
  if (a.rows() == 0 || a.cols() == 0) return Mat::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  // Absolute floor so that a matrix vanishing to roundoff has full nullspace.
  const double cut = std::max(reltol * smax, 1e-12);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

namespace {

// Orthonormal basis of the column span, with a rank cut at 1e-10 * sigma_max.
Mat orthonormal_span(const Mat& b) {
  if (b.cols() == 0) return Mat(b.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(b, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax < 1e-300) return Mat(b.rows(), 0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-10 * smax) ++rank;
  return svd.matrixU().leftCols(rank);
}

KernelResult kernel_by_targets(const Mat& a, Entire f, bool half_integers) {
  const Spectrum sp = spectrum(a);
  const double scale = std::max(1.0, sp.values.cwiseAbs().maxCoeff());
  const double tol = 1e-7 * scale;

  Mat stacked(a.rows(), 0);
  for (int i = 0; i < sp.values.size(); ++i) {
    const Cplx lam = sp.values(i);
    bool match = false;
    if (half_integers) {
      const double n = std::round(lam.imag() / kPi - 0.5);
      match = std::abs(lam - Cplx(0.0, (n + 0.5) * kPi)) < tol;
    } else {
      const double n = std::round(lam.imag() / kPi);
      match = (n != 0.0) && std::abs(lam - Cplx(0.0, n * kPi)) < tol;
    }
    if (!match) continue;
    Mat add(a.rows(), 2);
    add.col(0) = sp.vectors.col(i).real();
    add.col(1) = sp.vectors.col(i).imag();
    Mat joined(a.rows(), stacked.cols() + 2);
    joined << stacked, add;
    stacked = joined;
  }

  KernelResult res;
  res.basis = orthonormal_span(stacked);
  res.dim = int(res.basis.cols());

  const Mat fa = apply_entire(f, a);
  const Mat num = nullspace(fa, 1e-9);
  res.numeric_dim = int(num.cols());
  if (res.numeric_dim != res.dim)
    throw std::runtime_error("kernel routes disagree on dimension");
  if (res.dim > 0) {
    Vec ang = principal_angles(res.basis, num);
    res.max_principal_angle = ang.size() ? ang.maxCoeff() : 0.0;
  }
  return res;
}

}  // namespace

Vec principal_angles(const Mat& u, const Mat& v) {
  Mat uo = orthonormal_span(u);
  Mat vo = orthonormal_span(v);
  if (uo.cols() == 0 || vo.cols() == 0) return Vec(0);
  Eigen::JacobiSVD<Mat> svd(Mat(uo.transpose() * vo));
  Vec s = svd.singularValues();
  Vec ang(s.size());
  for (int i = 0; i < s.size(); ++i)
    ang(i) = std::acos(std::min(1.0, std::max(-1.0, s(i))));
  return ang;
}

KernelResult kernel_sinhc(const Mat& a) {
  return kernel_by_targets(a, Entire::Sinhc, false);
}

KernelResult kernel_cosh(const Mat& a) {
  return kernel_by_targets(a, Entire::Cosh, true);
}

}  // namespace wl
