#include "wedgelab/polar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wedgelab/tolerances.hpp"

namespace wl {

namespace {

double mat_res(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.lpNorm<Eigen::Infinity>();
}

Mat colspace(const Mat& a) {
  if (a.cols() == 0 || a.rows() == 0) return Mat::Zero(a.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  const double cut =
      std::max(tol::rel * (s.size() > 0 ? s[0] : 0.0), tol::abs_floor);
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Mat hcat(const Mat& a, const Mat& b) {
  Mat m(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) m.leftCols(a.cols()) = a;
  if (b.cols() > 0) m.rightCols(b.cols()) = b;
  return m;
}

// Orthonormal basis of {v in span(sub) : op v = s v} for orthonormal sub.
Mat sub_eigen(const Mat& op, const Mat& sub, int s) {
  if (sub.cols() == 0) return sub;
  Mat shifted = op * sub - static_cast<double>(s) * sub;
  Mat u = nullspace(shifted);
  return sub * u;
}

void check_involution(const Mat& m, const char* what) {
  const Eigen::Index d = m.rows();
  if (mat_res(m * m - Mat::Identity(d, d)) > 1e-8) {
    std::ostringstream os;
    os << "make_polar_context: " << what << " is not an involution";
    throw std::invalid_argument(os.str());
  }
}

void check_automorphism(const LieAlgebra& g, const Mat& m, const char* what) {
  for (int i = 0; i < g.dim; ++i) {
    Mat lhs = m * g.ad_basis[static_cast<size_t>(i)];
    Mat rhs = ad(g, m.col(i)) * m;
    if (mat_res(lhs - rhs) > 1e-7) {
      std::ostringstream os;
      os << "make_polar_context: " << what << " is not an automorphism";
      throw std::invalid_argument(os.str());
    }
  }
}

double smallest_singular_ratio(const Mat& m) {
  if (m.cols() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  return s[s.size() - 1] / std::max(1.0, s[0]);
}

double lattice_distance_exp(const CVec& ev) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Cplx lam = ev[i];
    const long n0 = std::lround(lam.imag() / M_PI);
    for (long n = n0 - 1; n <= n0 + 1; ++n) {
      if (n == 0) continue;
      best = std::min(best,
                      std::abs(lam - Cplx(0.0, M_PI * static_cast<double>(n))));
    }
  }
  return best;
}

double lattice_distance_polar(const CVec& ev) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const Cplx lam = ev[i];
    const long m0 = std::lround(lam.imag() / M_PI - 0.5);
    for (long m = m0 - 1; m <= m0 + 1; ++m) {
      const double target = M_PI * (static_cast<double>(m) + 0.5);
      best = std::min(best, std::abs(lam - Cplx(0.0, target)));
    }
  }
  return best;
}

// Restriction of an even entire function of ad x to an invariant
// orthonormal subspace, with the invariance verified.
Mat restrict_to(const Mat& op, const Mat& sub, const char* what) {
  Mat img = op * sub;
  Mat r = sub.transpose() * img;
  if (mat_res(img - sub * r) > 1e-7 * std::max(1.0, mat_res(img))) {
    std::ostringstream os;
    os << what << ": operator does not preserve the subspace";
    throw std::logic_error(os.str());
  }
  return r;
}

void check_membership(const Mat& sub, const Vec& x, const char* what) {
  Vec px = sub * (sub.transpose() * x);
  if ((x - px).norm() > 1e-8 * std::max(1.0, x.norm())) {
    std::ostringstream os;
    os << what << ": vector lies outside the required subspace";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

PolarContext make_polar_context(const LieAlgebra& g, const Mat& tau,
                                const Mat& sigma) {
  check_involution(tau, "tau");
  check_involution(sigma, "sigma");
  if (mat_res(tau * sigma - sigma * tau) > 1e-8)
    throw std::invalid_argument("make_polar_context: involutions do not commute");
  check_automorphism(g, tau, "tau");
  check_automorphism(g, sigma, "sigma");

  PolarContext ctx;
  ctx.g = g;
  ctx.tau = tau;
  ctx.sigma = sigma;
  ctx.h_basis = eigenspace_basis(tau, +1);
  ctx.q_basis = eigenspace_basis(tau, -1);
  ctx.gs_basis = eigenspace_basis(sigma, +1);
  ctx.qs_basis = sub_eigen(sigma, ctx.q_basis, +1);
  ctx.qms_basis = sub_eigen(sigma, ctx.q_basis, -1);
  if (ctx.qs_basis.cols() + ctx.qms_basis.cols() != ctx.q_basis.cols())
    throw std::logic_error("make_polar_context: sigma does not split q");

  const Eigen::Index nq = ctx.q_basis.cols();
  std::vector<Vec> cols;
  for (Eigen::Index i = 0; i < nq; ++i) cols.push_back(ctx.q_basis.col(i));
  for (Eigen::Index i = 0; i < nq; ++i) {
    Mat adi = ad(g, ctx.q_basis.col(i));
    for (Eigen::Index j = i + 1; j < nq; ++j)
      cols.push_back(adi * ctx.q_basis.col(j));
  }
  Mat stack(g.dim, static_cast<Eigen::Index>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    stack.col(static_cast<Eigen::Index>(c)) = cols[c];
  ctx.qL_basis = colspace(stack);

  Mat proj = ctx.qL_basis * ctx.qL_basis.transpose();
  for (Eigen::Index i = 0; i < nq; ++i) {
    Mat img = ad(g, ctx.q_basis.col(i)) * ctx.qL_basis;
    if (mat_res(img - proj * img) > 1e-7 * std::max(1.0, mat_res(img)))
      throw std::logic_error("make_polar_context: q_L is not bracket stable");
  }
  return ctx;
}

Mat sigma_x(const PolarContext& ctx, const Vec& x) {
  return apply_entire(Entire::Exp, Mat(-2.0 * ad(ctx.g, x)));
}

Mat zeta_x(const PolarContext& ctx, const Vec& x) {
  return apply_entire(Entire::Exp, Mat(-ad(ctx.g, x)));
}

Mat ad_on_qL(const PolarContext& ctx, const Vec& x) {
  Mat a = ad(ctx.g, x);
  const Mat& v = ctx.qL_basis;
  Mat img = a * v;
  Mat r = v.transpose() * img;
  if (mat_res(img - v * r) > 1e-7 * std::max(1.0, mat_res(img)))
    throw std::logic_error("ad_on_qL: q_L is not ad-invariant");
  return r;
}

bool exp_regular(const PolarContext& ctx, const Vec& x) {
  check_membership(ctx.q_basis, x, "exp_regular");
  Mat al = ad_on_qL(ctx, x);
  bool spectral = true;
  if (al.cols() > 0)
    spectral = lattice_distance_exp(spectrum(al).values) > tol::kernel_eig;

  bool direct = true;
  if (ctx.q_basis.cols() > 0) {
    Mat s = apply_entire(Entire::Sinhc, ad(ctx.g, x));
    Mat sq = restrict_to(s, ctx.q_basis, "exp_regular");
    direct = smallest_singular_ratio(sq) > tol::kernel_eig;
  }
  if (spectral != direct) {
    std::ostringstream os;
    os << "exp_regular: spectral route says " << spectral
       << " but the invertibility route says " << direct;
    throw std::logic_error(os.str());
  }
  return spectral;
}

bool polar_regular(const PolarContext& ctx, const Vec& x) {
  check_membership(ctx.qms_basis, x, "polar_regular");
  if (!exp_regular(ctx, x))
    throw std::invalid_argument(
        "polar_regular: x must be a regular point of the exponential");

  Mat al = ad_on_qL(ctx, x);
  bool spectral = true;
  if (al.cols() > 0)
    spectral = lattice_distance_polar(spectrum(al).values) > tol::kernel_eig;

  bool direct = true;
  if (ctx.qs_basis.cols() > 0) {
    Mat c = apply_entire(Entire::Cosh, ad(ctx.g, x));
    Mat cq = restrict_to(c, ctx.qs_basis, "polar_regular");
    direct = smallest_singular_ratio(cq) > tol::kernel_eig;
  }
  if (spectral != direct) {
    std::ostringstream os;
    os << "polar_regular: spectral route says " << spectral
       << " but the invertibility route says " << direct;
    throw std::logic_error(os.str());
  }
  return spectral;
}

Vec tangent_polar(const PolarContext& ctx, const Vec& x, const Vec& a,
                  const Vec& b) {
  check_membership(ctx.qms_basis, x, "tangent_polar (x)");
  check_membership(ctx.gs_basis, a, "tangent_polar (a)");
  check_membership(ctx.qms_basis, b, "tangent_polar (b)");
  Mat adx = ad(ctx.g, x);
  Vec a_h = 0.5 * (a + ctx.tau * a);
  Vec a_q = 0.5 * (a - ctx.tau * a);
  Vec out = apply_entire(Entire::Cosh, adx) * a_q +
            apply_entire(Entire::Sinhc, adx) * b -
            apply_entire(Entire::Sinh, adx) * a_h;
  Vec pq = ctx.q_basis * (ctx.q_basis.transpose() * out);
  if ((out - pq).norm() > 1e-7 * std::max(1.0, out.norm()))
    throw std::logic_error("tangent_polar: image left q");
  return out;
}

Mat tangent_polar_matrix(const PolarContext& ctx, const Vec& x) {
  const Eigen::Index ns = ctx.gs_basis.cols();
  const Eigen::Index nb = ctx.qms_basis.cols();
  Mat m(ctx.q_basis.cols(), ns + nb);
  Vec zero_b = Vec::Zero(ctx.g.dim);
  for (Eigen::Index i = 0; i < ns; ++i) {
    Vec out = tangent_polar(ctx, x, ctx.gs_basis.col(i), zero_b);
    m.col(i) = ctx.q_basis.transpose() * out;
  }
  for (Eigen::Index i = 0; i < nb; ++i) {
    Vec out = tangent_polar(ctx, x, zero_b, ctx.qms_basis.col(i));
    m.col(ns + i) = ctx.q_basis.transpose() * out;
  }
  return m;
}

int tangent_polar_rank(const PolarContext& ctx, const Vec& x) {
  Mat m = tangent_polar_matrix(ctx, x);
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  const double cut = tol::kernel_eig * std::max(1.0, s[0]);
  int r = 0;
  while (r < s.size() && s[r] > cut) ++r;
  return r;
}

StabilizerInfo stabilizer_algebra(const PolarContext& ctx, const Vec& x) {
  check_membership(ctx.q_basis, x, "stabilizer_algebra");
  Mat sx = sigma_x(ctx, x);
  const Eigen::Index d = sx.rows();
  Mat t = ctx.tau * sx;
  if (mat_res(t * t - Mat::Identity(d, d)) > 1e-7)
    throw std::logic_error("stabilizer_algebra: tau sigma_x is not an involution");

  StabilizerInfo info;
  info.basis = nullspace(Mat(t - Mat::Identity(d, d)));
  Mat sx2 = sx * sx;
  info.fix_sq = nullspace(Mat(sx2 - Mat::Identity(d, d)));
  info.h_sigma_x = sub_eigen(sx, ctx.h_basis, +1);
  info.q_msigma_x = sub_eigen(sx, ctx.q_basis, -1);

  Mat inter;
  const Eigen::Index k1 = info.basis.cols();
  if (k1 == 0 || info.fix_sq.cols() == 0) {
    inter = Mat::Zero(d, 0);
  } else {
    Mat stacked = hcat(info.basis, Mat(-info.fix_sq));
    Mat nz = nullspace(stacked);
    inter = colspace(Mat(info.basis * nz.topRows(k1)));
  }
  Mat split = hcat(info.h_sigma_x, info.q_msigma_x);
  if (inter.cols() != split.cols())
    throw std::logic_error("stabilizer_algebra: eigenspace split has wrong dimension");
  if (split.cols() > 0) {
    if (colspace(split).cols() != split.cols())
      throw std::logic_error("stabilizer_algebra: split components overlap");
    Vec ang = principal_angles(inter, split);
    if (ang.size() > 0 && ang.maxCoeff() > tol::principal_angle)
      throw std::logic_error("stabilizer_algebra: eigenspace split mismatch");
  }
  return info;
}

bool exp_fiber_central(const PolarContext& ctx, const Vec& x, const Vec& y) {
  if (imag_spectral_radius(ad(ctx.g, x)) >= M_PI ||
      imag_spectral_radius(ad(ctx.g, y)) >= M_PI)
    throw std::invalid_argument(
        "exp_fiber_central: imaginary spectral radius must stay below pi");
  Mat ex = exp_ambient(ctx.g, x);
  Mat ey = exp_ambient(ctx.g, y);
  const double scale = std::max({1.0, mat_res(ex), mat_res(ey)});
  if (mat_res(ex - ey) > 1e-9 * scale) return true;
  Mat adiff = ad(ctx.g, Vec(x - y));
  return mat_res(adiff) <= 1e-8 * std::max(1.0, (x - y).norm());
}

std::vector<double> singular_parameters(const PolarContext& ctx,
                                        const Vec& direction, double t_max,
                                        SingularKind kind) {
  if (!(t_max > 0.0))
    throw std::invalid_argument("singular_parameters: t_max must be positive");
  Mat al = ad_on_qL(ctx, direction);
  if (al.cols() == 0) return {};
  CVec ev = spectrum(al).values;
  auto margin = [&](double t) {
    CVec scaled = ev * Cplx(t, 0.0);
    return kind == SingularKind::ExponentialMap ? lattice_distance_exp(scaled)
                                                : lattice_distance_polar(scaled);
  };

  const int grid = 64;
  std::vector<double> ts(grid + 1), ms(grid + 1);
  for (int k = 0; k <= grid; ++k) {
    ts[static_cast<size_t>(k)] = t_max * k / grid;
    ms[static_cast<size_t>(k)] = margin(ts[static_cast<size_t>(k)]);
  }

  std::vector<double> found;
  for (int k = 1; k <= grid; ++k) {
    const size_t ku = static_cast<size_t>(k);
    bool local_min = ms[ku] <= ms[ku - 1] && (k == grid || ms[ku] <= ms[ku + 1]);
    if (!local_min) continue;
    double lo = ts[ku - 1];
    double hi = (k == grid) ? ts[ku] : ts[ku + 1];
    for (int it = 0; it < 120 && hi - lo > 1e-12; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (margin(m1) < margin(m2))
        hi = m2;
      else
        lo = m1;
    }
    const double tstar = 0.5 * (lo + hi);
    if (tstar <= 1e-9 || margin(tstar) > 1e-6) continue;
    found.push_back(tstar);
  }
  std::sort(found.begin(), found.end());
  std::vector<double> merged;
  for (double t : found)
    if (merged.empty() || t - merged.back() > 1e-6) merged.push_back(t);
  return merged;
}

}  // namespace wl
