#include "wedgelab/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wedgelab/tolerances.hpp"

namespace wl {

namespace {

void check_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": size mismatch");
}

double quadric_level(const QuadraticSpace& s, const Vec& p) {
  return beta_form(s, p, p);
}

struct KmsScan {
  double min_margin = 0.0;
  double mid_margin = 0.0;
};

KmsScan scan_orbit(const CVec& z) {
  const std::vector<double>& grid = kms_time_grid();
  KmsScan out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < grid.size(); ++k) {
    const double m = tube_margin(boost_flow(z, Cplx(0.0, grid[k])));
    out.min_margin = std::min(out.min_margin, m);
    if (k == 16) out.mid_margin = m;
  }
  return out;
}

int verdict_of(const std::vector<double>& margins,
               const std::vector<int>& member, double delta) {
  for (double m : margins)
    if (std::fabs(m) <= delta) return 0;
  int in = 0;
  for (int b : member) in += (b != 0);
  if (in == static_cast<int>(member.size())) return 1;
  if (in == 0) return -1;
  return 2;
}

void tally(EqualityReport& rep) {
  rep.samples = static_cast<int>(rep.rows.size());
  rep.interior = rep.boundary = rep.disagreements = 0;
  for (const MembershipRow& row : rep.rows) {
    if (row.verdict == 0) ++rep.boundary;
    else ++rep.interior;
    if (row.verdict == 2) ++rep.disagreements;
  }
}

}  // namespace

// Chebyshev nodes in (0, pi); node 16 sits at pi/2 exactly.
const std::vector<double>& kms_time_grid() {
  static const std::vector<double> grid = [] {
    std::vector<double> g(33);
    for (int k = 0; k < 33; ++k)
      g[static_cast<size_t>(k)] =
          0.5 * M_PI * (1.0 + std::cos(M_PI * (2 * k + 1) / 66.0));
    return g;
  }();
  return grid;
}

QuadraticSpace lorentz_space(int d) {
  QuadraticSpace s;
  s.diag = -Vec::Ones(d + 1);
  s.diag[0] = 1.0;
  return s;
}

double beta_form(const QuadraticSpace& s, const Vec& x, const Vec& y) {
  check_same_size(s.diag.size(), x.size(), "beta_form");
  check_same_size(x.size(), y.size(), "beta_form");
  return (s.diag.array() * x.array() * y.array()).sum();
}

Cplx beta_form_c(const QuadraticSpace& s, const CVec& x, const CVec& y) {
  check_same_size(s.diag.size(), x.size(), "beta_form_c");
  check_same_size(x.size(), y.size(), "beta_form_c");
  Cplx acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += s.diag[i] * x[i] * y[i];
  return acc;
}

double lorentz_form(const Vec& x, const Vec& y) {
  check_same_size(x.size(), y.size(), "lorentz_form");
  return x[0] * y[0] - x.tail(x.size() - 1).dot(y.tail(y.size() - 1));
}

Cplx lorentz_form_c(const CVec& x, const CVec& y) {
  check_same_size(x.size(), y.size(), "lorentz_form_c");
  Cplx acc = x[0] * y[0];
  for (Eigen::Index i = 1; i < x.size(); ++i) acc -= x[i] * y[i];
  return acc;
}

double future_cone_margin(const Vec& x) {
  return std::min(x[0], lorentz_form(x, x));
}

double right_wedge_margin(const Vec& x) { return x[1] - std::fabs(x[0]); }

bool in_future_cone(const Vec& x, double delta) {
  return future_cone_margin(x) > delta;
}

bool in_right_wedge(const Vec& x, double delta) {
  return right_wedge_margin(x) > delta;
}

Vec point_symmetry(const QuadraticSpace& s, const Vec& x, const Vec& y) {
  const double xx = beta_form(s, x, x);
  if (std::fabs(xx) < 1e-12 * std::max(1.0, x.squaredNorm()))
    throw std::invalid_argument("point_symmetry: isotropic base point");
  return -y + (2.0 * beta_form(s, x, y) / xx) * x;
}

Vec quadric_exp(const QuadraticSpace& s, const Vec& p, const Vec& v) {
  const double pp = quadric_level(s, p);
  if (std::fabs(beta_form(s, p, v)) > 1e-8 * std::max(1.0, v.norm() * p.norm()))
    throw std::invalid_argument("quadric_exp: v is not tangent at p");
  const double eps = beta_form(s, v, v) / pp;
  const double c = entire_scalar(Entire::CBig, eps).real();
  const double sc = entire_scalar(Entire::SBig, eps).real();
  Vec out = c * p + sc * v;
  const double scale = std::max(1.0, out.squaredNorm());
  if (std::fabs(quadric_level(s, out) - pp) > 1e-8 * scale)
    throw std::logic_error("quadric_exp: output left the quadric");
  return out;
}

Vec quadric_exp_series(const QuadraticSpace& s, const Vec& p, const Vec& v,
                       int terms) {
  const double pp = quadric_level(s, p);
  const double eps = beta_form(s, v, v) / pp;
  double c = 0.0, sc = 0.0, num = 1.0;
  for (int k = 0; k < terms; ++k) {
    c += num / std::tgamma(2.0 * k + 1.0);
    sc += num / std::tgamma(2.0 * k + 2.0);
    num *= -eps;
  }
  return c * p + sc * v;
}

double geodesic_residual(const QuadraticSpace& s, const Vec& p, const Vec& v,
                         double t, double u) {
  Vec lhs = quadric_exp(s, p, Vec((2.0 * t - u) * v));
  Vec mid = quadric_exp(s, p, Vec(t * v));
  Vec rhs = point_symmetry(s, mid, quadric_exp(s, p, Vec(u * v)));
  return (lhs - rhs).norm();
}

CVec boost_flow(const CVec& z, Cplx time) {
  CVec out = z;
  const Cplx c = std::cosh(time), s = std::sinh(time);
  out[0] = c * z[0] + s * z[1];
  out[1] = c * z[1] + s * z[0];
  return out;
}

CVec complexify(const Vec& x) { return x.cast<Cplx>(); }

Vec tau_h_real(const Vec& x) {
  Vec out = x;
  out[0] = -x[0];
  out[1] = -x[1];
  return out;
}

CVec tau_h_bar(const CVec& z) {
  CVec out = z.conjugate();
  out[0] = -out[0];
  out[1] = -out[1];
  return out;
}

CVec kappa_h(const CVec& z) {
  CVec out = z;
  const Cplx mi(0.0, -1.0);
  out[0] = mi * z[1];
  out[1] = mi * z[0];
  return out;
}

CVec kappa_h_inv(const CVec& z) {
  CVec out = z;
  const Cplx pi_(0.0, 1.0);
  out[0] = pi_ * z[1];
  out[1] = pi_ * z[0];
  return out;
}

double tube_margin(const CVec& z) {
  Vec im = z.imag();
  return future_cone_margin(im);
}

bool in_tube(const CVec& z, bool on_quadric, double delta) {
  if (tube_margin(z) <= delta) return false;
  if (on_quadric) {
    const Cplx level = lorentz_form_c(z, z);
    if (std::abs(level + 1.0) > 1e-8) return false;
  }
  return true;
}

double kms_margin_ds(const Vec& x) {
  return scan_orbit(complexify(x)).min_margin;
}

bool kms_membership_ds(const Vec& x, double delta) {
  return kms_margin_ds(x) > delta;
}

Vec sample_minkowski_point(const IndexSampler& smp, std::uint64_t index, int d,
                           double box) {
  Vec x(d + 1);
  for (int j = 0; j <= d; ++j)
    x[j] = box * (2.0 * smp.uniform(index, 64 + j) - 1.0);
  return x;
}

Vec sample_ds_point(const IndexSampler& smp, std::uint64_t index, int d) {
  Vec u(d);
  double norm = 0.0;
  for (int j = 0; j < d; ++j) {
    u[j] = smp.normal(index, j);
    norm += u[j] * u[j];
  }
  norm = std::sqrt(norm);
  if (norm < 1e-12) {
    u.setZero();
    u[0] = 1.0;
    norm = 1.0;
  }
  u /= norm;
  double b = 1.2 * smp.normal(index, d);
  b = std::clamp(b, -3.0, 3.0);
  Vec x(d + 1);
  x[0] = std::sinh(b);
  x.tail(d) = std::cosh(b) * u;
  return x;
}

ChartInversion invert_wedge_chart(const Vec& x) {
  const int d = static_cast<int>(x.size()) - 1;
  if (d < 2) throw std::invalid_argument("invert_wedge_chart: d >= 2");
  ChartInversion out;
  out.axis = Vec::Zero(d - 1);
  const double q = x[1] * x[1] - x[0] * x[0];
  out.margin = std::min(x[1], q);

  Vec spatial = x.tail(d - 1);
  const double r = spatial.norm();
  if (std::fabs(q - (1.0 - r * r)) > 1e-7)
    throw std::invalid_argument("invert_wedge_chart: point is not on the quadric");

  if (!(q > 0.0) || !(x[1] > 0.0)) return out;  // atanh / sqrt domain failure

  const double sq = std::sqrt(q);
  double cos_rho;
  if (d == 2) {
    cos_rho = x[2];
    out.axis[0] = 1.0;
  } else if (r > 1e-12) {
    cos_rho = r;
    out.axis = spatial / r;
  } else {
    cos_rho = 0.0;
    out.axis[0] = 1.0;
  }
  out.rho = std::atan2(sq, cos_rho);
  if (!(out.rho > 0.0 && out.rho < M_PI)) return out;
  out.boost = std::atanh(x[0] / x[1]);

  Vec rebuilt(d + 1);
  rebuilt[0] = std::sinh(out.boost) * sq;
  rebuilt[1] = std::cosh(out.boost) * sq;
  rebuilt.tail(d - 1) = std::cos(out.rho) * out.axis;
  out.residual = (rebuilt - x).norm();
  out.inside = out.residual < 1e-8 * std::max(1.0, x.norm());
  return out;
}

EqualityReport minkowski_wedge_equalities(int d, int n, std::uint64_t seed,
                                          bool parallel) {
  if (d < 2) throw std::invalid_argument("minkowski_wedge_equalities: d >= 2");
  IndexSampler smp{seed};
  EqualityReport rep;
  rep.rows.resize(static_cast<size_t>(n));
  for_indices(static_cast<size_t>(n), parallel, [&](std::size_t i) {
    Vec x = sample_minkowski_point(smp, i, d, 2.0);
    MembershipRow row;
    row.x = x;
    row.margins.resize(4);
    row.member.resize(4);

    row.margins[0] = right_wedge_margin(x);
    row.member[0] = in_right_wedge(x);

    Vec hx = Vec::Zero(d + 1);
    hx[0] = x[1];
    hx[1] = x[0];
    row.margins[1] = future_cone_margin(hx);
    row.member[1] = in_future_cone(hx);

    KmsScan scan = scan_orbit(complexify(x));
    row.margins[2] = scan.mid_margin;
    row.member[2] = scan.min_margin > 0.0;

    CVec w = kappa_h_inv(complexify(x));
    row.margins[3] = tube_margin(w);
    row.member[3] = in_tube(w, false);

    row.verdict = verdict_of(row.margins, row.member, tol::boundary_band);
    rep.rows[i] = std::move(row);
  });
  tally(rep);
  return rep;
}

EqualityReport desitter_wedge_equalities(int d, int n, std::uint64_t seed,
                                         bool parallel) {
  if (d < 2) throw std::invalid_argument("desitter_wedge_equalities: d >= 2");
  IndexSampler smp{seed};
  EqualityReport rep;
  rep.rows.resize(static_cast<size_t>(n));
  for_indices(static_cast<size_t>(n), parallel, [&](std::size_t i) {
    Vec x = sample_ds_point(smp, i, d);
    MembershipRow row;
    row.x = x;
    row.margins.resize(5);
    row.member.resize(5);

    row.margins[0] = right_wedge_margin(x);
    row.member[0] = in_right_wedge(x);

    Vec hx = Vec::Zero(d + 1);
    hx[0] = x[1];
    hx[1] = x[0];
    if (std::fabs(lorentz_form(x, hx)) > 1e-10 * std::max(1.0, x.squaredNorm()))
      throw std::logic_error("desitter_wedge_equalities: flow is not tangent");
    row.margins[1] = future_cone_margin(hx);
    row.member[1] = in_future_cone(hx);

    KmsScan scan = scan_orbit(complexify(x));
    row.margins[2] = scan.mid_margin;
    row.member[2] = kms_membership_ds(x);

    CVec w = kappa_h_inv(complexify(x));
    row.margins[3] = tube_margin(w);
    row.member[3] = in_tube(w, true);

    ChartInversion chart = invert_wedge_chart(x);
    row.margins[4] = chart.margin;
    row.member[4] = chart.inside;
    if (chart.margin > tol::boundary_band && !chart.inside)
      throw std::logic_error(
          "desitter_wedge_equalities: chart failed inside its domain");

    row.verdict = verdict_of(row.margins, row.member, tol::boundary_band);
    rep.rows[i] = std::move(row);
  });
  tally(rep);
  return rep;
}

}  // namespace wl
