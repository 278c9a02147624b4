#include "wedgelab/wedge.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wedgelab/linop.hpp"
#include "wedgelab/tolerances.hpp"

namespace wl {

namespace {

Mat unit(int n, int i, int j) {
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

Vec coords_checked(const LieAlgebra& g, const Mat& ambient, const char* what) {
  double res = 0.0;
  Vec c = to_coords(g, ambient, &res);
  if (res > 1e-8 * tol::scale(ambient.norm()))
    throw std::logic_error(std::string(what) + ": element leaves " + g.name);
  return c;
}

int column_rank(const Mat& m) {
  if (m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  double top = svd.singularValues()(0);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-9 * tol::scale(top)) ++r;
  return r;
}

Mat orthonormal_columns(const Mat& m) {
  if (m.cols() == 0) return m;
  Eigen::HouseholderQR<Mat> qr(m);
  return qr.householderQ() * Mat::Identity(m.rows(), m.cols());
}

// Matrix of ad(basis element offset+j) restricted to a product block.
Mat local_ad(const LieAlgebra& g, int offset, int dim, int j) {
  return g.ad_basis[static_cast<std::size_t>(offset + j)].block(offset, offset, dim, dim);
}

// Isomorphism of one sl(2) block onto the so(1,2) realization, normalized so
// the block's Euler element lands on the standard boost and the causal cone
// on the future cone. Columns are target coordinates of the block basis.
Mat build_transport(const LieAlgebra& g, const LieAlgebra& target, const Mat& tau_big,
                    int offset) {
  Mat P(3, 3);
  P << 0.0, 0.0, 1.0, 0.5, 0.5, 0.0, -0.5, 0.5, 0.0;
  Mat pinv = P.inverse();
  Mat psi(3, 3);
  for (int j = 0; j < 3; ++j) {
    Mat m = pinv * local_ad(g, offset, 3, j) * P;
    psi.col(j) = coords_checked(target, m, "transport");
  }
  Vec epf = Vec::Zero(3);
  epf[1] = 1.0;
  epf[2] = 1.0;
  auto causal_margin = [&](const Mat& tr) {
    Mat amb = from_coords(target, Vec(tr * epf));
    return future_cone_margin(Vec(amb.col(2)));
  };
  Mat tau_loc = tau_big.block(offset, offset, 3, 3);
  if (causal_margin(psi) < 0.0) psi = psi * tau_loc;
  if (causal_margin(psi) <= 0.0) throw std::logic_error("transport: causal orientation failed");

  Vec h_loc = Vec::Zero(3);
  h_loc[0] = 1.0;
  Vec h_target = coords_checked(target, unit(3, 0, 1) + unit(3, 1, 0), "transport");
  if ((psi * h_loc - h_target).norm() > 1e-9)
    throw std::logic_error("transport: boost image mismatch");

  Mat refl = Mat::Identity(3, 3);
  refl(2, 2) = -1.0;
  Mat tau_target = ad_group(target, refl);
  if ((psi * tau_loc - tau_target * psi).norm() > 1e-8)
    throw std::logic_error("transport: involution intertwining failed");

  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Vec lhs = psi * local_ad(g, offset, 3, i).col(j);
      Mat rb = bracket(from_coords(target, Vec(psi.col(i))), from_coords(target, Vec(psi.col(j))));
      Vec rhs = coords_checked(target, rb, "transport");
      if ((lhs - rhs).norm() > 1e-8) throw std::logic_error("transport: bracket mismatch");
    }
  return psi;
}

// Cross-checks tying the graded cone slices to the invariant cone: slice
// membership of the generators, projection of interior samples, reverse
// lift through theta, and the theta swap between the two slices.
void check_cone_slices(const CausalSymmetricSpec& spec) {
  const LieAlgebra& g = spec.model.pair.g;
  const Mat& tau = spec.model.pair.tau;
  const auto& margin = spec.model.cone_margin;

  auto slice_checks = [&](const ConeRays& c, const Mat& proj, double sign) {
    if (c.generators.cols() == 0) throw std::logic_error(spec.id + ": empty cone slice");
    for (int j = 0; j < c.generators.cols(); ++j) {
      Vec v = c.generators.col(j);
      if ((proj * v - v).norm() > 1e-9 * tol::scale(v.norm()))
        throw std::logic_error(spec.id + ": slice generator off its graded piece");
      if ((tau * v + v).norm() > 1e-9 * tol::scale(v.norm()))
        throw std::logic_error(spec.id + ": slice generator not tau-odd");
      if (margin(Vec(sign * v)) < -1e-9)
        throw std::logic_error(spec.id + ": slice generator outside the cone");
    }
    if (column_rank(c.generators) != c.generators.cols())
      throw std::logic_error(spec.id + ": degenerate cone slice");
  };
  slice_checks(spec.c_plus, spec.grading.p_plus, 1.0);
  slice_checks(spec.c_minus, spec.grading.p_minus, -1.0);

  int q1 = column_rank(Mat(spec.grading.p_plus * spec.q_basis));
  int qm = column_rank(Mat(spec.grading.p_minus * spec.q_basis));
  if (q1 != spec.c_plus.generators.cols() || qm != spec.c_minus.generators.cols())
    throw std::logic_error(spec.id + ": cone slice does not span its graded q-piece");

  IndexSampler smp{0x5EEDCAFEuLL};
  for (std::uint64_t i = 0; i < 16; ++i) {
    Vec c = cone_interior_sample(spec, smp, i);
    Mat a = ad(g, c);
    double rho = spectral_radius(a);
    if (imag_spectral_radius(a) > 1e-7 * (1.0 + rho))
      throw std::logic_error(spec.id + ": cone sample is not hyperbolic");
    if (relative_margin(spec.c_plus, Vec(spec.grading.p_plus * c)) < 1e-12)
      throw std::logic_error(spec.id + ": projection leaves the plus slice");
    if (relative_margin(spec.c_minus, Vec(-(spec.grading.p_minus * c))) < 1e-12)
      throw std::logic_error(spec.id + ": projection leaves the minus slice");
  }

  const Mat& theta = spec.model.pair.theta;
  for (std::uint64_t i = 0; i < 8; ++i) {
    Vec v = cone_ray_sample(spec.c_plus, smp, 100 + i, 0);
    Vec c = v - theta * v;
    if (margin(c) <= 0.0) throw std::logic_error(spec.id + ": theta lift misses the cone");
    if ((spec.grading.p_plus * c - v).norm() > 1e-8 * tol::scale(v.norm()))
      throw std::logic_error(spec.id + ": theta lift breaks the projection");
    if (relative_margin(spec.c_minus, Vec(theta * v)) < 1e-12)
      throw std::logic_error(spec.id + ": theta does not swap the slices");

    Vec u = -cone_ray_sample(spec.c_minus, smp, 200 + i, 8);
    Vec c2 = u - theta * u;
    if (margin(c2) <= 0.0) throw std::logic_error(spec.id + ": minus-side theta lift fails");
    if ((spec.grading.p_minus * c2 - u).norm() > 1e-8 * tol::scale(u.norm()))
      throw std::logic_error(spec.id + ": minus-side projection fails");
  }

  // The causal Euler element and the reflected a-samples stay in the cone.
  Vec hc = spec.h_causal;
  if ((tau * hc + hc).norm() > 1e-9) throw std::logic_error(spec.id + ": h_causal not tau-odd");
  if (margin(hc) <= 0.0) throw std::logic_error(spec.id + ": h_causal not interior");
  if (!is_euler(g, hc).euler) throw std::logic_error(spec.id + ": h_causal not an Euler element");
  Mat tau_h = tau_from_euler(g, spec.model.pair.h);
  const Mat& ab = spec.model.a_basis;
  for (std::uint64_t i = 0; i < 16; ++i) {
    Vec w(ab.cols());
    for (int j = 0; j < w.size(); ++j) w[j] = 2.0 * smp.uniform(300 + i, j) - 1.0;
    Vec y = hc + 0.2 * (ab * w);
    if (margin(y) <= 0.0) throw std::logic_error(spec.id + ": a-perturbation left the cone");
    if (margin(Vec(-(tau_h * y))) <= 0.0)
      throw std::logic_error(spec.id + ": -tau_h does not preserve the cone on a");
  }
}

int verdict3(const std::array<double, 3>& m, const std::array<int, 3>& b, double delta) {
  for (double v : m)
    if (std::fabs(v) <= delta) return 0;
  bool all = b[0] && b[1] && b[2];
  bool none = !b[0] && !b[1] && !b[2];
  if (all) return 1;
  if (none) return -1;
  return 2;
}

TripleMargins memberships_impl(const CausalSymmetricSpec& spec, const PointRep& p,
                               Vec* concat) {
  if (spec.factors.empty())
    throw std::invalid_argument(spec.id + ": no factor decomposition for the equality harness");
  TripleMargins t;
  t.margin[0] = positivity_margin(spec, p);
  t.member[0] = t.margin[0] > 0.0 ? 1 : 0;

  const std::vector<double>& grid = kms_time_grid();
  double chart_m = std::numeric_limits<double>::infinity();
  double kms_m = std::numeric_limits<double>::infinity();
  bool chart_in = true, kms_in = true;
  int total = 0;
  for (const auto& f : spec.factors) total += f.d + 1;
  if (concat) *concat = Vec::Zero(total);
  int at = 0;
  for (const auto& f : spec.factors) {
    Vec x = factor_point(spec, f, p);
    ChartInversion ch = invert_wedge_chart(x);
    if (ch.margin > tol::boundary_band && !ch.inside)
      throw std::logic_error(spec.id + ": chart margin positive without a preimage");
    chart_m = std::min(chart_m, ch.margin);
    chart_in = chart_in && ch.inside;

    CVec z0 = complexify(x);
    double node_min = std::numeric_limits<double>::infinity();
    double node_mid = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double tm = tube_margin(boost_flow(z0, Cplx(0.0, grid[k])));
      node_min = std::min(node_min, tm);
      if (k == grid.size() / 2) node_mid = tm;
    }
    kms_m = std::min(kms_m, node_mid);
    kms_in = kms_in && node_min > 0.0;

    if (concat) concat->segment(at, x.size()) = x;
    at += static_cast<int>(x.size());
  }
  t.margin[1] = chart_m;
  t.member[1] = chart_in ? 1 : 0;
  t.margin[2] = kms_m;
  t.member[2] = kms_in ? 1 : 0;
  t.verdict = verdict3(t.margin, t.member, tol::boundary_band);
  return t;
}

void tally_report(WedgeReport& rep) {
  for (const auto& row : rep.rows) {
    for (int k = 0; k < 3; ++k) rep.domain_counts[k] += row.tests.member[k];
    switch (row.tests.verdict) {
      case 1: ++rep.interior; break;
      case -1: ++rep.exterior; break;
      case 0: ++rep.indeterminate; break;
      default:
        ++rep.disagreements;
        rep.witnesses.push_back(row.index);
    }
    if (row.tests.verdict != 0)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          if (row.tests.member[j] == row.tests.member[k]) ++rep.agreement[j][k];
  }
}

double clamped_boost(const IndexSampler& smp, std::uint64_t index, int lane) {
  return std::clamp(1.2 * smp.normal(index, lane), -3.0, 3.0);
}

// Word for one factor whose de Sitter image is sinh(b) e0 + cosh(b) u.
void native_box_word(const CausalSymmetricSpec& spec,
                     std::vector<std::pair<Vec, double>>& word, const IndexSampler& smp,
                     std::uint64_t index) {
  const LieAlgebra& g = spec.model.pair.g;
  const int d = spec.factors[0].d;
  const int n = d + 1;
  Vec u = Vec::Zero(n);
  for (int j = 0; j < d; ++j) u[j + 1] = smp.normal(index, 80 + j);
  double nr = u.norm();
  if (nr < 1e-12) {
    u.setZero();
    u[2] = 1.0;
  } else {
    u /= nr;
  }
  double c = u[2];
  Vec rest = u;
  rest[2] = 0.0;
  double r = rest.norm();
  double angle = 0.0;
  Vec axis = Vec::Zero(n);
  if (r > 1e-12) {
    axis = rest / r;
    angle = std::atan2(r, c);
  } else if (c < 0.0) {
    axis[1] = 1.0;
    angle = M_PI;
  }
  if (angle != 0.0) {
    Mat k = axis * unit(n, 2, 2).col(2).transpose() - unit(n, 2, 2).col(2) * axis.transpose();
    word.emplace_back(coords_checked(g, k, "box rotation"), angle);
  }
  word.emplace_back(spec.model.a_basis.col(0), clamped_boost(smp, index, 70));
}

void transported_box_word(const CausalSymmetricSpec& spec, int f,
                          std::vector<std::pair<Vec, double>>& word, double psi, double b) {
  const auto& fac = spec.factors[static_cast<std::size_t>(f)];
  Vec t0 = Vec::Zero(spec.model.pair.g.dim);
  t0[fac.offset + 1] = 0.5;
  t0[fac.offset + 2] = -0.5;
  Vec t1 = Vec::Zero(spec.model.pair.g.dim);
  t1[fac.offset + 1] = 0.5;
  t1[fac.offset + 2] = 0.5;
  word.emplace_back(t0, psi);
  word.emplace_back(t1, b);
}

// Angle on the wedge boundary of the (0,1,2)-plane slice at boost b,
// jittered to straddle the decision surface.
double band_angle(const IndexSampler& smp, std::uint64_t index, int lane, double b) {
  double base = std::asin(std::min(1.0, std::fabs(std::tanh(b))));
  if ((index / 3) % 2 == 1) base = M_PI - base;
  return base + (2.0 * smp.uniform(index, lane) - 1.0) * 1e-5;
}

}  // namespace

double relative_margin(const ConeRays& c, const Vec& v) {
  Vec coef = c.generators.colPivHouseholderQr().solve(v);
  if ((c.generators * coef - v).norm() > 1e-8 * tol::scale(v.norm()))
    throw std::invalid_argument("relative_margin: vector leaves the slice span");
  return coef.minCoeff();
}

Vec cone_ray_sample(const ConeRays& c, const IndexSampler& smp, std::uint64_t index,
                    int lane_base) {
  Vec coef(c.generators.cols());
  for (int j = 0; j < coef.size(); ++j) coef[j] = 0.15 + smp.uniform(index, lane_base + j);
  return c.generators * coef;
}

CausalSymmetricSpec make_wedge_spec(const std::string& id) {
  CausalSymmetricSpec spec;
  spec.id = id;
  spec.model = make_model(id);
  const LieAlgebra& g = spec.model.pair.g;
  const Mat& tau = spec.model.pair.tau;
  spec.h_basis = eigenspace_basis(tau, 1);
  spec.q_basis = eigenspace_basis(tau, -1);
  EulerInfo info = is_euler(g, spec.model.pair.h);
  if (!info.euler) throw std::logic_error(id + ": modular element is not Euler");
  spec.grading = info.split;
  if ((tau * spec.model.pair.h - spec.model.pair.h).norm() > 1e-9)
    throw std::logic_error(id + ": modular element not tau-fixed");

  const int dim = g.dim;
  auto embedded = [&](int at, double v0, double v1, double v2) {
    Vec x = Vec::Zero(dim);
    x[at] = v0;
    x[at + 1] = v1;
    x[at + 2] = v2;
    return x;
  };

  if (id == "sl2-cayley" || id == "sl2xsl2") {
    const int blocks = dim / 3;
    spec.c_plus.generators = Mat::Zero(dim, blocks);
    spec.c_minus.generators = Mat::Zero(dim, blocks);
    spec.h_causal = Vec::Zero(dim);
    spec.target = make_realization("so(1,2)");
    for (int f = 0; f < blocks; ++f) {
      spec.c_plus.generators.col(f) = embedded(3 * f, 0.0, 1.0, 0.0);
      spec.c_minus.generators.col(f) = embedded(3 * f, 0.0, 0.0, -1.0);
      spec.h_causal += embedded(3 * f, 0.0, 0.5, 0.5);
      WedgeFactor fac;
      fac.native = false;
      fac.d = 2;
      fac.offset = 3 * f;
      fac.dim = 3;
      fac.transport = build_transport(g, spec.target, tau, 3 * f);
      spec.factors.push_back(fac);
    }
  } else if (id == "gl2") {
    spec.c_plus.generators = Mat(dim, 1);
    spec.c_plus.generators.col(0) = coords_checked(g, unit(2, 0, 1), id.c_str());
    spec.c_minus.generators = Mat(dim, 1);
    spec.c_minus.generators.col(0) = -coords_checked(g, unit(2, 1, 0), id.c_str());
    Mat sw(2, 2);
    sw << 0.0, 0.5, 0.5, 0.0;
    spec.h_causal = coords_checked(g, sw, id.c_str());
  } else if (id == "ds2" || id == "ds3" || id == "ds4") {
    const int d = id[2] - '0';
    const int n = d + 1;
    Mat m02 = unit(n, 0, 2) + unit(n, 2, 0);
    Mat m12 = unit(n, 1, 2) - unit(n, 2, 1);
    spec.c_plus.generators = Mat(dim, 1);
    spec.c_plus.generators.col(0) = coords_checked(g, m02 + m12, id.c_str());
    spec.c_minus.generators = Mat(dim, 1);
    spec.c_minus.generators.col(0) = -coords_checked(g, Mat(m02 - m12), id.c_str());
    spec.h_causal = coords_checked(g, m02, id.c_str());
    WedgeFactor fac;
    fac.native = true;
    fac.d = d;
    fac.offset = 0;
    fac.dim = dim;
    spec.factors.push_back(fac);
    int rot = (d - 1) * (d - 2) / 2;
    spec.rot_basis = Mat(dim, rot);
    int at = 0;
    Mat adh = ad(g, spec.model.pair.h);
    for (int j = 2; j <= d; ++j)
      for (int k = j + 1; k <= d; ++k) {
        spec.rot_basis.col(at) = coords_checked(g, Mat(unit(n, j, k) - unit(n, k, j)), id.c_str());
        if ((adh * spec.rot_basis.col(at)).norm() > 1e-9)
          throw std::logic_error(id + ": rotation does not centralize the boost");
        ++at;
      }
  } else {
    throw std::invalid_argument("unknown wedge spec id: " + id);
  }

  spec.c_plus.basis = orthonormal_columns(spec.c_plus.generators);
  spec.c_minus.basis = orthonormal_columns(spec.c_minus.generators);
  check_cone_slices(spec);
  return spec;
}

std::vector<std::string> wedge_spec_ids() {
  return {"ds2", "ds3", "ds4", "sl2-cayley", "sl2xsl2", "gl2"};
}

PointRep make_point(const LieAlgebra& g, const std::vector<std::pair<Vec, double>>& word) {
  PointRep p;
  p.word = word;
  Mat amb = Mat::Identity(g.n, g.n);
  for (const auto& [x, t] : word) {
    if (x.size() != g.dim) throw std::invalid_argument("make_point: wrong coordinate length");
    amb = amb * exp_ambient(g, Vec(t * x));
  }
  p.ambient = amb;
  p.ad = ad_group(g, amb);
  return p;
}

double automorphism_residual(const LieAlgebra& g, const Mat& m) {
  double worst = 0.0;
  for (int i = 0; i < g.dim; ++i) {
    Mat adi = ad(g, Vec(m.col(i)));
    for (int j = 0; j < g.dim; ++j) {
      Vec lhs = m * g.ad_basis[static_cast<std::size_t>(i)].col(j);
      Vec rhs = adi * m.col(j);
      worst = std::max(worst, (lhs - rhs).norm() / tol::scale(lhs.norm()));
    }
  }
  return worst;
}

Vec modular_vector_field(const CausalSymmetricSpec& spec, const PointRep& p) {
  Vec v = p.ad.partialPivLu().solve(spec.model.pair.h);
  return 0.5 * (v - spec.model.pair.tau * v);
}

double positivity_margin(const CausalSymmetricSpec& spec, const PointRep& p) {
  return spec.model.cone_margin(modular_vector_field(spec, p));
}

bool in_positivity_domain(const CausalSymmetricSpec& spec, const PointRep& p, double delta) {
  return positivity_margin(spec, p) > delta;
}

Vec cone_interior_sample(const CausalSymmetricSpec& spec, const IndexSampler& smp,
                         std::uint64_t index) {
  const LieAlgebra& g = spec.model.pair.g;
  if (spec.id == "sl2-cayley" || spec.id == "sl2xsl2") {
    Vec x = Vec::Zero(g.dim);
    for (int f = 0; f < g.dim / 3; ++f) {
      x[3 * f + 1] = 0.1 + smp.uniform(index, 2 * f);
      x[3 * f + 2] = 0.1 + smp.uniform(index, 2 * f + 1);
    }
    return x;
  }
  if (spec.id == "gl2") {
    Mat m(2, 2);
    double z = 0.3 * (2.0 * smp.uniform(index, 0) - 1.0);
    m << z, 0.5 + smp.uniform(index, 1), 0.5 + smp.uniform(index, 2), z;
    return coords_checked(g, m, "cone sample");
  }
  const int n = g.n;
  const int d = n - 1;
  Mat m = (0.8 + 0.8 * smp.uniform(index, 0)) * (unit(n, 0, 2) + unit(n, 2, 0));
  int lane = 1;
  for (int j = 1; j <= d; ++j) {
    if (j == 2) continue;
    double c = 0.5 * (2.0 * smp.uniform(index, lane++) - 1.0) / std::sqrt(double(d - 1));
    m += c * (unit(n, j, 2) - unit(n, 2, j));
  }
  return coords_checked(g, m, "cone sample");
}

double s_of_element(const CausalSymmetricSpec& spec, const Vec& x) {
  Mat a = ad(spec.model.pair.g, x);
  double rho = spectral_radius(a);
  if (imag_spectral_radius(a) > 1e-7 * (1.0 + rho))
    throw std::invalid_argument(spec.id + ": element is not hyperbolic");
  return rho;
}

Vec polar_domain_sample(const CausalSymmetricSpec& spec, const IndexSampler& smp,
                        std::uint64_t index) {
  const int gens = static_cast<int>(spec.c_plus.generators.cols());
  Vec x = Vec::Zero(spec.model.pair.g.dim);
  if (!spec.factors.empty()) {
    for (int f = 0; f < gens; ++f) {
      double a = 0.08 + smp.uniform(index, 120 + 4 * f);
      double b = 0.08 + smp.uniform(index, 121 + 4 * f);
      double starget = M_PI * (0.04 + 0.9 * smp.uniform(index, 122 + 4 * f));
      Vec part = a * spec.c_plus.generators.col(f) + b * spec.c_minus.generators.col(f);
      Vec diff = a * spec.c_plus.generators.col(f) - b * spec.c_minus.generators.col(f);
      x += (starget / s_of_element(spec, diff)) * part;
    }
    return x;
  }
  for (int f = 0; f < gens; ++f) {
    x += (0.08 + smp.uniform(index, 120 + 2 * f)) * spec.c_plus.generators.col(f);
    x += (0.08 + smp.uniform(index, 121 + 2 * f)) * spec.c_minus.generators.col(f);
  }
  double starget = M_PI * (0.04 + 0.9 * smp.uniform(index, 119));
  Vec xp = spec.grading.p_plus * x, xm = spec.grading.p_minus * x;
  return (starget / s_of_element(spec, Vec(xp - xm))) * x;
}

double polar_domain_margin(const CausalSymmetricSpec& spec, const Vec& x) {
  double scale = tol::scale(x.norm());
  if ((spec.model.pair.tau * x + x).norm() > 1e-9 * scale)
    throw std::invalid_argument(spec.id + ": polar element is not tau-odd");
  if ((spec.grading.p_zero * x).norm() > 1e-9 * scale)
    throw std::invalid_argument(spec.id + ": polar element meets the zero grade");
  Vec xp = spec.grading.p_plus * x, xm = spec.grading.p_minus * x;
  double m = std::min(relative_margin(spec.c_plus, xp), relative_margin(spec.c_minus, xm));
  if (m > 0.0) m = std::min(m, M_PI - s_of_element(spec, Vec(xp - xm)));
  return m;
}

PointRep polar_wedge_sample(const CausalSymmetricSpec& spec, const std::vector<double>& k_params,
                            const Vec& x) {
  if (spec.factors.empty())
    throw std::invalid_argument(spec.id + ": no wedge parametrization");
  if (polar_domain_margin(spec, x) <= 0.0)
    throw std::invalid_argument(spec.id + ": point outside the polar domain");
  const std::size_t nf = spec.factors.size();
  const std::size_t nr = static_cast<std::size_t>(spec.rot_basis.cols());
  if (k_params.size() != nf + nr)
    throw std::invalid_argument(spec.id + ": wrong invariance parameter count");
  const LieAlgebra& g = spec.model.pair.g;
  std::vector<std::pair<Vec, double>> word;
  for (std::size_t f = 0; f < nf; ++f) {
    Vec hf;
    if (spec.factors[f].native) {
      hf = spec.model.pair.h;
    } else {
      hf = Vec::Zero(g.dim);
      hf[spec.factors[f].offset] = 1.0;
    }
    word.emplace_back(hf, k_params[f]);
  }
  if (nr > 0) {
    Vec y = Vec::Zero(g.dim);
    for (std::size_t r = 0; r < nr; ++r) y += k_params[nf + r] * spec.rot_basis.col(r);
    word.emplace_back(y, 1.0);
  }
  word.emplace_back(x, 1.0);
  return make_point(g, word);
}

Vec factor_point(const CausalSymmetricSpec& spec, const WedgeFactor& f, const PointRep& p) {
  if (f.native) return p.ambient.col(2);
  Mat lam = Mat::Identity(3, 3);
  for (const auto& [x, t] : p.word) {
    Vec slice = x.segment(f.offset, f.dim);
    lam = lam * exp_ambient(spec.target, Vec(t * (f.transport * slice)));
  }
  return lam.col(2);
}

bool kms_membership_grid(const Vec& x, const std::vector<double>& t_grid) {
  CVec z = complexify(x);
  for (double t : t_grid)
    if (tube_margin(boost_flow(z, Cplx(0.0, t))) <= 0.0) return false;
  return true;
}

TripleMargins wedge_memberships(const CausalSymmetricSpec& spec, const PointRep& p) {
  return memberships_impl(spec, p, nullptr);
}

WedgeReport polar_implies_positive(const CausalSymmetricSpec& spec, int n, std::uint64_t seed) {
  WedgeReport rep;
  rep.spec_id = spec.id;
  rep.seed = seed;
  rep.samples = n;
  rep.rows.resize(static_cast<std::size_t>(n));
  IndexSampler smp{seed};
  const std::size_t nf = spec.factors.size();
  const std::size_t nr = static_cast<std::size_t>(spec.rot_basis.cols());
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    Vec x = polar_domain_sample(spec, smp, i);
    std::vector<double> kp;
    for (std::size_t f = 0; f < nf; ++f) kp.push_back(3.0 * smp.uniform(i, int(f)) - 1.5);
    for (std::size_t r = 0; r < nr; ++r)
      kp.push_back(2.0 * M_PI * smp.uniform(i, 8 + int(r)) - M_PI);
    PointRep p = polar_wedge_sample(spec, kp, x);
    WedgeSampleRow row;
    row.index = i;
    row.source = 0;
    memberships_impl(spec, p, &row.point);
    row.tests.margin = {positivity_margin(spec, p), polar_domain_margin(spec, x), 0.0};
    row.tests.member = {row.tests.margin[0] > 0.0 ? 1 : 0, 1, 0};
    row.tests.verdict = row.tests.member[0] ? 1 : 2;
    rep.rows[i] = std::move(row);
  }
  for (const auto& row : rep.rows) {
    if (row.tests.verdict == 1) {
      ++rep.interior;
      ++rep.domain_counts[0];
    } else {
      ++rep.disagreements;
      rep.witnesses.push_back(row.index);
    }
  }
  return rep;
}

WedgeReport verify_wedge_equalities(const CausalSymmetricSpec& spec, int n, std::uint64_t seed,
                                    bool parallel) {
  if (spec.factors.empty())
    throw std::invalid_argument(spec.id + ": no factor decomposition for the equality harness");
  WedgeReport rep;
  rep.spec_id = spec.id;
  rep.seed = seed;
  rep.samples = n;
  rep.rows.resize(static_cast<std::size_t>(n));
  IndexSampler smp{seed};
  const LieAlgebra& g = spec.model.pair.g;
  const std::size_t nf = spec.factors.size();
  const std::size_t nr = static_cast<std::size_t>(spec.rot_basis.cols());

  for_indices(static_cast<std::size_t>(n), parallel, [&](std::size_t idx) {
    const std::uint64_t i = idx;
    const int source = static_cast<int>(i % 3);
    PointRep p;
    if (source == 0) {
      Vec x = polar_domain_sample(spec, smp, i);
      std::vector<double> kp;
      for (std::size_t f = 0; f < nf; ++f)
        kp.push_back(3.0 * smp.uniform(i, 100 + int(f)) - 1.5);
      for (std::size_t r = 0; r < nr; ++r)
        kp.push_back(2.0 * M_PI * smp.uniform(i, 104 + int(r)) - M_PI);
      p = polar_wedge_sample(spec, kp, x);
    } else {
      std::vector<std::pair<Vec, double>> word;
      for (std::size_t f = 0; f < nf; ++f) {
        const bool banded = source == 2 && f == 0;
        if (spec.factors[f].native) {
          double b = clamped_boost(smp, i, 70);
          if (banded) {
            Vec m12 = coords_checked(
                g, Mat(unit(g.n, 1, 2) - unit(g.n, 2, 1)), "band rotation");
            word.emplace_back(m12, band_angle(smp, i, 130, b));
            word.emplace_back(spec.model.a_basis.col(0), b);
          } else {
            native_box_word(spec, word, smp, i);
          }
        } else {
          double b = clamped_boost(smp, i, 70 + int(f));
          double psi = banded ? band_angle(smp, i, 130 + 2 * int(f), b)
                              : 2.0 * M_PI * smp.uniform(i, 130 + 2 * int(f)) - M_PI;
          transported_box_word(spec, int(f), word, psi, b);
        }
      }
      p = make_point(g, word);
    }
    WedgeSampleRow row;
    row.index = i;
    row.source = source;
    row.tests = memberships_impl(spec, p, &row.point);
    rep.rows[idx] = std::move(row);
  });
  tally_report(rep);
  return rep;
}

WedgeReport cayley_fixedpoint_check(int n, std::uint64_t seed) {
  WedgeReport rep;
  rep.spec_id = "tube-fixed-points";
  rep.seed = seed;
  rep.samples = 2 * n;
  rep.rows.resize(static_cast<std::size_t>(2 * n));
  IndexSampler smp{seed};
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    double s = 5.0 * smp.uniform(i, 0) - 2.5;
    double rho = 0.03 + (M_PI - 0.06) * smp.uniform(i, 1);
    Vec x(3);
    x << std::sin(rho) * std::sinh(s), std::sin(rho) * std::cosh(s), std::cos(rho);
    CVec z = kappa_h_inv(complexify(x));
    double level = std::abs(lorentz_form_c(z, z) + 1.0);
    double tm = tube_margin(z);
    double fix = (tau_h_bar(z) - z).norm();
    bool ok = level <= 1e-9 && tm > 0.0 && fix <= 1e-10 * tol::scale(z.norm());
    WedgeSampleRow row;
    row.index = i;
    row.source = 0;
    row.point = x;
    row.tests.margin = {right_wedge_margin(x), tm, 1e-10 - fix};
    row.tests.member = {1, tm > 0.0 ? 1 : 0, fix <= 1e-10 ? 1 : 0};
    row.tests.verdict = ok ? 1 : 2;
    rep.rows[i] = row;
    if (ok)
      ++rep.domain_counts[0];
    else
      rep.witnesses.push_back(i);
  }
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n); ++i) {
    const std::uint64_t idx = static_cast<std::uint64_t>(n) + i;
    double t = 0.03 + (M_PI - 0.06) * smp.uniform(idx, 2);
    double s = 5.0 * smp.uniform(idx, 3) - 2.5;
    CVec z0(3);
    z0 << Cplx(0.0, std::sin(t)), Cplx(0.0, 0.0), Cplx(std::cos(t), 0.0);
    CVec z = boost_flow(z0, Cplx(s, 0.0));
    CVec w = kappa_h(z);
    double imag = w.imag().norm();
    Vec x = w.real();
    ChartInversion ch = invert_wedge_chart(x);
    bool ok = imag <= 1e-10 * tol::scale(x.norm()) && in_right_wedge(x) && ch.inside &&
              std::fabs(ch.rho - t) <= 1e-8 && std::fabs(ch.boost - s) <= 1e-8;
    WedgeSampleRow row;
    row.index = idx;
    row.source = 1;
    row.point = x;
    row.tests.margin = {ch.margin, right_wedge_margin(x), 1e-10 - imag};
    row.tests.member = {ch.inside ? 1 : 0, in_right_wedge(x) ? 1 : 0, imag <= 1e-10 ? 1 : 0};
    row.tests.verdict = ok ? 1 : 2;
    rep.rows[idx] = row;
    if (ok)
      ++rep.domain_counts[1];
    else
      rep.witnesses.push_back(idx);
  }
  rep.interior = rep.domain_counts[0] + rep.domain_counts[1];
  rep.disagreements = static_cast<int>(rep.witnesses.size());
  return rep;
}

}  // namespace wl
